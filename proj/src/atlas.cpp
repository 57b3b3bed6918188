#include "hnstrata/atlas.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <thread>

namespace hnstrata {

namespace {

Integer max_sections(const Integer& n, const Integer& d, const Integer& g) {
    // non-special: chi; special: Clifford
    return std::max(euler_char(n, d, g), floor_div(d + 2 * n, 2));
}

// TEOP05 hypotheses for the given type: m = (d2 - n2)/g must be a positive
// integer, and a is searched over the range where B(n1,d1,n1+a) can be
// non-empty at all. The first a that covers k wins.
std::optional<Verdict> search_teop05(const CurveContext& ctx, const Length2Type& t,
                                     const Integer& k, const RuleOptions& options) {
    const Integer& g = ctx.genus;
    Integer diff = t.d2() - t.n2();
    if (diff <= 0 || diff % g != 0) return std::nullopt;
    Integer m = diff / g;
    Integer a_lo = std::max(Integer(1), Integer(floor_div(t.d1(), g + 1) + 1));
    Integer a_hi = max_sections(t.n1(), t.d1(), g) - t.n1();
    for (Integer a = a_lo; a <= a_hi; ++a) {
        Verdict v = rule_teop05(ctx, t.n1(), t.d1(), a, m, t.d2(), k, options);
        if (v.status != Status::Unknown) return v;
    }
    return std::nullopt;
}

std::optional<Verdict> search_teopetrif(const CurveContext& ctx, const Length2Type& t,
                                        const Integer& k, const RuleOptions& options) {
    if (ctx.curve_class != CurveClass::Petri) return std::nullopt;
    const Integer& g = ctx.genus;
    Integer t_lo = std::max(Integer(0), ceil_div(k + t.n1() * t.d2(), t.n2()));
    Integer t_hi = std::max(max_sections(t.n1(), t.d1(), g), Integer(t.n1() + 1));
    for (Integer s = t_lo; s <= t_hi; ++s) {
        Verdict v = rule_teopetrif(ctx, t.n1(), t.d1(), s, t.n2(), t.d2(), k, options);
        if (v.status != Status::Unknown) return v;
    }
    return std::nullopt;
}

Verdict gate_verdict(const GateResult& gr, const Length2Type& t, const Integer& g,
                     const Integer& k) {
    Verdict v;
    v.status = Status::Empty;
    const RuleInfo& info = rule_info(gr.rule_id);
    v.provenance.push_back({gr.rule_id, std::string(info.citation), gr.detail});
    if (k <= t.chi0(g)) {
        v.bk_nonempty = Tri::Yes;  // every pair has h^0 >= chi0 >= k
    } else if (gr.reason == GateReason::CliffordExceeded) {
        v.bk_nonempty = Tri::No;
    }
    return v;
}

}  // namespace

StratumReport classify_stratum(const CurveContext& ctx, const Length2Type& t, const Integer& k,
                               const AtlasOptions& options) {
    const Integer& g = ctx.genus;
    StratumReport r;
    r.k = k;
    r.h1 = h1_of(k, t, g);
    r.beta = beta(g, t, k);
    r.end_algebra = end_algebra(k);

    RuleOptions ropts{options.trust_paper_strata};
    GateResult gr = gate_stratum(t, g, k);
    r.fine_moduli = gr.pass && k == 0;

    std::vector<Verdict> verdicts;
    bool line_quotient = t.n2() == 1;
    Integer n = t.rank();
    Integer d = t.degree();
    Integer a = t.d2();

    if (!gr.pass) {
        Verdict gate = gate_verdict(gr, t, g, k);
        // statements evaluated as printed, to surface where they contradict the gate
        if (line_quotient) {
            std::vector<Verdict> raw{rule_teop3(g, n, d, a, k, Gating::Raw),
                                     rule_genus2(g, n, d, a, k, Gating::Raw),
                                     rule_teop4(ctx, t, k, Gating::Raw)};
            for (const auto& v : raw) {
                if (v.status != Status::NonEmptyU) continue;
                std::string rule = v.provenance.front().rule_id;
                gate.conflicts.push_back(
                    {gr.rule_id, rule,
                     rule + " as stated gives a non-empty stratum at k=" + k.str() + ", but " +
                         gr.rule_id + " forces it empty (" + gr.detail + ")"});
            }
        }
        verdicts.push_back(std::move(gate));
    } else {
        if (line_quotient) {
            verdicts.push_back(rule_teop3(g, n, d, a, k));
            verdicts.push_back(rule_genus2(g, n, d, a, k));
            LocusVerdict yk = yk_from_bgn(g, t, k);
            if (yk.existence == Existence::NonEmpty) {
                verdicts.push_back(lift_to_U(yk, t, g, k));
            } else if (t.d0() == t.n1() && k == t.n1()) {
                Verdict note;
                note.notes.push_back("B(" + t.n1().str() + "," + t.d0().str() + "," + k.str() +
                                     ") is the excluded triple of BGN-iff; Y_k not lifted");
                verdicts.push_back(std::move(note));
            }
            verdicts.push_back(rule_teop4(ctx, t, k));
        }
    }
    if (auto v = search_teop05(ctx, t, k, ropts)) verdicts.push_back(std::move(*v));
    if (auto v = search_teopetrif(ctx, t, k, ropts)) verdicts.push_back(std::move(*v));

    r.verdict = merge_verdicts(verdicts);
    return r;
}

Atlas build_atlas(const CurveContext& ctx, const Length2Type& t, const AtlasOptions& options) {
    const Integer& g = ctx.genus;
    Atlas atlas{ctx, t, options, {}, {}, std::string(kRuleCatalogVersion)};
    GateSummary& gs = atlas.gate_summary;
    gs.gap = t.gap();
    gs.admissible = admissible_gap(t, g);
    gs.chi0 = t.chi0(g);
    gs.clifford_max_k = clifford_max_k(t);
    if (!gs.admissible) {
        gs.notes.push_back("type inadmissible: gap " + gs.gap.str() + " > 2g-2 = " +
                           Integer(2 * g - 2).str());
        if (gs.gap <= Rational(Integer(2 * g - 1)))
            gs.notes.push_back("gap lies in (2g-2, 2g-1]: every extension splits, although the "
                               "coarse emptiness statement only covers gap > 2g-1");
        return atlas;
    }

    for (Integer k = 0; k <= gs.clifford_max_k; ++k)
        atlas.strata.push_back(classify_stratum(ctx, t, k, options));

    // B^k contains B^(k+1): non-emptiness flows down, emptiness flows up
    const std::size_t count = atlas.strata.size();
    std::vector<std::optional<std::size_t>> yes_above(count), no_below(count);
    for (std::size_t i = count; i-- > 0;) {
        if (atlas.strata[i].verdict.bk_nonempty == Tri::Yes) yes_above[i] = i;
        else if (i + 1 < count) yes_above[i] = yes_above[i + 1];
    }
    for (std::size_t i = 0; i < count; ++i) {
        if (atlas.strata[i].verdict.bk_nonempty == Tri::No) no_below[i] = i;
        else if (i > 0) no_below[i] = no_below[i - 1];
    }
    const RuleInfo& filt = rule_info("FILTRATION");
    for (std::size_t i = 0; i < count; ++i) {
        Verdict& v = atlas.strata[i].verdict;
        if (yes_above[i] && no_below[i]) {
            v.conflicts.push_back(
                {"FILTRATION", "FILTRATION",
                 "B^k non-empty at k=" + atlas.strata[*yes_above[i]].k.str() +
                     " but empty at k=" + atlas.strata[*no_below[i]].k.str()});
            continue;
        }
        if (v.bk_nonempty != Tri::Unknown) continue;
        if (yes_above[i]) {
            v.bk_nonempty = Tri::Yes;
            v.provenance.push_back({"FILTRATION", std::string(filt.citation),
                                    "B^k non-empty at k=" + atlas.strata[*yes_above[i]].k.str()});
            if (v.status == Status::Unknown && v.conflicts.empty()) v.status = Status::NonEmptyBk;
        } else if (no_below[i]) {
            v.bk_nonempty = Tri::No;
            v.provenance.push_back({"FILTRATION", std::string(filt.citation),
                                    "B^k empty at k=" + atlas.strata[*no_below[i]].k.str()});
            if (v.status == Status::Unknown && v.conflicts.empty()) v.status = Status::Empty;
        }
        canonicalize(v);
    }
    return atlas;
}

std::vector<Atlas> build_atlases(const CurveContext& ctx, const std::vector<Length2Type>& types,
                                 const AtlasOptions& options, unsigned jobs) {
    std::vector<std::optional<Atlas>> results(types.size());
    std::vector<std::exception_ptr> errors(types.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < types.size(); i = next++) {
            try {
                results[i] = build_atlas(ctx, types[i], options);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    jobs = static_cast<unsigned>(
        std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(1, types.size())));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::vector<Atlas> out;
    out.reserve(results.size());
    for (auto& r : results) out.push_back(std::move(*r));
    return out;
}

std::vector<Length2Type> sweep_types(const CurveContext& ctx, const std::vector<Integer>& ranks,
                                     const std::vector<Integer>& degrees,
                                     const SweepOptions& options) {
    std::vector<Integer> ns = ranks;
    std::vector<Integer> ds = degrees;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());

    std::vector<Length2Type> out;
    for (const auto& n : ns) {
        if (n < 2) continue;
        for (const auto& d : ds) {
            auto types = enumerate_length2(n, d, ctx.genus, options.coprime_only, options.reading);
            out.insert(out.end(), types.begin(), types.end());
        }
    }
    return out;
}

std::vector<Atlas> sweep(const CurveContext& ctx, const std::vector<Integer>& ranks,
                         const std::vector<Integer>& degrees, const SweepOptions& options) {
    return build_atlases(ctx, sweep_types(ctx, ranks, degrees, options), options.atlas,
                         options.jobs);
}

}  // namespace hnstrata
