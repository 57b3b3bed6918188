#include "hnstrata/rules.hpp"

#include "hnstrata/invariants.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace hnstrata {

namespace {

constexpr std::array<RuleInfo, 18> kCatalog{{
    {"GATE-GAP",
     "mu1 - mu2 > 2g - 2 => Ext^1(E_2, E_1) = H^0(E_2^* (x) E_1 (x) K)^* admits no "
     "non-split extension of the type, so U_mu1(n,d) is empty"},
    {"GATE-CHI", "h^0(E_1 (x) F_1^*) >= chi0 = d0 + n0(1-g) for every pair, so k < chi0 is empty"},
    {"GATE-H1",
     "k = chi0 => h^1(E_1 (x) F_1^*) = 0, P(H^1) is empty and no indecomposable bundle exists"},
    {"GATE-CLIFFORD", "special semistable G of rank n0, degree d0: h^0(G) <= d0/2 + n0"},
    {"BN-CHI", "k <= chi(n,d) => B(n,d,k) = M(n,d), irreducible of dimension n^2(g-1)+1"},
    {"BGN-iff",
     "any curve, 0 < d/n < 2: B(n,d,k) != empty <=> n <= d + (n-k)g and (n,d,k) != (n,n,n); "
     "then irreducible of dimension rho(g,n,d,k) with Sing B(n,d,k) = B(n,d,k+1)"},
    {"BN-GENERAL",
     "general curve, d = nd' + d'', 0 < d'' < 2n, n <= d'' + (n-k)g, d' >= (s-1)(s+g)/s for "
     "some 1 < s < g, (d'',k) != (n,n) => B(n,d,k) != empty"},
    {"BN-GENERIC",
     "generic curve, d = nd1 + d2, k = nk1 + k2 (0 <= d2,k2 < n): "
     "g-(k1+1)(g-d1+k1-1) >= 1 if 0 != d2 >= k2; g-k1(g-d1+k1+1) > 1 if d2 = k2 = 0; "
     "g-(k1+1)(g-d1+k1) >= 1 if d2 < k2 => B(n,d,k) has a component of expected dimension"},
    {"BN-PETRI", "Petri curve, g >= 3, n >= 5, g >= 2n-4 => B(n,d,n+1) != empty"},
    {"TEOP3",
     "0 < d-an < 2(n-1), (n-1,d-an,k) != (n-1,n-1,n-1), mu1 = (d-a)/(n-1): "
     "U_mu1(n,d,k) != empty <=> k <= n-1 + (d-n(a+1)+1)/g; then irreducible and smooth of "
     "expected dimension"},
    {"GENUS2",
     "g = 2: 0 < d-an < 2(n-1) and 0 <= k <= (d-an)/2 + (n-1)/2 => U_mu1(n,d,k) irreducible "
     "and smooth of expected dimension; d-an >= 2(n-1) => U_mu1(n,d,k) = empty"},
    {"TEO2-LIFT",
     "U_mu1(n,d,k) = P(R(Y_k)); Y_k irreducible and smooth of dimension rho => U_mu1(n,d,k) "
     "irreducible and smooth of dimension rho + h^1 - 1; U non-empty => B^k(U_1,U_2^*) non-empty"},
    {"TEOP4-GENERAL",
     "general curve, (g, n-1, d-na, k) as in the general/generic B(n,d,k) criteria => "
     "U_mu1(n,d,k) != empty with an irreducible component of expected dimension"},
    {"TEOP4-PETRI",
     "Petri curve, g >= 3, n >= 5, g >= 2n-4 => U_mu1(n,d,n) != empty"},
    {"TEOP05",
     "B(n1,d1,n1+a) != empty, a > 0, 2n1 < d1 < a(g+1), d2 > 2gm, n2 = d2 - mg: for "
     "0 <= k <= (d2+m(1-g))(n1+a) - (d2n1+d1m+mn1(1-g)), B^k(U_1,U_2^*) != empty"},
    {"TEOPETRIF",
     "Petri curve, g >= 3, d2 >= g+1, dim V = n2+1, n2 <= 4 or g >= 2n2-4, d2/n2 < d1/n1, "
     "B(n1,d1,t) != empty: for 0 <= k <= n2 t - n1 d2, B^k(U_1,U_2^*) != empty"},
    {"FILTRATION", "B^k(U_1,U_2^*) contains B^(k+1)(U_1,U_2^*)"},
    {"MULT-DEFECT",
     "V (x) H^0(E_1) -> H^0(G (x) E_1) has kernel H^0(F_1^* (x) E_1), so "
     "h^0(F_1^* (x) E_1) >= k1 k2 - h^0(G (x) E_1)"},
}};

std::size_t priority(std::string_view id) {
    for (std::size_t i = 0; i < kCatalog.size(); ++i)
        if (kCatalog[i].id == id) return i;
    return kCatalog.size();
}

Provenance prov(std::string_view id, std::string detail) {
    const RuleInfo& info = rule_info(id);
    return {std::string(info.id), std::string(info.citation), std::move(detail)};
}

std::string join(std::initializer_list<std::string> parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += ", ";
        out += p;
    }
    return out;
}

std::string kv(std::string_view key, const Integer& v) { return std::string(key) + "=" + v.str(); }

std::string kv(std::string_view key, const Rational& v) {
    return std::string(key) + "=" + v.str();
}

template <class V>
V unknown_with_note(std::string note) {
    V v;
    v.notes.push_back(std::move(note));
    return v;
}

std::string gate_rule_id(GateReason r) {
    switch (r) {
        case GateReason::GapTooLarge: return "GATE-GAP";
        case GateReason::BelowChi: return "GATE-CHI";
        case GateReason::ZeroH1: return "GATE-H1";
        case GateReason::CliffordExceeded: return "GATE-CLIFFORD";
        case GateReason::None: break;
    }
    return {};
}

// Primary rule id of a verdict: its first provenance entry after sorting.
std::string lead_rule(const Verdict& v) {
    if (v.provenance.empty()) return "?";
    auto it = std::min_element(v.provenance.begin(), v.provenance.end(),
                               [](const Provenance& a, const Provenance& b) {
                                   return priority(a.rule_id) < priority(b.rule_id);
                               });
    return it->rule_id;
}

Conflict make_conflict(std::string a, std::string b, std::string description) {
    if (priority(b) < priority(a)) std::swap(a, b);
    return {std::move(a), std::move(b), std::move(description)};
}

// Length2Type from the (n, d, a) parametrisation, or nullopt when
// the slopes do not decrease.
std::optional<Length2Type> line_quotient_type(const Integer& n, const Integer& d,
                                              const Integer& a) {
    if (n < 2 || d - n * a <= 0) return std::nullopt;
    return Length2Type(n - 1, d - a, 1, a);
}

std::optional<Length2Type> try_type(const Integer& n1, const Integer& d1, const Integer& n2,
                                    const Integer& d2) {
    if (n1 < 1 || n2 < 1 || n2 * d1 - n1 * d2 <= 0) return std::nullopt;
    return Length2Type(n1, d1, n2, d2);
}

}  // namespace

CurveContext make_curve_context(Integer genus, CurveClass curve_class) {
    if (genus < 2) throw std::invalid_argument("genus must be >= 2, got " + genus.str());
    return {std::move(genus), curve_class};
}

std::span<const RuleInfo> rule_catalog() { return kCatalog; }

const RuleInfo& rule_info(std::string_view id) {
    for (const auto& r : kCatalog)
        if (r.id == id) return r;
    throw std::out_of_range("unknown rule id: " + std::string(id));
}

std::string_view to_string(Status s) {
    switch (s) {
        case Status::Empty: return "empty";
        case Status::NonEmptyU: return "nonempty-U";
        case Status::NonEmptyBk: return "nonempty-Bk";
        case Status::Unknown: return "unknown";
    }
    return "unknown";
}

std::string_view to_string(Tri t) {
    switch (t) {
        case Tri::Yes: return "yes";
        case Tri::No: return "no";
        case Tri::Unknown: return "unknown";
    }
    return "unknown";
}

std::string_view to_string(Existence e) {
    switch (e) {
        case Existence::Empty: return "empty";
        case Existence::NonEmpty: return "nonempty";
        case Existence::Unknown: return "unknown";
    }
    return "unknown";
}

std::string_view to_string(CurveClass c) {
    switch (c) {
        case CurveClass::Arbitrary: return "arbitrary";
        case CurveClass::General: return "general";
        case CurveClass::Petri: return "petri";
    }
    return "arbitrary";
}

Status parse_status(std::string_view text) {
    for (Status s : {Status::Empty, Status::NonEmptyU, Status::NonEmptyBk, Status::Unknown})
        if (to_string(s) == text) return s;
    throw std::invalid_argument("unknown status: " + std::string(text));
}

Tri parse_tri(std::string_view text) {
    for (Tri t : {Tri::Yes, Tri::No, Tri::Unknown})
        if (to_string(t) == text) return t;
    throw std::invalid_argument("unknown tri-state value: " + std::string(text));
}

CurveClass parse_curve_class(std::string_view text) {
    for (CurveClass c : {CurveClass::Arbitrary, CurveClass::General, CurveClass::Petri})
        if (to_string(c) == text) return c;
    throw std::invalid_argument("unknown curve class: " + std::string(text));
}

// ---------------------------------------------------------------------------

GateResult gate_stratum(const Length2Type& t, const Integer& g, const Integer& k) {
    if (k < 0) throw std::invalid_argument("gate_stratum: k must be >= 0");
    GateResult r;
    auto fail = [&](GateReason reason, std::string detail) {
        r.pass = false;
        r.reason = reason;
        r.rule_id = gate_rule_id(reason);
        r.detail = std::move(detail);
        return r;
    };
    if (!admissible_gap(t, g))
        return fail(GateReason::GapTooLarge,
                    join({kv("gap", t.gap()), kv("2g-2", Integer(2 * g - 2))}));
    Integer chi0 = t.chi0(g);
    if (k < chi0) return fail(GateReason::BelowChi, join({kv("k", k), kv("chi0", chi0)}));
    if (k == chi0) return fail(GateReason::ZeroH1, join({kv("k", k), kv("h1", Integer(0))}));
    Integer cliff = clifford_max_k(t);
    if (k > cliff && k > 0)
        return fail(GateReason::CliffordExceeded,
                    join({kv("k", k), kv("floor(d0/2+n0)", cliff)}));
    return r;
}

// ---------------------------------------------------------------------------

LocusVerdict rule_bn_chi(const Integer& g, const Integer& n, const Integer& d, const Integer& k) {
    if (n < 1 || k < 0) return unknown_with_note<LocusVerdict>("BN-CHI needs n >= 1, k >= 0");
    Integer chi = euler_char(n, d, g);
    if (k > chi) return {};
    LocusVerdict v;
    v.existence = Existence::NonEmpty;
    v.irreducible = Tri::Yes;
    v.smooth = Tri::Yes;
    v.dimension = Integer(n * n * (g - 1) + 1);
    v.provenance.push_back(prov("BN-CHI", join({kv("k", k), kv("chi", chi)})));
    return v;
}

LocusVerdict rule_bgn(const Integer& g, const Integer& n, const Integer& d, const Integer& k) {
    if (n < 1 || k < 0) return unknown_with_note<LocusVerdict>("BGN-iff needs n >= 1, k >= 0");
    if (!(d > 0 && d < 2 * n)) {
        return unknown_with_note<LocusVerdict>("BGN-iff not applicable: slope " +
                                               Rational(d, n).str() + " outside (0,2)");
    }
    LocusVerdict v;
    Integer rhs = d + (n - k) * g;
    bool excluded = (d == n && k == n);
    std::string detail = join({kv("n", n), kv("d", d), kv("k", k), kv("d+(n-k)g", rhs)});
    if (excluded) detail += ", excluded triple (n,n,n)";
    v.provenance.push_back(prov("BGN-iff", detail));
    if (!(n <= rhs) || excluded) {
        v.existence = Existence::Empty;
        return v;
    }
    v.existence = Existence::NonEmpty;
    v.irreducible = Tri::Yes;
    Integer chi = euler_char(n, d, g);
    if (k >= chi) {
        v.dimension = bn_number(g, n, d, k);
    } else {
        v.dimension = Integer(n * n * (g - 1) + 1);
        v.notes.push_back("k < chi: B(n,d,k) = M(n,d)");
    }
    if (k <= chi) v.notes.push_back("B(n,d,k) = M(n,d) since k <= chi = " + chi.str());
    LocusVerdict next = rule_bgn(g, n, d, k + 1);
    v.smooth = next.existence == Existence::Empty ? Tri::Yes : Tri::No;
    return v;
}

LocusVerdict rule_general_curve(const CurveContext& ctx, const Integer& n, const Integer& d,
                                const Integer& k) {
    if (ctx.curve_class != CurveClass::General)
        return unknown_with_note<LocusVerdict>("BN-GENERAL needs a general curve");
    if (n < 1 || k < 0) return {};
    const Integer& g = ctx.genus;
    Integer dp = floor_div(d, n);
    Integer dpp = d - n * dp;
    if (!(dpp > 0 && dpp < 2 * n)) return {};
    if (dpp == n && k == n) return {};
    if (!(n <= dpp + (n - k) * g)) return {};
    for (Integer s = 2; s < g; ++s) {
        if (s * dp >= (s - 1) * (s + g)) {
            LocusVerdict v;
            v.existence = Existence::NonEmpty;
            v.provenance.push_back(prov(
                "BN-GENERAL", join({kv("d'", dp), kv("d''", dpp), kv("k", k), kv("s", s)})));
            return v;
        }
    }
    return {};
}

LocusVerdict rule_generic_curve(const CurveContext& ctx, const Integer& n, const Integer& d,
                                const Integer& k) {
    if (ctx.curve_class != CurveClass::General)
        return unknown_with_note<LocusVerdict>("BN-GENERIC needs a general curve");
    if (n < 1 || k < 0 || d < 0) return {};
    const Integer& g = ctx.genus;
    Integer d1 = floor_div(d, n);
    Integer d2 = d - n * d1;
    Integer k1 = floor_div(k, n);
    Integer k2 = k - n * k1;
    bool holds = false;
    std::string row;
    if (d2 == 0 && k2 == 0) {
        holds = g - k1 * (g - d1 + k1 + 1) > 1;
        row = "d2=k2=0";
    } else if (d2 < k2) {
        holds = g - (k1 + 1) * (g - d1 + k1) >= 1;
        row = "d2<k2";
    } else {
        holds = g - (k1 + 1) * (g - d1 + k1 - 1) >= 1;
        row = "0!=d2>=k2";
    }
    if (!holds) return {};
    LocusVerdict v;
    v.existence = Existence::NonEmpty;
    v.expected_component = true;
    v.provenance.push_back(prov(
        "BN-GENERIC", join({kv("d1", d1), kv("d2", d2), kv("k1", k1), kv("k2", k2), row})));
    return v;
}

LocusVerdict rule_petri(const CurveContext& ctx, const Integer& n, const Integer& d) {
    if (ctx.curve_class != CurveClass::Petri)
        return unknown_with_note<LocusVerdict>("BN-PETRI needs a Petri curve");
    const Integer& g = ctx.genus;
    if (!(g >= 3 && n >= 5 && g >= 2 * n - 4)) return {};
    LocusVerdict v;
    v.existence = Existence::NonEmpty;
    v.provenance.push_back(prov("BN-PETRI", join({kv("g", g), kv("n", n), kv("d", d),
                                                  kv("k", Integer(n + 1))})));
    return v;
}

LocusVerdict certify_bn_nonempty(const CurveContext& ctx, const Integer& n, const Integer& d,
                                 const Integer& k) {
    const Integer& g = ctx.genus;
    if (auto v = rule_bn_chi(g, n, d, k); v.existence == Existence::NonEmpty) return v;
    LocusVerdict bgn = rule_bgn(g, n, d, k);
    if (bgn.existence != Existence::Unknown) return bgn;
    if (auto v = rule_general_curve(ctx, n, d, k); v.existence == Existence::NonEmpty) return v;
    if (auto v = rule_generic_curve(ctx, n, d, k); v.existence == Existence::NonEmpty) return v;
    // B(n,d,k) contains B(n,d,n+1) for k <= n+1
    if (k >= 0 && k <= n + 1) {
        if (auto v = rule_petri(ctx, n, d); v.existence == Existence::NonEmpty) {
            if (k != n + 1) v.notes.push_back("B(n,d,k) contains B(n,d,n+1)");
            return v;
        }
    }
    return unknown_with_note<LocusVerdict>("no rule certifies B(" + n.str() + "," + d.str() +
                                           "," + k.str() + ")");
}

// ---------------------------------------------------------------------------

Verdict rule_teop3(const Integer& g, const Integer& n, const Integer& d, const Integer& a,
                   const Integer& k, Gating gating) {
    if (n < 2 || k < 0) return {};
    Integer e = d - a * n;
    if (!(e > 0 && e < 2 * (n - 1))) return {};
    if (e == n - 1 && k == n - 1) return unknown_with_note<Verdict>("TEOP3: excluded triple");
    Length2Type t = *line_quotient_type(n, d, a);
    if (gating == Gating::Apply) {
        GateResult gr = gate_stratum(t, g, k);
        if (!gr.pass)
            return unknown_with_note<Verdict>("TEOP3 withheld: " + gr.rule_id + " " + gr.detail);
    }
    Rational bound = Rational(n - 1) + Rational(Integer(d - n * (a + 1) + 1), g);
    Verdict v;
    v.provenance.push_back(
        prov("TEOP3", join({kv("n", n), kv("d", d), kv("a", a), kv("k", k), kv("bound", bound)})));
    if (Rational(k) <= bound) {
        v.status = Status::NonEmptyU;
        v.irreducible = Tri::Yes;
        v.smooth = Tri::Yes;
        v.dimension = beta(g, t, k);
        v.bk_nonempty = Tri::Yes;
    } else {
        v.status = Status::Empty;
        v.bk_nonempty = Tri::No;
    }
    return v;
}

Verdict rule_genus2(const Integer& g, const Integer& n, const Integer& d, const Integer& a,
                    const Integer& k, Gating gating) {
    if (g != 2 || n < 2 || k < 0) return {};
    Integer e = d - a * n;
    std::string detail = join({kv("n", n), kv("d", d), kv("a", a), kv("k", k), kv("d-an", e)});
    if (e >= 2 * (n - 1)) {
        Verdict v;
        v.status = Status::Empty;
        v.provenance.push_back(prov("GENUS2", detail + ", d-an >= 2(n-1)"));
        return v;
    }
    if (e <= 0) return {};
    Rational bound = Rational(e, 2) + Rational(Integer(n - 1), 2);
    if (!(Rational(k) <= bound)) return {};
    Length2Type t = *line_quotient_type(n, d, a);
    if (gating == Gating::Apply) {
        GateResult gr = gate_stratum(t, g, k);
        if (!gr.pass)
            return unknown_with_note<Verdict>("GENUS2 withheld: " + gr.rule_id + " " + gr.detail);
    }
    Verdict v;
    v.status = Status::NonEmptyU;
    v.irreducible = Tri::Yes;
    v.smooth = Tri::Yes;
    v.dimension = beta(g, t, k);
    v.bk_nonempty = Tri::Yes;
    v.provenance.push_back(prov("GENUS2", detail + ", " + kv("bound", bound)));
    return v;
}

Verdict rule_teop4(const CurveContext& ctx, const Length2Type& t, const Integer& k,
                   Gating gating) {
    if (t.n2() != 1 || k < 0) return {};
    const Integer& g = ctx.genus;
    Integer n1 = t.n1();
    Integer n = t.rank();
    Integer d0 = t.d0();
    std::string id;
    LocusVerdict chained;
    if (ctx.curve_class == CurveClass::General) {
        chained = rule_general_curve(ctx, n1, d0, k);
        if (chained.existence != Existence::NonEmpty) chained = rule_generic_curve(ctx, n1, d0, k);
        if (chained.existence != Existence::NonEmpty) return {};
        id = "TEOP4-GENERAL";
    } else if (ctx.curve_class == CurveClass::Petri) {
        // stated for U(n,d,n); the chained locus is B(n-1, d-na, n)
        if (k != n) return {};
        if (!(g >= 3 && n >= 5 && g >= 2 * n - 4)) return {};
        chained = rule_petri(ctx, n1, d0);
        if (chained.existence != Existence::NonEmpty) return {};
        id = "TEOP4-PETRI";
    } else {
        return {};
    }
    if (gating == Gating::Apply) {
        GateResult gr = gate_stratum(t, g, k);
        if (!gr.pass)
            return unknown_with_note<Verdict>(id + " withheld: " + gr.rule_id + " " + gr.detail);
    }
    Verdict v;
    v.status = Status::NonEmptyU;
    v.bk_nonempty = Tri::Yes;
    v.provenance.push_back(prov(id, join({kv("n1", n1), kv("d0", d0), kv("k", k)})));
    for (auto& p : chained.provenance) v.provenance.push_back(p);
    if (id == "TEOP4-GENERAL")
        v.notes.push_back("has an irreducible component of expected dimension beta = " +
                          beta(g, t, k).str());
    return v;
}

Integer multiplication_defect(const Integer& k1, const Integer& k2, const Integer& h0_ge1) {
    return k1 * k2 - h0_ge1;
}

Integer teop05_bound(const Integer& g, const Integer& n1, const Integer& d1, const Integer& a,
                     const Integer& m, const Integer& d2) {
    Integer k1 = n1 + a;
    Integer k2 = d2 + m * (1 - g);
    Integer h0 = d2 * n1 + d1 * m + m * n1 * (1 - g);
    return multiplication_defect(k1, k2, h0);
}

namespace {

// Shared tail of the two syzygy-bundle rules: NonEmptyBk on [0, bound], then
// optional stratum upgrade only where the gates pass.
Verdict syzygy_conclusion(std::string_view id, const Integer& g, const Integer& n1,
                          const Integer& d1, const Integer& n2, const Integer& d2,
                          const Integer& k, const Integer& bound, std::string detail,
                          const LocusVerdict& certified, const RuleOptions& options) {
    if (bound < 0) return unknown_with_note<Verdict>(std::string(id) + ": empty k range");
    if (k > bound) return {};
    Verdict v;
    v.status = Status::NonEmptyBk;
    v.bk_nonempty = Tri::Yes;
    v.provenance.push_back(prov(id, detail + ", " + kv("bound", bound)));
    for (const auto& p : certified.provenance) v.provenance.push_back(p);
    auto t = try_type(n1, d1, n2, d2);
    if (!t) {
        v.notes.push_back(std::string(id) + ": (" + n1.str() + "," + d1.str() + "," + n2.str() +
                          "," + d2.str() + ") is not a valid type, no stratum claim");
        return v;
    }
    GateResult gr = gate_stratum(*t, g, k);
    if (!gr.pass) {
        v.conflicts.push_back(make_conflict(
            std::string(id), gr.rule_id,
            std::string(id) + " claims U non-empty at k=" + k.str() + " for type " + t->str() +
                " but " + gr.rule_id + " forces it empty (" + gr.detail + ")"));
        return v;
    }
    if (options.trust_paper_strata) {
        v.status = Status::NonEmptyU;
        v.notes.push_back(std::string(id) + ": stratum claim accepted (trust_paper_strata)");
    } else {
        v.notes.push_back(std::string(id) +
                          ": stratum claim not derived from the bound alone; "
                          "enable trust_paper_strata to upgrade");
    }
    return v;
}

}  // namespace

Verdict rule_teop05(const CurveContext& ctx, const Integer& n1, const Integer& d1,
                    const Integer& a, const Integer& m, const Integer& d2, const Integer& k,
                    const RuleOptions& options) {
    const Integer& g = ctx.genus;
    if (a <= 0 || m < 1 || n1 < 1 || k < 0) return {};
    if (!(2 * n1 < d1 && d1 < a * (g + 1))) return {};
    if (!(d2 > 2 * g * m)) return {};
    LocusVerdict cert = certify_bn_nonempty(ctx, n1, d1, n1 + a);
    if (cert.existence != Existence::NonEmpty)
        return unknown_with_note<Verdict>("TEOP05: B(" + n1.str() + "," + d1.str() + "," +
                                          Integer(n1 + a).str() + ") not certified non-empty");
    Integer n2 = d2 - m * g;
    std::string detail =
        join({kv("n1", n1), kv("d1", d1), kv("a", a), kv("m", m), kv("d2", d2), kv("n2", n2),
              kv("k", k)});
    return syzygy_conclusion("TEOP05", g, n1, d1, n2, d2, k, teop05_bound(g, n1, d1, a, m, d2),
                             std::move(detail), cert, options);
}

Verdict rule_teopetrif(const CurveContext& ctx, const Integer& n1, const Integer& d1,
                       const Integer& t_sections, const Integer& n2, const Integer& d2,
                       const Integer& k, const RuleOptions& options) {
    if (ctx.curve_class != CurveClass::Petri) return {};
    const Integer& g = ctx.genus;
    if (g < 3 || n1 < 1 || n2 < 1 || k < 0 || t_sections < 0) return {};
    if (d2 < g + 1) return {};
    if (!(n2 <= 4 || g >= 2 * n2 - 4)) return {};
    if (!(Rational(d2, n2) < Rational(d1, n1))) return {};
    LocusVerdict cert = certify_bn_nonempty(ctx, n1, d1, t_sections);
    if (cert.existence != Existence::NonEmpty)
        return unknown_with_note<Verdict>("TEOPETRIF: B(" + n1.str() + "," + d1.str() + "," +
                                          t_sections.str() + ") not certified non-empty");
    std::string detail = join({kv("n1", n1), kv("d1", d1), kv("t", t_sections), kv("n2", n2),
                               kv("d2", d2), kv("k", k)});
    return syzygy_conclusion("TEOPETRIF", g, n1, d1, n2, d2, k,
                             Integer(n2 * t_sections - n1 * d2), std::move(detail), cert,
                             options);
}

// ---------------------------------------------------------------------------

LocusVerdict yk_from_bgn(const Integer& g, const Length2Type& t, const Integer& k) {
    if (t.n2() != 1) throw std::invalid_argument("yk_from_bgn needs n2 = 1, got " + t.str());
    LocusVerdict v;
    if (k < t.chi0(g)) {
        v.existence = Existence::Empty;
        v.provenance.push_back(prov("GATE-CHI", join({kv("k", k), kv("chi0", t.chi0(g))})));
        return v;
    }
    LocusVerdict b = rule_bgn(g, t.n1(), t.d0(), k);
    v.provenance = b.provenance;
    v.notes = b.notes;
    if (b.existence == Existence::Empty) {
        v.existence = Existence::Empty;
        return v;
    }
    if (b.existence != Existence::NonEmpty) return v;
    // Y_k = (B(k) - B(k+1)) x Pic^a, open in B(k) and inside its smooth locus
    v.existence = Existence::NonEmpty;
    v.irreducible = Tri::Yes;
    v.smooth = Tri::Yes;
    if (b.dimension) v.dimension = *b.dimension + g;
    return v;
}

Verdict lift_to_U(const LocusVerdict& yk, const Length2Type& t, const Integer& g,
                  const Integer& k) {
    GateResult gr = gate_stratum(t, g, k);
    Verdict v;
    if (!gr.pass) {
        v.status = Status::Empty;
        v.provenance.push_back(prov(gr.rule_id, gr.detail));
        return v;
    }
    Integer h1 = h1_of(k, t, g);
    std::string detail = join({kv("k", k), kv("h1", h1)});
    switch (yk.existence) {
        case Existence::NonEmpty:
            v.status = Status::NonEmptyU;
            v.irreducible = yk.irreducible;
            v.smooth = yk.smooth;
            v.bk_nonempty = Tri::Yes;
            if (yk.dimension) {
                v.dimension = *yk.dimension + h1 - 1;
                detail += ", " + kv("dim Y_k", *yk.dimension);
            }
            break;
        case Existence::Empty:
            v.status = Status::Empty;
            break;
        case Existence::Unknown:
            return v;
    }
    v.provenance.push_back(prov("TEO2-LIFT", detail));
    for (const auto& p : yk.provenance) v.provenance.push_back(p);
    v.notes = yk.notes;
    canonicalize(v);
    return v;
}

// ---------------------------------------------------------------------------

void canonicalize(Verdict& v) {
    auto key = [](const Provenance& p) {
        return std::make_tuple(priority(p.rule_id), std::cref(p.detail), std::cref(p.citation));
    };
    std::sort(v.provenance.begin(), v.provenance.end(),
              [&](const Provenance& a, const Provenance& b) { return key(a) < key(b); });
    v.provenance.erase(std::unique(v.provenance.begin(), v.provenance.end()),
                       v.provenance.end());
    auto ckey = [](const Conflict& c) {
        return std::make_tuple(priority(c.rule_a), priority(c.rule_b), std::cref(c.description));
    };
    std::sort(v.conflicts.begin(), v.conflicts.end(),
              [&](const Conflict& a, const Conflict& b) { return ckey(a) < ckey(b); });
    v.conflicts.erase(std::unique(v.conflicts.begin(), v.conflicts.end()), v.conflicts.end());
    std::sort(v.notes.begin(), v.notes.end());
    v.notes.erase(std::unique(v.notes.begin(), v.notes.end()), v.notes.end());
}

Verdict merge_verdicts(std::span<const Verdict> verdicts) {
    Verdict out;
    bool has_u = false, has_empty = false, has_bk = false;
    for (const auto& v : verdicts) {
        has_u |= v.status == Status::NonEmptyU;
        has_empty |= v.status == Status::Empty;
        has_bk |= v.status == Status::NonEmptyBk;
        out.provenance.insert(out.provenance.end(), v.provenance.begin(), v.provenance.end());
        out.conflicts.insert(out.conflicts.end(), v.conflicts.begin(), v.conflicts.end());
        out.notes.insert(out.notes.end(), v.notes.begin(), v.notes.end());
    }

    if (has_u && has_empty) {
        out.status = Status::Unknown;
        for (const auto& e : verdicts) {
            if (e.status != Status::Empty) continue;
            for (const auto& u : verdicts) {
                if (u.status != Status::NonEmptyU) continue;
                out.conflicts.push_back(make_conflict(
                    lead_rule(e), lead_rule(u),
                    lead_rule(e) + " says empty, " + lead_rule(u) + " says non-empty"));
            }
        }
    } else if (has_u) {
        out.status = Status::NonEmptyU;
    } else if (has_empty) {
        out.status = Status::Empty;
    } else if (has_bk) {
        out.status = Status::NonEmptyBk;
    }

    // every choice below depends only on the multiset of verdicts
    auto pick = [&](auto pred) {
        const Verdict* best = nullptr;
        for (const auto& v : verdicts) {
            if (!pred(v)) continue;
            if (!best || std::make_pair(priority(lead_rule(v)), lead_rule(v)) <
                             std::make_pair(priority(lead_rule(*best)), lead_rule(*best)))
                best = &v;
        }
        return best;
    };

    auto merge_tri = [&](Tri Verdict::*field, bool restrict_status, std::string_view what) {
        auto in_scope = [&](const Verdict& v) {
            return !restrict_status || v.status == out.status;
        };
        const Verdict* yes = pick([&](const Verdict& v) { return in_scope(v) && v.*field == Tri::Yes; });
        const Verdict* no = pick([&](const Verdict& v) { return in_scope(v) && v.*field == Tri::No; });
        if (yes && no) {
            out.conflicts.push_back(make_conflict(lead_rule(*yes), lead_rule(*no),
                                                  std::string(what) + " disagrees"));
            return Tri::Unknown;
        }
        return yes ? Tri::Yes : no ? Tri::No : Tri::Unknown;
    };

    if (out.status == Status::NonEmptyU) {
        out.irreducible = merge_tri(&Verdict::irreducible, true, "irreducibility");
        out.smooth = merge_tri(&Verdict::smooth, true, "smoothness");
        std::vector<std::pair<std::string, Integer>> dims;
        for (const auto& v : verdicts)
            if (v.status == Status::NonEmptyU && v.dimension)
                dims.emplace_back(lead_rule(v), *v.dimension);
        bool clash = false;
        for (const auto& [ra, da] : dims) {
            for (const auto& [rb, db] : dims) {
                if (da < db) {
                    clash = true;
                    out.conflicts.push_back(make_conflict(
                        ra, rb, "dimension " + da.str() + " vs " + db.str()));
                }
            }
        }
        if (!dims.empty() && !clash) out.dimension = dims.front().second;
    }

    // B^k knowledge merges across every verdict, whatever its status
    out.bk_nonempty = merge_tri(&Verdict::bk_nonempty, false, "non-emptiness of B^k");

    canonicalize(out);
    return out;
}

}  // namespace hnstrata
