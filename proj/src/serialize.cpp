#include "hnstrata/serialize.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hnstrata {

namespace {

Json tri_json(Tri t) { return std::string(to_string(t)); }

Tri tri_from(const Json& j) { return parse_tri(j.get<std::string>()); }

Json type_json(const Length2Type& t) {
    return Json{{"n1", integer_to_json(t.n1())},
                {"d1", integer_to_json(t.d1())},
                {"n2", integer_to_json(t.n2())},
                {"d2", integer_to_json(t.d2())}};
}

Length2Type type_from(const Json& j) {
    return Length2Type(integer_from_json(j.at("n1")), integer_from_json(j.at("d1")),
                       integer_from_json(j.at("n2")), integer_from_json(j.at("d2")));
}

Json context_json(const CurveContext& c) {
    return Json{{"genus", integer_to_json(c.genus)},
                {"curve_class", std::string(to_string(c.curve_class))}};
}

CurveContext context_from(const Json& j) {
    return make_curve_context(integer_from_json(j.at("genus")),
                              parse_curve_class(j.at("curve_class").get<std::string>()));
}

Json gate_summary_json(const GateSummary& g) {
    return Json{{"gap", g.gap.str()},
                {"admissible", g.admissible},
                {"chi0", integer_to_json(g.chi0)},
                {"clifford_max_k", integer_to_json(g.clifford_max_k)},
                {"notes", g.notes}};
}

GateSummary gate_summary_from(const Json& j) {
    GateSummary g;
    g.gap = parse_rational(j.at("gap").get<std::string>());
    g.admissible = j.at("admissible").get<bool>();
    g.chi0 = integer_from_json(j.at("chi0"));
    g.clifford_max_k = integer_from_json(j.at("clifford_max_k"));
    g.notes = j.at("notes").get<std::vector<std::string>>();
    return g;
}

// Everything in an atlas document except its strata.
Json atlas_header_json(const Atlas& a) {
    return Json{{"schema", std::string(kAtlasSchema)},
                {"context", context_json(a.context)},
                {"hn_type", type_json(a.hn_type)},
                {"options", {{"trust_paper_strata", a.options.trust_paper_strata}}},
                {"gate_summary", gate_summary_json(a.gate_summary)},
                {"rule_catalog_version", a.rule_catalog_version}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// --- tables ---------------------------------------------------------------

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string md_cell(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '|') out += '\\';
        out += c == '\n' ? ' ' : c;
    }
    return out;
}

std::string provenance_ids(const Verdict& v) {
    std::vector<std::string> ids;
    for (const auto& p : v.provenance)
        if (std::find(ids.begin(), ids.end(), p.rule_id) == ids.end()) ids.push_back(p.rule_id);
    std::string out;
    for (const auto& id : ids) out += (out.empty() ? "" : " ") + id;
    return out.empty() ? "-" : out;
}

std::string dim_text(const Verdict& v) { return v.dimension ? v.dimension->str() : "-"; }

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols{
        "genus", "curve",  "n1",          "d1",  "n2",          "d2",         "k",
        "h1",    "beta",   "end_dim",     "status", "smooth",   "irreducible", "dim",
        "bk_nonempty", "provenance", "conflicts", "notes"};
    return cols;
}

std::string csv_header() {
    std::string out;
    for (const auto& c : csv_columns()) out += (out.empty() ? "" : ",") + c;
    return out + "\n";
}

std::string csv_row(const Atlas& a, const StratumReport* r) {
    std::vector<std::string> f{a.context.genus.str(), std::string(to_string(a.context.curve_class)),
                               a.hn_type.n1().str(),  a.hn_type.d1().str(),
                               a.hn_type.n2().str(),  a.hn_type.d2().str()};
    if (!r) {
        f.insert(f.end(), {"", "", "", "", "inadmissible", "", "", "", "", "", "", ""});
        std::string notes;
        for (const auto& n : a.gate_summary.notes) notes += (notes.empty() ? "" : "; ") + n;
        f.back() = notes;
    } else {
        const Verdict& v = r->verdict;
        std::string conflicts, notes;
        for (const auto& c : v.conflicts)
            conflicts += (conflicts.empty() ? "" : "; ") + c.rule_a + " vs " + c.rule_b + ": " +
                         c.description;
        for (const auto& n : v.notes) notes += (notes.empty() ? "" : "; ") + n;
        f.insert(f.end(), {r->k.str(), r->h1.str(), r->beta.str(), r->end_algebra.total_dim.str(),
                           std::string(to_string(v.status)), std::string(to_string(v.smooth)),
                           std::string(to_string(v.irreducible)),
                           v.dimension ? v.dimension->str() : "",
                           std::string(to_string(v.bk_nonempty)), provenance_ids(v), conflicts,
                           notes});
    }
    std::string out;
    for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + csv_field(f[i]);
    return out + "\n";
}

std::string markdown(const Atlas& a, const std::vector<const StratumReport*>& rows) {
    std::ostringstream os;
    const GateSummary& gs = a.gate_summary;
    os << "# Type " << a.hn_type.str() << ", g = " << a.context.genus << ", "
       << to_string(a.context.curve_class) << " curve\n\n";
    os << "- mu1 = " << a.hn_type.mu1().str() << ", mu2 = " << a.hn_type.mu2().str()
       << ", gap = " << gs.gap.str() << "\n";
    os << "- d0 = " << a.hn_type.d0() << ", n0 = " << a.hn_type.n0() << ", chi0 = " << gs.chi0
       << ", clifford max k = " << gs.clifford_max_k << "\n";
    os << "- admissible: " << (gs.admissible ? "yes" : "no") << "\n";
    os << "- rule catalog: " << a.rule_catalog_version << "\n";
    if (a.options.trust_paper_strata) os << "- trust_paper_strata: on\n";
    for (const auto& n : gs.notes) os << "- " << n << "\n";
    if (!gs.admissible) return os.str();

    os << "\n| k | h¹ | β | End-algebra dim | status | smooth | irreducible | dim | provenance |\n";
    os << "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto* r : rows) {
        const Verdict& v = r->verdict;
        os << "| " << r->k << " | " << r->h1 << " | " << r->beta << " | "
           << r->end_algebra.total_dim << " | " << to_string(v.status) << " | "
           << to_string(v.smooth) << " | " << to_string(v.irreducible) << " | " << dim_text(v)
           << " | " << md_cell(provenance_ids(v)) << " |\n";
    }

    bool any_conflict = false, any_note = false;
    for (const auto* r : rows) {
        any_conflict |= !r->verdict.conflicts.empty();
        any_note |= !r->verdict.notes.empty() || r->fine_moduli ||
                    r->verdict.bk_nonempty != Tri::Unknown;
    }
    if (any_conflict) {
        os << "\n## Conflicts\n\n";
        for (const auto* r : rows)
            for (const auto& c : r->verdict.conflicts)
                os << "- k=" << r->k << ": " << c.rule_a << " vs " << c.rule_b << ": "
                   << c.description << "\n";
    }
    if (any_note) {
        os << "\n## Notes\n\n";
        for (const auto* r : rows) {
            if (r->fine_moduli) os << "- k=" << r->k << ": fine moduli space\n";
            if (r->verdict.bk_nonempty != Tri::Unknown)
                os << "- k=" << r->k << ": B^k non-empty: " << to_string(r->verdict.bk_nonempty)
                   << "\n";
            for (const auto& n : r->verdict.notes) os << "- k=" << r->k << ": " << n << "\n";
        }
    }

    os << "\n## Provenance\n\n";
    std::vector<std::string> cited;
    for (const auto* r : rows) {
        for (const auto& p : r->verdict.provenance) {
            os << "- k=" << r->k << " " << p.rule_id << ": " << p.detail << "\n";
            if (std::find(cited.begin(), cited.end(), p.rule_id) == cited.end())
                cited.push_back(p.rule_id);
        }
    }
    if (!cited.empty()) {
        os << "\n## Citations\n\n";
        for (const auto& info : rule_catalog()) {
            if (std::find(cited.begin(), cited.end(), info.id) == cited.end()) continue;
            os << "- " << info.id << ": " << info.citation << "\n";
        }
    }
    return os.str();
}

}  // namespace

Json integer_to_json(const Integer& x) {
    if (fits_in_double_exactly(x)) return to_ll(x);
    return x.str();
}

Integer integer_from_json(const Json& j) {
    if (j.is_number_integer()) return Integer(j.get<long long>());
    if (j.is_string()) return parse_integer(j.get<std::string>());
    throw std::invalid_argument("expected an integer, got " + j.dump());
}

Json to_json(const Verdict& v) {
    Json prov = Json::array();
    for (const auto& p : v.provenance)
        prov.push_back({{"rule_id", p.rule_id}, {"citation", p.citation}, {"detail", p.detail}});
    Json conf = Json::array();
    for (const auto& c : v.conflicts)
        conf.push_back({{"rules", {c.rule_a, c.rule_b}}, {"description", c.description}});
    return Json{{"status", std::string(to_string(v.status))},
                {"irreducible", tri_json(v.irreducible)},
                {"smooth", tri_json(v.smooth)},
                {"dimension", v.dimension ? integer_to_json(*v.dimension) : Json(nullptr)},
                {"bk_nonempty", tri_json(v.bk_nonempty)},
                {"provenance", prov},
                {"conflicts", conf},
                {"notes", v.notes}};
}

Verdict verdict_from_json(const Json& j) {
    Verdict v;
    v.status = parse_status(j.at("status").get<std::string>());
    v.irreducible = tri_from(j.at("irreducible"));
    v.smooth = tri_from(j.at("smooth"));
    if (!j.at("dimension").is_null()) v.dimension = integer_from_json(j.at("dimension"));
    v.bk_nonempty = tri_from(j.at("bk_nonempty"));
    for (const auto& p : j.at("provenance"))
        v.provenance.push_back({p.at("rule_id").get<std::string>(),
                                p.at("citation").get<std::string>(),
                                p.at("detail").get<std::string>()});
    for (const auto& c : j.at("conflicts")) {
        const auto& rules = c.at("rules");
        if (!rules.is_array() || rules.size() != 2)
            throw std::invalid_argument("conflict needs exactly two rule ids");
        v.conflicts.push_back({rules[0].get<std::string>(), rules[1].get<std::string>(),
                               c.at("description").get<std::string>()});
    }
    v.notes = j.at("notes").get<std::vector<std::string>>();
    return v;
}

Json to_json(const StratumReport& r) {
    return Json{{"k", integer_to_json(r.k)},
                {"h1", integer_to_json(r.h1)},
                {"beta", integer_to_json(r.beta)},
                {"end_algebra",
                 {{"k", integer_to_json(r.end_algebra.k)},
                  {"total_dim", integer_to_json(r.end_algebra.total_dim)},
                  {"nilradical_dim", integer_to_json(r.end_algebra.nilradical_dim)}}},
                {"fine_moduli", r.fine_moduli},
                {"verdict", to_json(r.verdict)}};
}

StratumReport stratum_from_json(const Json& j) {
    StratumReport r;
    r.k = integer_from_json(j.at("k"));
    r.h1 = integer_from_json(j.at("h1"));
    r.beta = integer_from_json(j.at("beta"));
    const auto& e = j.at("end_algebra");
    r.end_algebra = {integer_from_json(e.at("k")), integer_from_json(e.at("total_dim")),
                     integer_from_json(e.at("nilradical_dim"))};
    r.fine_moduli = j.at("fine_moduli").get<bool>();
    r.verdict = verdict_from_json(j.at("verdict"));
    return r;
}

Json to_json(const Atlas& a) {
    Json j = atlas_header_json(a);
    Json strata = Json::array();
    for (const auto& r : a.strata) strata.push_back(to_json(r));
    j["strata"] = std::move(strata);
    return j;
}

Atlas atlas_from_json(const Json& j) {
    if (j.at("schema").get<std::string>() != kAtlasSchema)
        throw std::invalid_argument("unsupported atlas schema " + j.at("schema").dump());
    Atlas a{context_from(j.at("context")), type_from(j.at("hn_type")),
            AtlasOptions{j.at("options").at("trust_paper_strata").get<bool>()},
            gate_summary_from(j.at("gate_summary")), {},
            j.at("rule_catalog_version").get<std::string>()};
    for (const auto& s : j.at("strata")) a.strata.push_back(stratum_from_json(s));
    return a;
}

Json to_json(const oracle::CheckReport& r) {
    Json failures = Json::array();
    for (const auto& f : r.failures)
        failures.push_back({{"input", f.input}, {"expected", f.expected}, {"got", f.got}});
    return Json{{"check_name", r.check_name},
                {"cases_run", r.cases_run},
                {"passed", r.passed()},
                {"failures", failures}};
}

std::string atlas_to_json_string(const Atlas& a) { return dump(to_json(a)); }

Atlas atlas_from_json_string(const std::string& text) { return atlas_from_json(Json::parse(text)); }

std::string atlas_to_csv(const Atlas& a) {
    std::string out = csv_header();
    if (!a.admissible()) return out + csv_row(a, nullptr);
    for (const auto& r : a.strata) out += csv_row(a, &r);
    return out;
}

std::string atlas_to_markdown(const Atlas& a) {
    std::vector<const StratumReport*> rows;
    for (const auto& r : a.strata) rows.push_back(&r);
    return markdown(a, rows);
}

std::string stratum_to_json_string(const Atlas& context, const StratumReport& r) {
    Json j = atlas_header_json(context);
    j["stratum"] = to_json(r);
    return dump(j);
}

std::string stratum_to_csv(const Atlas& context, const StratumReport& r) {
    return csv_header() + csv_row(context, &r);
}

std::string stratum_to_markdown(const Atlas& context, const StratumReport& r) {
    return markdown(context, {&r});
}

std::string types_to_json_string(const std::vector<HNType>& types) {
    Json arr = Json::array();
    for (const auto& t : types) {
        Json parts = Json::array();
        for (const auto& p : t.parts())
            parts.push_back({{"rank", integer_to_json(p.rank)},
                             {"degree", integer_to_json(p.degree)},
                             {"slope", p.slope().str()}});
        arr.push_back({{"parts", parts}});
    }
    return dump(arr);
}

std::string types_to_csv(const std::vector<HNType>& types) {
    std::string out = "index,ranks,degrees,slopes\n";
    for (std::size_t i = 0; i < types.size(); ++i) {
        std::string ranks, degrees, slopes;
        for (const auto& p : types[i].parts()) {
            ranks += (ranks.empty() ? "" : " ") + p.rank.str();
            degrees += (degrees.empty() ? "" : " ") + p.degree.str();
            slopes += (slopes.empty() ? "" : " ") + p.slope().str();
        }
        out += std::to_string(i) + "," + ranks + "," + degrees + "," + slopes + "\n";
    }
    return out;
}

std::string types_to_markdown(const std::vector<HNType>& types) {
    std::ostringstream os;
    os << "| # | (rank, degree) parts | slopes |\n|---|---|---|\n";
    for (std::size_t i = 0; i < types.size(); ++i) {
        std::string parts, slopes;
        for (const auto& p : types[i].parts()) {
            parts += (parts.empty() ? "" : " ") + ("(" + p.rank.str() + "," + p.degree.str() + ")");
            slopes += (slopes.empty() ? "" : " > ") + p.slope().str();
        }
        os << "| " << i << " | " << parts << " | " << slopes << " |\n";
    }
    return os.str();
}

}  // namespace hnstrata
