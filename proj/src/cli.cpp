#include "hnstrata/cli.hpp"

#include "hnstrata/atlas.hpp"
#include "hnstrata/config.hpp"
#include "hnstrata/oracle.hpp"
#include "hnstrata/serialize.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hnstrata {

namespace {

namespace fs = std::filesystem;

// Raised for bad flag values found after CLI11 accepted the syntax.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Integer int_flag(const std::string& name, const std::string& text) {
    try {
        return parse_integer(text);
    } catch (const std::invalid_argument&) {
        throw UsageError("--" + name + ": not an integer: '" + text + "'");
    }
}

CurveContext context_flag(const std::string& genus, const std::string& curve) {
    Integer g = int_flag("genus", genus);
    if (g < 2) throw UsageError("--genus must be >= 2, got " + g.str());
    return make_curve_context(g, parse_curve_class(curve));
}

struct ClassifyFlags {
    std::string genus, n1, d1, n2, d2, k;
    std::string curve = "arbitrary";
    std::string format = "md";
    bool trust = false;
};

int cmd_classify(const ClassifyFlags& f, std::ostream& out) {
    CurveContext ctx = context_flag(f.genus, f.curve);
    std::optional<Length2Type> t;
    try {
        t.emplace(int_flag("n1", f.n1), int_flag("d1", f.d1), int_flag("n2", f.n2),
                  int_flag("d2", f.d2));
    } catch (const HNValidationError& e) {
        throw UsageError(std::string("invalid type: ") + e.what());
    }
    AtlasOptions options{f.trust};
    Atlas atlas = build_atlas(ctx, *t, options);

    if (f.k.empty() || !atlas.admissible()) {
        if (f.format == "json") out << atlas_to_json_string(atlas);
        else if (f.format == "csv") out << atlas_to_csv(atlas);
        else out << atlas_to_markdown(atlas);
        return kExitOk;
    }
    Integer k = int_flag("k", f.k);
    if (k < 0) throw UsageError("--k must be >= 0");
    StratumReport report = k <= atlas.gate_summary.clifford_max_k
                               ? atlas.strata.at(static_cast<std::size_t>(to_ll(k)))
                               : classify_stratum(ctx, *t, k, options);
    if (f.format == "json") out << stratum_to_json_string(atlas, report);
    else if (f.format == "csv") out << stratum_to_csv(atlas, report);
    else out << stratum_to_markdown(atlas, report);
    return kExitOk;
}

struct EnumerateFlags {
    std::string genus, rank, degree;
    int length = 2;
    bool coprime_only = true;
    bool quotients_only = false;
    std::string format = "md";
};

int cmd_enumerate(const EnumerateFlags& f, std::ostream& out) {
    Integer g = int_flag("genus", f.genus);
    if (g < 2) throw UsageError("--genus must be >= 2, got " + g.str());
    Integer n = int_flag("rank", f.rank);
    Integer d = int_flag("degree", f.degree);
    if (n < 2) throw UsageError("--rank must be >= 2, got " + n.str());
    if (f.length < 2) throw UsageError("--length must be >= 2");
    if (Integer(f.length) > n)
        throw UsageError("--length " + std::to_string(f.length) + " exceeds rank " + n.str());
    CoprimeReading reading =
        f.quotients_only ? CoprimeReading::QuotientsOnly : CoprimeReading::Strict;

    std::vector<HNType> types;
    if (f.length == 2) {
        for (const auto& t : enumerate_length2(n, d, g, f.coprime_only, reading))
            types.push_back(t.as_hn_type());
    } else {
        for (auto& t : enumerate_hn_types(n, d, static_cast<std::size_t>(f.length), g))
            if (!f.coprime_only || is_coprime_type(t, reading)) types.push_back(std::move(t));
    }
    if (f.format == "json") out << types_to_json_string(types);
    else if (f.format == "csv") out << types_to_csv(types);
    else out << types_to_markdown(types);
    return kExitOk;
}

struct SweepFlags {
    std::string config;
    unsigned jobs = 1;
};

std::string atlas_file_name(const Integer& g, const Length2Type& t) {
    return "atlas_g" + g.str() + "_" + t.n1().str() + "_" + t.d1().str() + "_" + t.n2().str() +
           "_" + t.d2().str() + ".json";
}

std::string cache_key(const CurveContext& ctx, const Length2Type& t, const AtlasOptions& o) {
    return std::string(kRuleCatalogVersion) + "_" + std::string(to_string(ctx.curve_class)) +
           (o.trust_paper_strata ? "_trust" : "") + "_" +
           atlas_file_name(ctx.genus, t).substr(6);
}

int cmd_sweep(const SweepFlags& f, std::ostream& out) {
    SweepConfig cfg;
    try {
        cfg = load_config(f.config);
    } catch (const ConfigError& e) {
        throw UsageError(f.config + ": " + e.what());
    } catch (const std::runtime_error& e) {
        throw IoError(e.what());
    }
    fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());

    std::optional<AtlasCache> cache;
    if (auto cdir = resolve_cache_dir(cfg)) cache.emplace(*cdir);

    SweepOptions options;
    options.coprime_only = cfg.coprime_only;
    options.atlas.trust_paper_strata = cfg.trust_paper_strata;
    options.jobs = f.jobs;

    std::vector<Integer> genera = cfg.genera;
    std::sort(genera.begin(), genera.end());
    genera.erase(std::unique(genera.begin(), genera.end()), genera.end());

    std::size_t written = 0, cached = 0;
    for (const auto& g : genera) {
        CurveContext ctx = make_curve_context(g, cfg.curve);
        std::vector<Length2Type> types = sweep_types(ctx, cfg.ranks, cfg.degrees, options);

        std::vector<std::optional<std::string>> docs(types.size());
        std::vector<Length2Type> missing;
        std::vector<std::size_t> missing_at;
        for (std::size_t i = 0; i < types.size(); ++i) {
            if (cache) {
                if (auto hit = cache->get(cache_key(ctx, types[i], options.atlas))) {
                    try {
                        Atlas a = atlas_from_json_string(*hit);
                        if (a.hn_type == types[i] && a.context == ctx &&
                            a.options == options.atlas && atlas_to_json_string(a) == *hit) {
                            docs[i] = std::move(*hit);
                            ++cached;
                            continue;
                        }
                    } catch (const std::exception&) {
                        // unreadable entry: recompute and leave the file alone
                    }
                }
            }
            missing.push_back(types[i]);
            missing_at.push_back(i);
        }
        std::vector<Atlas> built = build_atlases(ctx, missing, options.atlas, options.jobs);
        for (std::size_t j = 0; j < built.size(); ++j) {
            std::string doc = atlas_to_json_string(built[j]);
            if (cache) {
                try {
                    cache->put(cache_key(ctx, built[j].hn_type, options.atlas), doc);
                } catch (const std::exception&) {
                    // a cache that cannot be written only costs recomputation
                }
            }
            docs[missing_at[j]] = std::move(doc);
        }
        for (std::size_t i = 0; i < types.size(); ++i) {
            fs::path path = dir / atlas_file_name(g, types[i]);
            try {
                write_file_atomic(path, *docs[i]);
            } catch (const std::runtime_error& e) {
                throw IoError(e.what());
            }
            ++written;
        }
    }
    out << "wrote " << written << " atlas file" << (written == 1 ? "" : "s") << " to "
        << dir.string();
    if (cache) out << " (" << cached << " from cache)";
    out << "\n";
    return kExitOk;
}

int cmd_catalog(const std::string& format, std::ostream& out) {
    if (format == "json") {
        Json arr = Json::array();
        for (const auto& r : rule_catalog())
            arr.push_back({{"id", std::string(r.id)}, {"citation", std::string(r.citation)}});
        out << Json{{"version", std::string(kRuleCatalogVersion)}, {"rules", arr}}.dump(2) << "\n";
        return kExitOk;
    }
    out << "# Rule catalog " << kRuleCatalogVersion << "\n\n";
    for (const auto& r : rule_catalog()) out << "- " << r.id << ": " << r.citation << "\n";
    return kExitOk;
}

int cmd_check(std::ostream& out) {
    std::vector<oracle::CheckReport> reports{oracle::check_beta_identity(),
                                             oracle::check_dimpt_identity(),
                                             oracle::check_classical_rho(10, 25)};
    Json arr = Json::array();
    bool ok = true;
    for (const auto& r : reports) {
        arr.push_back(to_json(r));
        ok &= r.passed();
    }
    out << arr.dump(2) << "\n";
    return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Harder-Narasimhan strata of vector bundles on curves: existence atlases",
                 "hnstrata"};
    app.require_subcommand(1);
    const std::vector<std::string> formats{"json", "csv", "md"};
    const std::vector<std::string> curves{"arbitrary", "general", "petri"};

    ClassifyFlags cf;
    auto* classify = app.add_subcommand("classify", "Classify strata U_mu1(n,d,k) of one type");
    classify->add_option("--genus", cf.genus, "Genus g >= 2")->required();
    classify->add_option("--n1", cf.n1, "Rank of the maximal destabilizing subbundle")->required();
    classify->add_option("--d1", cf.d1, "Its degree")->required();
    classify->add_option("--n2", cf.n2, "Rank of the quotient")->required();
    classify->add_option("--d2", cf.d2, "Degree of the quotient")->required();
    classify->add_option("--k", cf.k, "Single stratum index (default: full atlas)");
    classify->add_option("--curve", cf.curve, "Curve class")->check(CLI::IsMember(curves));
    classify->add_option("--format", cf.format, "Output format")->check(CLI::IsMember(formats));
    classify->add_flag("--trust-paper-strata", cf.trust,
                       "Upgrade syzygy-bundle B^k results to stratum non-emptiness");

    EnumerateFlags ef;
    auto* enumerate = app.add_subcommand("enumerate", "List HN types of given rank and degree");
    enumerate->add_option("--genus", ef.genus, "Genus g >= 2")->required();
    enumerate->add_option("--rank", ef.rank, "Total rank n >= 2")->required();
    enumerate->add_option("--degree", ef.degree, "Total degree d")->required();
    enumerate->add_option("--length", ef.length, "HN length (default 2)");
    enumerate->add_flag("--coprime-only,!--no-coprime-only", ef.coprime_only,
                        "Keep only coprime types (default on)");
    enumerate->add_flag("--quotients-only", ef.quotients_only,
                        "Coprimality on quotients only, not on the filtration steps");
    enumerate->add_option("--format", ef.format, "Output format")->check(CLI::IsMember(formats));

    SweepFlags sf;
    auto* sweep_cmd = app.add_subcommand("sweep", "Write one JSON atlas per type of a parameter grid");
    sweep_cmd->add_option("--config", sf.config, "Sweep configuration file")->required();
    sweep_cmd->add_option("--jobs", sf.jobs, "Worker threads")->check(CLI::PositiveNumber);

    std::string catalog_format = "md";
    auto* catalog = app.add_subcommand("catalog", "Print the rule catalog");
    catalog->add_option("--format", catalog_format, "Output format")
        ->check(CLI::IsMember(std::vector<std::string>{"json", "md"}));

    auto* check = app.add_subcommand("check", "Run the algebraic identity checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*classify) return cmd_classify(cf, out);
        if (*enumerate) return cmd_enumerate(ef, out);
        if (*sweep_cmd) return cmd_sweep(sf, out);
        if (*catalog) return cmd_catalog(catalog_format, out);
        if (*check) return cmd_check(out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace hnstrata
