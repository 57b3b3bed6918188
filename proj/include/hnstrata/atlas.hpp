#pragma once

// Per-stratum reports and full stratification atlases for length-two types,
// plus parallel parameter sweeps.

#include "hnstrata/exact.hpp"
#include "hnstrata/hn.hpp"
#include "hnstrata/invariants.hpp"
#include "hnstrata/rules.hpp"

#include <string>
#include <vector>

namespace hnstrata {

struct AtlasOptions {
    bool trust_paper_strata = false;

    friend bool operator==(const AtlasOptions&, const AtlasOptions&) = default;
};

struct StratumReport {
    Integer k;
    Integer h1;
    Integer beta;
    EndAlgebraDescriptor end_algebra;
    Verdict verdict;
    bool fine_moduli = false;  // k = 0 and the gates pass

    friend bool operator==(const StratumReport&, const StratumReport&) = default;
};

struct GateSummary {
    Rational gap;
    bool admissible = false;
    Integer chi0;
    Integer clifford_max_k;
    std::vector<std::string> notes;

    friend bool operator==(const GateSummary&, const GateSummary&) = default;
};

struct Atlas {
    CurveContext context;
    Length2Type hn_type;
    AtlasOptions options;
    GateSummary gate_summary;
    std::vector<StratumReport> strata;  // k = 0 .. clifford_max_k; empty if inadmissible
    std::string rule_catalog_version;

    bool admissible() const { return gate_summary.admissible; }

    friend bool operator==(const Atlas&, const Atlas&) = default;
};

/// Gates, then every applicable rule, merged with full provenance.
StratumReport classify_stratum(const CurveContext& ctx, const Length2Type& t, const Integer& k,
                               const AtlasOptions& options = {});

/// All strata k = 0 .. clifford_max_k, then propagation of B^k knowledge
/// along B^k >= B^(k+1). An inadmissible gap yields an atlas with no strata.
Atlas build_atlas(const CurveContext& ctx, const Length2Type& t, const AtlasOptions& options = {});

struct SweepOptions {
    bool coprime_only = true;
    CoprimeReading reading = CoprimeReading::Strict;
    AtlasOptions atlas;
    unsigned jobs = 1;
};

/// build_atlas over a list of types on up to `jobs` threads; results keep
/// the input order.
std::vector<Atlas> build_atlases(const CurveContext& ctx, const std::vector<Length2Type>& types,
                                 const AtlasOptions& options = {}, unsigned jobs = 1);

/// Types swept for the given ranges, in sweep order.
std::vector<Length2Type> sweep_types(const CurveContext& ctx, const std::vector<Integer>& ranks,
                                     const std::vector<Integer>& degrees,
                                     const SweepOptions& options = {});

/// One atlas per (n, d, admissible type), ordered by n, d, then type. The
/// result does not depend on options.jobs. Ranks below 2 are skipped.
std::vector<Atlas> sweep(const CurveContext& ctx, const std::vector<Integer>& ranks,
                         const std::vector<Integer>& degrees, const SweepOptions& options = {});

}  // namespace hnstrata
