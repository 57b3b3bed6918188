#pragma once

// Existence theorems for Brill-Noether loci and for the moduli strata
// U_mu1(n,d,k) as executable predicates.
//
// Each rule checks its own hypotheses and either abstains (Unknown) or
// returns a verdict carrying its rule id and citation. Rules never look at
// each other's conclusions except through explicit chaining of a
// "B(n,d,k) is non-empty" hypothesis (certify_bn_nonempty). Disagreements
// are recorded as conflicts and never silently resolved.

#include "hnstrata/exact.hpp"
#include "hnstrata/hn.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hnstrata {

/// Bumped whenever a rule's hypotheses or conclusions change.
inline constexpr std::string_view kRuleCatalogVersion = "hnstrata-rules/1";

enum class CurveClass { Arbitrary, General, Petri };

struct CurveContext {
    Integer genus;
    CurveClass curve_class = CurveClass::Arbitrary;

    friend bool operator==(const CurveContext&, const CurveContext&) = default;
};

/// Throws std::invalid_argument when genus < 2.
CurveContext make_curve_context(Integer genus, CurveClass curve_class = CurveClass::Arbitrary);

enum class Status { Empty, NonEmptyU, NonEmptyBk, Unknown };
enum class Tri { Yes, No, Unknown };
enum class Existence { Empty, NonEmpty, Unknown };

struct Provenance {
    std::string rule_id;
    std::string citation;
    std::string detail;  // instantiated hypotheses for this firing

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Conflict {
    std::string rule_a;
    std::string rule_b;
    std::string description;

    friend bool operator==(const Conflict&, const Conflict&) = default;
};

/// Verdict on a moduli stratum U_mu1(n,d,k).
///
/// NonEmptyBk only asserts that B^k(U_1, U_2^*) is non-empty. bk_nonempty
/// carries what is known about that twisted Brill-Noether locus separately
/// from the stratum status (an empty stratum can sit over a non-empty B^k).
struct Verdict {
    Status status = Status::Unknown;
    Tri irreducible = Tri::Unknown;
    Tri smooth = Tri::Unknown;
    std::optional<Integer> dimension;
    std::vector<Provenance> provenance;
    std::vector<Conflict> conflicts;
    std::vector<std::string> notes;
    Tri bk_nonempty = Tri::Unknown;

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Verdict on a Brill-Noether locus B(n,d,k) or on a stratum Y_k.
struct LocusVerdict {
    Existence existence = Existence::Unknown;
    Tri irreducible = Tri::Unknown;
    Tri smooth = Tri::Unknown;
    std::optional<Integer> dimension;
    bool expected_component = false;  // has a component of the expected dimension
    std::vector<Provenance> provenance;
    std::vector<std::string> notes;
};

struct RuleInfo {
    std::string_view id;
    std::string_view citation;
};

/// All rules in priority order; provenance lists follow this order.
std::span<const RuleInfo> rule_catalog();
/// Throws std::out_of_range for an unknown id.
const RuleInfo& rule_info(std::string_view id);

std::string_view to_string(Status s);
std::string_view to_string(Tri t);
std::string_view to_string(Existence e);
std::string_view to_string(CurveClass c);
/// Inverse of to_string; throw std::invalid_argument on unknown text.
Status parse_status(std::string_view text);
Tri parse_tri(std::string_view text);
CurveClass parse_curve_class(std::string_view text);

// ---------------------------------------------------------------------------
// Gates
// ---------------------------------------------------------------------------

enum class GateReason {
    None,
    GapTooLarge,       // mu_1 - mu_2 > 2g - 2: every extension splits
    BelowChi,          // k < chi0: h^0 >= chi0 always
    ZeroH1,            // k = chi0: h^1 = 0, no non-split extension
    CliffordExceeded,  // k > floor(d0/2 + n0)
};

struct GateResult {
    bool pass = true;
    GateReason reason = GateReason::None;
    std::string rule_id;  // empty when pass
    std::string detail;
};

/// Checks, in order: slope gap, k < chi0, k = chi0, Clifford bound.
GateResult gate_stratum(const Length2Type& t, const Integer& g, const Integer& k);

// ---------------------------------------------------------------------------
// Brill-Noether loci B(n,d,k)
// ---------------------------------------------------------------------------

/// B(n,d,k) = M(n,d), non-empty of dimension n^2(g-1)+1, when k <= chi.
LocusVerdict rule_bn_chi(const Integer& g, const Integer& n, const Integer& d, const Integer& k);

/// Iff criterion for 0 < d/n < 2 on any curve; Unknown outside that range.
LocusVerdict rule_bgn(const Integer& g, const Integer& n, const Integer& d, const Integer& k);

/// Sufficient condition on a general curve (existential search over s).
LocusVerdict rule_general_curve(const CurveContext& ctx, const Integer& n, const Integer& d,
                                const Integer& k);

/// Sufficient condition on a generic curve: one component of expected dimension.
LocusVerdict rule_generic_curve(const CurveContext& ctx, const Integer& n, const Integer& d,
                                const Integer& k);

/// B(n,d,n+1) on a Petri curve of genus g >= 3 with n >= 5 and g >= 2n - 4.
LocusVerdict rule_petri(const CurveContext& ctx, const Integer& n, const Integer& d);

/// Chains every B(n,d,k) rule applicable under ctx.
LocusVerdict certify_bn_nonempty(const CurveContext& ctx, const Integer& n, const Integer& d,
                                 const Integer& k);

// ---------------------------------------------------------------------------
// Strata U_mu1(n,d,k)
// ---------------------------------------------------------------------------

enum class Gating {
    Apply,  // abstain when gate_stratum fails for the induced type
    Raw,    // evaluate the statement exactly as printed
};

struct RuleOptions {
    bool trust_paper_strata = false;
};

/// Type with a line-bundle quotient of degree a: mu_1 = (d-a)/(n-1).
Verdict rule_teop3(const Integer& g, const Integer& n, const Integer& d, const Integer& a,
                   const Integer& k, Gating gating = Gating::Apply);

/// The genus-two specialisation of rule_teop3, including its emptiness clause.
Verdict rule_genus2(const Integer& g, const Integer& n, const Integer& d, const Integer& a,
                    const Integer& k, Gating gating = Gating::Apply);

/// General/Petri curve existence for n2 = 1 types, chained through
/// rule_general_curve, rule_generic_curve and rule_petri applied to the twist.
Verdict rule_teop4(const CurveContext& ctx, const Length2Type& t, const Integer& k,
                   Gating gating = Gating::Apply);

/// k1 k2 - h0(G (x) E_1): a lower bound for h0(F_1^* (x) E_1) when >= 0.
Integer multiplication_defect(const Integer& k1, const Integer& k2, const Integer& h0_ge1);

/// Upper end of the k range covered by rule_teop05.
Integer teop05_bound(const Integer& g, const Integer& n1, const Integer& d1, const Integer& a,
                     const Integer& m, const Integer& d2);

/// Twisted loci via syzygy bundles of a generated stable bundle of rank m
/// and degree d2; n2 = d2 - mg.
Verdict rule_teop05(const CurveContext& ctx, const Integer& n1, const Integer& d1,
                    const Integer& a, const Integer& m, const Integer& d2, const Integer& k,
                    const RuleOptions& options = {});

/// Twisted loci on a Petri curve via a generated linear system of degree d2
/// and dimension n2 + 1.
Verdict rule_teopetrif(const CurveContext& ctx, const Integer& n1, const Integer& d1,
                       const Integer& t_sections, const Integer& n2, const Integer& d2,
                       const Integer& k, const RuleOptions& options = {});

/// Y_k for a type with a line-bundle quotient, read off rule_bgn applied to
/// the twist: Y_k ~ (B(n1,d0,k) - B(n1,d0,k+1)) x Pic^a.
/// Throws std::invalid_argument unless t.n2() == 1.
LocusVerdict yk_from_bgn(const Integer& g, const Length2Type& t, const Integer& k);

/// Projective-bundle lift of a Y_k verdict to U_mu1(n,d,k).
Verdict lift_to_U(const LocusVerdict& yk, const Length2Type& t, const Integer& g,
                  const Integer& k);

/// Order-independent merge. Empty against NonEmptyU becomes Unknown with a
/// conflict per disagreeing pair; NonEmptyU dominates NonEmptyBk; provenance
/// is listed in catalog order.
Verdict merge_verdicts(std::span<const Verdict> verdicts);

/// Sort provenance by catalog priority, then detail; drop exact duplicates.
void canonicalize(Verdict& v);

}  // namespace hnstrata
