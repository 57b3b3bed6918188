#pragma once

// Closed-form counts and bounds for length-two types: twist invariants,
// Brill-Noether numbers, expected dimensions of the twisted Brill-Noether
// strata and of the moduli strata, and endomorphism-algebra dimensions.
//
// Everything returns exact integers, negative values included; deciding what
// a negative expected dimension means is left to the rules layer.

#include "hnstrata/exact.hpp"
#include "hnstrata/hn.hpp"

#include <optional>
#include <span>
#include <stdexcept>

namespace hnstrata {

struct TwistInvariants {
    Integer d0;
    Integer n0;
    Integer chi0;  // d0 + n0 (1 - g)
    Integer g;

    friend bool operator==(const TwistInvariants&, const TwistInvariants&) = default;
};

TwistInvariants twist_invariants(const Length2Type& t, const Integer& g);

/// End(E) for an indecomposable length-two bundle of simple type whose twist
/// has k sections: A_k = C[x_1..x_k]/(x_1..x_k)^2.
struct EndAlgebraDescriptor {
    Integer k;
    Integer total_dim;       // 1 + k
    Integer nilradical_dim;  // k

    bool is_simple() const { return k == 0; }

    /// Product of basis elements in the basis {1, x_1, ..., x_k}: index 0 is
    /// the identity and indices 1..k are the nilpotent generators. Returns
    /// the index of the product, or nullopt when the product is zero.
    /// Throws std::out_of_range for an index outside [0, k].
    std::optional<Integer> multiply(const Integer& i, const Integer& j) const;

    friend bool operator==(const EndAlgebraDescriptor&, const EndAlgebraDescriptor&) = default;
};

/// h^1 of the twist on the stratum where it has exactly k sections:
/// k - d0 + n0 (g - 1). May be negative.
Integer h1_of(const Integer& k, const Length2Type& t, const Integer& g);

/// rho(g, n, d, k) = n^2 (g - 1) + 1 - k (k - d + n (g - 1)).
Integer bn_number(const Integer& g, const Integer& n, const Integer& d, const Integer& k);

/// Expected dimension of B^k(U_1, U_2^*) inside M_1 x M_2:
/// (n1^2 + n2^2)(g - 1) + 2 - k (k - d0 + n0 (g - 1)).
Integer twisted_expected_dim(const Integer& g, const Length2Type& t, const Integer& k);

/// Expected dimension of the moduli stratum:
/// (n1^2 + n2^2)(g - 1) + 1 - (k - 1)(k - d0 + n0 (g - 1)).
Integer beta(const Integer& g, const Length2Type& t, const Integer& k);

/// Dimension of the projective space of extensions over a point of Y_k.
Integer dim_pt(const Integer& k, const Length2Type& t, const Integer& g);

/// floor(d0 / 2 + n0): Clifford's bound on sections of the (special) twist.
Integer clifford_max_k(const Length2Type& t);

EndAlgebraDescriptor end_algebra(const Integer& k);

/// 1 + n(n-1)/2, for indecomposable semistable bundles of rank n.
Integer end_dim_bound_semistable(const Integer& n);

/// 1 + n(n-1)/2 + h0_twist, for HN length two.
Integer end_dim_bound_length2(const Integer& n, const Integer& h0_twist);

/// 1 + n(n-1)/2 + sum of h0(F_i^* (x) E_i), for HN-indecomposable length m.
/// Throws std::invalid_argument for an empty list.
Integer end_dim_bound_lengthm(const Integer& n, std::span<const Integer> h0_list);

/// 1 + h0(F_{m-1}^* (x) E_{m-1}) for indecomposable bundles of simple type.
Integer end_dim_simple_type(const Integer& h0_last);

/// h^0 of a general semistable bundle with 0 < d/n < 2(g-1):
/// 0 below slope g-1, chi from g-1 on. Throws std::out_of_range otherwise.
Integer h0_general(const Integer& n, const Integer& d, const Integer& g);

/// h^0 of an HN-general bundle: chi when mu_min > g+1, 0 when 0 < mu_max < g.
/// nullopt means neither clause applies.
std::optional<Integer> h0_hn_general(const HNType& t, const Integer& g);

/// d/2 + n, the Clifford bound for HN-special bundles.
Rational hn_special_clifford(const Integer& n, const Integer& d);

/// mu_min > 2g - 1, which forces H^1(E) = 0 and global generation.
bool vanishing_h1(const HNType& t, const Integer& g);

}  // namespace hnstrata
