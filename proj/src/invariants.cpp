#include "hnstrata/invariants.hpp"

namespace hnstrata {

TwistInvariants twist_invariants(const Length2Type& t, const Integer& g) {
    return {t.d0(), t.n0(), t.chi0(g), g};
}

std::optional<Integer> EndAlgebraDescriptor::multiply(const Integer& i, const Integer& j) const {
    if (i < 0 || i > k || j < 0 || j > k)
        throw std::out_of_range("basis index outside [0, " + k.str() + "]");
    if (i == 0) return j;
    if (j == 0) return i;
    return std::nullopt;  // x_i x_j = 0 in A_k
}

Integer h1_of(const Integer& k, const Length2Type& t, const Integer& g) {
    return k - t.d0() + t.n0() * (g - 1);
}

Integer bn_number(const Integer& g, const Integer& n, const Integer& d, const Integer& k) {
    return n * n * (g - 1) + 1 - k * (k - d + n * (g - 1));
}

Integer twisted_expected_dim(const Integer& g, const Length2Type& t, const Integer& k) {
    Integer dim_m1_m2 = (t.n1() * t.n1() + t.n2() * t.n2()) * (g - 1) + 2;
    return dim_m1_m2 - k * (k - t.d0() + t.n0() * (g - 1));
}

Integer beta(const Integer& g, const Length2Type& t, const Integer& k) {
    return (t.n1() * t.n1() + t.n2() * t.n2()) * (g - 1) + 1 -
           (k - 1) * (k - t.d0() + t.n0() * (g - 1));
}

Integer dim_pt(const Integer& k, const Length2Type& t, const Integer& g) {
    return k - t.d0() + t.n0() * (g - 1) - 1;
}

Integer clifford_max_k(const Length2Type& t) { return floor_div(t.d0() + 2 * t.n0(), 2); }

EndAlgebraDescriptor end_algebra(const Integer& k) {
    if (k < 0) throw std::invalid_argument("end_algebra: k must be >= 0");
    return {k, 1 + k, k};
}

Integer end_dim_bound_semistable(const Integer& n) { return 1 + n * (n - 1) / 2; }

Integer end_dim_bound_length2(const Integer& n, const Integer& h0_twist) {
    return end_dim_bound_semistable(n) + h0_twist;
}

Integer end_dim_bound_lengthm(const Integer& n, std::span<const Integer> h0_list) {
    if (h0_list.empty()) throw std::invalid_argument("end_dim_bound_lengthm: need m - 1 >= 1 terms");
    Integer sum = 0;
    for (const auto& h : h0_list) sum += h;
    return end_dim_bound_semistable(n) + sum;
}

Integer end_dim_simple_type(const Integer& h0_last) { return 1 + h0_last; }

Integer h0_general(const Integer& n, const Integer& d, const Integer& g) {
    Rational mu(d, n);
    if (!(mu > 0) || !(mu < Rational(2 * (g - 1))))
        throw std::out_of_range("h0_general: slope " + mu.str() + " outside (0, " +
                                Integer(2 * (g - 1)).str() + ")");
    if (mu < Rational(g - 1)) return 0;
    return euler_char(n, d, g);
}

std::optional<Integer> h0_hn_general(const HNType& t, const Integer& g) {
    if (mu_min(t) > Rational(g + 1)) return euler_char(t.total_rank(), t.total_degree(), g);
    Rational top = mu_max(t);
    if (top > 0 && top < Rational(g)) return Integer(0);
    return std::nullopt;
}

Rational hn_special_clifford(const Integer& n, const Integer& d) {
    return Rational(d, 2) + Rational(n);
}

bool vanishing_h1(const HNType& t, const Integer& g) { return mu_min(t) > Rational(2 * g - 1); }

}  // namespace hnstrata
