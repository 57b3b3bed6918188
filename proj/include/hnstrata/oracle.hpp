#pragma once

// Naive cross-checks for the main code paths. Nothing here calls the
// enumeration code in hn.cpp; identities are compared against expansions
// written out independently in machine integers.

#include "hnstrata/exact.hpp"

#include <array>
#include <string>
#include <vector>

namespace hnstrata::oracle {

struct Failure {
    std::string input;
    std::string expected;
    std::string got;

    friend bool operator==(const Failure&, const Failure&) = default;
};

struct CheckReport {
    std::string check_name;
    long long cases_run = 0;
    std::vector<Failure> failures;

    bool passed() const { return failures.empty(); }
};

struct IdentityGrid {
    long long g_min = 2, g_max = 6;
    long long rank_max = 4;  // n1 and n2 range over 1..rank_max
    long long degree_min = -6, degree_max = 6;
    long long k_max = 10;
};

/// beta = twisted_expected_dim + h^1 - 1 = (n1^2+n2^2)(g-1) + 1 - (k-1) h^1
/// on every valid type in the grid.
CheckReport check_beta_identity(const IdentityGrid& grid = {});

/// dim_pt = h^1 - 1, with h^1 = k - d0 + n0 (g-1) expanded independently.
CheckReport check_dimpt_identity(const IdentityGrid& grid = {});

/// bn_number(g,1,d,k) = g - k(g-d+k-1) for 0 <= g <= g_max, 0 <= d <= d_max,
/// 0 <= k <= d+2.
CheckReport check_classical_rho(long long g_max, long long d_max);

using TypeTuple = std::array<long long, 4>;  // (n1, d1, n2, d2)
using PartsTuple = std::vector<std::array<long long, 2>>;

/// Every (n1,d1,n2,d2) with n1+n2 = n, d1+d2 = d, mu1 > mu2 and
/// mu1 - mu2 <= 2g-2, scanning d1 over [-|d|-2gn, |d|+2gn]. With
/// coprime_only, each part and E_1 must have coprime rank and degree.
/// Lexicographic order. Throws std::invalid_argument unless 2 <= n <= 8 and
/// |d| <= 30.
std::vector<TypeTuple> brute_enumerate_length2(long long n, long long d, long long g,
                                               bool coprime_only = true);

/// All HN types of length m: strictly decreasing slopes, consecutive gaps
/// <= 2g-2. Lexicographic in (rank, degree) pairs. Same input limits as
/// above, plus 2 <= m <= min(n, 4).
std::vector<PartsTuple> brute_enumerate_hn_types(long long n, long long d, long long m,
                                                 long long g);

}  // namespace hnstrata::oracle
