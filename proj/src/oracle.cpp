#include "hnstrata/oracle.hpp"

#include "hnstrata/hn.hpp"
#include "hnstrata/invariants.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hnstrata::oracle {

namespace {

std::string tuple_str(std::initializer_list<long long> xs) {
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (long long x : xs) {
        if (!first) os << ",";
        os << x;
        first = false;
    }
    os << ")";
    return os.str();
}

template <class F>
void for_each_type(const IdentityGrid& grid, F&& f) {
    for (long long g = grid.g_min; g <= grid.g_max; ++g)
        for (long long n1 = 1; n1 <= grid.rank_max; ++n1)
            for (long long n2 = 1; n2 <= grid.rank_max; ++n2)
                for (long long d1 = grid.degree_min; d1 <= grid.degree_max; ++d1)
                    for (long long d2 = grid.degree_min; d2 <= grid.degree_max; ++d2) {
                        if (n2 * d1 - n1 * d2 <= 0) continue;
                        for (long long k = 0; k <= grid.k_max; ++k) f(g, n1, d1, n2, d2, k);
                    }
}

void check_limits(long long n, long long d) {
    if (n < 2) throw std::invalid_argument("oracle: rank must be >= 2");
    if (n > 8) throw std::invalid_argument("oracle: rank must be <= 8");
    if (std::llabs(d) > 30) throw std::invalid_argument("oracle: |degree| must be <= 30");
}

bool coprime(long long a, long long b) { return std::gcd(a, b) == 1; }

}  // namespace

CheckReport check_beta_identity(const IdentityGrid& grid) {
    CheckReport r{"beta_identity", 0, {}};
    for_each_type(grid, [&](long long g, long long n1, long long d1, long long n2, long long d2,
                            long long k) {
        ++r.cases_run;
        Length2Type t(n1, d1, n2, d2);
        long long d0 = n2 * d1 - n1 * d2;
        long long h1 = k - d0 + n1 * n2 * (g - 1);
        long long expanded = (n1 * n1 + n2 * n2) * (g - 1) + 1 - (k - 1) * h1;
        Integer b = beta(g, t, k);
        Integer via_rho = twisted_expected_dim(g, t, k) + h1_of(k, t, g) - 1;
        if (b != expanded || via_rho != expanded) {
            r.failures.push_back({tuple_str({g, n1, d1, n2, d2, k}), std::to_string(expanded),
                                  "beta=" + b.str() + " rho+h1-1=" + via_rho.str()});
        }
    });
    return r;
}

CheckReport check_dimpt_identity(const IdentityGrid& grid) {
    CheckReport r{"dimpt_identity", 0, {}};
    for_each_type(grid, [&](long long g, long long n1, long long d1, long long n2, long long d2,
                            long long k) {
        ++r.cases_run;
        Length2Type t(n1, d1, n2, d2);
        long long h1 = k - (n2 * d1 - n1 * d2) + n1 * n2 * (g - 1);
        Integer got = dim_pt(k, t, g);
        if (got != h1 - 1 || h1_of(k, t, g) != h1) {
            r.failures.push_back(
                {tuple_str({g, n1, d1, n2, d2, k}), std::to_string(h1 - 1), got.str()});
        }
    });
    return r;
}

CheckReport check_classical_rho(long long g_max, long long d_max) {
    CheckReport r{"classical_rho", 0, {}};
    for (long long g = 0; g <= g_max; ++g)
        for (long long d = 0; d <= d_max; ++d)
            for (long long k = 0; k <= d + 2; ++k) {
                ++r.cases_run;
                long long classical = g - k * (g - d + k - 1);
                Integer got = bn_number(g, 1, d, k);
                if (got != classical)
                    r.failures.push_back(
                        {tuple_str({g, d, k}), std::to_string(classical), got.str()});
            }
    return r;
}

std::vector<TypeTuple> brute_enumerate_length2(long long n, long long d, long long g,
                                               bool coprime_only) {
    check_limits(n, d);
    std::vector<TypeTuple> out;
    long long bound = std::llabs(d) + 2 * g * n;
    for (long long n1 = 1; n1 < n; ++n1) {
        long long n2 = n - n1;
        for (long long d1 = -bound; d1 <= bound; ++d1) {
            long long d2 = d - d1;
            // mu1 > mu2 and mu1 - mu2 <= 2g - 2, cross-multiplied by n1 n2 > 0
            long long diff = d1 * n2 - d2 * n1;
            if (diff <= 0) continue;
            if (diff > (2 * g - 2) * n1 * n2) continue;
            if (coprime_only && !(coprime(n1, d1) && coprime(n2, d2))) continue;
            out.push_back({n1, d1, n2, d2});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PartsTuple> brute_enumerate_hn_types(long long n, long long d, long long m,
                                                 long long g) {
    check_limits(n, d);
    if (m < 2 || m > std::min(n, 4LL))
        throw std::invalid_argument("oracle: length must be in [2, min(n, 4)]");
    std::vector<PartsTuple> out;
    long long bound = std::llabs(d) + 2 * g * n * (m - 1);
    PartsTuple parts;

    auto valid = [&](const PartsTuple& p) {
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
            long long a = p[i][1] * p[i + 1][0];
            long long b = p[i + 1][1] * p[i][0];
            long long prod = p[i][0] * p[i + 1][0];
            if (a - b <= 0 || a - b > (2 * g - 2) * prod) return false;
        }
        return true;
    };

    // plain nested scan over every rank composition and every degree vector
    auto rec = [&](auto&& self, long long rank_left, long long deg_left) -> void {
        if (static_cast<long long>(parts.size()) == m - 1) {
            if (rank_left < 1) return;
            parts.push_back({rank_left, deg_left});
            if (valid(parts)) out.push_back(parts);
            parts.pop_back();
            return;
        }
        for (long long r = 1; r < rank_left; ++r) {
            for (long long e = -bound; e <= bound; ++e) {
                parts.push_back({r, e});
                self(self, rank_left - r, deg_left - e);
                parts.pop_back();
            }
        }
    };
    rec(rec, n, d);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace hnstrata::oracle
