#include "hnstrata/hn.hpp"

#include <algorithm>
#include <sstream>

namespace hnstrata {

namespace {

std::strong_ordering compare_integers(const Integer& a, const Integer& b) {
    if (a < b) return std::strong_ordering::less;
    if (a > b) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

bool lex_less(const HNType& a, const HNType& b) {
    const auto& pa = a.parts();
    const auto& pb = b.parts();
    for (std::size_t i = 0; i < std::min(pa.size(), pb.size()); ++i) {
        if (auto c = compare_integers(pa[i].rank, pb[i].rank); c != 0) return c < 0;
        if (auto c = compare_integers(pa[i].degree, pb[i].degree); c != 0) return c < 0;
    }
    return pa.size() < pb.size();
}

}  // namespace

Integer HNType::total_rank() const {
    Integer n = 0;
    for (const auto& p : parts_) n += p.rank;
    return n;
}

Integer HNType::total_degree() const {
    Integer d = 0;
    for (const auto& p : parts_) d += p.degree;
    return d;
}

std::vector<Rational> HNType::slopes() const {
    std::vector<Rational> out;
    out.reserve(parts_.size());
    for (const auto& p : parts_) out.push_back(p.slope());
    return out;
}

HNType make_hn_type(std::vector<HNPart> parts) {
    if (parts.size() < 2)
        throw HNValidationError(0, "an HN type needs at least two parts, got " +
                                       std::to_string(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].rank < 1)
            throw HNValidationError(i, "part " + std::to_string(i) + " has rank " +
                                           parts[i].rank.str() + " < 1");
    }
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        if (!(parts[i].slope() > parts[i + 1].slope())) {
            throw HNValidationError(i, "slopes must strictly decrease: part " + std::to_string(i) +
                                           " has slope " + parts[i].slope().str() + ", part " +
                                           std::to_string(i + 1) + " has slope " +
                                           parts[i + 1].slope().str());
        }
    }
    return HNType(std::move(parts));
}

Rational mu_max(const HNType& t) { return t.parts().front().slope(); }

Rational mu_min(const HNType& t) { return t.parts().back().slope(); }

bool is_coprime_type(const HNType& t, CoprimeReading reading) {
    for (const auto& p : t.parts()) {
        if (!is_coprime(p.rank, p.degree)) return false;
    }
    if (reading == CoprimeReading::QuotientsOnly) return true;
    // E_i for i = 1 .. m-1; E_1 is the first part and already checked
    Integer rank = 0;
    Integer degree = 0;
    for (std::size_t i = 0; i + 1 < t.length(); ++i) {
        rank += t.parts()[i].rank;
        degree += t.parts()[i].degree;
        if (!is_coprime(rank, degree)) return false;
    }
    return true;
}

Length2Type::Length2Type(Integer n1, Integer d1, Integer n2, Integer d2)
    : n1_(std::move(n1)), d1_(std::move(d1)), n2_(std::move(n2)), d2_(std::move(d2)) {
    if (n1_ < 1) throw HNValidationError(0, "n1 must be >= 1, got " + n1_.str());
    if (n2_ < 1) throw HNValidationError(1, "n2 must be >= 1, got " + n2_.str());
    if (d0() <= 0)
        throw HNValidationError(0, "slopes must strictly decrease: " + mu1().str() +
                                       " <= " + mu2().str());
}

HNType Length2Type::as_hn_type() const { return make_hn_type({{n1_, d1_}, {n2_, d2_}}); }

std::string Length2Type::str() const {
    std::ostringstream os;
    os << "(" << n1_ << "," << d1_ << "," << n2_ << "," << d2_ << ")";
    return os.str();
}

std::strong_ordering operator<=>(const Length2Type& a, const Length2Type& b) {
    if (auto c = compare_integers(a.n1_, b.n1_); c != 0) return c;
    if (auto c = compare_integers(a.d1_, b.d1_); c != 0) return c;
    if (auto c = compare_integers(a.n2_, b.n2_); c != 0) return c;
    return compare_integers(a.d2_, b.d2_);
}

bool admissible_gap(const Length2Type& t, const Integer& g) {
    return t.d0() <= (2 * g - 2) * t.n0();
}

std::vector<Length2Type> enumerate_length2(const Integer& n, const Integer& d, const Integer& g,
                                           bool coprime_only, CoprimeReading reading) {
    if (n < 2) throw std::invalid_argument("enumerate_length2 needs rank >= 2, got " + n.str());
    std::vector<Length2Type> out;
    for (Integer n1 = 1; n1 < n; ++n1) {
        Integer n2 = n - n1;
        // d0 = n*d1 - n1*d > 0 and d0 <= (2g-2)*n1*n2
        Integer lo = floor_div(n1 * d, n) + 1;
        Integer hi = floor_div(n1 * d + (2 * g - 2) * n1 * n2, n);
        for (Integer d1 = lo; d1 <= hi; ++d1) {
            Length2Type t(n1, d1, n2, d - d1);
            if (coprime_only && !is_coprime_type(t.as_hn_type(), reading)) continue;
            out.push_back(std::move(t));
        }
    }
    return out;
}

namespace {

struct HnSearch {
    std::size_t m;
    Integer g;
    Integer n;
    Integer d;
    Integer span;  // (m - 1)(2g - 2): every slope is within span of d/n
    std::vector<HNPart> current;
    std::vector<HNType> found;

    bool fits_after_previous(const HNPart& p) const {
        if (current.empty()) return true;
        Rational prev = current.back().slope();
        Rational s = p.slope();
        return prev > s && prev - s <= Rational(2 * g - 2);
    }

    void run(const Integer& rank_left, const Integer& degree_left) {
        std::size_t placed = current.size();
        if (placed + 1 == m) {
            HNPart last{rank_left, degree_left};
            if (fits_after_previous(last)) {
                current.push_back(last);
                found.push_back(make_hn_type(current));
                current.pop_back();
            }
            return;
        }
        Integer parts_after = static_cast<long long>(m - placed - 1);
        for (Integer ni = 1; ni <= rank_left - parts_after; ++ni) {
            Integer lo = ceil_div(ni * (d - span * n), n);
            Integer hi = floor_div(ni * (d + span * n), n);
            for (Integer di = lo; di <= hi; ++di) {
                HNPart p{ni, di};
                if (!fits_after_previous(p)) continue;
                current.push_back(p);
                run(rank_left - ni, degree_left - di);
                current.pop_back();
            }
        }
    }
};

}  // namespace

std::vector<HNType> enumerate_hn_types(const Integer& n, const Integer& d, std::size_t m,
                                       const Integer& g) {
    if (m < 2) throw std::invalid_argument("HN length must be >= 2");
    if (Integer(static_cast<long long>(m)) > n)
        throw std::invalid_argument("HN length " + std::to_string(m) + " exceeds rank " + n.str());
    HnSearch search{m, g, n, d, Integer(static_cast<long long>(m - 1)) * (2 * g - 2), {}, {}};
    search.run(n, d);
    std::sort(search.found.begin(), search.found.end(), lex_less);
    return std::move(search.found);
}

}  // namespace hnstrata
