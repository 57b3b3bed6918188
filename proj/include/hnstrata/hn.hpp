#pragma once

// Harder-Narasimhan types: the numerical shadow (ranks, degrees, slopes) of an
// HN filtration 0 = E_0 < E_1 < ... < E_m = E, plus exhaustive enumeration of
// the types compatible with a given rank, degree and genus.

#include "hnstrata/exact.hpp"

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hnstrata {

struct HNPart {
    Integer rank;
    Integer degree;

    Rational slope() const { return Rational(degree, rank); }
    friend bool operator==(const HNPart&, const HNPart&) = default;
};

/// Raised when a list of parts does not form an HN type. index() is the
/// position of the first offending part (or pair start) in the input list.
class HNValidationError : public std::invalid_argument {
public:
    HNValidationError(std::size_t index, const std::string& what)
        : std::invalid_argument(what), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Ordered semistable quotients with strictly decreasing slopes, m >= 2.
class HNType {
public:
    const std::vector<HNPart>& parts() const noexcept { return parts_; }
    std::size_t length() const noexcept { return parts_.size(); }
    Integer total_rank() const;
    Integer total_degree() const;
    std::vector<Rational> slopes() const;

    friend bool operator==(const HNType&, const HNType&) = default;
    friend HNType make_hn_type(std::vector<HNPart> parts);

private:
    explicit HNType(std::vector<HNPart> parts) : parts_(std::move(parts)) {}
    std::vector<HNPart> parts_;
};

/// Validates ranks >= 1, m >= 2 and strictly decreasing slopes.
HNType make_hn_type(std::vector<HNPart> parts);

Rational mu_max(const HNType& t);
Rational mu_min(const HNType& t);

/// Which bundles of the filtration must have coprime (rank, degree).
enum class CoprimeReading {
    Strict,         // every quotient and every partial sum E_1 .. E_{m-1}
    QuotientsOnly,  // only the graded pieces
};

bool is_coprime_type(const HNType& t, CoprimeReading reading = CoprimeReading::Strict);

/// A length-two type (n1, d1 | n2, d2) with mu_1 = d1/n1 > mu_2 = d2/n2.
/// d0 and n0 are the degree and rank of the twist F_1^* (x) E_1.
class Length2Type {
public:
    /// Throws HNValidationError unless n1, n2 >= 1 and d0 > 0.
    Length2Type(Integer n1, Integer d1, Integer n2, Integer d2);

    const Integer& n1() const noexcept { return n1_; }
    const Integer& d1() const noexcept { return d1_; }
    const Integer& n2() const noexcept { return n2_; }
    const Integer& d2() const noexcept { return d2_; }

    Integer rank() const { return n1_ + n2_; }
    Integer degree() const { return d1_ + d2_; }
    Integer d0() const { return n2_ * d1_ - n1_ * d2_; }
    Integer n0() const { return n1_ * n2_; }
    Integer chi0(const Integer& g) const { return d0() + n0() * (1 - g); }

    Rational mu1() const { return Rational(d1_, n1_); }
    Rational mu2() const { return Rational(d2_, n2_); }
    /// mu_1 - mu_2 = d0 / n0.
    Rational gap() const { return Rational(d0(), n0()); }

    HNType as_hn_type() const;
    std::string str() const;

    friend bool operator==(const Length2Type&, const Length2Type&) = default;
    /// Lexicographic on (n1, d1, n2, d2).
    friend std::strong_ordering operator<=>(const Length2Type& a, const Length2Type& b);

private:
    Integer n1_, d1_, n2_, d2_;
};

/// mu_1 - mu_2 <= 2g - 2; above that every extension splits.
bool admissible_gap(const Length2Type& t, const Integer& g);

/// All admissible splittings of rank n, degree d, sorted by (n1, d1).
/// Throws std::invalid_argument when n < 2.
std::vector<Length2Type> enumerate_length2(const Integer& n, const Integer& d, const Integer& g,
                                           bool coprime_only = true,
                                           CoprimeReading reading = CoprimeReading::Strict);

/// All length-m types of rank n and degree d whose consecutive slope gaps are
/// at most 2g - 2, in lexicographic order of (n_1, d_1, ..., n_m, d_m).
/// Throws std::invalid_argument unless 2 <= m <= n.
std::vector<HNType> enumerate_hn_types(const Integer& n, const Integer& d, std::size_t m,
                                       const Integer& g);

}  // namespace hnstrata
