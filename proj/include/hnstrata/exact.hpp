#pragma once

// Exact integer and rational arithmetic. Every slope, bound and dimension in
// the engine goes through these types; nothing is ever rounded.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hnstrata {

using Integer = boost::multiprecision::cpp_int;

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(Integer n) : num_(std::move(n)), den_(1) {}  // NOLINT
    Rational(long long n) : num_(n), den_(1) {}           // NOLINT
    Rational(int n) : num_(n), den_(1) {}                 // NOLINT

    /// Throws std::domain_error on a zero denominator.
    Rational(Integer num, Integer den);

    const Integer& numerator() const noexcept { return num_; }
    const Integer& denominator() const noexcept { return den_; }

    bool is_integer() const noexcept { return den_ == 1; }

    /// Largest integer <= value.
    Integer floor() const;
    /// Smallest integer >= value.
    Integer ceil() const;

    /// "p" for integers, "p/q" otherwise.
    std::string str() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    /// Throws std::domain_error when rhs is zero.
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void normalize();

    Integer num_;
    Integer den_;
};

/// Reduced fraction num/den with positive denominator.
Rational make_rational(const Integer& num, const Integer& den);

/// Parses "p" or "p/q"; throws std::invalid_argument on malformed text.
Rational parse_rational(const std::string& text);

/// Euler characteristic chi = d + n(1 - g) of a rank-n degree-d bundle.
Integer euler_char(const Integer& n, const Integer& d, const Integer& g);

/// gcd(|a|, |b|) == 1. Throws std::invalid_argument for (0, 0).
bool is_coprime(const Integer& a, const Integer& b);

/// Non-negative gcd.
Integer gcd(const Integer& a, const Integer& b);

/// Floor and ceiling of a/b for b != 0.
Integer floor_div(const Integer& a, const Integer& b);
Integer ceil_div(const Integer& a, const Integer& b);

/// Decimal text of an integer.
std::string to_string(const Integer& x);

/// Parses an optionally signed decimal integer; throws std::invalid_argument.
Integer parse_integer(const std::string& text);

/// True when |x| <= 2^53, i.e. x round-trips through an IEEE double.
bool fits_in_double_exactly(const Integer& x);

/// Narrowing to long long; throws std::out_of_range when it does not fit.
long long to_ll(const Integer& x);

}  // namespace hnstrata
