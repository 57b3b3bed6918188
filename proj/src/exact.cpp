#include "hnstrata/exact.hpp"

#include <cctype>
#include <limits>

namespace hnstrata {

namespace {

Integer abs_of(const Integer& x) { return x < 0 ? Integer(-x) : x; }

}  // namespace

Integer gcd(const Integer& a, const Integer& b) {
    Integer x = abs_of(a);
    Integer y = abs_of(b);
    while (y != 0) {
        Integer r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

Integer floor_div(const Integer& a, const Integer& b) {
    if (b == 0) throw std::domain_error("floor_div: division by zero");
    Integer q = a / b;  // truncates toward zero
    Integer r = a - q * b;
    if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
    return q;
}

Integer ceil_div(const Integer& a, const Integer& b) { return -floor_div(-a, b); }

Rational::Rational(Integer num, Integer den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    normalize();
}

void Rational::normalize() {
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    Integer g = gcd(num_, den_);
    if (g != 1) {
        num_ /= g;
        den_ /= g;
    }
}

Integer Rational::floor() const { return floor_div(num_, den_); }

Integer Rational::ceil() const { return ceil_div(num_, den_); }

std::string Rational::str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ *= rhs.den_;
    normalize();
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
    num_ *= rhs.num_;
    den_ *= rhs.den_;
    normalize();
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.num_ == 0) throw std::domain_error("rational division by zero");
    Integer n = num_ * rhs.den_;
    Integer d = den_ * rhs.num_;
    num_ = std::move(n);
    den_ = std::move(d);
    normalize();
    return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    // denominators are positive, so cross-multiplication preserves order
    Integer lhs = a.num_ * b.den_;
    Integer rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Rational make_rational(const Integer& num, const Integer& den) { return Rational(num, den); }

Integer parse_integer(const std::string& text) {
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    if (i == text.size()) throw std::invalid_argument("not an integer: '" + text + "'");
    for (std::size_t j = i; j < text.size(); ++j) {
        if (!std::isdigit(static_cast<unsigned char>(text[j])))
            throw std::invalid_argument("not an integer: '" + text + "'");
    }
    Integer value(text[0] == '+' ? text.substr(1) : text);
    return value;
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(parse_integer(text));
    return Rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

Integer euler_char(const Integer& n, const Integer& d, const Integer& g) { return d + n * (1 - g); }

bool is_coprime(const Integer& a, const Integer& b) {
    if (a == 0 && b == 0) throw std::invalid_argument("is_coprime(0, 0) is undefined");
    return gcd(a, b) == 1;
}

std::string to_string(const Integer& x) { return x.str(); }

bool fits_in_double_exactly(const Integer& x) {
    static const Integer limit = Integer(1) << 53;
    return abs_of(x) <= limit;
}

long long to_ll(const Integer& x) {
    static const Integer lo = std::numeric_limits<long long>::min();
    static const Integer hi = std::numeric_limits<long long>::max();
    if (x < lo || x > hi) throw std::out_of_range("integer does not fit in 64 bits: " + x.str());
    return x.convert_to<long long>();
}

}  // namespace hnstrata
