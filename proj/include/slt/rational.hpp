#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace slt {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& x) { return boost::multiprecision::numerator(x); }
inline Integer denominator(const Rational& x) { return boost::multiprecision::denominator(x); }

/// Always "num/den", also for integers, so JSON consumers see one shape.
inline std::string to_string(const Rational& x) {
    return numerator(x).str() + "/" + denominator(x).str();
}

inline bool is_integral(const Rational& x) { return denominator(x) == 1; }

inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Integer ceil_div(const Integer& a, const Integer& b) {
    return -floor_div(-a, b);
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

/// Narrowing with a range check; lattice code works in 64-bit once sizes are known to be small.
inline std::int64_t to_i64(const Integer& x) {
    if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("integer does not fit in 64 bits: " + x.str());
    return static_cast<std::int64_t>(x);
}

/// A surgery slope p/q > 0 in lowest terms.
class PosRational {
public:
    PosRational(Integer num, Integer den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_ == 0) throw std::invalid_argument("slope denominator is zero");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ <= 0) throw std::invalid_argument("slope must be positive");
        Integer g = boost::multiprecision::gcd(num_, den_);
        num_ /= g;
        den_ /= g;
    }
    explicit PosRational(const Rational& x) : PosRational(numerator(x), denominator(x)) {}
    PosRational(std::int64_t num, std::int64_t den) : PosRational(Integer(num), Integer(den)) {}

    const Integer& num() const { return num_; }
    const Integer& den() const { return den_; }
    Rational value() const { return Rational(num_, den_); }
    bool is_integer() const { return den_ == 1; }

    friend bool operator==(const PosRational& a, const PosRational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator<(const PosRational& a, const PosRational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator<=(const PosRational& a, const PosRational& b) { return !(b < a); }
    friend bool operator>(const PosRational& a, const PosRational& b) { return b < a; }
    friend bool operator>=(const PosRational& a, const PosRational& b) { return !(a < b); }

    std::string str() const { return num_.str() + "/" + den_.str(); }

private:
    Integer num_;
    Integer den_;
};

/// Parses "p/q" or "p". Throws std::invalid_argument on malformed or non-positive input.
inline PosRational parse_slope(std::string_view text) {
    auto parse_int = [](std::string_view s) -> Integer {
        if (s.empty()) throw std::invalid_argument("empty integer");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw std::invalid_argument("malformed integer");
        for (std::size_t k = i; k < s.size(); ++k)
            if (s[k] < '0' || s[k] > '9') throw std::invalid_argument("malformed integer: " + std::string(s));
        return Integer(std::string(s));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return PosRational(parse_int(text), Integer(1));
    return PosRational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

}  // namespace slt
