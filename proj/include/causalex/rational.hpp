#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace causalex {

// Arithmetic overflow or malformed literal while building a rational.
struct RationalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact rational number over 64-bit integers.
//
// Always kept in canonical form: denominator > 0, gcd(|num|, den) == 1.
// Intermediate products run through 128-bit arithmetic; anything that does
// not fit back into 64 bits throws RationalError instead of wrapping.
// There is no floating point anywhere in the engine; decimal literals are
// converted exactly (e.g. "0.3" becomes 3/10).
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(long long num, long long den);

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;  // throws RationalError on /0

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    // "p" when integral, "p/q" otherwise.
    std::string str() const;

    // Accepts "p", "p/q" and exact decimals like "1.25" or "-0.3".
    static Rational parse(const std::string& text);

    std::size_t hash() const;

private:
    long long num_;
    long long den_;
};

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace causalex

template <>
struct std::hash<causalex::Rational> {
    std::size_t operator()(const causalex::Rational& r) const { return r.hash(); }
};
