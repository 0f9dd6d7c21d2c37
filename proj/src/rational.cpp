#include "causalex/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <numeric>

namespace causalex {

namespace {

using i128 = __int128;

long long narrow(i128 v, const char* what) {
    if (v > static_cast<i128>(INT64_MAX) || v < static_cast<i128>(INT64_MIN)) {
        throw RationalError(std::string("rational overflow in ") + what);
    }
    return static_cast<long long>(v);
}

i128 abs128(i128 v) { return v < 0 ? -v : v; }

// gcd over 128-bit magnitudes (inputs come from products of 64-bit values).
i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

Rational::Rational(long long num, long long den) {
    if (den == 0) throw RationalError("zero denominator");
    i128 n = num;
    i128 d = den;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num_ = narrow(n, "normalization");
    den_ = narrow(d, "normalization");
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = narrow(-static_cast<i128>(num_), "negation");
    r.den_ = den_;
    return r;
}

Rational Rational::operator+(const Rational& o) const {
    i128 n = static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_;
    i128 d = static_cast<i128>(den_) * o.den_;
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    Rational r;
    r.num_ = narrow(n, "addition");
    r.den_ = narrow(d, "addition");
    return r;
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    i128 n = static_cast<i128>(num_) * o.num_;
    i128 d = static_cast<i128>(den_) * o.den_;
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    Rational r;
    r.num_ = narrow(n, "multiplication");
    r.den_ = narrow(d, "multiplication");
    return r;
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw RationalError("division by zero");
    i128 n = static_cast<i128>(num_) * o.den_;
    i128 d = static_cast<i128>(den_) * o.num_;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    Rational r;
    r.num_ = narrow(n, "division");
    r.den_ = narrow(d, "division");
    return r;
}

bool Rational::operator<(const Rational& o) const {
    return static_cast<i128>(num_) * o.den_ < static_cast<i128>(o.num_) * den_;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw RationalError("empty numeric literal");
    std::size_t pos = 0;
    bool neg = false;
    if (text[pos] == '-' || text[pos] == '+') {
        neg = text[pos] == '-';
        ++pos;
    }
    auto digits = [&](std::string& out) {
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            out.push_back(text[pos++]);
        }
    };
    std::string ipart;
    digits(ipart);
    if (ipart.empty()) throw RationalError("malformed literal '" + text + "'");

    auto to_ll = [&](const std::string& s) -> long long {
        i128 v = 0;
        for (char c : s) {
            v = v * 10 + (c - '0');
            if (v > static_cast<i128>(INT64_MAX)) {
                throw RationalError("literal out of range '" + text + "'");
            }
        }
        return static_cast<long long>(v);
    };

    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        std::string dpart;
        digits(dpart);
        if (dpart.empty() || pos != text.size()) {
            throw RationalError("malformed literal '" + text + "'");
        }
        long long n = to_ll(ipart);
        long long d = to_ll(dpart);
        return Rational(neg ? -n : n, d);
    }
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        std::string fpart;
        digits(fpart);
        if (fpart.empty() || pos != text.size()) {
            throw RationalError("malformed literal '" + text + "'");
        }
        i128 num = to_ll(ipart);
        i128 den = 1;
        for (char c : fpart) {
            num = num * 10 + (c - '0');
            den = den * 10;
            if (num > static_cast<i128>(INT64_MAX) || den > static_cast<i128>(INT64_MAX)) {
                throw RationalError("literal out of range '" + text + "'");
            }
        }
        return Rational(neg ? -narrow(num, "decimal") : narrow(num, "decimal"),
                        narrow(den, "decimal"));
    }
    if (pos != text.size()) throw RationalError("malformed literal '" + text + "'");
    long long n = to_ll(ipart);
    return Rational(neg ? -n : n);
}

std::size_t Rational::hash() const {
    std::size_t h = std::hash<long long>{}(num_);
    h ^= std::hash<long long>{}(den_) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

}  // namespace causalex
