#pragma once

#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace dircf {

using int128 = __int128;

namespace detail {

inline int128 abs128(int128 x) { return x < 0 ? -x : x; }

inline int128 gcd128(int128 a, int128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline int128 checked_add(int128 a, int128 b) {
    int128 r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("rational: 128-bit overflow in add");
    return r;
}

inline int128 checked_mul(int128 a, int128 b) {
    int128 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("rational: 128-bit overflow in mul");
    return r;
}

inline std::string int128_to_string(int128 x) {
    if (x == 0) return "0";
    bool neg = x < 0;
    std::string digits;
    // careful with INT128_MIN: negate via unsigned
    unsigned __int128 u = neg ? (unsigned __int128)(-(x + 1)) + 1 : (unsigned __int128)x;
    while (u != 0) {
        digits.push_back(static_cast<char>('0' + (int)(u % 10)));
        u /= 10;
    }
    if (neg) digits.push_back('-');
    return std::string(digits.rbegin(), digits.rend());
}

}  // namespace detail

/// Exact rational on 128-bit integers, always normalized (gcd 1, positive
/// denominator). Every operation overflow-checks and throws rather than
/// wrapping; gcd-reduced add/mul keep intermediates small enough for cycle
/// indices up to degree ~30.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }
    static Rational from_int128(int128 n, int128 d) {
        Rational r;
        r.num_ = n;
        r.den_ = d;
        r.normalize();
        return r;
    }

    int128 num() const { return num_; }
    int128 den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    /// Numerator/denominator as int64, throwing when out of range (JSON I/O).
    long long num_i64() const { return narrow(num_); }
    long long den_i64() const { return narrow(den_); }

    Rational& operator+=(const Rational& o) {
        // gcd-optimized: den = lcm, keeps intermediates near the reduced size
        int128 g = detail::gcd128(den_, o.den_);
        int128 t = detail::checked_add(detail::checked_mul(num_, o.den_ / g),
                                       detail::checked_mul(o.num_, den_ / g));
        int128 d = detail::checked_mul(den_, o.den_ / g);
        num_ = t;
        den_ = d;
        normalize();
        return *this;
    }
    Rational& operator-=(const Rational& o) { return *this += Rational::from_int128(-o.num_, o.den_); }
    Rational& operator*=(const Rational& o) {
        int128 g1 = detail::gcd128(num_, o.den_);
        int128 g2 = detail::gcd128(o.num_, den_);
        num_ = detail::checked_mul(num_ / g1, o.num_ / g2);
        den_ = detail::checked_mul(den_ / g2, o.den_ / g1);
        if (den_ < 0) { den_ = -den_; num_ = -num_; }
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.num_ == 0) throw std::domain_error("rational: division by zero");
        return *this *= Rational::from_int128(o.den_, o.num_);
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational::from_int128(-a.num_, a.den_); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return detail::checked_mul(a.num_, b.den_) < detail::checked_mul(b.num_, a.den_);
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::string to_string() const {
        std::string s = detail::int128_to_string(num_);
        if (den_ != 1) s += "/" + detail::int128_to_string(den_);
        return s;
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.to_string();
    }

private:
    void normalize() {
        if (den_ == 0) throw std::domain_error("rational: zero denominator");
        if (den_ < 0) { den_ = -den_; num_ = -num_; }
        int128 g = detail::gcd128(num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }
    static long long narrow(int128 v) {
        if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
            throw std::overflow_error("rational: value exceeds 64-bit range");
        return static_cast<long long>(v);
    }

    int128 num_;
    int128 den_;
};

/// n! as an exact rational; throws past the 128-bit range (n > 33).
inline Rational factorial_rational(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    int128 f = 1;
    for (int i = 2; i <= n; ++i) f = detail::checked_mul(f, i);
    return Rational::from_int128(f, 1);
}

inline Rational pow_rational(const Rational& base, int e) {
    if (e < 0) return Rational(1) / pow_rational(base, -e);
    Rational r(1);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace dircf
