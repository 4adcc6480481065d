#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>

#include "oneone/errors.hpp"

namespace oneone {

// Exact rational on int64 with overflow detection. Every intermediate is
// carried in 128 bits and the reduced result must fit back into 64.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
        return make(n, (__int128)a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_;
        return make(n, (__int128)a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw ArithmeticOverflow("division by zero");
        return make((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }
    Rational operator-() const { return make(-(__int128)num_, den_); }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }

    friend int cmp(const Rational& a, const Rational& b) {
        __int128 l = (__int128)a.num_ * b.den_, r = (__int128)b.num_ * a.den_;
        return l < r ? -1 : (l > r ? 1 : 0);
    }
    friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator<(const Rational& a, const Rational& b) { return cmp(a, b) < 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a, b) >= 0; }

    int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }
    std::int64_t floor() const {
        std::int64_t q = num_ / den_;
        return (num_ % den_ != 0 && num_ < 0) ? q - 1 : q;
    }
    std::int64_t ceil() const { return -(-*this).floor(); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        os << r.num_;
        if (r.den_ != 1) os << '/' << r.den_;
        return os;
    }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;

    static __int128 gcd128(__int128 a, __int128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
    static Rational make(__int128 n, __int128 d) {
        if (d == 0) throw ArithmeticOverflow("zero denominator");
        if (d < 0) n = -n, d = -d;
        __int128 g = gcd128(n, d);
        if (g > 1) n /= g, d /= g;
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw ArithmeticOverflow("rational out of 64-bit range");
        Rational r;
        r.num_ = (std::int64_t)n;
        r.den_ = (std::int64_t)d;
        return r;
    }
    void assign(std::int64_t n, std::int64_t d) { *this = make(n, d); }
};

}  // namespace oneone
