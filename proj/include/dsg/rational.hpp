#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dsg {

// Exact rational on int64 with __int128 intermediates. All threshold
// comparisons in the maintainers go through this type; there is no
// floating point on any decision path.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }

    // floor/ceil as int64
    std::int64_t floor() const {
        if (num_ >= 0) return num_ / den_;
        return -((-num_ + den_ - 1) / den_);
    }
    std::int64_t ceil() const { return -(-*this).floor(); }

    Rational operator-() const { return Rational(unchecked{}, -num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return make(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return make((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::string str() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Accepts "p/q", plain integers, and decimals like "0.25".
    static Rational parse(const std::string& text);

private:
    struct unchecked {};
    Rational(unchecked, std::int64_t n, std::int64_t d) : num_(n), den_(d) {}

    static Rational make(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("rational overflow");
        return Rational(unchecked{}, (std::int64_t)n, (std::int64_t)d);
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }

    void normalize() {
        Rational r = make(num_, den_);
        num_ = r.num_;
        den_ = r.den_;
    }

    std::int64_t num_;
    std::int64_t den_;
};

}  // namespace dsg
