#include "dsg/numeric.hpp"

#include <cassert>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace dsg {

namespace {
constexpr std::int64_t kScale = std::int64_t(1) << 32;
}

Rational ln_lower(std::int64_t n) {
    if (n <= 0) throw std::domain_error("ln of non-positive value");
    if (n == 1) return Rational(0);
    long double x = logl((long double)n);
    std::int64_t p = (std::int64_t)floorl(x * (long double)kScale) - 1;
    if (p < 0) p = 0;
    return Rational(p, kScale);
}

Rational ln_upper(std::int64_t n) {
    if (n <= 0) throw std::domain_error("ln of non-positive value");
    if (n == 1) return Rational(0);
    long double x = logl((long double)n);
    std::int64_t p = (std::int64_t)ceill(x * (long double)kScale) + 1;
    return Rational(p, kScale);
}

std::int64_t ceil_ln(std::int64_t n) {
    std::int64_t lo = ln_lower(n).ceil();
    std::int64_t hi = ln_upper(n).ceil();
    // ln(n) is irrational for integer n >= 2, so the two bounds cannot
    // straddle an integer at this precision.
    assert(lo == hi);
    return hi;
}

std::int64_t ceil_log_base(const Rational& base, std::int64_t x) {
    if (!(base > Rational(1))) throw std::domain_error("log base must exceed 1");
    if (x <= 1) return 0;
    // Track fixed-point lower and upper bounds of base^L (denominator 2^56).
    // When both bounds cross x at the same L, that L is exactly
    // ceil(log_base(x)); a disagreement would mean x sits within 2^-40ish of
    // an exact power, which we surface rather than guess.
    const __int128 one = (__int128)1 << 56;
    __int128 p = base.num(), q = base.den();
    __int128 lo = one, hi = one;
    const __int128 target = (__int128)x << 56;
    for (std::int64_t L = 1;; ++L) {
        lo = lo * p / q;          // floor: lower bound
        hi = (hi * p + q - 1) / q; // ceil: upper bound
        bool lo_cross = lo >= target;
        bool hi_cross = hi >= target;
        if (lo_cross != hi_cross)
            throw std::runtime_error("ceil_log_base: ambiguous crossing, raise precision");
        if (lo_cross) return L;
    }
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::int64_t p = std::stoll(text.substr(0, slash));
        std::int64_t q = std::stoll(text.substr(slash + 1));
        return Rational(p, q);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(std::stoll(text));
    std::string head = text.substr(0, dot), tail = text.substr(dot + 1);
    if (tail.size() > 15) throw std::invalid_argument("decimal too long: " + text);
    for (char c : tail)
        if (!std::isdigit((unsigned char)c)) throw std::invalid_argument("bad rational: " + text);
    std::int64_t den = 1;
    for (size_t i = 0; i < tail.size(); ++i) den *= 10;
    bool neg = !head.empty() && head[0] == '-';
    std::int64_t whole = head.empty() || head == "-" ? 0 : std::stoll(head);
    std::int64_t frac = tail.empty() ? 0 : std::stoll(tail);
    std::int64_t num = (neg ? -1 : 1) * ((neg ? -whole : whole) * den + frac);
    return Rational(num, den);
}

}  // namespace dsg
