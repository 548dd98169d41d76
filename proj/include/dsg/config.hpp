#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "dsg/numeric.hpp"
#include "dsg/rational.hpp"

namespace dsg {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Shared knobs for every maintainer variant. eps drives the approximation
// target; alpha is the per-arc slack rate; budget_c bounds the arcs
// processed per check call in the worst-case variants; dup_k is the
// implicit edge duplication count; threshold_T enables degree truncation.
struct Config {
    std::int64_t n = 1;
    Rational eps{1, 4};
    Rational alpha{0};
    std::int64_t budget_c = 4;
    std::int64_t dup_k = 1;
    std::optional<std::int64_t> threshold_T;

    // alpha = eps^2 / (4 * ceil(ln n)), the slack rate that makes the
    // multiplicative drift come out to (1 + O(eps)) after composing the
    // label inequalities.
    static Rational default_alpha(std::int64_t n, const Rational& eps) {
        std::int64_t lg = ceil_ln(n);
        if (lg < 1) lg = 1;
        return eps * eps / Rational(4 * lg);
    }

    // k = ceil(4 ln n / eps^2), enough duplication to absorb the additive
    // error into the multiplicative guarantee.
    static std::int64_t default_dup_k(std::int64_t n, const Rational& eps) {
        std::int64_t k = (Rational(4) * ln_upper(n) / (eps * eps)).ceil();
        return k < 1 ? 1 : k;
    }

    // T = ceil(4 ln n / eps^2): the truncation level above which the
    // unduplicated structure takes over.
    static std::int64_t default_threshold(std::int64_t n, const Rational& eps) {
        return default_dup_k(n, eps);
    }

    static Config defaults(std::int64_t n, const Rational& eps) {
        Config c;
        c.n = n;
        c.eps = eps;
        c.alpha = default_alpha(n, eps);
        c.budget_c = 4;
        c.dup_k = default_dup_k(n, eps);
        c.threshold_T = std::nullopt;
        return c;
    }

    void validate() const {
        if (n < 1) throw ConfigError("vertex count must be at least 1");
        if (!(eps > Rational(0)) || !(eps < Rational(1)))
            throw ConfigError("eps must lie in (0,1)");
        if (!(alpha > Rational(0)) || !(alpha < Rational(1)))
            throw ConfigError("alpha must lie in (0,1)");
        if (budget_c < 1) throw ConfigError("budget_c must be at least 1");
        if (dup_k < 1) throw ConfigError("dup_k must be at least 1");
        if (threshold_T && *threshold_T < 1)
            throw ConfigError("threshold_T must be at least 1");
    }
};

}  // namespace dsg
