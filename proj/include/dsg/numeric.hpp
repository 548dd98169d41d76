#pragma once

#include <cstdint>

#include "dsg/rational.hpp"

namespace dsg {

// Directional rational bounds on ln(n), tight to about 2^-32. Upper bounds
// feed parameter defaults; the conservative side is chosen per use so every
// guarantee check stays an exact rational comparison.
Rational ln_lower(std::int64_t n);
Rational ln_upper(std::int64_t n);

// Smallest integer >= ln(n); 0 for n = 1.
std::int64_t ceil_ln(std::int64_t n);

// Smallest L >= 0 with base^L >= x, for rational base > 1 and integer x >= 1.
std::int64_t ceil_log_base(const Rational& base, std::int64_t x);

}  // namespace dsg
