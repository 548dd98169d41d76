#pragma once

#include "dsg/maintainers.hpp"

namespace dsg {

// Full scan of the three label inequalities and the per-arc local
// optimality bound, in exact arithmetic. The worst-case set also covers the
// truncated structures (degrees read through edeg are already truncated,
// and labels must stay at or below T).
std::vector<std::string> check_label_invariants(const Structure& s, Variant var);

// Structural consistency plus the label invariants.
std::vector<std::string> check_all(const Structure& s, Variant var);

}  // namespace dsg
