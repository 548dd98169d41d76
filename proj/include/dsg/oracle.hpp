#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "dsg/orientation_core.hpp"
#include "dsg/rational.hpp"

namespace dsg {

// Plain multigraph/multihypergraph views for the ground-truth solvers.
struct EdgeList {
    std::int64_t n = 0;
    std::vector<std::pair<Vertex, Vertex>> edges;
};

struct HyperEdgeList {
    std::int64_t n = 0;
    std::vector<std::vector<Vertex>> edges;
};

struct OracleResult {
    Rational opt_density{0};
    std::vector<Vertex> witness;  // sorted; empty only for edgeless inputs
    std::optional<long long> minmax_orientation;
};

// Subset enumeration, exact rationals, lexicographically smallest witness
// among the maximizers. Guarded at n <= 24; larger inputs belong to the
// flow oracle.
OracleResult exact_density_bruteforce(const EdgeList& g);

// Max-flow decision oracle with binary search over candidate densities.
// Terminates via the gap argument: distinct subset densities differ by at
// least 1/n^2.
OracleResult exact_density_flow(const EdgeList& g);

// Minimum over integral orientations of the maximum in-degree, decided by
// a vertex-capacitated matching flow and binary search.
long long exact_minmax_orientation(const EdgeList& g);

// Same value by direct enumeration of all 2^m orientations (m <= 20).
long long minmax_orientation_enumerated(const EdgeList& g);

// Optimal fractional orientation recovered from the flow at the optimal
// density: per-edge head splits plus the optimal min-max load, which equals
// the density by LP duality.
struct FractionalOrientation {
    std::vector<std::array<Rational, 2>> load;  // per edge: mass toward (u, v)
    Rational value{0};
};
FractionalOrientation exact_fractional_orientation(const EdgeList& g);

// Densest subhypergraph by subset enumeration (n <= 20); an edge counts
// only when every endpoint lies inside the subset.
OracleResult exact_hyper_density(const HyperEdgeList& g);

// Minimum over head assignments of the max in-degree; r^m enumeration for
// small hypergraph fixtures.
long long hyper_minmax_orientation_enumerated(const HyperEdgeList& g);

}  // namespace dsg
