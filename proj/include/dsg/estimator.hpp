#pragma once

#include <memory>

#include "dsg/maintainers.hpp"
#include "dsg/oracle.hpp"

namespace dsg {

enum class EstimatorMode { amortized, worstcase, combined };

// Turns an orientation maintainer into a density estimator: every logical
// edge is k parallel copies of weight 1/k (stored as counters, so the
// record count does not depend on k), the reported value is mu/k, and an
// approximate densest subgraph is a degree-order prefix cut where
// consecutive level sets stop growing by more than a (1+eps) factor.
//
// combined mode runs two structures side by side: a duplicated truncated
// one (threshold k*T) that is accurate while the density is below T, and an
// unduplicated worst-case one that takes over above it.
class DensityEstimator {
public:
    DensityEstimator(EstimatorMode mode, const Config& base);

    void insert_edge(Vertex u, Vertex v);
    void delete_edge(Vertex u, Vertex v);

    Rational density_value() const;
    std::vector<Vertex> densest_subgraph() const;
    Rational subgraph_density(const std::vector<Vertex>& set) const;

    long long edge_count() const { return m_; }
    std::int64_t dup_k() const { return k_; }
    std::int64_t logical_threshold() const { return T_; }
    EstimatorMode mode() const { return mode_; }

    // combined-mode dispatch state: true when the truncated answer is
    // rejected and the unduplicated structure is the one reporting
    bool rejects_truncated() const;

    const OrientationMaintainer& primary() const { return *primary_; }
    OrientationMaintainer& primary() { return *primary_; }
    const WorstCaseMaintainer* secondary() const { return secondary_.get(); }

    EdgeList logical_edges() const;
    std::vector<std::string> check_invariants() const;

private:
    const Structure& governing() const;
    int local_opt_power() const;  // 2 for amortized, 3 otherwise

    EstimatorMode mode_;
    Config base_;
    std::int64_t k_;
    std::int64_t T_;
    std::unique_ptr<OrientationMaintainer> primary_;
    std::unique_ptr<WorstCaseMaintainer> secondary_;
    std::unordered_map<std::uint64_t, long long> logical_;
    long long m_ = 0;
};

// Shortest degree-order prefix S_{i+1} with |S_{i+1}| <= (1+eps)|S_i|, for
// level thresholds mu_0 = 0, mu_{i+1} = factor*mu_i + beta (rounded up on a
// fixed grid, which only tightens the levels). Shared by the graph and
// hypergraph extractors. Returns ascending vertex ids.
std::vector<Vertex> extract_densest_prefix(const DegreeTable& deg, std::int64_t n,
                                           long long mu, const Rational& factor,
                                           const Rational& beta, const Rational& eps);

}  // namespace dsg
