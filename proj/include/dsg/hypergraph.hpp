#pragma once

#include <memory>
#include <optional>

#include "dsg/config.hpp"
#include "dsg/oracle.hpp"
#include "dsg/orientation_core.hpp"

namespace dsg {

using HyperedgeId = std::int64_t;

// Oriented hypergraph maintainer: every edge has one head endpoint and a
// label per endpoint. The check routines are the budgeted worst-case ones;
// processing an edge costs an endpoint scan, so the work per processed edge
// is proportional to the edge size (at most the rank). Copies of an edge
// that share a head also share the label vector and a counter, mirroring
// the pair-count trick on graphs. Truncation (threshold_T) substitutes
// min(indeg, T) everywhere when configured.
class HypergraphMaintainer {
public:
    HypergraphMaintainer(const Config& cfg, std::int64_t rank);
    ~HypergraphMaintainer();

    HypergraphMaintainer(const HypergraphMaintainer&) = delete;
    HypergraphMaintainer& operator=(const HypergraphMaintainer&) = delete;

    HyperedgeId insert_hyperedge(const std::vector<Vertex>& endpoints);
    HyperedgeId insert_hyperedge_copies(const std::vector<Vertex>& endpoints, long long copies);
    void delete_hyperedge(HyperedgeId id);

    const Config& config() const { return cfg_; }
    std::int64_t rank() const { return rank_; }
    long long size_p() const { return size_p_; }
    long long live_edges() const { return (long long)edges_.size(); }

    long long indeg(Vertex v) const { return deg_.indeg(v); }
    long long edeg(Vertex v) const;
    long long max_in_degree() const { return deg_.max_deg(); }
    long long max_effective_degree() const;
    const DegreeTable& degrees() const { return deg_; }

    Counters& counters() { return counters_; }
    const Counters& counters() const { return counters_; }
    long long endpoint_scans() const { return endpoint_scans_; }

    struct EdgeView {
        std::vector<Vertex> endpoints;
        // (endpoint index currently acting as head, copies with that head)
        std::vector<std::pair<int, long long>> head_counts;
        long long total = 0;
    };
    std::optional<EdgeView> edge(HyperedgeId id) const;
    bool live(HyperedgeId id) const { return edges_.count(id) > 0; }
    HyperEdgeList logical_edges() const;  // one entry per copy, sorted

    std::vector<std::string> check_invariants() const;

private:
    struct Direction;
    struct Group;
    struct Node {
        Direction* dir = nullptr;
        int endpoint_idx = -1;
        Node* prev = nullptr;
        Node* next = nullptr;
        Group* group = nullptr;
    };
    struct Group {
        long long label = 0;
        Group* prev = nullptr;
        Group* next = nullptr;
        Node* first = nullptr;
        Node* last = nullptr;
    };
    struct Side {
        Group* first = nullptr;
        Group* last = nullptr;
        Group* cursor = nullptr;  // first group with label >= edeg(vertex)
    };
    struct HEdge;
    struct Direction {
        HEdge* edge = nullptr;
        int head_idx = -1;
        long long count = 0;
        std::vector<long long> labels;  // one per endpoint, shared by all copies
        std::vector<Node> nodes;        // one per endpoint
        bool linked = false;
    };
    struct HEdge {
        HyperedgeId id = -1;
        std::vector<Vertex> endpoints;  // sorted ascending, distinct
        std::vector<std::unique_ptr<Direction>> dirs;  // per endpoint index
        long long total = 0;
    };

    void side_insert(Side& side, Node* node, long long label);
    void side_remove(Side& side, Node* node);
    void side_edeg_inc(Side& side, long long e);
    void side_edeg_dec(Side& side, long long e);
    bool degree_inc(Vertex v);
    bool degree_dec(Vertex v);

    Direction* ensure_dir(HEdge* e, int head_idx);
    void link_direction(Direction* d);    // labels <- current edegs, then index
    void unlink_direction(Direction* d);
    void relabel_direction(Direction* d);

    void unit_insert(HEdge* e);
    void unit_delete(HEdge* e);
    void check_inc(Vertex v);
    void check_dec(Vertex u);
    bool inc_eligible(long long d, long long lab) const;
    bool dec_eligible(long long lab, long long d) const;
    bool flip_condition(long long d_head, long long d_tail) const;
    int min_other_endpoint(const HEdge* e, int head_idx) const;

    void check_side(const Side& side, Vertex v, bool head_side,
                    std::vector<std::string>& out) const;

    Config cfg_;
    std::int64_t rank_;
    std::optional<long long> trunc_;
    DegreeTable deg_;
    std::vector<Side> head_side_;  // directions whose head is v, keyed by head label
    std::vector<Side> tail_side_;  // incidences where v is a tail, keyed by v's label
    std::unordered_map<HyperedgeId, std::unique_ptr<HEdge>> edges_;
    HyperedgeId next_id_ = 0;
    long long size_p_ = 0;
    long long budget_;
    long long ap_, aq_;
    Counters counters_;
    long long endpoint_scans_ = 0;
    long long total_copies_ = 0;
};

// Density estimator over the hypergraph maintainer: k-fold duplication,
// value mu/k, and the same prefix extraction as graphs.
class HypergraphEstimator {
public:
    HypergraphEstimator(const Config& base, std::int64_t rank);

    HyperedgeId insert_edge(const std::vector<Vertex>& endpoints);
    void delete_edge(HyperedgeId id);

    Rational density_value() const;
    std::vector<Vertex> densest_subgraph() const;
    Rational subgraph_density(const std::vector<Vertex>& set) const;

    long long edge_count() const { return m_; }
    std::int64_t dup_k() const { return k_; }
    const HypergraphMaintainer& inner() const { return inner_; }
    HypergraphMaintainer& inner() { return inner_; }

    HyperEdgeList logical_edges() const;
    std::vector<std::string> check_invariants() const { return inner_.check_invariants(); }

    // k = ceil(4 r ln n / eps^2); the rank factor keeps the additive error
    // below eps even though hypergraph densities start at 1/r.
    static std::int64_t default_dup_k(std::int64_t n, const Rational& eps, std::int64_t rank);

private:
    Config base_;
    std::int64_t k_;
    HypergraphMaintainer inner_;
    std::unordered_map<HyperedgeId, std::vector<Vertex>> logical_;
    long long m_ = 0;
};

}  // namespace dsg
