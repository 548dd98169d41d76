#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "dsg/config.hpp"

namespace dsg {

using Vertex = std::int32_t;

struct UpdateError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ArcDir;

// One bucket of the nested label index: all entries on one side of one
// vertex sharing the same label value. Groups form a doubly linked outer
// list in strictly increasing label order.
struct LabelGroup {
    long long label = 0;
    LabelGroup* prev = nullptr;
    LabelGroup* next = nullptr;
    struct IndexNode* first = nullptr;
    struct IndexNode* last = nullptr;
};

struct IndexNode {
    ArcDir* arc = nullptr;
    IndexNode* prev = nullptr;
    IndexNode* next = nullptr;
    LabelGroup* group = nullptr;  // null while unlinked
};

// One orientation of one vertex pair. All parallel copies oriented this way
// share the counter and the single label pair, so relabeling one copy
// relabels them all.
struct ArcDir {
    Vertex tail = -1;
    Vertex head = -1;
    long long count = 0;
    long long label_tail = 0;  // snapshot of the tail's in-degree
    long long label_head = 0;  // snapshot of the head's in-degree
    IndexNode in_node;         // lives in head's in-cut index, key label_head
    IndexNode out_node;        // lives in tail's out-cut index, key label_tail

    bool linked() const { return in_node.group != nullptr; }
};

// Both orientations of one unordered vertex pair; the unit of allocation,
// so the record count is independent of the duplication factor.
struct PairRecord {
    ArcDir fwd;  // lo -> hi
    ArcDir rev;  // hi -> lo
    long long total() const { return fwd.count + rev.count; }
};

// In-degrees bucketed by value: O(1) increment/decrement, O(1) max, and a
// per-degree vertex list for walking vertices in decreasing degree order.
class DegreeTable {
public:
    explicit DegreeTable(std::int64_t n);

    long long indeg(Vertex v) const { return indeg_[v]; }
    long long max_deg() const { return max_deg_; }
    long long count_at(long long d) const {
        return d < (long long)bucket_count_.size() ? bucket_count_[d] : 0;
    }
    Vertex first_at(long long d) const {
        return d < (long long)bucket_head_.size() ? bucket_head_[d] : -1;
    }
    Vertex next_in_bucket(Vertex v) const { return vnext_[v]; }

    void inc(Vertex v);
    void dec(Vertex v);

    std::vector<std::string> check(std::int64_t n) const;

private:
    void ensure_bucket(long long d);
    void unlink(Vertex v, long long d);
    void link(Vertex v, long long d);

    std::vector<long long> indeg_;
    std::vector<long long> bucket_count_;
    std::vector<Vertex> bucket_head_;
    std::vector<Vertex> vprev_, vnext_;
    long long max_deg_ = 0;
};

struct Counters {
    long long arcs_processed = 0;  // one per loop iteration in any check routine
    long long flips = 0;
    long long label_resets = 0;
    long long last_op_iterations = 0;
    long long last_op_depth = 0;
    long long max_op_iterations = 0;
    long long max_op_depth = 0;

    void begin_op() { last_op_iterations = 0; last_op_depth = 0; }
    void end_op() {
        if (last_op_iterations > max_op_iterations) max_op_iterations = last_op_iterations;
        if (last_op_depth > max_op_depth) max_op_depth = last_op_depth;
    }
};

// Shared state for every maintainer variant: the oriented multigraph with
// per-direction copy counts, the degree table, and per-vertex nested label
// indices with an insertion cursor. Every mutation here is O(1); labels are
// always written as the current (effective) in-degrees, which is what keeps
// the cursor insertions valid.
class Structure {
public:
    explicit Structure(const Config& cfg);
    ~Structure();

    Structure(const Structure&) = delete;
    Structure& operator=(const Structure&) = delete;

    const Config& config() const { return cfg_; }
    std::int64_t n() const { return cfg_.n; }

    long long indeg(Vertex v) const { return deg_.indeg(v); }
    long long truncated_indeg(Vertex v) const;
    // Degree value every comparison uses: truncated when T is configured.
    long long edeg(Vertex v) const;
    long long max_in_degree() const { return deg_.max_deg(); }
    long long max_effective_degree() const;

    const DegreeTable& degrees() const { return deg_; }
    Counters& counters() { return counters_; }
    const Counters& counters() const { return counters_; }

    long long pair_records_live() const { return pairs_live_; }
    long long pair_records_allocated() const { return pairs_allocated_; }
    long long oriented_copies() const { return total_copies_; }

    ArcDir* find_dir(Vertex tail, Vertex head);
    const ArcDir* find_dir(Vertex tail, Vertex head) const;
    long long dir_count(Vertex tail, Vertex head) const;
    long long pair_multiplicity(Vertex u, Vertex v) const;

    // Extremal-label queries; O(1).
    std::optional<std::pair<ArcDir*, long long>> min_in_label_arc(Vertex v);
    std::optional<std::pair<ArcDir*, long long>> max_out_label_arc(Vertex u);

    // Add one copy oriented tail -> head; bumps the head's degree and
    // rewrites the direction's shared labels to the post-insert degrees.
    ArcDir* insert_oriented(Vertex tail, Vertex head);

    // Remove one copy; no relabel. Frees the pair record when it empties.
    // Returns whether the head's effective degree actually dropped.
    bool remove_oriented(ArcDir* dir);

    struct FlipEffect {
        bool head_edeg_decreased = false;
        bool tail_edeg_increased = false;
    };
    // Move one copy of dir=(u,v) to the reverse direction (v,u) and reset
    // the reverse direction's labels to the post-flip degrees.
    FlipEffect flip(ArcDir* dir);
    FlipEffect flip(Vertex tail, Vertex head);

    // labels <- current effective degrees of both endpoints; index positions
    // updated through the cursors.
    void set_arc_labels(ArcDir* dir);
    void set_arc_labels(Vertex tail, Vertex head);

    void for_each_dir(const std::function<void(const ArcDir&)>& fn) const;

    // Full-scan structural audit; empty result means consistent.
    std::vector<std::string> check_consistency() const;

private:
    struct SideIndex {
        LabelGroup* first = nullptr;
        LabelGroup* last = nullptr;
        LabelGroup* cursor = nullptr;  // first group with label >= edeg(vertex)
    };

    std::uint64_t pair_key(Vertex u, Vertex v) const;
    PairRecord* find_pair(Vertex u, Vertex v) const;
    ArcDir* ensure_dir(Vertex tail, Vertex head);
    void maybe_free_pair(Vertex u, Vertex v);

    void index_insert(SideIndex& side, IndexNode* node, long long label);
    void index_remove(SideIndex& side, IndexNode* node);
    void unlink_dir(ArcDir* dir);

    bool degree_inc(Vertex v);  // returns whether edeg changed
    bool degree_dec(Vertex v);
    void side_edeg_inc(SideIndex& side, long long new_edeg);
    void side_edeg_dec(SideIndex& side, long long new_edeg);

    void check_side(const SideIndex& side, Vertex v, bool in_side,
                    std::vector<std::string>& out) const;

    Config cfg_;
    std::optional<long long> trunc_;
    DegreeTable deg_;
    std::vector<SideIndex> in_side_;
    std::vector<SideIndex> out_side_;
    std::unordered_map<std::uint64_t, std::unique_ptr<PairRecord>> pairs_;
    Counters counters_;
    long long pairs_live_ = 0;
    long long pairs_allocated_ = 0;
    long long total_copies_ = 0;
};

}  // namespace dsg
