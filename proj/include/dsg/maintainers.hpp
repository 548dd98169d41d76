#pragma once

#include "dsg/orientation_core.hpp"

namespace dsg {

enum class Variant { amortized, worstcase };

// Common insert/delete driver over Structure. The amortized variant loops
// until no in-cut (out-cut) label is in violation, flipping toward the
// strictly smaller endpoint. The worst-case variant processes at most
// floor(C/alpha) arcs per call, starts on labels that are only mildly stale,
// and flips only when the head is a full (1+alpha) factor above the tail.
// Truncation (threshold_T in the config) substitutes min(indeg, T) for
// every degree read, including the labels.
class OrientationMaintainer {
public:
    OrientationMaintainer(const Config& cfg, Variant var);

    void insert(Vertex u, Vertex v);
    void erase(Vertex u, Vertex v);

    Structure& structure() { return s_; }
    const Structure& structure() const { return s_; }
    Variant variant() const { return var_; }
    long long check_budget() const { return budget_; }

    // Runs one repair pass; exposed for targeted tests.
    void check_inc(Vertex v);
    void check_dec(Vertex u);

private:
    bool inc_eligible(long long d, long long lab) const;
    bool dec_eligible(long long lab, long long d) const;
    bool flip_condition(long long d_head, long long d_tail) const;

    Structure s_;
    Variant var_;
    long long budget_;  // arcs per check call; <0 means unlimited
    long long ap_, aq_; // alpha = ap/aq, reduced
};

class AmortizedMaintainer : public OrientationMaintainer {
public:
    explicit AmortizedMaintainer(const Config& cfg);
};

class WorstCaseMaintainer : public OrientationMaintainer {
public:
    explicit WorstCaseMaintainer(const Config& cfg);
};

// Worst-case maintainer with every comparison taken on truncated degrees;
// labels never exceed T and repair cascades stop at the threshold.
class ThresholdMaintainer : public OrientationMaintainer {
public:
    explicit ThresholdMaintainer(const Config& cfg);
};

// budget * (ceil_log_{1+alpha}(mu + 1) + 1): the per-operation iteration
// ceiling the worst-case variants are tested against.
long long worst_case_iteration_bound(const Config& cfg, long long mu);

}  // namespace dsg
