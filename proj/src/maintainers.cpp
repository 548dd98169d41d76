#include "dsg/maintainers.hpp"

#include <cassert>

#include "dsg/numeric.hpp"

namespace dsg {

OrientationMaintainer::OrientationMaintainer(const Config& cfg, Variant var)
    : s_(cfg), var_(var) {
    ap_ = cfg.alpha.num();
    aq_ = cfg.alpha.den();
    budget_ = var_ == Variant::worstcase ? (cfg.budget_c * aq_) / ap_ : -1;
    if (budget_ == 0) budget_ = 1;
    if (cfg.threshold_T && var_ != Variant::worstcase)
        throw ConfigError("truncation requires the worst-case check routines");
}

// amortized: d > (1+a)lab + 1        worst-case: d >= (1+a/2)lab, with the
// label-0/degree-0 corner treated as not eligible (nothing is stale there).
bool OrientationMaintainer::inc_eligible(long long d, long long lab) const {
    if (var_ == Variant::amortized)
        return (__int128)aq_ * d > (__int128)(aq_ + ap_) * lab + aq_;
    if (d == 0 && lab == 0) return false;
    return (__int128)2 * aq_ * d >= (__int128)(2 * aq_ + ap_) * lab;
}

bool OrientationMaintainer::dec_eligible(long long lab, long long d) const {
    if (var_ == Variant::amortized)
        return (__int128)aq_ * lab > (__int128)(aq_ + ap_) * d + aq_;
    if (d == 0 && lab == 0) return false;
    return (__int128)2 * aq_ * lab >= (__int128)(2 * aq_ + ap_) * d;
}

// amortized flips toward any strictly smaller endpoint; worst-case only
// when the head is at least a (1+alpha) factor above tail+1.
bool OrientationMaintainer::flip_condition(long long d_head, long long d_tail) const {
    if (var_ == Variant::amortized) return d_tail < d_head;
    return (__int128)aq_ * d_head >= (__int128)(aq_ + ap_) * (d_tail + 1);
}

void OrientationMaintainer::check_inc(Vertex v) {
    Counters& c = s_.counters();
    long long processed = 0, depth = 0;
    for (;;) {
        auto top = s_.min_in_label_arc(v);
        if (!top) break;
        auto [arc, lab] = *top;
        long long d = s_.edeg(v);
        if (!inc_eligible(d, lab)) break;
        if (budget_ >= 0 && processed >= budget_) break;
        ++processed;
        ++c.arcs_processed;
        ++c.last_op_iterations;
        Vertex u = arc->tail;
        if (flip_condition(d, s_.edeg(u))) {
            auto fx = s_.flip(arc);
            assert(fx.tail_edeg_increased);  // flip condition keeps tails below T
            (void)fx;
            v = u;  // tail recursion: fresh call on the vertex that grew
            ++depth;
            processed = 0;
            continue;
        }
        s_.set_arc_labels(arc);
    }
    if (depth > c.last_op_depth) c.last_op_depth = depth;
}

void OrientationMaintainer::check_dec(Vertex u) {
    Counters& c = s_.counters();
    long long processed = 0, depth = 0;
    for (;;) {
        auto top = s_.max_out_label_arc(u);
        if (!top) break;
        auto [arc, lab] = *top;
        long long d = s_.edeg(u);
        if (!dec_eligible(lab, d)) break;
        if (budget_ >= 0 && processed >= budget_) break;
        ++processed;
        ++c.arcs_processed;
        ++c.last_op_iterations;
        Vertex v = arc->head;
        if (flip_condition(s_.edeg(v), d)) {
            auto fx = s_.flip(arc);  // head moves to u, restoring its degree
            if (!fx.head_edeg_decreased) break;  // former head was above T
            u = v;
            ++depth;
            processed = 0;
            continue;
        }
        s_.set_arc_labels(arc);
    }
    if (depth > c.last_op_depth) c.last_op_depth = depth;
}

void OrientationMaintainer::insert(Vertex u, Vertex v) {
    if (u == v) throw UpdateError("self-loops are not supported");
    if (u < 0 || v < 0 || u >= s_.n() || v >= s_.n())
        throw UpdateError("vertex id out of range");
    Counters& c = s_.counters();
    c.begin_op();
    long long du = s_.edeg(u), dv = s_.edeg(v);
    Vertex head = du < dv ? u : dv < du ? v : std::min(u, v);
    Vertex tail = head == u ? v : u;
    long long before = s_.edeg(head);
    s_.insert_oriented(tail, head);
    if (s_.edeg(head) > before) check_inc(head);
    c.end_op();
}

void OrientationMaintainer::erase(Vertex u, Vertex v) {
    if (u == v) throw UpdateError("self-loops are not supported");
    if (u < 0 || v < 0 || u >= s_.n() || v >= s_.n())
        throw UpdateError("vertex id out of range");
    ArcDir* uv = s_.find_dir(u, v);
    ArcDir* vu = s_.find_dir(v, u);
    if (!uv && !vu) throw UpdateError("edge not present");
    Counters& c = s_.counters();
    c.begin_op();
    ArcDir* victim;
    if (!vu) victim = uv;
    else if (!uv) victim = vu;
    else {
        // both orientations carry copies: drop from the heavier head,
        // breaking ties toward the smaller head id
        long long dh_uv = s_.edeg(uv->head), dh_vu = s_.edeg(vu->head);
        if (dh_uv != dh_vu) victim = dh_uv > dh_vu ? uv : vu;
        else victim = uv->head < vu->head ? uv : vu;
    }
    Vertex head = victim->head;
    bool changed = s_.remove_oriented(victim);
    if (changed) check_dec(head);
    c.end_op();
}

AmortizedMaintainer::AmortizedMaintainer(const Config& cfg)
    : OrientationMaintainer(cfg, Variant::amortized) {
    if (cfg.threshold_T) throw ConfigError("amortized maintainer does not truncate");
}

WorstCaseMaintainer::WorstCaseMaintainer(const Config& cfg)
    : OrientationMaintainer(cfg, Variant::worstcase) {}

ThresholdMaintainer::ThresholdMaintainer(const Config& cfg)
    : OrientationMaintainer(cfg, Variant::worstcase) {
    if (!cfg.threshold_T) throw ConfigError("threshold maintainer requires threshold_T");
}

long long worst_case_iteration_bound(const Config& cfg, long long mu) {
    long long budget = (cfg.budget_c * cfg.alpha.den()) / cfg.alpha.num();
    if (budget == 0) budget = 1;
    Rational base = Rational(1) + cfg.alpha;
    return budget * (ceil_log_base(base, mu + 1) + 1);
}

}  // namespace dsg
