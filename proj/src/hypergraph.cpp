#include "dsg/hypergraph.hpp"

#include <algorithm>
#include <cassert>

#include "dsg/estimator.hpp"
#include "dsg/numeric.hpp"

namespace dsg {

HypergraphMaintainer::HypergraphMaintainer(const Config& cfg, std::int64_t rank)
    : cfg_(cfg), rank_(rank), deg_(cfg.n), head_side_(cfg.n), tail_side_(cfg.n) {
    cfg_.validate();
    if (rank_ < 2) throw ConfigError("rank must be at least 2");
    trunc_ = cfg_.threshold_T;
    ap_ = cfg_.alpha.num();
    aq_ = cfg_.alpha.den();
    budget_ = (cfg_.budget_c * aq_) / ap_;
    if (budget_ == 0) budget_ = 1;
}

HypergraphMaintainer::~HypergraphMaintainer() {
    for (auto& [id, e] : edges_)
        for (auto& d : e->dirs)
            if (d && d->linked) unlink_direction(d.get());
    for (auto side : {&head_side_, &tail_side_})
        for (auto& s : *side)
            for (Group* g = s.first; g;) {
                Group* nx = g->next;
                delete g;
                g = nx;
            }
}

long long HypergraphMaintainer::edeg(Vertex v) const {
    long long d = deg_.indeg(v);
    return trunc_ ? std::min(d, *trunc_) : d;
}

long long HypergraphMaintainer::max_effective_degree() const {
    long long m = deg_.max_deg();
    return trunc_ ? std::min(m, *trunc_) : m;
}

// ---------------------------------------------------------- nested index

void HypergraphMaintainer::side_insert(Side& side, Node* node, long long label) {
    assert(node->group == nullptr);
    Group* at = side.cursor;
    Group* g;
    if (at && at->label == label) {
        g = at;
    } else {
        g = new Group;
        g->label = label;
        g->next = at;
        g->prev = at ? at->prev : side.last;
        if (g->prev) g->prev->next = g; else side.first = g;
        if (at) at->prev = g; else side.last = g;
        side.cursor = g;
    }
    node->group = g;
    node->prev = g->last;
    node->next = nullptr;
    if (g->last) g->last->next = node; else g->first = node;
    g->last = node;
}

void HypergraphMaintainer::side_remove(Side& side, Node* node) {
    Group* g = node->group;
    assert(g != nullptr);
    if (node->prev) node->prev->next = node->next; else g->first = node->next;
    if (node->next) node->next->prev = node->prev; else g->last = node->prev;
    node->prev = node->next = nullptr;
    node->group = nullptr;
    if (!g->first) {
        if (side.cursor == g) side.cursor = g->next;
        if (g->prev) g->prev->next = g->next; else side.first = g->next;
        if (g->next) g->next->prev = g->prev; else side.last = g->prev;
        delete g;
    }
}

void HypergraphMaintainer::side_edeg_inc(Side& side, long long e) {
    if (side.cursor && side.cursor->label < e) side.cursor = side.cursor->next;
}

void HypergraphMaintainer::side_edeg_dec(Side& side, long long e) {
    Group* cand = side.cursor ? side.cursor->prev : side.last;
    if (cand && cand->label >= e) side.cursor = cand;
}

bool HypergraphMaintainer::degree_inc(Vertex v) {
    deg_.inc(v);
    if (trunc_ && deg_.indeg(v) > *trunc_) return false;
    long long e = edeg(v);
    side_edeg_inc(head_side_[v], e);
    side_edeg_inc(tail_side_[v], e);
    return true;
}

bool HypergraphMaintainer::degree_dec(Vertex v) {
    long long before = deg_.indeg(v);
    deg_.dec(v);
    if (trunc_ && before > *trunc_) return false;
    long long e = edeg(v);
    side_edeg_dec(head_side_[v], e);
    side_edeg_dec(tail_side_[v], e);
    return true;
}

// ------------------------------------------------------------ directions

HypergraphMaintainer::Direction* HypergraphMaintainer::ensure_dir(HEdge* e, int head_idx) {
    auto& slot = e->dirs[head_idx];
    if (!slot) {
        slot = std::make_unique<Direction>();
        slot->edge = e;
        slot->head_idx = head_idx;
        slot->labels.assign(e->endpoints.size(), 0);
        slot->nodes.resize(e->endpoints.size());
        for (size_t i = 0; i < e->endpoints.size(); ++i) {
            slot->nodes[i].dir = slot.get();
            slot->nodes[i].endpoint_idx = (int)i;
        }
    }
    return slot.get();
}

void HypergraphMaintainer::link_direction(Direction* d) {
    assert(!d->linked);
    const HEdge* e = d->edge;
    for (size_t i = 0; i < e->endpoints.size(); ++i) {
        Vertex w = e->endpoints[i];
        d->labels[i] = edeg(w);
        Side& side = (int)i == d->head_idx ? head_side_[w] : tail_side_[w];
        side_insert(side, &d->nodes[i], d->labels[i]);
    }
    d->linked = true;
    ++counters_.label_resets;
}

void HypergraphMaintainer::unlink_direction(Direction* d) {
    assert(d->linked);
    const HEdge* e = d->edge;
    for (size_t i = 0; i < e->endpoints.size(); ++i) {
        Vertex w = e->endpoints[i];
        Side& side = (int)i == d->head_idx ? head_side_[w] : tail_side_[w];
        side_remove(side, &d->nodes[i]);
    }
    d->linked = false;
}

void HypergraphMaintainer::relabel_direction(Direction* d) {
    if (d->linked) unlink_direction(d);
    link_direction(d);
}

// -------------------------------------------------------------- updates

HyperedgeId HypergraphMaintainer::insert_hyperedge(const std::vector<Vertex>& endpoints) {
    return insert_hyperedge_copies(endpoints, 1);
}

HyperedgeId HypergraphMaintainer::insert_hyperedge_copies(const std::vector<Vertex>& endpoints,
                                                          long long copies) {
    if ((std::int64_t)endpoints.size() < 2 || (std::int64_t)endpoints.size() > rank_)
        throw UpdateError("edge size must lie in [2, rank]");
    if (copies < 1) throw UpdateError("copy count must be positive");
    std::vector<Vertex> eps = endpoints;
    std::sort(eps.begin(), eps.end());
    for (size_t i = 0; i < eps.size(); ++i) {
        if (eps[i] < 0 || eps[i] >= cfg_.n) throw UpdateError("vertex id out of range");
        if (i > 0 && eps[i] == eps[i - 1]) throw UpdateError("duplicate endpoints");
    }
    auto edge = std::make_unique<HEdge>();
    edge->id = next_id_++;
    edge->endpoints = std::move(eps);
    edge->dirs.resize(edge->endpoints.size());
    HEdge* raw = edge.get();
    edges_.emplace(raw->id, std::move(edge));
    size_p_ += (long long)raw->endpoints.size();
    Counters& c = counters_;
    c.begin_op();
    for (long long i = 0; i < copies; ++i) unit_insert(raw);
    c.end_op();
    return raw->id;
}

void HypergraphMaintainer::delete_hyperedge(HyperedgeId id) {
    auto it = edges_.find(id);
    if (it == edges_.end()) throw UpdateError("hyperedge id is not live");
    HEdge* e = it->second.get();
    Counters& c = counters_;
    c.begin_op();
    while (e->total > 0) unit_delete(e);
    c.end_op();
    size_p_ -= (long long)e->endpoints.size();
    edges_.erase(it);
}

void HypergraphMaintainer::unit_insert(HEdge* e) {
    // head = endpoint of minimum (effective) in-degree; endpoints are sorted,
    // so the first minimum realizes the smallest-id tie-break
    int head_idx = 0;
    long long best = edeg(e->endpoints[0]);
    for (size_t i = 1; i < e->endpoints.size(); ++i) {
        long long d = edeg(e->endpoints[i]);
        if (d < best) {
            best = d;
            head_idx = (int)i;
        }
    }
    Vertex head = e->endpoints[head_idx];
    Direction* dir = ensure_dir(e, head_idx);
    ++dir->count;
    ++e->total;
    ++total_copies_;
    bool grew = degree_inc(head);
    relabel_direction(dir);
    if (grew) check_inc(head);
}

void HypergraphMaintainer::unit_delete(HEdge* e) {
    // drop a copy from the heaviest head, ties toward the smaller id
    Direction* victim = nullptr;
    long long best = -1;
    for (auto& d : e->dirs) {
        if (!d || d->count == 0) continue;
        long long dd = edeg(e->endpoints[d->head_idx]);
        if (dd > best) {
            best = dd;
            victim = d.get();
        }
    }
    assert(victim != nullptr);
    Vertex head = e->endpoints[victim->head_idx];
    --victim->count;
    --e->total;
    --total_copies_;
    if (victim->count == 0) unlink_direction(victim);
    bool changed = degree_dec(head);
    if (changed) check_dec(head);
}

// --------------------------------------------------------------- checks

bool HypergraphMaintainer::inc_eligible(long long d, long long lab) const {
    if (d == 0 && lab == 0) return false;
    return (__int128)2 * aq_ * d >= (__int128)(2 * aq_ + ap_) * lab;
}

bool HypergraphMaintainer::dec_eligible(long long lab, long long d) const {
    if (d == 0 && lab == 0) return false;
    return (__int128)2 * aq_ * lab >= (__int128)(2 * aq_ + ap_) * d;
}

bool HypergraphMaintainer::flip_condition(long long d_head, long long d_tail) const {
    return (__int128)aq_ * d_head >= (__int128)(aq_ + ap_) * (d_tail + 1);
}

int HypergraphMaintainer::min_other_endpoint(const HEdge* e, int head_idx) const {
    int best_idx = -1;
    long long best = 0;
    for (size_t i = 0; i < e->endpoints.size(); ++i) {
        if ((int)i == head_idx) continue;
        long long d = edeg(e->endpoints[i]);
        if (best_idx < 0 || d < best) {
            best = d;
            best_idx = (int)i;
        }
    }
    return best_idx;
}

void HypergraphMaintainer::check_inc(Vertex v) {
    Counters& c = counters_;
    long long processed = 0, depth = 0;
    for (;;) {
        Group* g = head_side_[v].first;
        if (!g) break;
        Direction* dir = g->first->dir;
        long long lab = g->label;
        long long d = edeg(v);
        if (!inc_eligible(d, lab)) break;
        if (processed >= budget_) break;
        ++processed;
        ++c.arcs_processed;
        ++c.last_op_iterations;
        HEdge* e = dir->edge;
        endpoint_scans_ += (long long)e->endpoints.size();
        int u_idx = min_other_endpoint(e, dir->head_idx);
        Vertex u = e->endpoints[u_idx];
        if (flip_condition(d, edeg(u))) {
            // move one copy's head from v to u
            --dir->count;
            if (dir->count == 0) unlink_direction(dir);
            degree_dec(v);
            bool grew = degree_inc(u);
            Direction* dir_u = ensure_dir(e, u_idx);
            ++dir_u->count;
            relabel_direction(dir_u);
            ++c.flips;
            assert(grew);  // the flip condition keeps the target below T
            (void)grew;
            v = u;
            ++depth;
            processed = 0;
            continue;
        }
        relabel_direction(dir);
    }
    if (depth > c.last_op_depth) c.last_op_depth = depth;
}

void HypergraphMaintainer::check_dec(Vertex u) {
    Counters& c = counters_;
    long long processed = 0, depth = 0;
    for (;;) {
        Group* g = tail_side_[u].last;
        if (!g) break;
        Node* node = g->first;
        Direction* dir = node->dir;
        long long lab = g->label;
        long long d = edeg(u);
        if (!dec_eligible(lab, d)) break;
        if (processed >= budget_) break;
        ++processed;
        ++c.arcs_processed;
        ++c.last_op_iterations;
        HEdge* e = dir->edge;
        endpoint_scans_ += (long long)e->endpoints.size();
        Vertex v = e->endpoints[dir->head_idx];
        // compare the head against the lightest endpoint, exactly as in
        // check_inc: relabeling is only safe when no endpoint at all is a
        // full (1+alpha) factor below the head, and a flip must re-head onto
        // the minimum. For two endpoints this is the u-based rule verbatim.
        int w_idx = min_other_endpoint(e, dir->head_idx);
        Vertex w = e->endpoints[w_idx];
        if (flip_condition(edeg(v), edeg(w))) {
            --dir->count;
            if (dir->count == 0) unlink_direction(dir);
            bool shrank = degree_dec(v);
            degree_inc(w);
            Direction* dir_w = ensure_dir(e, w_idx);
            ++dir_w->count;
            relabel_direction(dir_w);
            ++c.flips;
            if (!shrank) break;  // former head sat above T; cascade ends here
            u = v;
            ++depth;
            processed = 0;
            continue;
        }
        relabel_direction(dir);
    }
    if (depth > c.last_op_depth) c.last_op_depth = depth;
}

// ----------------------------------------------------------------- views

std::optional<HypergraphMaintainer::EdgeView> HypergraphMaintainer::edge(HyperedgeId id) const {
    auto it = edges_.find(id);
    if (it == edges_.end()) return std::nullopt;
    EdgeView view;
    view.endpoints = it->second->endpoints;
    view.total = it->second->total;
    for (const auto& d : it->second->dirs)
        if (d && d->count > 0) view.head_counts.emplace_back(d->head_idx, d->count);
    return view;
}

HyperEdgeList HypergraphMaintainer::logical_edges() const {
    HyperEdgeList out;
    out.n = cfg_.n;
    std::vector<const HEdge*> live;
    for (const auto& [id, e] : edges_) live.push_back(e.get());
    std::sort(live.begin(), live.end(),
              [](const HEdge* a, const HEdge* b) { return a->id < b->id; });
    for (const HEdge* e : live) out.edges.push_back(e->endpoints);
    return out;
}

// ------------------------------------------------------------ validation

void HypergraphMaintainer::check_side(const Side& side, Vertex v, bool head_side,
                                      std::vector<std::string>& out) const {
    const char* tag = head_side ? "head" : "tail";
    long long prev_label = -1;
    long long e = edeg(v);
    Group* expect_cursor = nullptr;
    bool cursor_seen = false;
    for (Group* g = side.first; g; g = g->next) {
        if (g->label <= prev_label)
            out.push_back("vertex " + std::to_string(v) + " " + tag + " labels out of order");
        prev_label = g->label;
        if (!expect_cursor && g->label >= e) expect_cursor = g;
        if (g == side.cursor) cursor_seen = true;
        if (!g->first) out.push_back("empty hypergraph label group");
        for (Node* node = g->first; node; node = node->next) {
            const Direction* d = node->dir;
            if (d->count <= 0) out.push_back("indexed direction with no copies");
            Vertex w = d->edge->endpoints[node->endpoint_idx];
            bool is_head = node->endpoint_idx == d->head_idx;
            if (w != v || is_head != head_side || d->labels[node->endpoint_idx] != g->label)
                out.push_back("vertex " + std::to_string(v) + " " + tag + " node misplaced");
        }
    }
    if (side.cursor != expect_cursor)
        out.push_back("vertex " + std::to_string(v) + " " + tag + " cursor misplaced");
    if (side.cursor && !cursor_seen)
        out.push_back("vertex " + std::to_string(v) + " " + tag + " cursor dangling");
}

std::vector<std::string> HypergraphMaintainer::check_invariants() const {
    std::vector<std::string> out = deg_.check(cfg_.n);
    std::vector<long long> truth(cfg_.n, 0);
    long long copies = 0, p_truth = 0;
    const __int128 p = ap_, q = aq_;
    for (const auto& [id, e] : edges_) {
        p_truth += (long long)e->endpoints.size();
        for (const auto& d : e->dirs) {
            if (!d) continue;
            if (d->count < 0) out.push_back("negative copy count");
            if ((d->count > 0) != d->linked)
                out.push_back("direction link state inconsistent");
            if (d->count == 0) continue;
            Vertex head = e->endpoints[d->head_idx];
            truth[head] += d->count;
            copies += d->count;
            long long dv = edeg(head), lv = d->labels[d->head_idx];
            if (trunc_ && lv > *trunc_) out.push_back("head label above threshold");
            if (q * dv > (q + p) * (lv + 1))
                out.push_back("head: d(v) > (1+a)(lab_v+1) at edge " + std::to_string(id));
            for (size_t i = 0; i < e->endpoints.size(); ++i) {
                if ((int)i == d->head_idx) continue;
                Vertex tail = e->endpoints[i];
                long long du = edeg(tail), lu = d->labels[i];
                if (trunc_ && lu > *trunc_) out.push_back("tail label above threshold");
                if (q * lv > (q + p) * (lu + 1))
                    out.push_back("order: lab_v > (1+a)(lab_u+1) at edge " + std::to_string(id));
                if (q * lu > (q + p) * (du + 1))
                    out.push_back("tail: lab_u > (1+a)(d(u)+1) at edge " + std::to_string(id));
                if (q * q * q * dv >
                    (q + p) * (q + p) * (q + p) * du + 3 * q * q * q + 10 * p * q * q)
                    out.push_back("local: d(v) > (1+a)^3 d(u) + 3 + 10a at edge " +
                                  std::to_string(id));
            }
        }
    }
    for (Vertex v = 0; v < (Vertex)cfg_.n; ++v) {
        if (truth[v] != deg_.indeg(v))
            out.push_back("vertex " + std::to_string(v) + " indeg drifted");
        check_side(head_side_[v], v, true, out);
        check_side(tail_side_[v], v, false, out);
    }
    if (copies != total_copies_) out.push_back("copy counter drifted");
    if (p_truth != size_p_) out.push_back("size counter drifted");
    return out;
}

// -------------------------------------------------------------- estimator

std::int64_t HypergraphEstimator::default_dup_k(std::int64_t n, const Rational& eps,
                                                std::int64_t rank) {
    std::int64_t k = (Rational(4 * rank) * ln_upper(n) / (eps * eps)).ceil();
    return k < 1 ? 1 : k;
}

HypergraphEstimator::HypergraphEstimator(const Config& base, std::int64_t rank)
    : base_(base), k_(base.dup_k), inner_(base, rank) {}

HyperedgeId HypergraphEstimator::insert_edge(const std::vector<Vertex>& endpoints) {
    HyperedgeId id = inner_.insert_hyperedge_copies(endpoints, k_);
    auto sorted = endpoints;
    std::sort(sorted.begin(), sorted.end());
    logical_.emplace(id, std::move(sorted));
    ++m_;
    return id;
}

void HypergraphEstimator::delete_edge(HyperedgeId id) {
    auto it = logical_.find(id);
    if (it == logical_.end()) throw UpdateError("hyperedge id is not live");
    inner_.delete_hyperedge(id);
    logical_.erase(it);
    --m_;
}

Rational HypergraphEstimator::density_value() const {
    return Rational(inner_.max_effective_degree(), k_);
}

std::vector<Vertex> HypergraphEstimator::densest_subgraph() const {
    if (m_ == 0) return {};
    const Rational& alpha = base_.alpha;
    Rational one_a = Rational(1) + alpha;
    Rational factor = one_a * one_a * one_a;
    Rational beta = Rational(3) + Rational(10) * alpha;
    return extract_densest_prefix(inner_.degrees(), base_.n, inner_.max_effective_degree(),
                                  factor, beta, base_.eps);
}

Rational HypergraphEstimator::subgraph_density(const std::vector<Vertex>& set) const {
    if (set.empty()) throw UpdateError("subgraph density of an empty set");
    std::vector<bool> in(base_.n, false);
    long long size = 0;
    for (Vertex v : set) {
        if (v < 0 || v >= base_.n) throw UpdateError("vertex id out of range");
        if (!in[v]) {
            in[v] = true;
            ++size;
        }
    }
    long long inside = 0;
    for (const auto& [id, eps] : logical_) {
        bool all = true;
        for (Vertex v : eps)
            if (!in[v]) {
                all = false;
                break;
            }
        if (all) ++inside;
    }
    return Rational(inside, size);
}

HyperEdgeList HypergraphEstimator::logical_edges() const {
    HyperEdgeList out;
    out.n = base_.n;
    std::vector<std::pair<HyperedgeId, const std::vector<Vertex>*>> live;
    for (const auto& [id, eps] : logical_) live.emplace_back(id, &eps);
    std::sort(live.begin(), live.end());
    for (const auto& [id, eps] : live) out.edges.push_back(*eps);
    return out;
}

}  // namespace dsg
