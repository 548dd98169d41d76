#include "dsg/orientation_core.hpp"

#include <algorithm>
#include <cassert>

namespace dsg {

// ---------------------------------------------------------------- degrees

DegreeTable::DegreeTable(std::int64_t n)
    : indeg_(n, 0), bucket_count_(1, 0), bucket_head_(1, -1), vprev_(n, -1), vnext_(n, -1) {
    for (Vertex v = (Vertex)n - 1; v >= 0; --v) link(v, 0);
}

void DegreeTable::ensure_bucket(long long d) {
    if (d < (long long)bucket_count_.size()) return;
    size_t want = std::max<size_t>((size_t)d + 1, bucket_count_.size() * 2);
    bucket_count_.resize(want, 0);
    bucket_head_.resize(want, -1);
}

void DegreeTable::unlink(Vertex v, long long d) {
    Vertex p = vprev_[v], x = vnext_[v];
    if (p >= 0) vnext_[p] = x; else bucket_head_[d] = x;
    if (x >= 0) vprev_[x] = p;
    vprev_[v] = vnext_[v] = -1;
    --bucket_count_[d];
}

void DegreeTable::link(Vertex v, long long d) {
    ensure_bucket(d);
    Vertex h = bucket_head_[d];
    vprev_[v] = -1;
    vnext_[v] = h;
    if (h >= 0) vprev_[h] = v;
    bucket_head_[d] = v;
    ++bucket_count_[d];
}

void DegreeTable::inc(Vertex v) {
    long long d = indeg_[v];
    unlink(v, d);
    indeg_[v] = d + 1;
    link(v, d + 1);
    if (d + 1 > max_deg_) max_deg_ = d + 1;
}

void DegreeTable::dec(Vertex v) {
    long long d = indeg_[v];
    assert(d > 0);
    unlink(v, d);
    indeg_[v] = d - 1;
    link(v, d - 1);
    // the decremented vertex itself now sits at d-1, so the drop is exactly 1
    if (d == max_deg_ && bucket_count_[d] == 0) max_deg_ = d - 1;
}

std::vector<std::string> DegreeTable::check(std::int64_t n) const {
    std::vector<std::string> out;
    long long sum = 0, mx = 0;
    for (long long c : bucket_count_) sum += c;
    if (sum != n) out.push_back("bucket counts sum to " + std::to_string(sum));
    for (Vertex v = 0; v < (Vertex)n; ++v) mx = std::max(mx, indeg_[v]);
    if (mx != max_deg_)
        out.push_back("max_deg " + std::to_string(max_deg_) + " actual " + std::to_string(mx));
    for (size_t d = 0; d < bucket_head_.size(); ++d) {
        long long seen = 0;
        for (Vertex v = bucket_head_[d]; v >= 0; v = vnext_[v]) {
            ++seen;
            if (indeg_[v] != (long long)d)
                out.push_back("vertex " + std::to_string(v) + " in wrong bucket");
            if (seen > n) { out.push_back("bucket cycle"); break; }
        }
        if (seen != bucket_count_[d])
            out.push_back("bucket " + std::to_string(d) + " count mismatch");
    }
    return out;
}

// --------------------------------------------------------------- structure

Structure::Structure(const Config& cfg)
    : cfg_(cfg), deg_(cfg.n), in_side_(cfg.n), out_side_(cfg.n) {
    cfg_.validate();
    trunc_ = cfg_.threshold_T;
}

Structure::~Structure() {
    for (auto& [k, rec] : pairs_) {
        unlink_dir(&rec->fwd);
        unlink_dir(&rec->rev);
    }
    for (auto side : {&in_side_, &out_side_})
        for (auto& s : *side)
            for (LabelGroup* g = s.first; g;) {
                LabelGroup* nx = g->next;
                delete g;
                g = nx;
            }
}

long long Structure::truncated_indeg(Vertex v) const {
    long long d = deg_.indeg(v);
    return trunc_ ? std::min(d, *trunc_) : d;
}

long long Structure::edeg(Vertex v) const { return truncated_indeg(v); }

long long Structure::max_effective_degree() const {
    long long m = deg_.max_deg();
    return trunc_ ? std::min(m, *trunc_) : m;
}

std::uint64_t Structure::pair_key(Vertex u, Vertex v) const {
    Vertex lo = std::min(u, v), hi = std::max(u, v);
    return (std::uint64_t)lo * (std::uint64_t)cfg_.n + (std::uint64_t)hi;
}

PairRecord* Structure::find_pair(Vertex u, Vertex v) const {
    auto it = pairs_.find(pair_key(u, v));
    return it == pairs_.end() ? nullptr : it->second.get();
}

ArcDir* Structure::find_dir(Vertex tail, Vertex head) {
    PairRecord* p = find_pair(tail, head);
    if (!p) return nullptr;
    ArcDir* d = tail < head ? &p->fwd : &p->rev;
    return d->count > 0 ? d : nullptr;
}

const ArcDir* Structure::find_dir(Vertex tail, Vertex head) const {
    return const_cast<Structure*>(this)->find_dir(tail, head);
}

long long Structure::dir_count(Vertex tail, Vertex head) const {
    const ArcDir* d = find_dir(tail, head);
    return d ? d->count : 0;
}

long long Structure::pair_multiplicity(Vertex u, Vertex v) const {
    PairRecord* p = find_pair(u, v);
    return p ? p->total() : 0;
}

ArcDir* Structure::ensure_dir(Vertex tail, Vertex head) {
    std::uint64_t key = pair_key(tail, head);
    auto it = pairs_.find(key);
    if (it == pairs_.end()) {
        auto rec = std::make_unique<PairRecord>();
        Vertex lo = std::min(tail, head), hi = std::max(tail, head);
        rec->fwd.tail = lo; rec->fwd.head = hi;
        rec->fwd.in_node.arc = rec->fwd.out_node.arc = &rec->fwd;
        rec->rev.tail = hi; rec->rev.head = lo;
        rec->rev.in_node.arc = rec->rev.out_node.arc = &rec->rev;
        it = pairs_.emplace(key, std::move(rec)).first;
        ++pairs_live_;
        ++pairs_allocated_;
    }
    return tail < head ? &it->second->fwd : &it->second->rev;
}

void Structure::maybe_free_pair(Vertex u, Vertex v) {
    auto it = pairs_.find(pair_key(u, v));
    if (it != pairs_.end() && it->second->total() == 0) {
        pairs_.erase(it);
        --pairs_live_;
    }
}

// ------------------------------------------------------------ label index

void Structure::index_insert(SideIndex& side, IndexNode* node, long long label) {
    assert(node->group == nullptr);
    LabelGroup* at = side.cursor;
    LabelGroup* g;
    if (at && at->label == label) {
        g = at;
    } else {
        // cursor marks the first group with label >= edeg, and label == edeg,
        // so a fresh group slots in right before it and becomes the cursor
        g = new LabelGroup;
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

void Structure::index_remove(SideIndex& side, IndexNode* node) {
    LabelGroup* g = node->group;
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

void Structure::unlink_dir(ArcDir* dir) {
    if (!dir->linked()) return;
    index_remove(in_side_[dir->head], &dir->in_node);
    index_remove(out_side_[dir->tail], &dir->out_node);
}

void Structure::side_edeg_inc(SideIndex& side, long long new_edeg) {
    if (side.cursor && side.cursor->label < new_edeg) side.cursor = side.cursor->next;
}

void Structure::side_edeg_dec(SideIndex& side, long long new_edeg) {
    LabelGroup* cand = side.cursor ? side.cursor->prev : side.last;
    if (cand && cand->label >= new_edeg) side.cursor = cand;
}

bool Structure::degree_inc(Vertex v) {
    deg_.inc(v);
    if (trunc_ && deg_.indeg(v) > *trunc_) return false;
    long long e = edeg(v);
    side_edeg_inc(in_side_[v], e);
    side_edeg_inc(out_side_[v], e);
    return true;
}

bool Structure::degree_dec(Vertex v) {
    long long before = deg_.indeg(v);
    deg_.dec(v);
    if (trunc_ && before > *trunc_) return false;
    long long e = edeg(v);
    side_edeg_dec(in_side_[v], e);
    side_edeg_dec(out_side_[v], e);
    return true;
}

// ---------------------------------------------------------------- queries

std::optional<std::pair<ArcDir*, long long>> Structure::min_in_label_arc(Vertex v) {
    LabelGroup* g = in_side_[v].first;
    if (!g) return std::nullopt;
    return std::make_pair(g->first->arc, g->label);
}

std::optional<std::pair<ArcDir*, long long>> Structure::max_out_label_arc(Vertex u) {
    LabelGroup* g = out_side_[u].last;
    if (!g) return std::nullopt;
    return std::make_pair(g->first->arc, g->label);
}

// -------------------------------------------------------------- mutation

void Structure::set_arc_labels(ArcDir* dir) {
    if (!dir || dir->count < 1)
        throw std::logic_error("set_arc_labels on a direction with no copies");
    if (dir->linked()) unlink_dir(dir);
    dir->label_tail = edeg(dir->tail);
    dir->label_head = edeg(dir->head);
    index_insert(in_side_[dir->head], &dir->in_node, dir->label_head);
    index_insert(out_side_[dir->tail], &dir->out_node, dir->label_tail);
    ++counters_.label_resets;
}

void Structure::set_arc_labels(Vertex tail, Vertex head) {
    set_arc_labels(find_dir(tail, head));
}

ArcDir* Structure::insert_oriented(Vertex tail, Vertex head) {
    ArcDir* dir = ensure_dir(tail, head);
    ++dir->count;
    ++total_copies_;
    degree_inc(head);
    set_arc_labels(dir);
    return dir;
}

bool Structure::remove_oriented(ArcDir* dir) {
    if (!dir || dir->count < 1)
        throw std::logic_error("remove_oriented on a direction with no copies");
    --dir->count;
    --total_copies_;
    if (dir->count == 0) unlink_dir(dir);
    Vertex tail = dir->tail, head = dir->head;
    bool changed = degree_dec(head);
    maybe_free_pair(tail, head);
    return changed;
}

Structure::FlipEffect Structure::flip(ArcDir* dir) {
    if (!dir || dir->count < 1)
        throw std::logic_error("flip on a direction with no copies");
    Vertex u = dir->tail, v = dir->head;
    ArcDir* twin = ensure_dir(v, u);
    --dir->count;
    if (dir->count == 0) unlink_dir(dir);
    FlipEffect fx;
    fx.head_edeg_decreased = degree_dec(v);
    fx.tail_edeg_increased = degree_inc(u);
    ++twin->count;
    set_arc_labels(twin);
    ++counters_.flips;
    return fx;
}

Structure::FlipEffect Structure::flip(Vertex tail, Vertex head) {
    ArcDir* d = find_dir(tail, head);
    if (!d) throw std::logic_error("flip on a direction with no copies");
    return flip(d);
}

void Structure::for_each_dir(const std::function<void(const ArcDir&)>& fn) const {
    for (const auto& [k, rec] : pairs_) {
        if (rec->fwd.count > 0) fn(rec->fwd);
        if (rec->rev.count > 0) fn(rec->rev);
    }
}

// ------------------------------------------------------------ validation

void Structure::check_side(const SideIndex& side, Vertex v, bool in_side,
                           std::vector<std::string>& out) const {
    const char* tag = in_side ? "in" : "out";
    long long prev_label = -1;
    bool cursor_seen = false;
    long long e = edeg(v);
    LabelGroup* expect_cursor = nullptr;
    for (LabelGroup* g = side.first; g; g = g->next) {
        if (g->label <= prev_label)
            out.push_back("vertex " + std::to_string(v) + " " + tag +
                          " labels not strictly increasing");
        prev_label = g->label;
        if (!expect_cursor && g->label >= e) expect_cursor = g;
        if (g == side.cursor) cursor_seen = true;
        if (!g->first) out.push_back("empty label group");
        for (IndexNode* node = g->first; node; node = node->next) {
            const ArcDir* a = node->arc;
            if (a->count <= 0)
                out.push_back("indexed direction with zero count");
            long long lab = in_side ? a->label_head : a->label_tail;
            Vertex owner = in_side ? a->head : a->tail;
            if (lab != g->label || owner != v)
                out.push_back("vertex " + std::to_string(v) + " " + tag +
                              " node in wrong group");
        }
    }
    if (side.cursor != expect_cursor)
        out.push_back("vertex " + std::to_string(v) + " " + tag + " cursor misplaced");
    if (side.cursor && !cursor_seen)
        out.push_back("vertex " + std::to_string(v) + " " + tag + " cursor dangling");
}

std::vector<std::string> Structure::check_consistency() const {
    std::vector<std::string> out = deg_.check(cfg_.n);
    std::vector<long long> truth(cfg_.n, 0);
    long long copies = 0, in_linked = 0, out_linked = 0;
    for (const auto& [k, rec] : pairs_) {
        if (rec->total() == 0) out.push_back("empty pair record kept alive");
        for (const ArcDir* d : {&rec->fwd, &rec->rev}) {
            if (d->count < 0) out.push_back("negative direction count");
            if (d->count > 0) {
                truth[d->head] += d->count;
                copies += d->count;
                if (!d->linked() || d->out_node.group == nullptr)
                    out.push_back("active direction missing from an index");
            } else if (d->linked() || d->out_node.group != nullptr) {
                out.push_back("inactive direction still indexed");
            }
        }
    }
    for (Vertex v = 0; v < (Vertex)cfg_.n; ++v) {
        if (truth[v] != deg_.indeg(v))
            out.push_back("vertex " + std::to_string(v) + " indeg " +
                          std::to_string(deg_.indeg(v)) + " expected " +
                          std::to_string(truth[v]));
        check_side(in_side_[v], v, true, out);
        check_side(out_side_[v], v, false, out);
        for (LabelGroup* g = in_side_[v].first; g; g = g->next)
            for (IndexNode* node = g->first; node; node = node->next) ++in_linked;
        for (LabelGroup* g = out_side_[v].first; g; g = g->next)
            for (IndexNode* node = g->first; node; node = node->next) ++out_linked;
    }
    if (copies != total_copies_) out.push_back("copy counter drifted");
    long long active_dirs = 0;
    for_each_dir([&](const ArcDir&) { ++active_dirs; });
    if (in_linked != active_dirs || out_linked != active_dirs)
        out.push_back("index entry count mismatch: " + std::to_string(in_linked) + "/" +
                      std::to_string(out_linked) + " vs " + std::to_string(active_dirs));
    return out;
}

}  // namespace dsg
