#include "dsg/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <stdexcept>

namespace dsg {

namespace {

std::vector<Vertex> mask_to_set(std::uint32_t mask) {
    std::vector<Vertex> out;
    for (Vertex v = 0; mask; ++v, mask >>= 1)
        if (mask & 1) out.push_back(v);
    return out;
}

// ------------------------------------------------------------------ Dinic

struct Dinic {
    struct Edge {
        int to;
        long long cap;
        int rev;
    };
    std::vector<std::vector<Edge>> adj;
    std::vector<int> level, iter;

    explicit Dinic(int nodes) : adj(nodes), level(nodes), iter(nodes) {}

    void add_edge(int from, int to, long long cap) {
        adj[from].push_back({to, cap, (int)adj[to].size()});
        adj[to].push_back({from, 0, (int)adj[from].size() - 1});
    }

    bool bfs(int s, int t) {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> q;
        level[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (const Edge& e : adj[v])
                if (e.cap > 0 && level[e.to] < 0) {
                    level[e.to] = level[v] + 1;
                    q.push(e.to);
                }
        }
        return level[t] >= 0;
    }

    long long dfs(int v, int t, long long f) {
        if (v == t) return f;
        for (int& i = iter[v]; i < (int)adj[v].size(); ++i) {
            Edge& e = adj[v][i];
            if (e.cap > 0 && level[v] < level[e.to]) {
                long long d = dfs(e.to, t, std::min(f, e.cap));
                if (d > 0) {
                    e.cap -= d;
                    adj[e.to][e.rev].cap += d;
                    return d;
                }
            }
        }
        return 0;
    }

    long long max_flow(int s, int t) {
        long long flow = 0;
        while (bfs(s, t)) {
            std::fill(iter.begin(), iter.end(), 0);
            long long f;
            while ((f = dfs(s, t, INT64_MAX)) > 0) flow += f;
        }
        return flow;
    }

    // source side of the min cut after max_flow
    std::vector<bool> min_cut_side(int s) {
        std::vector<bool> side(adj.size(), false);
        std::queue<int> q;
        side[s] = true;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (const Edge& e : adj[v])
                if (e.cap > 0 && !side[e.to]) {
                    side[e.to] = true;
                    q.push(e.to);
                }
        }
        return side;
    }
};

// Goldberg network for the decision "exists S with e(S)/|S| > a/b":
// source -> edge-node (cap b), edge-node -> endpoints (inf), v -> sink
// (cap a). Max flow < b*m iff such an S exists; the s-side of the min cut
// restricted to vertex nodes realizes one.
struct DensityDecision {
    bool feasible = false;
    std::vector<Vertex> witness;
};

DensityDecision decide_density(const EdgeList& g, const Rational& lambda,
                               Dinic* keep_flow = nullptr) {
    const long long m = (long long)g.edges.size();
    const long long a = lambda.num(), b = lambda.den();
    const int s = 0, t = 1, vbase = 2;
    const int ebase = vbase + (int)g.n;
    Dinic din(ebase + (int)m);
    const long long inf = b * (m + 1);
    for (int i = 0; i < (int)m; ++i) {
        din.add_edge(s, ebase + i, b);
        din.add_edge(ebase + i, vbase + g.edges[i].first, inf);
        din.add_edge(ebase + i, vbase + g.edges[i].second, inf);
    }
    for (Vertex v = 0; v < (Vertex)g.n; ++v) din.add_edge(vbase + v, t, a);
    long long flow = din.max_flow(s, t);
    DensityDecision out;
    out.feasible = flow < b * m;
    if (out.feasible) {
        auto side = din.min_cut_side(s);
        for (Vertex v = 0; v < (Vertex)g.n; ++v)
            if (side[vbase + v]) out.witness.push_back(v);
    }
    if (keep_flow) *keep_flow = std::move(din);
    return out;
}

Rational set_density(const EdgeList& g, const std::vector<Vertex>& set) {
    if (set.empty()) return Rational(0);
    std::vector<bool> in(g.n, false);
    for (Vertex v : set) in[v] = true;
    long long e = 0;
    for (auto [u, v] : g.edges)
        if (in[u] && in[v]) ++e;
    return Rational(e, (long long)set.size());
}

}  // namespace

// ------------------------------------------------------------ brute force

OracleResult exact_density_bruteforce(const EdgeList& g) {
    if (g.n > 24)
        throw std::invalid_argument("brute-force oracle is limited to n <= 24; use the flow oracle");
    OracleResult res;
    if (g.edges.empty()) return res;

    // multiplicity count from each vertex, then e(mask) by peeling the low bit
    std::vector<std::vector<long long>> cnt(g.n, std::vector<long long>(g.n, 0));
    for (auto [u, v] : g.edges) {
        ++cnt[u][v];
        ++cnt[v][u];
    }
    const std::uint32_t full = (std::uint32_t)((1ull << g.n) - 1);
    std::vector<std::uint32_t> inside(full + 1, 0);
    long long best_e = -1, best_s = 1;
    std::vector<Vertex> best_set;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        std::uint32_t low = mask & (mask - 1u);
        Vertex lv = (Vertex)__builtin_ctz(mask);
        long long e = inside[low];
        for (std::uint32_t rest = low; rest;) {
            Vertex w = (Vertex)__builtin_ctz(rest);
            rest &= rest - 1u;
            e += cnt[lv][w];
        }
        inside[mask] = (std::uint32_t)e;
        long long sz = __builtin_popcount(mask);
        if (best_e < 0) {
            best_e = e;
            best_s = sz;
            best_set = mask_to_set(mask);
            continue;
        }
        __int128 lhs = (__int128)e * best_s, rhs = (__int128)best_e * sz;
        if (lhs < rhs) continue;
        auto set = mask_to_set(mask);
        if (lhs > rhs ||
            std::lexicographical_compare(set.begin(), set.end(), best_set.begin(),
                                         best_set.end())) {
            best_e = e;
            best_s = sz;
            best_set = std::move(set);
        }
    }
    res.opt_density = Rational(best_e, best_s);
    res.witness = best_set;
    return res;
}

// ------------------------------------------------------------ flow oracle

OracleResult exact_density_flow(const EdgeList& g) {
    OracleResult res;
    const long long m = (long long)g.edges.size();
    if (m == 0) return res;

    Rational lo(0), hi(m);
    const Rational gap(1, g.n * g.n);
    std::vector<Vertex> witness;
    while (hi - lo > gap) {
        Rational mid = (lo + hi) / Rational(2);
        auto dec = decide_density(g, mid);
        if (dec.feasible) {
            lo = mid;
            witness = std::move(dec.witness);
        } else {
            hi = mid;
        }
    }
    assert(!witness.empty());
    res.opt_density = set_density(g, witness);
    res.witness = std::move(witness);
    std::sort(res.witness.begin(), res.witness.end());
    return res;
}

// ------------------------------------------------- min-max orientations

namespace {

bool orientation_feasible(const EdgeList& g, long long t) {
    const long long m = (long long)g.edges.size();
    const int s = 0, tt = 1, vbase = 2;
    const int ebase = vbase + (int)g.n;
    Dinic din(ebase + (int)m);
    for (int i = 0; i < (int)m; ++i) {
        din.add_edge(s, ebase + i, 1);
        din.add_edge(ebase + i, vbase + g.edges[i].first, 1);
        din.add_edge(ebase + i, vbase + g.edges[i].second, 1);
    }
    for (Vertex v = 0; v < (Vertex)g.n; ++v) din.add_edge(vbase + v, tt, t);
    return din.max_flow(s, tt) == m;
}

}  // namespace

long long exact_minmax_orientation(const EdgeList& g) {
    if (g.edges.empty()) return 0;
    long long lo = 0, hi = (long long)g.edges.size();
    while (lo < hi) {
        long long mid = lo + (hi - lo) / 2;
        if (orientation_feasible(g, mid)) hi = mid;
        else lo = mid + 1;
    }
    return lo;
}

long long minmax_orientation_enumerated(const EdgeList& g) {
    const size_t m = g.edges.size();
    if (m == 0) return 0;
    if (m > 20) throw std::invalid_argument("orientation enumeration is limited to m <= 20");
    long long best = (long long)m + 1;
    std::vector<long long> indeg(g.n);
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::fill(indeg.begin(), indeg.end(), 0);
        long long mx = 0;
        for (size_t i = 0; i < m; ++i) {
            Vertex head = (mask >> i) & 1 ? g.edges[i].first : g.edges[i].second;
            mx = std::max(mx, ++indeg[head]);
        }
        best = std::min(best, mx);
    }
    return best;
}

// ----------------------------------------- fractional orientation (dual)

FractionalOrientation exact_fractional_orientation(const EdgeList& g) {
    FractionalOrientation out;
    const long long m = (long long)g.edges.size();
    out.load.assign(m, {Rational(0), Rational(0)});
    if (m == 0) return out;

    Rational opt = exact_density_flow(g).opt_density;
    Dinic din(0);
    auto dec = decide_density(g, opt, &din);
    // no subset beats its own optimum, so the flow saturates every edge node
    if (dec.feasible)
        throw std::logic_error("density decision feasible at the optimum");
    const long long b = opt.den();
    const int vbase = 2;
    const int ebase = vbase + (int)g.n;
    std::vector<Rational> indeg(g.n, Rational(0));
    for (int i = 0; i < (int)m; ++i) {
        for (const auto& e : din.adj[ebase + i]) {
            if (e.to == 0) continue;  // residual arc back to the source
            long long sent = din.adj[e.to][e.rev].cap;  // flow = reverse residual
            Rational y(sent, b);
            int idx = e.to - vbase == g.edges[i].first ? 0 : 1;
            out.load[i][idx] = out.load[i][idx] + y;
            indeg[e.to - vbase] = indeg[e.to - vbase] + y;
        }
        if (out.load[i][0] + out.load[i][1] != Rational(1))
            throw std::logic_error("edge mass does not sum to one");
    }
    Rational mx(0);
    for (const auto& d : indeg)
        if (d > mx) mx = d;
    out.value = mx;
    if (mx != opt) throw std::logic_error("fractional orientation value differs from density");
    return out;
}

// ----------------------------------------------------------- hypergraphs

OracleResult exact_hyper_density(const HyperEdgeList& g) {
    if (g.n > 20)
        throw std::invalid_argument("hypergraph oracle is limited to n <= 20");
    OracleResult res;
    if (g.edges.empty()) return res;
    std::vector<std::uint32_t> emask(g.edges.size(), 0);
    for (size_t i = 0; i < g.edges.size(); ++i)
        for (Vertex v : g.edges[i]) emask[i] |= 1u << v;
    const std::uint32_t full = (std::uint32_t)((1ull << g.n) - 1);
    long long best_e = -1, best_s = 1;
    std::vector<Vertex> best_set;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        long long e = 0;
        for (std::uint32_t em : emask)
            if ((em & mask) == em) ++e;
        long long sz = __builtin_popcount(mask);
        if (best_e >= 0) {
            __int128 lhs = (__int128)e * best_s, rhs = (__int128)best_e * sz;
            if (lhs < rhs) continue;
            auto set = mask_to_set(mask);
            if (lhs > rhs ||
                std::lexicographical_compare(set.begin(), set.end(), best_set.begin(),
                                             best_set.end())) {
                best_e = e;
                best_s = sz;
                best_set = std::move(set);
            }
        } else {
            best_e = e;
            best_s = sz;
            best_set = mask_to_set(mask);
        }
    }
    res.opt_density = Rational(best_e, best_s);
    res.witness = best_set;
    return res;
}

long long hyper_minmax_orientation_enumerated(const HyperEdgeList& g) {
    const size_t m = g.edges.size();
    if (m == 0) return 0;
    double combos = 1;
    for (const auto& e : g.edges) combos *= (double)e.size();
    if (combos > 2e7) throw std::invalid_argument("hypergraph orientation enumeration too large");
    std::vector<size_t> pick(m, 0);
    std::vector<long long> indeg(g.n);
    long long best = (long long)m + 1;
    for (;;) {
        std::fill(indeg.begin(), indeg.end(), 0);
        long long mx = 0;
        for (size_t i = 0; i < m; ++i) mx = std::max(mx, ++indeg[g.edges[i][pick[i]]]);
        best = std::min(best, mx);
        size_t i = 0;
        while (i < m && ++pick[i] == g.edges[i].size()) pick[i++] = 0;
        if (i == m) break;
    }
    return best;
}

}  // namespace dsg
