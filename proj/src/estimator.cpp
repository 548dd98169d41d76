#include "dsg/estimator.hpp"

#include <algorithm>
#include <cassert>

#include "dsg/invariants.hpp"
#include "dsg/numeric.hpp"

namespace dsg {

namespace {

Rational pow_rational(const Rational& base, int power) {
    Rational r(1);
    for (int i = 0; i < power; ++i) r = r * base;
    return r;
}

}  // namespace

DensityEstimator::DensityEstimator(EstimatorMode mode, const Config& base)
    : mode_(mode), base_(base), k_(base.dup_k) {
    base_.validate();
    T_ = base_.threshold_T.value_or(Config::default_threshold(base_.n, base_.eps));

    Config inner = base_;
    inner.threshold_T = std::nullopt;
    switch (mode_) {
        case EstimatorMode::amortized:
            primary_ = std::make_unique<AmortizedMaintainer>(inner);
            break;
        case EstimatorMode::worstcase:
            primary_ = std::make_unique<WorstCaseMaintainer>(inner);
            break;
        case EstimatorMode::combined: {
            Config trunc = inner;
            trunc.threshold_T = k_ * T_;  // duplicated units
            primary_ = std::make_unique<ThresholdMaintainer>(trunc);
            Config raw = inner;
            raw.dup_k = 1;
            secondary_ = std::make_unique<WorstCaseMaintainer>(raw);
            break;
        }
    }
}

void DensityEstimator::insert_edge(Vertex u, Vertex v) {
    if (u == v) throw UpdateError("self-loops are not supported");
    if (u < 0 || v < 0 || u >= base_.n || v >= base_.n)
        throw UpdateError("vertex id out of range");
    for (std::int64_t i = 0; i < k_; ++i) primary_->insert(u, v);
    if (secondary_) secondary_->insert(u, v);
    std::uint64_t key = (std::uint64_t)std::min(u, v) * base_.n + std::max(u, v);
    ++logical_[key];
    ++m_;
}

void DensityEstimator::delete_edge(Vertex u, Vertex v) {
    if (u == v) throw UpdateError("self-loops are not supported");
    if (u < 0 || v < 0 || u >= base_.n || v >= base_.n)
        throw UpdateError("vertex id out of range");
    std::uint64_t key = (std::uint64_t)std::min(u, v) * base_.n + std::max(u, v);
    auto it = logical_.find(key);
    if (it == logical_.end()) throw UpdateError("edge not present");
    for (std::int64_t i = 0; i < k_; ++i) primary_->erase(u, v);
    if (secondary_) secondary_->erase(u, v);
    if (--it->second == 0) logical_.erase(it);
    --m_;
}

bool DensityEstimator::rejects_truncated() const {
    if (mode_ != EstimatorMode::combined) return false;
    // Accept while the raw max in-degree of the truncated structure stays
    // under (1+eps) k T plus the additive drift; past that point the density
    // provably exceeds T and the unduplicated structure is authoritative.
    Rational mu_raw(primary_->structure().max_in_degree());
    Rational cut = (Rational(1) + base_.eps) * Rational(k_ * T_) +
                   Rational(4) * ln_upper(base_.n) / base_.eps;
    return mu_raw >= cut;
}

const Structure& DensityEstimator::governing() const {
    if (mode_ == EstimatorMode::combined && rejects_truncated())
        return secondary_->structure();
    return primary_->structure();
}

int DensityEstimator::local_opt_power() const {
    return mode_ == EstimatorMode::amortized ? 2 : 3;
}

Rational DensityEstimator::density_value() const {
    if (mode_ == EstimatorMode::combined && rejects_truncated())
        return Rational(secondary_->structure().max_in_degree());
    return Rational(primary_->structure().max_effective_degree(), k_);
}

std::vector<Vertex> DensityEstimator::densest_subgraph() const {
    if (m_ == 0) return {};
    const Structure& s = governing();
    const Rational& alpha = s.config().alpha;
    int power = &s == &primary_->structure() ? local_opt_power() : 3;
    Rational factor = pow_rational(Rational(1) + alpha, power);
    Rational beta = power == 2 ? Rational(3) + Rational(3) * alpha
                               : Rational(3) + Rational(10) * alpha;
    return extract_densest_prefix(s.degrees(), base_.n, s.max_effective_degree(),
                                  factor, beta, base_.eps);
}

Rational DensityEstimator::subgraph_density(const std::vector<Vertex>& set) const {
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
    for (const auto& [key, count] : logical_) {
        Vertex u = (Vertex)(key / base_.n), v = (Vertex)(key % base_.n);
        if (in[u] && in[v]) inside += count;
    }
    return Rational(inside, size);
}

EdgeList DensityEstimator::logical_edges() const {
    EdgeList g;
    g.n = base_.n;
    std::vector<std::pair<std::uint64_t, long long>> items(logical_.begin(), logical_.end());
    std::sort(items.begin(), items.end());
    for (const auto& [key, count] : items) {
        Vertex u = (Vertex)(key / base_.n), v = (Vertex)(key % base_.n);
        for (long long i = 0; i < count; ++i) g.edges.emplace_back(u, v);
    }
    return g;
}

std::vector<std::string> DensityEstimator::check_invariants() const {
    Variant var = mode_ == EstimatorMode::amortized ? Variant::amortized : Variant::worstcase;
    std::vector<std::string> out = check_all(primary_->structure(), var);
    if (secondary_) {
        auto more = check_all(secondary_->structure(), Variant::worstcase);
        out.insert(out.end(), more.begin(), more.end());
    }
    return out;
}

// ------------------------------------------------------------- extraction

std::vector<Vertex> extract_densest_prefix(const DegreeTable& deg, std::int64_t n,
                                           long long mu, const Rational& factor,
                                           const Rational& beta, const Rational& eps) {
    if (mu <= 0) return {};
    // Level thresholds mu_0 < mu_1 < ... rounded up to a 2^-20 grid; the
    // upward rounding preserves mu_{i+1} >= factor*mu_i + beta, which is
    // what the in-neighbor containment of the level sets needs.
    const long long grid = 1ll << 20;
    std::vector<Rational> levels{Rational(0)};
    while (levels.back() <= Rational(mu)) {
        Rational next = factor * levels.back() + beta;
        next = Rational((next * Rational(grid)).ceil(), grid);
        levels.push_back(next);
    }
    // levels.back() is the first threshold above mu, so K = levels.size()-1:
    // mu_{K-1} <= mu < mu_K. Level set S_i uses cutoff ceil(mu_{K-i}).
    const size_t K = levels.size() - 1;

    // |{v : indeg >= c}| for each level cutoff, via one sweep down the buckets
    std::vector<long long> cutoffs(K + 1);  // cutoffs[i] for S_i, i = 1..K; [0] unused
    for (size_t i = 1; i <= K; ++i) cutoffs[i] = levels[K - i].ceil();
    std::vector<long long> sizes(K + 2, 0);
    {
        long long cum = 0;
        long long d = deg.max_deg();
        for (size_t i = 1; i <= K; ++i) {
            while (d >= cutoffs[i]) {
                cum += deg.count_at(d);
                --d;
            }
            sizes[i] = cum;
        }
        sizes[K + 1] = n;  // S_i for i > K covers every vertex
    }

    size_t chosen = K + 1;
    for (size_t i = 1; i <= K; ++i) {
        // |S_{i+1}| <= (1+eps)|S_i|, exact comparison
        long long s1 = sizes[i], s2 = sizes[i + 1];
        if (s1 > 0 &&
            (__int128)s2 * eps.den() <= (__int128)s1 * (eps.den() + eps.num())) {
            chosen = i + 1;
            break;
        }
    }
    long long cut = chosen <= K ? cutoffs[chosen] : 0;

    std::vector<Vertex> out;
    for (long long d = deg.max_deg(); d >= cut && d >= 0; --d)
        for (Vertex v = deg.first_at(d); v >= 0; v = deg.next_in_bucket(v)) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace dsg
