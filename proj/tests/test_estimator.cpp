#include <doctest.h>

#include <random>

#include "dsg/estimator.hpp"
#include "dsg/numeric.hpp"
#include "dsg/oracle.hpp"

using namespace dsg;

namespace {

Config est_cfg(std::int64_t n, const Rational& eps) { return Config::defaults(n, eps); }

Rational upper_bracket(const Rational& opt, std::int64_t n, const Rational& eps,
                       std::int64_t k) {
    return (Rational(1) + eps) * opt + Rational(4) * ln_lower(n) / (eps * Rational(k));
}

Rational lower_bracket(const Rational& opt, std::int64_t n, const Rational& eps,
                       std::int64_t k) {
    return (Rational(1) - eps) * opt - Rational(4) * ln_lower(n) / (eps * Rational(k));
}

}  // namespace

TEST_CASE("single edge lands exactly on the optimum with k copies balanced") {
    Config cfg = est_cfg(2, Rational(1, 4));
    cfg.dup_k = 8;
    DensityEstimator est(EstimatorMode::worstcase, cfg);
    est.insert_edge(0, 1);
    CHECK(est.edge_count() == 1);
    // eight copies split 4/4, so the reported value is the exact optimum
    CHECK(est.density_value() == Rational(1, 2));
    Rational opt = exact_density_bruteforce(est.logical_edges()).opt_density;
    CHECK(opt == Rational(1, 2));
    CHECK(est.density_value() >= opt);
    CHECK(est.density_value() <= upper_bracket(opt, 2, cfg.eps, 8));
    CHECK(est.check_invariants().empty());
}

TEST_CASE("allocated pair records are independent of k") {
    std::mt19937 seed_rng(8);
    std::vector<std::pair<Vertex, Vertex>> stream;
    while (stream.size() < 200) {
        Vertex u = (Vertex)(seed_rng() % 12), v = (Vertex)(seed_rng() % 12);
        if (u != v) stream.emplace_back(u, v);
    }
    long long allocated[3], live[3];
    std::int64_t ks[3] = {8, 64, 256};
    for (int i = 0; i < 3; ++i) {
        Config cfg = est_cfg(12, Rational(1, 4));
        cfg.dup_k = ks[i];
        DensityEstimator est(EstimatorMode::worstcase, cfg);
        for (auto [u, v] : stream) est.insert_edge(u, v);
        allocated[i] = est.primary().structure().pair_records_allocated();
        live[i] = est.primary().structure().pair_records_live();
    }
    CHECK(allocated[0] == allocated[1]);
    CHECK(allocated[1] == allocated[2]);
    CHECK(live[0] == live[1]);
    CHECK(live[1] == live[2]);
}

TEST_CASE("combined mode updates both inner structures") {
    Config cfg = est_cfg(4, Rational(1, 4));
    cfg.dup_k = 8;
    cfg.threshold_T = 4;
    DensityEstimator est(EstimatorMode::combined, cfg);
    est.insert_edge(0, 1);
    CHECK(est.edge_count() == 1);
    CHECK(est.primary().structure().oriented_copies() == 8);
    REQUIRE(est.secondary() != nullptr);
    CHECK(est.secondary()->structure().oriented_copies() == 1);
    CHECK(est.check_invariants().empty());
}

TEST_CASE("insert then delete returns to the observable initial state") {
    Config cfg = est_cfg(6, Rational(1, 4));
    cfg.dup_k = 16;
    DensityEstimator est(EstimatorMode::combined, cfg);
    est.insert_edge(2, 5);
    est.delete_edge(2, 5);
    CHECK(est.edge_count() == 0);
    CHECK(est.density_value() == Rational(0));
    CHECK(est.primary().structure().oriented_copies() == 0);
    CHECK(est.primary().structure().max_in_degree() == 0);
    CHECK(est.densest_subgraph().empty());
    CHECK_THROWS_AS(est.delete_edge(2, 5), UpdateError);
}

TEST_CASE("K4 value bracket at eps = 1/10") {
    const Rational eps(1, 10);
    Config cfg = est_cfg(4, eps);
    DensityEstimator est(EstimatorMode::worstcase, cfg);
    for (auto [u, v] : {std::pair<Vertex, Vertex>{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})
        est.insert_edge(u, v);
    Rational opt = exact_density_bruteforce(est.logical_edges()).opt_density;
    CHECK(opt == Rational(3, 2));
    CHECK(est.density_value() >= opt);
    CHECK(est.density_value() <= upper_bracket(opt, 4, eps, cfg.dup_k));
}

TEST_CASE("star value bracket") {
    const Rational eps(1, 10);
    Config cfg = est_cfg(4, eps);
    DensityEstimator est(EstimatorMode::amortized, cfg);
    est.insert_edge(0, 1);
    est.insert_edge(0, 2);
    est.insert_edge(0, 3);
    Rational opt = exact_density_bruteforce(est.logical_edges()).opt_density;
    CHECK(opt == Rational(3, 4));
    CHECK(est.density_value() >= opt);
    CHECK(est.density_value() <= upper_bracket(opt, 4, eps, cfg.dup_k));
}

TEST_CASE("densest subgraph extraction finds the clique next to a pendant") {
    const Rational eps(1, 8);
    Config cfg = est_cfg(5, eps);
    DensityEstimator est(EstimatorMode::worstcase, cfg);
    for (auto [u, v] : {std::pair<Vertex, Vertex>{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})
        est.insert_edge(u, v);
    est.insert_edge(0, 4);  // pendant
    auto set = est.densest_subgraph();
    CHECK(set == std::vector<Vertex>{0, 1, 2, 3});
    Rational opt = exact_density_bruteforce(est.logical_edges()).opt_density;
    CHECK(est.subgraph_density(set) >= lower_bracket(opt, 5, eps, cfg.dup_k));
}

TEST_CASE("two disjoint triangles extract a near-optimal set") {
    const Rational eps(1, 4);
    Config cfg = est_cfg(6, eps);
    DensityEstimator est(EstimatorMode::worstcase, cfg);
    for (auto [u, v] :
         {std::pair<Vertex, Vertex>{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}})
        est.insert_edge(u, v);
    Rational opt = exact_density_bruteforce(est.logical_edges()).opt_density;
    CHECK(opt == Rational(1));
    auto set = est.densest_subgraph();
    REQUIRE(!set.empty());
    CHECK(est.subgraph_density(set) >= lower_bracket(opt, 6, eps, cfg.dup_k));
}

TEST_CASE("subgraph_density is the exact logical density") {
    Config cfg = est_cfg(5, Rational(1, 4));
    cfg.dup_k = 8;
    DensityEstimator est(EstimatorMode::worstcase, cfg);
    est.insert_edge(0, 1);
    CHECK(est.subgraph_density({0, 1}) == Rational(1, 2));
    CHECK(est.subgraph_density({2}) == Rational(0));
    CHECK_THROWS_AS(est.subgraph_density({}), UpdateError);
    for (auto [u, v] : {std::pair<Vertex, Vertex>{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})
        est.insert_edge(u, v);
    CHECK(est.subgraph_density({0, 1, 2, 3}) == Rational(3, 2));
    est.insert_edge(0, 1);  // parallel copy counts twice
    CHECK(est.subgraph_density({0, 1}) == Rational(1));
}

TEST_CASE("sliding window stream stays inside the oracle bracket") {
    const std::int64_t n = 16;
    const Rational eps(1, 4);
    Config cfg = est_cfg(n, eps);
    DensityEstimator est(EstimatorMode::combined, cfg);
    std::mt19937 rng(31337);
    std::vector<std::pair<Vertex, Vertex>> window;
    int checked = 0;
    for (int step = 0; step < 200; ++step) {
        Vertex u = (Vertex)(rng() % n), v = (Vertex)(rng() % n);
        if (u == v) { u = (Vertex)((v + 1) % n); }
        est.insert_edge(u, v);
        window.emplace_back(u, v);
        if (window.size() > 20) {
            est.delete_edge(window.front().first, window.front().second);
            window.erase(window.begin());
        }
        if (step % 5 == 0) {
            Rational opt = exact_density_bruteforce(est.logical_edges()).opt_density;
            Rational val = est.density_value();
            CAPTURE(step);
            REQUIRE(val >= opt);
            REQUIRE(val <= upper_bracket(opt, n, eps, cfg.dup_k));
            auto set = est.densest_subgraph();
            if (!set.empty())
                REQUIRE(est.subgraph_density(set) >= lower_bracket(opt, n, eps, cfg.dup_k));
            ++checked;
        }
        if (step % 25 == 0) REQUIRE(est.check_invariants().empty());
    }
    CHECK(checked == 40);
}

TEST_CASE("combined dispatch accepts low-density streams") {
    Config cfg = est_cfg(6, Rational(1, 4));
    cfg.dup_k = 16;
    cfg.threshold_T = 2;
    DensityEstimator est(EstimatorMode::combined, cfg);
    for (auto [u, v] : {std::pair<Vertex, Vertex>{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}})
        est.insert_edge(u, v);
    CHECK(!est.rejects_truncated());
    Rational opt = exact_density_bruteforce(est.logical_edges()).opt_density;
    CHECK(opt < Rational(2));
    CHECK(est.density_value() >= opt);
    CHECK(est.density_value() <= upper_bracket(opt, 6, cfg.eps, 16));
}

TEST_CASE("combined dispatch rejects once the density provably exceeds T") {
    Config cfg = est_cfg(6, Rational(1, 4));
    cfg.dup_k = 16;
    cfg.threshold_T = 2;
    DensityEstimator est(EstimatorMode::combined, cfg);
    for (int round = 0; round < 3; ++round)
        for (Vertex u = 0; u < 6; ++u)
            for (Vertex v = u + 1; v < 6; ++v) est.insert_edge(u, v);
    REQUIRE(est.rejects_truncated());
    Rational opt = exact_density_bruteforce(est.logical_edges()).opt_density;
    CHECK(opt >= Rational(est.logical_threshold()));  // the dispatch guarantee
    CHECK(est.density_value() >= opt);                // raw structure duality
    CHECK(est.check_invariants().empty());
}
