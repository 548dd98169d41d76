#include <doctest.h>

#include <random>

#include "dsg/oracle.hpp"

using namespace dsg;

namespace {

EdgeList k4() { return {4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}}; }

EdgeList random_graph(std::mt19937& rng, int max_n, int max_m) {
    EdgeList g;
    g.n = 2 + (int)(rng() % (max_n - 1));
    int m = (int)(rng() % (max_m + 1));
    for (int i = 0; i < m; ++i) {
        Vertex u = (Vertex)(rng() % g.n), v = (Vertex)(rng() % g.n);
        if (u == v) continue;
        g.edges.emplace_back(u, v);
    }
    return g;
}

}  // namespace

TEST_CASE("brute-force densities on pinned fixtures") {
    EdgeList tri{3, {{0, 1}, {1, 2}, {2, 0}}};
    auto r = exact_density_bruteforce(tri);
    CHECK(r.opt_density == Rational(1));
    CHECK(r.witness == std::vector<Vertex>{0, 1, 2});

    CHECK(exact_density_bruteforce(k4()).opt_density == Rational(3, 2));

    EdgeList single{2, {{0, 1}}};
    CHECK(exact_density_bruteforce(single).opt_density == Rational(1, 2));

    EdgeList path{3, {{0, 1}, {1, 2}}};
    CHECK(exact_density_bruteforce(path).opt_density == Rational(2, 3));

    EdgeList star{4, {{0, 1}, {0, 2}, {0, 3}}};
    CHECK(exact_density_bruteforce(star).opt_density == Rational(3, 4));

    EdgeList empty{5, {}};
    auto e = exact_density_bruteforce(empty);
    CHECK(e.opt_density == Rational(0));
    CHECK(e.witness.empty());
}

TEST_CASE("witness ties break to the lexicographically smallest set") {
    EdgeList two_tri{6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}}};
    auto r = exact_density_bruteforce(two_tri);
    CHECK(r.opt_density == Rational(1));
    CHECK(r.witness == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("multigraph multiplicity counts in the density") {
    EdgeList g{2, {{0, 1}, {0, 1}, {0, 1}}};
    CHECK(exact_density_bruteforce(g).opt_density == Rational(3, 2));
    CHECK(exact_density_flow(g).opt_density == Rational(3, 2));
}

TEST_CASE("flow oracle fixtures and the empty convention") {
    EdgeList path{3, {{0, 1}, {1, 2}}};
    auto r = exact_density_flow(path);
    CHECK(r.opt_density == Rational(2, 3));
    CHECK(r.witness == std::vector<Vertex>{0, 1, 2});

    EdgeList empty{4, {}};
    auto e = exact_density_flow(empty);
    CHECK(e.opt_density == Rational(0));
    CHECK(e.witness.empty());
}

TEST_CASE("flow oracle agrees with brute force on random graphs") {
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 120; ++trial) {
        EdgeList g = random_graph(rng, 12, 40);
        auto bf = exact_density_bruteforce(g);
        auto fl = exact_density_flow(g);
        CAPTURE(trial);
        REQUIRE(bf.opt_density == fl.opt_density);
        // both witnesses must actually attain the optimum
        if (!fl.witness.empty()) {
            long long inside = 0;
            std::vector<bool> in(g.n, false);
            for (Vertex v : fl.witness) in[v] = true;
            for (auto [u, v] : g.edges)
                if (in[u] && in[v]) ++inside;
            CHECK(Rational(inside, (long long)fl.witness.size()) == fl.opt_density);
        }
    }
}

TEST_CASE("min-max orientation fixtures") {
    EdgeList tri{3, {{0, 1}, {1, 2}, {2, 0}}};
    CHECK(minmax_orientation_enumerated(tri) == 1);
    CHECK(exact_minmax_orientation(tri) == 1);
    CHECK(minmax_orientation_enumerated(k4()) == 2);
    CHECK(exact_minmax_orientation(k4()) == 2);
    EdgeList star{4, {{0, 1}, {0, 2}, {0, 3}}};
    CHECK(minmax_orientation_enumerated(star) == 1);
    CHECK(exact_minmax_orientation(star) == 1);
    EdgeList empty{3, {}};
    CHECK(exact_minmax_orientation(empty) == 0);
}

TEST_CASE("flow and enumerated orientations agree; arboricity sandwich") {
    std::mt19937 rng(90125);
    for (int trial = 0; trial < 80; ++trial) {
        EdgeList g = random_graph(rng, 8, 18);
        long long arb_flow = exact_minmax_orientation(g);
        CAPTURE(trial);
        REQUIRE(arb_flow == minmax_orientation_enumerated(g));
        Rational opt = exact_density_bruteforce(g).opt_density;
        CHECK(opt <= Rational(arb_flow == 0 ? 0 : arb_flow));
        CHECK(Rational(arb_flow) <= opt + Rational(1));
    }
}

TEST_CASE("fractional orientation realizes the optimum density") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 40; ++trial) {
        EdgeList g = random_graph(rng, 8, 20);
        if (g.edges.empty()) continue;
        auto fo = exact_fractional_orientation(g);
        Rational opt = exact_density_bruteforce(g).opt_density;
        CAPTURE(trial);
        REQUIRE(fo.value == opt);
        for (size_t i = 0; i < g.edges.size(); ++i)
            CHECK(fo.load[i][0] + fo.load[i][1] == Rational(1));
    }
}

TEST_CASE("hypergraph densities") {
    HyperEdgeList one{4, {{0, 1, 2}}};
    auto r = exact_hyper_density(one);
    CHECK(r.opt_density == Rational(1, 3));
    CHECK(r.witness == std::vector<Vertex>{0, 1, 2});

    HyperEdgeList complete34{4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
    CHECK(exact_hyper_density(complete34).opt_density == Rational(1));

    HyperEdgeList empty{3, {}};
    CHECK(exact_hyper_density(empty).opt_density == Rational(0));
    CHECK(exact_hyper_density(empty).witness.empty());

    CHECK(hyper_minmax_orientation_enumerated(one) == 1);
    CHECK(hyper_minmax_orientation_enumerated(complete34) == 1);
}

TEST_CASE("size guards reject oversized inputs") {
    EdgeList big;
    big.n = 25;
    CHECK_THROWS_AS(exact_density_bruteforce(big), std::invalid_argument);
    EdgeList many{3, {}};
    for (int i = 0; i < 21; ++i) many.edges.emplace_back(0, 1);
    CHECK_THROWS_AS(minmax_orientation_enumerated(many), std::invalid_argument);
    HyperEdgeList hbig;
    hbig.n = 21;
    CHECK_THROWS_AS(exact_hyper_density(hbig), std::invalid_argument);
}
