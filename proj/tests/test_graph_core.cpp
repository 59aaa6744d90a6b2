#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "commsq/graph_core.hpp"

using namespace commsq;

TEST_CASE("make_star builds the expected bipartite split") {
    BipartiteGraph g = make_star({3, 3, 3, 3});
    // center + one even vertex per arm on the left, two odd per arm on the right
    REQUIRE(g.left.size() == 5);
    REQUIRE(g.right.size() == 8);
    REQUIRE(g.left[0] == "A");
    REQUIRE(g.adj.sum() == 12);  // 12 edges in four length-3 arms
    // center meets exactly the four distance-1 vertices
    REQUIRE(g.adj.row(0).sum() == 4);
    REQUIRE(g.adj(0, g.right_index("a1")) == 1);
    REQUIRE(g.adj(g.left_index("b2"), g.right_index("b1")) == 1);
    REQUIRE(g.adj(g.left_index("b2"), g.right_index("b3")) == 1);
    REQUIRE(g.adj(g.left_index("b2"), g.right_index("a1")) == 0);
    REQUIRE(is_connected(g));
}

TEST_CASE("make_star rejects bad input") {
    REQUIRE_THROWS_AS(make_star({}), std::invalid_argument);
    REQUIRE_THROWS_AS(make_star({1, 0}), std::invalid_argument);
    REQUIRE_THROWS_AS(make_star(std::vector<int>(27, 1)), std::invalid_argument);
}

TEST_CASE("from_adjacency validates its input") {
    MatI ok(1, 2);
    ok << 1, 1;
    REQUIRE_NOTHROW(from_adjacency({"p"}, {"q", "r"}, ok));
    REQUIRE_THROWS_AS(from_adjacency({"p", "x"}, {"q", "r"}, ok),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(from_adjacency({"p"}, {"q", "q"}, ok), std::invalid_argument);
    MatI neg(1, 2);
    neg << 1, -1;
    REQUIRE_THROWS_AS(from_adjacency({"p"}, {"q", "r"}, neg), std::invalid_argument);
    MatI zrow(2, 2);
    zrow << 1, 1, 0, 0;
    REQUIRE_THROWS_AS(from_adjacency({"p", "x"}, {"q", "r"}, zrow),
                      std::invalid_argument);
}

TEST_CASE("is_connected detects split graphs") {
    MatI adj(2, 2);
    adj << 1, 0, 0, 1;
    BipartiteGraph g{{"p", "x"}, {"q", "r"}, adj};
    REQUIRE_FALSE(is_connected(g));
}

TEST_CASE("spectral data of small known graphs") {
    // single edge: norm 1
    BipartiteGraph edge = from_adjacency({"p"}, {"q"}, MatI::Ones(1, 1));
    SpectralData sd = spectral(edge);
    REQUIRE(sd.norm == Catch::Approx(1.0).margin(1e-12));

    // path on 4 vertices: norm = golden ratio
    MatI p4(2, 2);
    p4 << 1, 0, 1, 1;
    SpectralData sp = spectral(from_adjacency({"1", "3"}, {"0", "2"}, p4));
    REQUIRE(sp.norm == Catch::Approx((1 + std::sqrt(5.0)) / 2).margin(1e-12));
    REQUIRE(sp.residual <= 1e-10);

    // 4-star S(1,1,1,1): norm 2
    SpectralData st = spectral(make_star({1, 1, 1, 1}));
    REQUIRE(st.norm == Catch::Approx(2.0).margin(1e-12));

    // eigenvector entries positive; defining equations hold
    for (const auto& [k, v] : st.pf_left) REQUIRE(v > 0);
    for (const auto& [k, v] : st.pf_right) REQUIRE(v > 0);
}

TEST_CASE("spectral anchoring") {
    BipartiteGraph g = make_star({2, 2});
    SpectralData sd = spectral(g, 1e-12, "A", 1.0);
    REQUIRE(sd.pf_left.at("A") == Catch::Approx(1.0).margin(1e-14));
    SpectralData sm = spectral(g);  // default: max left entry = 1
    double mx = 0;
    for (const auto& [k, v] : sm.pf_left) mx = std::max(mx, v);
    REQUIRE(mx == Catch::Approx(1.0).margin(1e-14));
    REQUIRE_THROWS(spectral(g, 1e-12, "nope", 1.0));
}

TEST_CASE("spectral rejects disconnected graphs") {
    MatI adj(2, 2);
    adj << 1, 0, 0, 1;
    BipartiteGraph g{{"p", "x"}, {"q", "r"}, adj};
    REQUIRE_THROWS_AS(spectral(g), std::invalid_argument);
}

TEST_CASE("row-norm irreducibility bound") {
    MatI G(2, 2), L(2, 2);
    G << 1, 0, 1, 1;  // min row 1-norm 1
    L << 2, 1, 1, 2;  // min row 1-norm 3
    REQUIRE(wenzl_bound(G, L) == 1);
    REQUIRE(wenzl_bound(L, L) == 9);
    MatI C(2, 1);
    C << 1, 0;  // min column 1-norm 1, min row 1-norm 0
    REQUIRE(wenzl_bound(C, C, true) == 1);
}

TEST_CASE("graph JSON round trip and dot output") {
    BipartiteGraph g = make_star({2, 1});
    BipartiteGraph h = graph_from_json(graph_to_json(g));
    REQUIRE(h.left == g.left);
    REQUIRE(h.right == g.right);
    REQUIRE(h.adj == g.adj);
    std::string dot = graph_to_dot(g);
    REQUIRE(dot.find("\"A\" -- \"a1\"") != std::string::npos);
    REQUIRE(dot.find("graph bipartite") != std::string::npos);
}

TEST_CASE("random connected graphs keep spectral invariants") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        int m = 1 + (int)(rng() % 4), n = 1 + (int)(rng() % 4);
        std::vector<std::string> lp, lq;
        for (int i = 0; i < m; ++i) lp.push_back("p" + std::to_string(i));
        for (int j = 0; j < n; ++j) lq.push_back("q" + std::to_string(j));
        MatI adj(m, n);
        BipartiteGraph g;
        while (true) {
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j) adj(i, j) = (int)(rng() % 3);
            try {
                g = from_adjacency(lp, lq, adj);
            } catch (const std::invalid_argument&) {
                continue;  // zero row/col; re-roll
            }
            if (is_connected(g)) break;
        }
        SpectralData sd = spectral(g);
        // norm bounded by max row sum and at least max entry
        REQUIRE(sd.norm <= std::sqrt((double)(adj.rowwise().sum().maxCoeff() *
                                              adj.colwise().sum().maxCoeff())) +
                               1e-9);
        REQUIRE(sd.norm >= adj.maxCoeff() - 1e-9);
        REQUIRE(sd.residual <= 1e-10);
        // transpose invariance of the norm
        BipartiteGraph gt{g.right, g.left, adj.transpose()};
        REQUIRE(spectral(gt).norm == Catch::Approx(sd.norm).margin(1e-10));
    }
}
