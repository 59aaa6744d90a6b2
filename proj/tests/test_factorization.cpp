#include <catch2/catch_amalgamated.hpp>

#include "commsq/factorization.hpp"

using namespace commsq;

namespace {
MatI mk(std::initializer_list<std::initializer_list<int>> rows) {
    MatI M(rows.size(), rows.begin()->size());
    int i = 0;
    for (const auto& r : rows) {
        int j = 0;
        for (int v : r) M(i, j++) = v;
        ++i;
    }
    return M;
}
}  // namespace

TEST_CASE("enumeration agrees with the brute-force oracle on small matrices") {
    // all entry sums <= 6
    for (const MatI& G : {mk({{1}}), mk({{2}}), mk({{3}}), mk({{1, 1}}),
                          mk({{2, 1}}), mk({{1, 1}, {1, 1}}), mk({{2, 1}, {1, 1}}),
                          mk({{1, 0}, {1, 1}}), mk({{2, 0}, {1, 1}, {0, 1}})}) {
        INFO(G);
        auto fast = enumerate_factorizations(G);
        auto slow = brute_force_factorizations(G);
        REQUIRE(fast == slow);
        // every factorization reproduces G and has no zero middle rows/cols
        for (const auto& f : fast) {
            REQUIRE(MatI(factor_H(f) * factor_K(f)) == G);
            for (const auto& [h, k] : f) {
                REQUIRE(*std::max_element(h.begin(), h.end()) > 0);
                REQUIRE(*std::max_element(k.begin(), k.end()) > 0);
            }
        }
    }
}

TEST_CASE("canonical count is transpose invariant") {
    for (const MatI& G :
         {mk({{2, 1}, {1, 1}}), mk({{2, 0}, {1, 1}, {0, 1}}), mk({{2, 1}})}) {
        auto a = enumerate_factorizations(G);
        auto b = enumerate_factorizations(MatI(G.transpose()));
        REQUIRE(a.size() == b.size());
    }
}

TEST_CASE("invalid input is rejected") {
    REQUIRE_THROWS_AS(enumerate_factorizations(mk({{1, 0}, {1, 0}})),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(enumerate_factorizations(mk({{1, 1}, {0, 0}})),
                      std::invalid_argument);
    MatI neg = mk({{1, 1}, {1, 1}});
    neg(0, 0) = -1;
    REQUIRE_THROWS_AS(enumerate_factorizations(neg), std::invalid_argument);
}

TEST_CASE("4-star counts") {
    MatI star = star3333_adjacency();
    auto fs = enumerate_factorizations(star);
    REQUIRE(fs.size() == 457);
    REQUIRE(raw_count(fs) == 1339108680ULL);
    REQUIRE(center_bundle_subcount(fs) == 80);
    REQUIRE(enumerate_factorizations(MatI(star.transpose())).size() == 457);
}

TEST_CASE("norm screening on the 4-star") {
    MatI star = star3333_adjacency();
    double phi2 = 3 + std::sqrt(5.0);
    REQUIRE(screen_intermediate(star, phi2 / 2).empty());
    auto hits = screen_intermediate(star, phi2);
    REQUIRE(hits.size() == 1);
    // the unique hit is the trivial refactoring: H = star itself (up to
    // middle relabeling), so |H|^2 equals the graph's squared norm
    REQUIRE(factor_norm_sq(hits[0]) == Catch::Approx(phi2).margin(1e-9));
    REQUIRE((long)hits[0].size() == star.cols());
}

TEST_CASE("squared factor norms take only the documented values") {
    MatI star = star3333_adjacency();
    std::vector<double> expected = {1,
                                    2,
                                    3,
                                    (5 + std::sqrt(5.0)) / 2,
                                    4,
                                    2 + std::sqrt(2.0) + 1.0,  // 3+sqrt2 ~ 4.414
                                    3 + std::sqrt(3.0),
                                    5,
                                    3 + std::sqrt(5.0)};
    for (const auto& f : enumerate_factorizations(star)) {
        double n2 = factor_norm_sq(f);
        bool found = false;
        for (double e : expected)
            if (std::abs(n2 - e) < 1e-6) found = true;
        INFO(n2);
        REQUIRE(found);
    }
}
