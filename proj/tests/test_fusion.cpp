#include <catch2/catch_amalgamated.hpp>

#include "commsq/fusion.hpp"

using namespace commsq;

namespace {
MultMap ring_mult_map(const FusionRing& r) {
    MultMap mp;
    for (int i = 0; i < r.n; ++i)
        for (int j = 0; j < r.n; ++j) {
            IntVec v(r.n);
            for (int k = 0; k < r.n; ++k) v[k] = r.N[i](j, k);
            mp.push_back(v);
        }
    return mp;
}
}  // namespace

TEST_CASE("built-in rings validate with the right dimensions") {
    FusionRing z4 = cyclic_ring(4);
    for (int a = 0; a < 4; ++a) REQUIRE(z4.dims(a) == Catch::Approx(1.0).margin(1e-10));
    FusionRing fib = fib_ring();
    REQUIRE(fib.dims(1) == Catch::Approx((1 + std::sqrt(5.0)) / 2).margin(1e-10));
    FusionRing tl = tl_ring(4);
    // quantum dimensions at level 4: 2cos(pi/5)-chain values
    REQUIRE(tl.dims(1) == Catch::Approx(2 * std::cos(M_PI / 5)).margin(1e-10));
    REQUIRE(tl.dims(3) == Catch::Approx(1.0).margin(1e-10));
}

TEST_CASE("invalid fusion data is rejected with the failed law named") {
    // broken Frobenius reciprocity
    nlohmann::json j = ring_to_json(cyclic_ring(2));
    j["N"]["g1,g1"] = {{"g1", 1}};
    REQUIRE_THROWS_WITH(ring_from_json(j),
                        Catch::Matchers::ContainsSubstring("Frobenius"));
    // broken unit law
    nlohmann::json j2 = ring_to_json(cyclic_ring(2));
    j2["N"]["g0,g0"] = {{"g1", 1}};
    REQUIRE_THROWS_WITH(ring_from_json(j2),
                        Catch::Matchers::ContainsSubstring("unit"));
    // dual not an involution
    nlohmann::json j3 = ring_to_json(cyclic_ring(3));
    j3["dual"]["g1"] = "g1";
    REQUIRE_THROWS_WITH(ring_from_json(j3),
                        Catch::Matchers::ContainsSubstring("involution"));
}

TEST_CASE("sum of squares decompositions") {
    REQUIRE(sum_of_squares_decompositions(2, 2) ==
            std::vector<IntVec>{{1, 1}});
    auto v43 = sum_of_squares_decompositions(4, 3);
    REQUIRE(v43 == std::vector<IntVec>{{0, 0, 2}, {0, 2, 0}, {2, 0, 0}});
    REQUIRE(sum_of_squares_decompositions(0, 3) ==
            std::vector<IntVec>{{0, 0, 0}});
    // 6 = 1+1+4 or 1+1+1+1+1+1 (needs 6 slots)
    auto v63 = sum_of_squares_decompositions(6, 3);
    for (const auto& v : v63) {
        long long s = 0;
        for (long long x : v) s += x * x;
        REQUIRE(s == 6);
    }
    REQUIRE(v63.size() == 3);  // permutations of (1,1,2)
}

TEST_CASE("regular bimodules validate and expose the ring actions") {
    FusionRing z3 = cyclic_ring(3);
    FusionBimodule bm = regular_bimodule(z3);
    REQUIRE(bm.n == 3);
    REQUIRE(bm.L == z3.N);
    REQUIRE(bm.dims(0) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("bimodule automorphisms") {
    REQUIRE(bimodule_autos(regular_bimodule(cyclic_ring(2))).size() == 2);
    REQUIRE(bimodule_autos(regular_bimodule(cyclic_ring(3))).size() == 3);
    REQUIRE(bimodule_autos(regular_bimodule(fib_ring())).size() == 1);
    REQUIRE(bimodule_autos(regular_bimodule(tl_ring(4))).size() == 2);
}

TEST_CASE("multiplication-map search matches the brute-force oracle") {
    struct Case {
        const char* name;
        FusionRing ring;
        size_t raw;
    };
    for (const Case& cs : {Case{"Z/2", cyclic_ring(2), 2},
                           Case{"Z/3", cyclic_ring(3), 3},
                           Case{"Fib", fib_ring(), 1}}) {
        INFO(cs.name);
        FusionBimodule bm = regular_bimodule(cs.ring);
        MultTriple tr(bm, bm, bm);
        auto maps = tr.find_multiplication_maps();
        auto oracle = tr.brute_force_maps();
        REQUIRE(maps.size() == cs.raw);
        REQUIRE(maps.size() == oracle.size());
        for (size_t k = 0; k < maps.size(); ++k) REQUIRE(maps[k] == oracle[k]);
        // exactly one map up to relabeling the target basis
        REQUIRE(tr.orbit_count(maps) == 1);
        // the ring multiplication itself is found
        MultMap fr = ring_mult_map(cs.ring);
        REQUIRE(std::find(maps.begin(), maps.end(), fr) != maps.end());
        // every returned map satisfies all conditions and associativity
        for (const auto& mp : maps) {
            for (int pi = 0; pi < (int)mp.size(); ++pi)
                REQUIRE(tr.check_conditions(pi, mp[pi], mp, false));
            REQUIRE(tr.associative(mp));
        }
    }
}

TEST_CASE("relaxed mode is a superset of the strict search") {
    FusionBimodule bm = regular_bimodule(cyclic_ring(3));
    MultTriple tr(bm, bm, bm);
    auto strict = tr.find_multiplication_maps(false);
    auto relaxed = tr.find_multiplication_maps(true);
    REQUIRE(relaxed.size() >= strict.size());
    for (const auto& mp : strict)
        REQUIRE(std::find(relaxed.begin(), relaxed.end(), mp) != relaxed.end());
}

TEST_CASE("fusion graphs of the regular triples") {
    for (const FusionRing& ring : {cyclic_ring(2), fib_ring(), tl_ring(4)}) {
        FusionBimodule bm = regular_bimodule(ring);
        MultTriple tr(bm, bm, bm);
        MultMap fr = ring_mult_map(ring);
        // unit acts as the identity graph
        REQUIRE(fusion_graph(tr, fr, ring.unit) ==
                MatI(MatI::Identity(ring.n, ring.n)));
        // row dimension sums match d(X) d(eta_j)
        for (int x = 0; x < ring.n; ++x) {
            MatI G = fusion_graph(tr, fr, x);
            for (int j = 0; j < ring.n; ++j) {
                double lhs = ring.dims(x) * bm.dims(j), rhs = 0;
                for (int k = 0; k < ring.n; ++k) rhs += G(j, k) * bm.dims(k);
                REQUIRE(lhs == Catch::Approx(rhs).margin(1e-10));
            }
        }
    }
    // the generator of the truncated su(2) rules draws the path graph
    FusionRing tl = tl_ring(4);
    FusionBimodule bm = regular_bimodule(tl);
    MultTriple tr(bm, bm, bm);
    MatI GX = fusion_graph(tr, ring_mult_map(tl), 1);
    MatI path = MatI::Zero(4, 4);
    for (int i = 0; i < 3; ++i) path(i, i + 1) = path(i + 1, i) = 1;
    REQUIRE(GX == path);
    // Z/2 nontrivial element: perfect matching
    FusionRing z2 = cyclic_ring(2);
    FusionBimodule b2 = regular_bimodule(z2);
    MultTriple t2(b2, b2, b2);
    MatI G1 = fusion_graph(t2, ring_mult_map(z2), 1);
    MatI pm(2, 2);
    pm << 0, 1, 1, 0;
    REQUIRE(G1 == pm);
}

TEST_CASE("bimodule JSON round trip and dispatcher") {
    FusionBimodule bm = regular_bimodule(fib_ring());
    nlohmann::json j = bimodule_to_json(bm);
    FusionBimodule back = bimodule_from_json(j);
    REQUIRE(back.basis == bm.basis);
    REQUIRE(back.L == bm.L);
    REQUIRE(back.R == bm.R);
    REQUIRE((back.dims - bm.dims).lpNorm<Eigen::Infinity>() < 1e-12);

    FusionData dr = load_fusion_data(ring_to_json(fib_ring()));
    REQUIRE(dr.is_ring);
    FusionData db = load_fusion_data(j);
    REQUIRE_FALSE(db.is_ring);
    REQUIRE_THROWS_AS(load_fusion_data(nlohmann::json::object()),
                      std::invalid_argument);
}

TEST_CASE("triples reject mismatched rings") {
    FusionBimodule a = regular_bimodule(cyclic_ring(2));
    FusionBimodule b = regular_bimodule(cyclic_ring(3));
    REQUIRE_THROWS_AS(MultTriple(a, b, a), std::invalid_argument);
}
