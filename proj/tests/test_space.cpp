#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "chainrec/errors.hpp"
#include "chainrec/space.hpp"

using namespace chainrec;

namespace {

// Deterministic uniform stream for property checks.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed + 0x9e3779b97f4a7c15ULL) {}
    double uniform() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }
};

Point random_point(Rng& rng, const SpaceDescriptor& s) {
    Point p;
    for (int a = 0; a < s.dims; ++a) p[a] = rng.uniform() * s.extent[static_cast<std::size_t>(a)];
    return canonicalize(s, p);
}

} // namespace

TEST_SUITE("space") {

TEST_CASE("wrap distance beats the direct arc") {
    const auto s = SpaceDescriptor::circle();
    CHECK(distance(s, make_point(0.1), make_point(0.9)) == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("identical points are at distance zero") {
    for (const auto& s : {SpaceDescriptor::circle(), SpaceDescriptor::torus2(), SpaceDescriptor::box(1.0)}) {
        Rng rng(7);
        for (int k = 0; k < 32; ++k) {
            const Point p = random_point(rng, s);
            CHECK(distance(s, p, p) == 0.0);
        }
    }
}

TEST_CASE("torus diagonal without wrap benefit") {
    const auto s = SpaceDescriptor::torus2();
    CHECK(distance(s, make_point(0.0, 0.0), make_point(0.5, 0.5)) ==
          doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-14));
}

TEST_CASE("metric axioms on random triples") {
    for (const auto& s : {SpaceDescriptor::circle(), SpaceDescriptor::torus2(), SpaceDescriptor::box(1.0)}) {
        Rng rng(42);
        for (int k = 0; k < 10000; ++k) {
            const Point a = random_point(rng, s);
            const Point b = random_point(rng, s);
            const Point c = random_point(rng, s);
            CHECK(distance(s, a, b) == distance(s, b, a));
            CHECK(distance(s, a, c) <= distance(s, a, b) + distance(s, b, c) + 1e-12);
        }
    }
}

TEST_CASE("grid layout and mesh") {
    SUBCASE("circle res 8") {
        const auto g = build_grid(SpaceDescriptor::circle(), {8, 1});
        REQUIRE(g.size() == 8);
        for (int k = 0; k < 8; ++k) CHECK(g.points[static_cast<std::size_t>(k)][0] == k / 8.0);
        CHECK(g.mesh == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
    }
    SUBCASE("torus 4x4") {
        const auto g = build_grid(SpaceDescriptor::torus2(), {4, 4});
        REQUIRE(g.size() == 16);
        CHECK(g.mesh == doctest::Approx(std::sqrt(2.0) / 8.0).epsilon(1e-15));
    }
    SUBCASE("box res 5 includes both endpoints") {
        const auto g = build_grid(SpaceDescriptor::box(1.0), {5, 1});
        REQUIRE(g.size() == 5);
        CHECK(g.points[0][0] == 0.0);
        CHECK(g.points[1][0] == 0.25);
        CHECK(g.points[4][0] == 1.0);
        CHECK(g.mesh == doctest::Approx(0.125).epsilon(1e-15));
    }
    SUBCASE("resolution below 4 is rejected") {
        CHECK_THROWS_AS(build_grid(SpaceDescriptor::circle(), {3, 1}), ConfigError);
    }
}

TEST_CASE("nearest sample") {
    const auto g = build_grid(SpaceDescriptor::circle(), {8, 1});
    SUBCASE("snaps to the closest lattice point") {
        CHECK(g.nearest_sample(make_point(0.13)) == 1);
    }
    SUBCASE("a sample maps to itself") {
        for (int k = 0; k < 8; ++k)
            CHECK(g.nearest_sample(g.points[static_cast<std::size_t>(k)]) == k);
    }
    SUBCASE("exact tie breaks to the lower index") {
        CHECK(g.nearest_sample(make_point(0.0625)) == 0);
    }
    SUBCASE("wrap tie breaks to index 0") {
        CHECK(g.nearest_sample(make_point(1.0 - 1.0 / 16.0)) == 0);
    }
    SUBCASE("error bound is the covering radius") {
        for (const auto& s : {SpaceDescriptor::circle(), SpaceDescriptor::torus2()}) {
            const auto grid = build_grid(s, {16, 16});
            Rng rng(11);
            for (int k = 0; k < 1000; ++k) {
                const Point p = random_point(rng, s);
                const int idx = grid.nearest_sample(p);
                CHECK(distance(s, grid.points[static_cast<std::size_t>(idx)], p) <= grid.mesh + 1e-12);
            }
        }
    }
}

TEST_CASE("dense enumeration") {
    SUBCASE("circle res 8 is the 3-bit bit-reversal sequence") {
        const auto g = build_grid(SpaceDescriptor::circle(), {8, 1});
        CHECK(g.dense_order == std::vector<int>{0, 4, 2, 6, 1, 5, 3, 7});
    }
    SUBCASE("circle res 4") {
        const auto g = build_grid(SpaceDescriptor::circle(), {4, 1});
        CHECK(g.dense_order == std::vector<int>{0, 2, 1, 3});
    }
    SUBCASE("first element is always index 0") {
        for (int res : {4, 5, 8, 12, 64}) {
            const auto g = build_grid(SpaceDescriptor::circle(), {res, 1});
            CHECK(g.dense_order.front() == 0);
        }
        const auto g2 = build_grid(SpaceDescriptor::torus2(), {8, 8});
        CHECK(g2.dense_order.front() == 0);
    }
    SUBCASE("prefixes stay uniform on the circle") {
        const int res = 64;
        const auto g = build_grid(SpaceDescriptor::circle(), {res, 1});
        for (int m = 2; m <= res; m *= 2) {
            std::vector<double> chosen;
            for (int k = 0; k < m; ++k)
                chosen.push_back(g.points[static_cast<std::size_t>(g.dense_order[static_cast<std::size_t>(k)])][0]);
            std::sort(chosen.begin(), chosen.end());
            double max_gap = 1.0 - chosen.back() + chosen.front();
            for (std::size_t k = 1; k < chosen.size(); ++k)
                max_gap = std::max(max_gap, chosen[k] - chosen[k - 1]);
            CHECK(max_gap <= 2.0 / m + 1e-12);
        }
    }
    SUBCASE("it is a bijection") {
        const auto g = build_grid(SpaceDescriptor::torus2(), {8, 4});
        std::vector<int> seen(static_cast<std::size_t>(g.size()), 0);
        for (int idx : g.dense_order) ++seen[static_cast<std::size_t>(idx)];
        for (int c : seen) CHECK(c == 1);
    }
    SUBCASE("repeated calls are identical") {
        const auto a = dense_enumeration(SpaceDescriptor::torus2(), {16, 16});
        const auto b = dense_enumeration(SpaceDescriptor::torus2(), {16, 16});
        CHECK(a == b);
    }
}

TEST_CASE("canonicalize wraps periodic and clamps box coordinates") {
    const auto c = SpaceDescriptor::circle();
    CHECK(canonicalize(c, make_point(1.25))[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(canonicalize(c, make_point(-0.25))[0] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(canonicalize(c, make_point(1.0))[0] == 0.0);
    const auto b = SpaceDescriptor::box(1.0);
    CHECK(canonicalize(b, make_point(1.5))[0] == 1.0);
    CHECK(canonicalize(b, make_point(-0.5))[0] == 0.0);
}

} // TEST_SUITE
