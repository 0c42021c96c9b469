#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "covercraft/pg.hpp"

using namespace covercraft;

TEST_CASE("theta") {
    CHECK(theta(1, 7) == 1);
    CHECK(theta(2, 3) == 4);
    CHECK(theta(5, 8) == 4681);
    CHECK(theta(0, 5) == 0);
}

TEST_CASE("point enumeration order and counts") {
    CHECK(pg_points(2, Field::prime(2)).size() == 7);
    CHECK(pg_points(2, Field::prime(3)).size() == 13);
    CHECK(pg_points(3, Field::create(2, 2)).size() == 85);
    auto pts = pg_points(2, Field::prime(3));
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i - 1] < pts[i]);  // ascending as base-q numbers, x0 most significant
    CHECK_THROWS_AS(pg_points(4, Field::create(2, 8), 1000), Error);
}

TEST_CASE("index round trip and normalization") {
    for (auto [p, m, v] : std::vector<std::tuple<int, int, int>>{{2, 1, 4}, {3, 1, 3}, {2, 2, 3}, {3, 2, 2}, {5, 1, 2}}) {
        auto f = Field::create(p, m);
        Space sp(v, f);
        std::set<Point> seen;
        for (std::uint64_t i = 0; i < sp.size(); ++i) {
            auto x = sp.point(i);
            REQUIRE(sp.index(x) == i);
            seen.insert(x);
            for (Elem c = 1; c < f.q(); ++c) {
                Point y = x;
                for (auto& e : y) e = f.mul(e, c);
                REQUIRE(sp.index_of(y) == i);
                Point z = y;
                sp.normalize(z);
                Point w = z;
                sp.normalize(w);
                REQUIRE(w == z);
            }
        }
        CHECK(seen.size() == sp.size());
    }
}

TEST_CASE("spans") {
    auto f = Field::prime(2);
    Space sp(3, f);
    PointSet s = PointSet::from_points(3, f, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}});
    CHECK(span_dim(s) == 2);
    CHECK(span_dim(PointSet(3, f)) == -1);
    int inside = 0;
    for (std::uint64_t i = 0; i < sp.size(); ++i) inside += span_contains(s, sp.point(i));
    CHECK(inside == 7);
    std::set<std::uint64_t> visited;
    std::vector<const Point*> g{&s[0], &s[1], &s[2]};
    sp.for_each_span_point(g, [&](std::uint64_t i) { CHECK(visited.insert(i).second); });
    CHECK(visited.size() == 7);

    PointSet one = PointSet::from_points(3, f, {{0, 1, 1, 0}});
    int hits = 0;
    for (std::uint64_t i = 0; i < sp.size(); ++i) hits += span_contains(one, sp.point(i));
    CHECK(hits == 1);
}

TEST_CASE("lines") {
    auto f2 = Field::prime(2);
    auto l = line_points(f2, {1, 0, 0}, {0, 1, 0});
    CHECK(l.same_set(PointSet::from_points(2, f2, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}})));
    CHECK_THROWS_AS(line_points(f2, {1, 0, 0}, {1, 0, 0}), Error);

    auto f3 = Field::prime(3);
    auto pts = pg_points(3, f3);
    for (std::size_t i = 0; i < pts.size(); i += 3)
        for (std::size_t j = i + 1; j < pts.size(); j += 5) {
            auto a = line_points(f3, pts[i], pts[j]);
            auto b = line_points(f3, pts[j], pts[i]);
            REQUIRE(a.size() == 4);
            REQUIRE(span_dim(a) == 1);
            REQUIRE(a.same_set(b));
        }
}

TEST_CASE("subgeometries") {
    auto f2 = Field::prime(2), f4 = Field::create(2, 2);
    auto sub = subgeometry_points(2, f2, f4);
    CHECK(sub.size() == 7);
    // every subgeometry line sits inside a line of the big plane
    for (std::size_t i = 0; i < sub.size(); ++i)
        for (std::size_t j = i + 1; j < sub.size(); ++j) {
            auto big = line_points(f4, sub[i], sub[j]);
            auto small = line_points(f2, pg_points(2, f2)[i], pg_points(2, f2)[j]);
            int inside = 0;
            for (const auto& p : sub) inside += big.contains(p);
            CHECK(inside == 3);
            CHECK(small.size() == 3);
        }
    auto f3 = Field::prime(3), f27 = Field::create(3, 3);
    auto s27 = subgeometry_points(3, f3, f27);
    CHECK(s27.size() == 40);
    for (const auto& p : s27) {
        Point x = p;
        for (auto& c : x) c = f27.frobenius(c, 3);
        CHECK(s27.contains(x));
    }
    CHECK_THROWS_AS(subgeometry_points(2, Field::create(2, 2), Field::create(2, 3)), Error);
}

TEST_CASE("frobenius orbits") {
    auto f2 = Field::prime(2), f4 = Field::create(2, 2);
    auto sub = subgeometry_points(2, f2, f4);
    for (const auto& p : sub) CHECK(frobenius_orbit(f4, p, 2, 1).size() == 1);
    for (const auto& p : pg_points(2, f4)) {
        auto orb = frobenius_orbit(f4, p, 2, 1);
        // the span of the orbit is Frobenius-stable, so it meets PG(2,2)
        bool meets = false;
        for (const auto& s : sub) meets |= span_contains(orb, s);
        CHECK(meets);
        CHECK(frobenius_orbit(f4, p, 2, 2).same_set(orb));
    }
    auto f16 = Field::create(2, 4);
    CHECK_THROWS_AS(frobenius_orbit(f16, {1, 2, 3}, 8, 1), Error);
}
