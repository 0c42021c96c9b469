#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "covercraft/blocking.hpp"

using namespace covercraft;

namespace {

Field gf(std::uint64_t q) {
    switch (q) {
        case 4: return Field::create(2, 2);
        case 8: return Field::create(2, 3);
        case 9: return Field::create(3, 2);
        default: return Field::prime(std::uint32_t(q));
    }
}

}  // namespace

TEST_CASE("subspace enumeration visits each subspace once") {
    for (auto [v, q, k] : std::vector<std::tuple<int, std::uint64_t, int>>{{3, 2, 2}, {3, 3, 3}, {2, 4, 2}, {4, 2, 3}}) {
        auto f = gf(q);
        Space sp(v, f);
        std::set<std::vector<std::uint64_t>> seen;
        std::uint64_t count = 0;
        for_each_subspace(v, f, k, [&](const std::vector<Point>& rows, const std::vector<int>&) {
            PointSet gens = PointSet::from_points(v, f, rows);
            REQUIRE(span_dim(gens) == k - 1);
            std::vector<std::uint64_t> members;
            for (std::uint64_t i = 0; i < sp.size(); ++i)
                if (span_contains(gens, sp.point(i))) members.push_back(i);
            REQUIRE(members.size() == theta(unsigned(k), q));
            seen.insert(members);
            ++count;
        });
        CHECK(count == seen.size());
        CHECK(BigInt(count) == gaussian_binomial(unsigned(v + 1), unsigned(k), q));
    }
    CHECK(gaussian_binomial(4, 2, 2) == 35);
    CHECK_THROWS_AS(for_each_subspace(5, gf(9), 3, [](auto&, auto&) {}, 1000), Error);
}

TEST_CASE("strong blocking verifier") {
    auto f2 = Field::prime(2);
    CHECK(verify_strong_blocking(pg_points(3, f2), 3).is_tfold_strong);
    auto collinear = line_points(f2, {1, 0, 0}, {0, 1, 0});
    auto rep = verify_strong_blocking(collinear, 2);
    CHECK_FALSE(rep.is_tfold_strong);
    CHECK_FALSE(rep.failing_subspace_witnesses.empty());
    CHECK_THROWS_AS(verify_strong_blocking(collinear, 3), Error);
}

TEST_CASE("plain multifold blocking") {
    auto f2 = Field::prime(2);
    auto pts = pg_points(2, f2);
    std::vector<Point> six(pts.begin() + 1, pts.end());
    CHECK(verify_tfold_blocking(PointSet::from_unique(2, f2, six), 2, 1));
    for (std::uint64_t q : {2, 3, 4, 5}) {
        auto f = gf(q);
        CHECK(verify_tfold_blocking(line_points(f, {1, 0, 0}, {0, 1, 0}), 1, 1));
        CHECK_FALSE(verify_tfold_blocking(line_points(f, {1, 0, 0}, {0, 1, 0}), 2, 1));
    }
}

TEST_CASE("four lines") {
    for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
        CAPTURE(q);
        auto f = gf(q);
        auto fl = four_lines_set(f);
        CHECK(fl.set.size() == 4 * q + 4);
        if (q <= 5) {
            auto rep = verify_strong_blocking(fl.set, 3);
            CHECK(rep.is_tfold_strong);
            CHECK(rep.subspaces_checked == theta(4, q));
        }
        // pencil count: through a line missing B, every plane holds three points of B
        auto sp = Space(3, f);
        bool found = false;
        for_each_subspace(3, f, 2, [&](const std::vector<Point>& rows, const std::vector<int>&) {
            if (found) return;
            PointSet l = PointSet::from_points(3, f, rows);
            for (const auto& b : fl.set)
                if (span_contains(l, b)) return;
            found = true;
            CHECK(fl.set.size() >= 3 * (q + 1));
        });
        CHECK(found);
    }
    CHECK(four_lines_set(Field::prime(3)).k == 2);
    // the first three lines lie on x0x1 = x2x3 and are pairwise skew
    auto f3 = Field::prime(3);
    std::vector<PointSet> lines{line_points(f3, {0, 1, 0, 0}, {0, 0, 0, 1}), line_points(f3, {1, 0, 0, 0}, {0, 0, 1, 0}),
                                line_points(f3, {1, 0, 0, 1}, {0, 1, 1, 0})};
    for (std::size_t i = 0; i < 3; ++i) {
        for (const auto& x : lines[i]) CHECK(f3.mul(x[0], x[1]) == f3.mul(x[2], x[3]));
        for (std::size_t j = i + 1; j < 3; ++j) {
            std::vector<Point> both(lines[i].begin(), lines[i].end());
            both.insert(both.end(), lines[j].begin(), lines[j].end());
            CHECK(span_dim(PointSet::from_points(3, f3, both)) == 3);
        }
    }
}

TEST_CASE("re-embedding a strong blocking set into a bigger field") {
    auto f2 = Field::prime(2);
    auto pts = pg_points(2, f2);
    std::vector<Point> six(pts.begin(), pts.end() - 1);
    auto B = PointSet::from_unique(2, f2, six);
    auto S = strong_to_saturating(B, 1);
    CHECK(S.size() == 6);
    CHECK(S.field().q() == 4);
    CHECK(verify_saturating(S).smallest_rho == 1);
    CHECK_THROWS_AS(strong_to_saturating(line_points(f2, {1, 0, 0}, {0, 1, 0}), 1), Error);

    auto fl = four_lines_set(f2).set;
    auto S3 = strong_to_saturating(fl, 2);
    CHECK(S3.field().q() == 8);
    CHECK(verify_saturating(S3).smallest_rho <= 2);
}

TEST_CASE("construction A") {
    auto f2 = Field::prime(2);
    auto B4 = construction_a_step(four_lines_set(f2).set);
    CHECK(B4.size() == 17);
    CHECK(verify_strong_blocking(B4, 4).is_tfold_strong);
    auto B5 = construction_a_step(B4);
    CHECK(B5.size() == 23);
    auto f3 = Field::prime(3);
    auto C4 = construction_a_step(four_lines_set(f3).set);
    CHECK(C4.size() == 16 + 1 + 4 * 2);
    CHECK(verify_strong_blocking(C4, 4).is_tfold_strong);
    CHECK_THROWS_AS(construction_a_step(line_points(f3, {1, 0, 0, 0}, {0, 1, 0, 0})), Error);
}

TEST_CASE("weight sets") {
    for (std::uint64_t q : {2, 3, 4})
        for (int v = 2; v <= 5; ++v)
            for (int k = 1; k <= v - 1; ++k) {
                auto s = weight_set_bk(v, gf(q), k);
                REQUIRE(BigInt(s.size()) * (q - 1) == sphere_size(std::uint64_t(v + 1), std::uint64_t(v - k + 1), q) - 1);
            }
    CHECK(weight_set_bk(3, Field::prime(2), 2).size() == 10);
    CHECK(verify_strong_blocking(weight_set_bk(3, Field::prime(2), 2), 3).is_tfold_strong);
    // k = v-1 leaves the coordinate lines
    auto f3 = Field::prime(3);
    auto s = weight_set_bk(3, f3, 2);
    PointSet lines(3, f3);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            Point a(4, 0), b(4, 0);
            a[i] = 1;
            b[j] = 1;
            for (const auto& x : line_points(f3, a, b)) lines.add(x);
        }
    CHECK(s.same_set(lines));
    CHECK_THROWS_AS(weight_set_bk(3, f3, 3), Error);
}

TEST_CASE("nine planes") {
    for (std::uint64_t q : {2, 3, 4, 5}) {
        auto f = gf(q);
        auto s = nine_planes_set(f);
        CHECK(s.size() == 9 * q * q - 8 * q + 4);
        // complement is exactly the three excluded classes
        for (const auto& x : pg_points(4, f)) {
            int zeros = 0;
            for (auto c : x) zeros += c == 0;
            const bool special = x[1] == 0 && x[4] == 0 && x[0] && x[2] && x[3];
            const bool excluded = zeros == 0 || zeros == 1 || special;
            REQUIRE(s.contains(x) != excluded);
        }
    }
}

TEST_CASE("disjoint Baer subplanes") {
    auto s = baer_pair_set(4);
    CHECK(s.size() == 14);
    CHECK(verify_tfold_blocking(s, 2, 1));
    auto sub = subgeometry_points(2, Field::prime(2), Field::create(2, 2));
    int in_sub = 0;
    for (const auto& x : s) in_sub += sub.contains(x);
    CHECK(in_sub == 7);
    CHECK_THROWS_AS(baer_pair_set(8), Error);
    CHECK(baer_pair_set(9).size() == 2 * (9 + 3 + 1));
}

TEST_CASE("cubic pair") {
    auto r = cubic_blocking_pair(3);
    CHECK(r.base.size() == 27 + 9 + 3 + 1);
    CHECK(r.set.size() == 80);
    CHECK(verify_tfold_blocking(r.set, 2, 1));
    try {
        cubic_blocking_pair(2);
        FAIL("p = 2 should have no c");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoSuitableC);
    }
}

TEST_CASE("line combination witnesses") {
    for (std::uint64_t q : {3, 4, 5, 7}) {
        auto f = gf(q);
        auto line = line_points(f, {1, 0}, {0, 1});
        for (int u = 2; u <= int(q); ++u) {
            if (!line_u_admissible(q, u)) continue;
            for (std::size_t t = 0; t < line.size(); ++t) {
                auto w = line_combination_witness(line, t, u);
                REQUIRE(w.points.size() == std::size_t(u));
                std::set<std::size_t> distinct(w.points.begin(), w.points.end());
                REQUIRE(distinct.size() == std::size_t(u));
                REQUIRE_FALSE(distinct.count(t));
                for (auto c : w.coeffs) REQUIRE(c != 0);
            }
        }
    }
    CHECK(line_u_admissible(4, 3));
    CHECK(line_u_admissible(5, 4));
    CHECK_FALSE(line_u_admissible(3, 3));
    CHECK_THROWS_AS(line_combination_witness(line_points(Field::prime(3), {1, 0}, {0, 1}), 0, 1), Error);
}

// Over GF(q'^3) the point (1, b, 1, 1, b^2), b of degree 3, spans with its
// conjugates the rational plane x0 = x2 = x3. That plane meets the nine planes
// only in the line x0 = 0, so no three points of the set span it.
TEST_CASE("nine planes lifted to the cubic extension are not 2-saturating") {
    for (std::uint32_t p : {2u, 3u}) {
        const Field sub = Field::prime(p);
        const Field sup = Field::create(p, 3);
        const Embedding emb(sub, sup);
        std::vector<Point> lifted;
        for (const auto& x : nine_planes_set(sub)) {
            Point y(5);
            for (int i = 0; i < 5; ++i) y[i] = emb(x[i]);
            lifted.push_back(y);
        }
        const Elem b = Elem(p), b2 = sup.mul(b, b);
        const Point P{1, b, 1, 1, b2};
        bool covered = false;
        const std::size_t n = lifted.size();
        for (std::size_t i = 0; i < n && !covered; ++i)
            for (std::size_t j = i + 1; j < n && !covered; ++j)
                for (std::size_t k = j + 1; k < n && !covered; ++k)
                    covered = span_contains(PointSet::from_unique(4, sup, {lifted[i], lifted[j], lifted[k]}), P);
        CHECK_FALSE(covered);
        if (p == 2) {
            const auto rep = verify_saturating(PointSet::from_unique(4, sup, lifted));
            CHECK(rep.smallest_rho == 3);
            REQUIRE(rep.failures.count(2));
            for (const auto& x : rep.failures.at(2)) CHECK((x[0] == 1 && x[2] == 1 && x[3] == 1));
        }
    }
}
