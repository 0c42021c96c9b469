#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "covercraft/gf.hpp"

using namespace covercraft;

namespace {

// naive polynomial evaluation over a prime field
std::uint32_t eval_mod(const std::vector<Elem>& c, std::uint32_t x, std::uint32_t p) {
    std::uint64_t acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = (acc * x + c[i]) % p;
    return std::uint32_t(acc);
}

// determinant by cofactor expansion, independent of elimination
Elem det(const Field& f, const std::vector<std::vector<Elem>>& a) {
    const std::size_t n = a.size();
    if (n == 1) return a[0][0];
    Elem d = 0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<Elem>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Elem> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(a[i][k]);
            minor.push_back(row);
        }
        Elem term = f.mul(a[0][j], det(f, minor));
        d = (j % 2) ? f.sub(d, term) : f.add(d, term);
    }
    return d;
}

std::size_t minor_rank(const Matrix& m) {
    const std::size_t R = m.rows(), C = m.cols();
    std::size_t best = 0;
    for (std::uint32_t rs = 1; rs < (1u << R); ++rs)
        for (std::uint32_t cs = 1; cs < (1u << C); ++cs) {
            const auto k = std::size_t(__builtin_popcount(rs));
            if (k != std::size_t(__builtin_popcount(cs)) || k <= best) continue;
            std::vector<std::vector<Elem>> a;
            for (std::size_t i = 0; i < R; ++i) {
                if (!(rs >> i & 1)) continue;
                std::vector<Elem> row;
                for (std::size_t j = 0; j < C; ++j)
                    if (cs >> j & 1) row.push_back(m.at(i, j));
                a.push_back(row);
            }
            if (det(m.field(), a) != 0) best = k;
        }
    return best;
}

void check_axioms(const Field& f) {
    const Elem q = Elem(f.q());
    for (Elem a = 0; a < q; ++a) {
        CHECK(f.add(a, 0) == a);
        CHECK(f.mul(a, 1) == a);
        CHECK(f.add(a, f.neg(a)) == 0);
        if (a) CHECK(f.mul(a, f.inv(a)) == 1);
        for (Elem b = 0; b < q; ++b) {
            REQUIRE(f.add(a, b) == f.add(b, a));
            REQUIRE(f.mul(a, b) == f.mul(b, a));
            REQUIRE(f.sub(f.add(a, b), b) == a);
            for (Elem c = 0; c < q; ++c) {
                REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                REQUIRE(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
                REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            }
        }
    }
}

}  // namespace

TEST_CASE("field construction and small examples") {
    auto f3 = Field::prime(3);
    CHECK(f3.q() == 3);
    CHECK(f3.div(1, 2) == 2);

    auto f4 = Field::create(2, 2);
    CHECK(f4.modulus() == std::vector<Elem>{1, 1, 1});
    CHECK(f4.mul(2, 2) == 3);

    CHECK_THROWS_AS(Field::create(4, 1), Error);
    CHECK_THROWS_AS(Field::create(2, 0), Error);
    CHECK_THROWS_AS(Field::create(2, 40), Error);
    try {
        Field::create(6, 1);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonPrime);
    }
    try {
        f3.div(1, 0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DivByZero);
    }
}

TEST_CASE("GF(27) modulus is the first rootless monic cubic") {
    auto f = Field::create(3, 3);
    // walk monic cubics with constant term most significant, as the encoding does
    std::vector<Elem> expect;
    for (std::uint32_t c0 = 1; c0 < 3 && expect.empty(); ++c0)
        for (std::uint32_t c1 = 0; c1 < 3 && expect.empty(); ++c1)
            for (std::uint32_t c2 = 0; c2 < 3 && expect.empty(); ++c2) {
                std::vector<Elem> c{c0, c1, c2, 1};
                bool root = false;
                for (std::uint32_t x = 0; x < 3; ++x) root |= eval_mod(c, x, 3) == 0;
                if (!root) expect = c;
            }
    CHECK(f.modulus() == expect);
    CHECK(f.modulus().size() == 4);
}

TEST_CASE("field axioms hold exhaustively up to q = 81") {
    for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2},
                                                        {2, 4}, {5, 2}, {3, 3}, {2, 5}, {2, 6}, {3, 4}}) {
        CAPTURE(p);
        CAPTURE(m);
        check_axioms(Field::create(p, m));
    }
    check_axioms(Field::extend(Field::create(2, 2), 2));
    check_axioms(Field::extend(Field::prime(3), 3));
}

TEST_CASE("frobenius") {
    auto f4 = Field::create(2, 2);
    CHECK(f4.frobenius(2, 2) == 3);
    for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 2}, {2, 4}, {3, 3}, {2, 8}, {5, 2}, {3, 5}}) {
        auto f = Field::create(p, m);
        CHECK(f.frobenius(0, p) == 0);
        CHECK(f.frobenius(1, p) == 1);
        for (Elem x = 0; x < f.q(); ++x) {
            Elem y = x;
            for (int i = 0; i < m; ++i) y = f.frobenius(y, p);
            REQUIRE(y == x);
            REQUIRE(f.frobenius(x, p) == f.pow(x, p));
        }
    }
    auto f16 = Field::create(2, 4);
    CHECK(f16.frobenius(5, 4) == f16.pow(5, 4));
    CHECK_THROWS_AS(f16.frobenius(5, 8), Error);
    CHECK_THROWS_AS(f16.frobenius(5, 3), Error);
}

TEST_CASE("subfield embeddings are injective homomorphisms onto the fixed field") {
    auto check = [](const Field& src, const Field& dst) {
        Embedding e(src, dst);
        std::set<Elem> image;
        for (Elem a = 0; a < src.q(); ++a) {
            image.insert(e(a));
            for (Elem b = 0; b < src.q(); ++b) {
                REQUIRE(e(src.mul(a, b)) == dst.mul(e(a), e(b)));
                REQUIRE(e(src.add(a, b)) == dst.add(e(a), e(b)));
            }
        }
        CHECK(image.size() == src.q());
        std::set<Elem> fixed;
        for (Elem y = 0; y < dst.q(); ++y)
            if (dst.pow(y, src.q()) == y) fixed.insert(y);
        CHECK(fixed == image);
    };
    check(Field::prime(2), Field::create(2, 2));
    check(Field::create(2, 2), Field::create(2, 4));
    check(Field::create(2, 2), Field::create(2, 6));
    check(Field::create(2, 3), Field::create(2, 6));
    check(Field::create(2, 4), Field::create(2, 12));
    check(Field::prime(3), Field::create(3, 3));
    check(Field::create(3, 2), Field::create(3, 4));
    check(Field::create(2, 2), Field::extend(Field::create(2, 2), 3));
    check(Field::create(2, 2), Field::extend(Field::create(2, 2), 2));
    check(Field::extend(Field::create(2, 2), 2), Field::create(2, 8));
    CHECK(subfield_embed(Field::prime(2), Field::create(2, 2), 1) == 1);
    CHECK_THROWS_AS(Embedding(Field::create(2, 2), Field::create(2, 3)), Error);
    CHECK_THROWS_AS(Embedding(Field::prime(3), Field::create(2, 2)), Error);
}

TEST_CASE("elimination rank agrees with minor rank") {
    std::mt19937 rng(7);
    for (int p : {2, 3}) {
        auto f = Field::prime(p);
        for (int trial = 0; trial < 300; ++trial) {
            const std::size_t R = 1 + rng() % 4, C = 1 + rng() % 4;
            Matrix m(f, R, C);
            for (std::size_t i = 0; i < R; ++i)
                for (std::size_t j = 0; j < C; ++j) m.at(i, j) = Elem(rng() % p);
            REQUIRE(rank(m) == minor_rank(m));
        }
    }
    auto f3 = Field::prime(3);
    for (int trial = 0; trial < 50; ++trial) {
        Matrix m(f3, 4, 6);
        for (auto i = 0; i < 4; ++i)
            for (auto j = 0; j < 6; ++j) m.at(i, j) = Elem(rng() % 3);
        REQUIRE(rank(m) == minor_rank(m));
    }
    CHECK(rank(Matrix::identity(f3, 5)) == 5);
    CHECK(rank(Matrix(f3, 3, 4)) == 0);
}

TEST_CASE("membership and null space") {
    auto f = Field::create(2, 2);
    Matrix m(f, 3, 2, {1, 0, 2, 1, 3, 1});
    auto sol = solve_membership(m, {1, 3, 2});
    REQUIRE(sol);
    for (std::size_t i = 0; i < 3; ++i) {
        Elem v = f.add(f.mul(m.at(i, 0), (*sol)[0]), f.mul(m.at(i, 1), (*sol)[1]));
        CHECK(v == std::vector<Elem>{1, 3, 2}[i]);
    }
    CHECK_FALSE(solve_membership(m, {0, 0, 1}));
    CHECK_THROWS_AS(solve_membership(m, {0, 1}), Error);

    auto ns = null_space(m.transpose());
    CHECK(ns.size() == 1);
    for (const auto& x : ns)
        for (std::size_t j = 0; j < 2; ++j) {
            Elem s = 0;
            for (std::size_t i = 0; i < 3; ++i) s = f.add(s, f.mul(m.at(i, j), x[i]));
            CHECK(s == 0);
        }
}
