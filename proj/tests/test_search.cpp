#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "covercraft/codes.hpp"
#include "covercraft/search.hpp"

using namespace covercraft;

namespace {

const TableStore& store() {
    static const TableStore t = TableStore::load();
    return t;
}

}  // namespace

TEST_CASE("smallest saturating sets in planes") {
    const std::vector<std::pair<std::uint64_t, std::size_t>> cases{{3, 4}, {4, 5}, {5, 6}, {7, 6}};
    for (auto [q, expect] : cases) {
        Field f = q == 4 ? Field::create(2, 2) : Field::prime(std::uint32_t(q));
        auto r = exhaustive_min_saturating(2, f, 1, 10);
        CHECK(r.n_min == expect);
        CHECK(r.witness.size() == expect);
        CHECK(verify_saturating(r.witness, 1).matches_claim());
        // two-sided: nothing one point smaller
        CHECK_FALSE(find_saturating(2, f, 1, expect - 1).has_value());
    }
}

TEST_CASE("2-saturating sets in PG(3,2) and PG(4,2)") {
    auto a = exhaustive_min_saturating(3, Field::prime(2), 2, 8);
    CHECK(a.n_min == 5);
    auto b = exhaustive_min_saturating(4, Field::prime(2), 2, 8);
    CHECK(b.n_min == 6);
    CHECK(verify_saturating(b.witness, 2).matches_claim());
}

TEST_CASE("a [9,5]_4 2 code and nothing shorter") {
    const Field f4 = Field::create(2, 2);
    auto r = exhaustive_min_saturating(3, f4, 1, 9);
    CHECK(r.n_min == 9);
    const Code c = code_from_set(r.witness);
    CHECK(c.n() == 9);
    CHECK(c.r() == 4);
    CHECK(covering_radius(c) == 2);
    CHECK(covering_radius_oracle(c) == 2);
}

TEST_CASE("greedy stays above the exhaustive minimum") {
    const Field f7 = Field::prime(7);
    auto g7 = greedy_saturating(2, f7, 1);
    CHECK(g7.size() <= 6 + 2);
    CHECK(g7.size() >= 6);
    CHECK(verify_saturating(g7, 1).matches_claim());

    const Field f4 = Field::create(2, 2);
    auto g4 = greedy_saturating(3, f4, 1);
    CHECK(g4.size() >= 9);
    CHECK(g4.size() <= 9 + 2);
    MESSAGE("greedy 1-saturating set in PG(3,4): " << g4.size() << " points");

    auto e = greedy_saturating(2, Field::prime(5), 1, GreedySeed::Empty);
    CHECK(e.size() >= 6);
    CHECK(verify_saturating(e, 1).smallest_rho == 1);
}

TEST_CASE("search is deterministic across thread counts") {
    SearchOptions one, four;
    one.threads = 1;
    four.threads = 4;
    auto a = find_saturating(2, Field::prime(11), 1, 7, one);
    auto b = find_saturating(2, Field::prime(11), 1, 7, four);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(a->points() == b->points());
}

TEST_CASE("search errors") {
    CHECK_THROWS_AS(exhaustive_min_saturating(2, Field::prime(7), 1, 5), Error);
    try {
        exhaustive_min_saturating(2, Field::prime(7), 1, 5);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SearchExhausted);
    }
    SearchOptions tiny;
    tiny.budget_secs = 1e-4;
    try {
        exhaustive_min_saturating(4, Field::prime(5), 2, 10, tiny);
        FAIL("budget ignored");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BudgetExceeded);
        CHECK(std::string(e.what()).find("[") != std::string::npos);
    }
    CHECK_THROWS_AS(find_saturating(2, Field::prime(3), 3, 5), Error);
}

TEST_CASE("table reproduction by search") {
    auto rows = table_reproduce("I", store(), TableRange{7, 9});
    REQUIRE(rows.size() == 6);  // q = 3, 4, 5, 7, 8, 9
    for (const auto& r : rows) {
        INFO("q=" << r.q << " " << r.detail);
        if (r.q <= 7) CHECK(r.status == "MATCH_EXACT");
        else CHECK((r.status == "MATCH_UPPER" || r.status == "UPPER_GAP"));
    }
    auto iii = table_reproduce("III", store(), TableRange{2, 0});
    REQUIRE(iii.size() == 1);
    CHECK(iii[0].status == "MATCH_EXACT");
    CHECK(iii[0].computed == "5");
    auto iv = table_reproduce("IV", store(), TableRange{2, 0});
    REQUIRE(iv.size() == 1);
    CHECK(iv[0].computed == "6");

    auto v = table_reproduce("V", store());
    CHECK(v.size() == 40);
    for (const auto& r : v) CHECK(r.status == "FORMULA_MATCH");
    auto vi = table_reproduce("VI", store());
    CHECK(vi.size() == 18);
}

TEST_CASE("normalized table values against their thresholds") {
    auto a = bound_check("a", store());
    CHECK(a.holds());
    CHECK(a.clauses.size() == 3);
    CHECK(a.clauses[0].worst_q == 107);

    // b_64 = 16/4 and c_27 = 36/9 sit exactly on the threshold 4
    auto b = bound_check("b", store());
    CHECK_FALSE(b.holds());
    CHECK(b.clauses[0].failing_q == std::vector<std::uint64_t>{64});
    CHECK(b.clauses[1].holds);
    CHECK(b.clauses[2].holds);
    auto c = bound_check("c", store());
    CHECK_FALSE(c.holds());
    CHECK(c.clauses[0].failing_q == std::vector<std::uint64_t>{27});
    CHECK(c.clauses[1].holds);
    CHECK(c.clauses[2].holds);
    CHECK_THROWS_AS(bound_check("d", store()), Error);
}

TEST_CASE("stored tables round-trip through the parser") {
    for (const std::string name : {"I", "III", "IV"}) {
        const auto& rows = store().rows(name);
        const auto text = TableStore::serialize(rows, store().header(name));
        std::string header;
        const auto back = TableStore::parse(text, &header);
        CHECK(header == store().header(name));
        CHECK(TableStore::serialize(back, header) == text);
        REQUIRE(back.size() == rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            CHECK(back[i].q == rows[i].q);
            CHECK(back[i].value == rows[i].value);
            CHECK(back[i].distances == rows[i].distances);
            CHECK(back[i].dot == rows[i].dot);
        }
    }
}
