#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "covercraft/families.hpp"

using namespace covercraft;

namespace {

const TableStore& store() {
    static const TableStore t = TableStore::load();
    return t;
}

const FamilyContext& ctx() {
    static const FamilyContext c(store());
    return c;
}

BigInt len(const std::string& id, int R, std::uint64_t q, unsigned r) {
    return family_length(find_family(id, R), q, r, ctx()).length;
}

bool has(const std::vector<FamilyDescriptor>& v, const std::string& id) {
    return std::any_of(v.begin(), v.end(), [&](const auto& d) { return d.id == id; });
}

const std::vector<std::uint64_t> kQs{3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64, 81, 125, 256, 729};

}  // namespace

TEST_CASE("lengths from the stored tables") {
    CHECK(len("r2-even-q3", 2, 3, 6) == 22);
    CHECK(len("r2-even-oval", 2, 7, 6) == 105);
    CHECK(len("r2-even-small-q", 2, 5, 6) == 56);
    CHECK(len("r2-odd-q4", 2, 4, 9) == 304);
    CHECK(len("r2-odd-q5", 2, 5, 17) == 410937);
    CHECK(len("r2-even-small-q-gap", 2, 4, 8) == 154);
    CHECK(len("r2-even-small-q-gap", 2, 4, 12) == 2389);
}

TEST_CASE("power-field seeds") {
    // n_{R,q}^{(1)} for q' = 2: 17 at R = 4, 23 at R = 5
    CHECK(len("rR-plus-one-power", 4, 16, 5) == 17);
    CHECK(len("rR-plus-one-power", 5, 32, 6) == 23);
    CHECK(len("r3-one-cube", 3, 64, 7) == 1280);
    CHECK(len("r3-two-cube", 3, 27, 8) == 61 * 27);
    CHECK(len("r2-odd-fourth", 2, 16, 3) == 14);
    CHECK(len("r2-odd-sixth", 2, 729, 3) == 80);
    CHECK(len("rR-codim2R", 4, 7, 8) == 30);
}

TEST_CASE("domains") {
    const auto& d = find_family("r2-even-oval", 2);
    CHECK(domain_error(d, 7, 8, ctx()).has_value());
    CHECK(domain_error(d, 9, 6, ctx()).has_value());
    CHECK(domain_error(d, 6, 6, ctx()).has_value());
    CHECK_FALSE(domain_error(d, 7, 10, ctx()).has_value());
    CHECK_THROWS_AS(family_length(d, 7, 8, ctx()), Error);
    try {
        family_length(d, 7, 7, ctx());
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DomainViolation);
    }
    CHECK(r_min(find_family("r2-odd-q5", 2), 5, ctx()) == 7);
    CHECK(r_min(find_family("rR-plus-one-power", 4), 16, ctx()) == 5);
}

TEST_CASE("listing") {
    auto l23 = list_families(2, 3, ctx());
    CHECK(has(l23, "r2-even-q3"));
    CHECK(has(l23, "r2-odd-q3"));
    CHECK_FALSE(has(l23, "r2-even-oval"));
    CHECK(has(list_families(4, 16, ctx()), "rR-plus-one-power"));
    auto l664 = list_families(6, 64, ctx());
    CHECK(has(l664, "third-cube"));
    CHECK(has(l664, "two-third-cube"));
}

TEST_CASE("open problem coverage") {
    auto a = open_problem_one_check(2, 9, ctx());
    CHECK(a.covered);
    CHECK(std::find(a.by_gamma[0].begin(), a.by_gamma[0].end(), "r2-even-small-q") != a.by_gamma[0].end());
    // q = 9 is not a square >= 16, so gamma = 1 comes from the tabulated seeds
    CHECK(std::find(a.by_gamma[1].begin(), a.by_gamma[1].end(), "r2-odd-square") == a.by_gamma[1].end());
    CHECK(std::find(a.by_gamma[1].begin(), a.by_gamma[1].end(), "r2-odd-table") != a.by_gamma[1].end());

    auto b = open_problem_one_check(4, 16, ctx());
    CHECK(b.covered);
    CHECK(b.by_gamma[1].size() >= 1);
    auto c = open_problem_one_check(3, 7, ctx());
    CHECK(c.covered);
    CHECK(std::find(c.by_gamma[2].begin(), c.by_gamma[2].end(), "r3-two-table") != c.by_gamma[2].end());
    CHECK_FALSE(open_problem_one_check(5, 7, ctx()).covered);
}

TEST_CASE("surds and densities") {
    CHECK(asymptotic_density(Surd::of(Rational(5, 2)), 2, 3).compare(Rational(25, 18)) == 0);
    CHECK(asymptotic_density(Surd::root(3, 2, Rational(5, 4)), 2, 3).compare(Rational(25, 24)) == 0);
    CHECK(Surd::root(4, 2).compare(Rational(2)) == 0);
    CHECK(Surd::root(2, 2).compare(Rational(141421, 100000)) > 0);
    CHECK(Surd::root(2, 2).compare(Surd::root(3, 3)) < 0);  // 2^(1/2) < 3^(1/3)
    CHECK(Surd::root(3, 3).pow(3).compare(Rational(3)) == 0);
    CHECK(decimal(Surd::root(2, 2).round_to(3), 3) == "1.414");
    CHECK(decimal(Rational(25, 18), 3) == "1.389");
    CHECK(decimal(Rational(1, 2000), 3) == "0.001");

    auto b65 = family_density_bound(find_family("r2-even-q3", 2), 3, ctx());
    CHECK(b65.value.compare(Rational(25, 18)) == 0);
    auto b69 = family_density_bound(find_family("r2-odd-q3", 2), 3, ctx());
    CHECK(b69.value.compare(Rational(25, 24)) == 0);
    auto b610 = family_density_bound(find_family("r2-odd-q4", 2), 4, ctx());
    CHECK(std::abs(b610.value.to_double() - 1.587) < 1e-3);

    // a = R, q -> infinity gives R^R / R!
    for (int R = 1; R <= 5; ++R) {
        auto hd = family_density_bound(find_family("hamming-sum", R), 5, ctx());
        auto lim = asymptotic_density(Surd::of(Rational(R)), R, 5);
        CHECK(hd.value.compare(lim) > 0);
    }
}

TEST_CASE("every descriptor is integral on its domain") {
    std::size_t evaluated = 0;
    for (int R = 1; R <= 8; ++R)
        for (const auto& d : catalog(R))
            for (auto q : kQs) {
                if (!admits_q(d, q, ctx())) continue;
                const unsigned r0 = r_min(d, q, ctx());
                for (unsigned r = r0; r <= r0 + 4 * unsigned(R); ++r) {
                    if (domain_error(d, q, r, ctx())) continue;
                    INFO(d.id << " q=" << q << " r=" << r);
                    try {
                        auto n = family_length(d, q, r, ctx()).length;
                        CHECK(n > 0);
                        ++evaluated;
                    } catch (const Error& e) {
                        CHECK_MESSAGE(e.kind() == ErrorKind::MissingTableEntry, e.what());
                    }
                }
            }
    CHECK(evaluated > 500);
}

TEST_CASE("lengths increase along each residue class") {
    for (int R = 1; R <= 8; ++R)
        for (const auto& d : catalog(R))
            for (auto q : kQs) {
                if (!d.infinite || !admits_q(d, q, ctx())) continue;
                const unsigned r0 = r_min(d, q, ctx());
                std::optional<BigInt> prev;
                for (unsigned r = r0; r <= r0 + 6 * unsigned(R); r += unsigned(R)) {
                    if (domain_error(d, q, r, ctx())) continue;
                    BigInt n;
                    try {
                        n = family_length(d, q, r, ctx()).length;
                    } catch (const Error&) {
                        continue;
                    }
                    INFO(d.id << " q=" << q << " r=" << r);
                    if (prev) CHECK(n > *prev);
                    prev = n;
                }
            }
}

TEST_CASE("stated bounds dominate their own leading term") {
    std::vector<std::string> violations;
    for (int R = 1; R <= 8; ++R)
        for (const auto& d : catalog(R))
            for (auto q : kQs) {
                if (!admits_q(d, q, ctx())) continue;
                Surd bound, lead;
                try {
                    bound = family_density_bound(d, q, ctx()).value;
                    lead = asymptotic_density(leading_coefficient(d, q, ctx()), R, q);
                } catch (const Error& e) {
                    CHECK(e.kind() == ErrorKind::MissingTableEntry);
                    continue;
                }
                if (bound.compare(lead) < 0) violations.push_back(d.id + "@" + std::to_string(q));
            }
    // the closed form quoted for the nine-planes family sits below the
    // density of its own main term; nothing else does
    for (const auto& v : violations) CHECK_MESSAGE(v.rfind("r3-two-cube@", 0) == 0, v);
    CHECK(std::count_if(violations.begin(), violations.end(),
                        [](const std::string& v) { return v.rfind("r3-two-cube@", 0) == 0; }) ==
          std::count_if(kQs.begin(), kQs.end(), [](auto q) { return q == 27 || q == 64 || q == 125 || q == 729; }));
}

TEST_CASE("nine-planes bound against its main term, exactly") {
    // density of 9 - 8/q' + 4/q'^2 at q = q'^3 vs 243/2 - 324/q' + 72/q'^2
    for (std::uint64_t s : {3, 4, 5, 9}) {
        const std::uint64_t q = s * s * s;
        const Rational S(s);
        const Rational a = 9 - 8 / S + 4 / (S * S);
        const Rational Q(q);
        const Rational dens = a * a * a * (Q - 1) * (Q - 1) * (Q - 1) / (6 * Q * Q * Q);
        auto b = family_density_bound(find_family("r3-two-cube", 3), q, ctx());
        CHECK(b.stated);
        CHECK(b.value.compare(Rational(243, 2) - 324 / S + 72 / (S * S)) == 0);
        CHECK(b.value.compare(dens) < 0);
    }
}

TEST_CASE("cross checks") {
    auto a = cross_check_family(find_family("r2-even-q3", 2), 3, ctx());
    CHECK(a.r == 4);
    CHECK(a.formula == 8);
    CHECK(a.status == "MATCH");
    CHECK(a.radius_ok == true);

    auto b = cross_check_family(find_family("rR-plus-one-power", 4), 16, ctx());
    CHECK(b.formula == 17);
    CHECK(b.constructed == 17);
    CHECK(b.status == "MATCH");

    auto c = cross_check_family(find_family("r3-two-cube", 3), 27, ctx());
    CHECK(c.formula == 61);
    CHECK(c.status == "MATCH");

    auto d = cross_check_family(find_family("r2-odd-fourth", 2), 16, ctx());
    CHECK(d.status == "MATCH");
    CHECK(d.radius_ok == true);

    auto e = cross_check_family(find_family("hamming-sum", 2), 3, ctx());
    CHECK(e.status == "MATCH");

    auto f = cross_check_family(find_family("r2-odd-q3", 2), 3, ctx());
    CHECK(f.status == "NOT_CONSTRUCTIBLE");

    auto g = cross_check_family(find_family("rR-plus-gamma-power-g2", 4), 16, ctx());
    CHECK(g.status == "MATCH");
    auto h = cross_check_family(find_family("r2-odd-sixth", 2), 729, ctx(), false);
    CHECK(h.status == "MATCH");
}

TEST_CASE("Table V for r <= 12") {
    auto cells = reproduce_table_v(store(), {3, 4, 5, 7}, 12);
    CHECK(cells.size() == 40);
    for (const auto& c : cells) {
        INFO("q=" << c.q << " r=" << c.r << " got " << c.value << " via " << c.source);
        CHECK(c.matches());
    }
}

TEST_CASE("Table VI densities") {
    auto cells = reproduce_table_vi(store());
    CHECK(cells.size() == 18);
    std::size_t ok = 0;
    for (const auto& c : cells) {
        CHECK(!c.family.empty());
        // every stored value is within one unit of the third decimal
        const double diff = std::abs(c.density.to_double() - std::stod(c.stored));
        CHECK(diff < 1.5e-3);
        ok += c.matches();
    }
    MESSAGE("Table VI cells matching to 3 decimals: " << ok << "/18");
    CHECK(ok >= 11);
}

TEST_CASE("table round trip") {
    for (const auto& name : store().tables()) {
        const auto text = TableStore::serialize(store().rows(name), store().header(name));
        auto back = TableStore::parse(text);
        REQUIRE(back.size() == store().rows(name).size());
        for (std::size_t i = 0; i < back.size(); ++i) {
            CHECK(back[i].q == store().rows(name)[i].q);
            CHECK(back[i].value == store().rows(name)[i].value);
        }
    }
}
