#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covercraft/pg.hpp"
#include "covercraft/tables.hpp"

namespace covercraft {

// COVERCRAFT_BUDGET_SECS, else 60
double default_budget_secs();

struct SearchOptions {
    double budget_secs = default_budget_secs();
    unsigned threads = 0;  // 0: hardware concurrency
};

struct ExhaustiveResult {
    std::size_t n_min = 0;  // no rho-saturating set with fewer points exists
    PointSet witness{0, Field::prime(2)};
    std::uint64_t leaves = 0;  // (n-1)-subsets whose completions were examined
    double seconds = 0;
};

// Smallest rho-saturating set of PG(v,q) with at most n_max points. The set
// spans, so it may be taken to contain the standard basis; the extra point of
// largest support is scaled and permuted to (0,..,0,1,..,1). Every smaller
// size is ruled out by complete enumeration. Throws BudgetExceeded (message
// carries the proven interval) or SearchExhausted when n_max is too small.
ExhaustiveResult exhaustive_min_saturating(int v, const Field& f, int rho, std::size_t n_max,
                                           const SearchOptions& opt = {});

// Some rho-saturating n-set (lexicographically first under the reduction
// above), or nullopt after a complete search.
std::optional<PointSet> find_saturating(int v, const Field& f, int rho, std::size_t n, const SearchOptions& opt = {},
                                        std::uint64_t* leaves = nullptr);

enum class GreedySeed { Empty, Basis };

// Adds the point covering the most new points until everything is covered;
// ties go to the smallest point index. The result is verified.
PointSet greedy_saturating(int v, const Field& f, int rho, GreedySeed seed = GreedySeed::Basis);

struct TableRange {
    std::uint64_t exact_max = 0;  // exhaustive search up to this q
    std::uint64_t upper_max = 0;  // greedy witness up to this q
};
TableRange default_table_range(const std::string& table);

struct TableReproRow {
    std::string table;
    std::uint64_t q = 0;
    unsigned r = 0;  // Table V
    int gamma = 0;   // Table VI
    std::string stored;
    std::string computed;
    // MATCH_EXACT, MATCH_UPPER, UPPER_GAP (greedy within 2), FORMULA_MATCH,
    // MISMATCH, BUDGET_EXCEEDED
    std::string status;
    std::string detail;
};

// Tables I, III, IV by search; V and VI from the family formulas (rmax bounds
// Table V).
std::vector<TableReproRow> table_reproduce(const std::string& table, const TableStore& t,
                                           std::optional<TableRange> range = std::nullopt, unsigned rmax = 12,
                                           const SearchOptions& opt = {});

struct BoundClause {
    Rational threshold;
    std::uint64_t q_max = 0;
    bool holds = false;             // strict inequality for every stored q <= q_max
    std::uint64_t worst_q = 0;
    double worst_value = 0;
    std::vector<std::uint64_t> failing_q;  // value >= threshold
};
struct BoundReport {
    std::string name;  // "a", "b" or "c"
    std::string quantity;
    std::vector<BoundClause> clauses;
    bool holds() const;
};

// a_q = lbar_q(3,2)/q^(1/2), b_q = lbar_q(4,3)/q^(1/3), c_q = lbar_q(5,3)/q^(2/3)
// against the stated thresholds, compared exactly by squaring or cubing.
BoundReport bound_check(const std::string& name, const TableStore& t);

}  // namespace covercraft
