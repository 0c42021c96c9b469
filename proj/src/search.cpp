#include "covercraft/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>

#include "covercraft/codes.hpp"
#include "covercraft/families.hpp"

namespace covercraft {

namespace {

using Clock = std::chrono::steady_clock;
using Bits = std::vector<std::uint64_t>;

bool test(const Bits& b, std::size_t i) { return (b[i >> 6] >> (i & 63)) & 1u; }
void set(Bits& b, std::size_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

template <class Fn>
void each_bit(const Bits& b, Fn&& fn) {
    for (std::size_t w = 0; w < b.size(); ++w) {
        std::uint64_t x = b[w];
        while (x) {
            fn((w << 6) + std::size_t(std::countr_zero(x)));
            x &= x - 1;
        }
    }
}

// Points of the line through two points, from a table when it fits.
class Lines {
public:
    explicit Lines(const Space& sp) : sp_(sp), n_(sp.size()), k_(sp.field().q() + 1) {
        for (std::uint64_t i = 0; i < n_; ++i) pts_.push_back(sp.point(i));
        const std::uint64_t pairs = n_ * (n_ - 1) / 2;
        if (n_ < 65536 && pairs * k_ * 2 <= (std::uint64_t{1} << 27)) {
            table_.resize(pairs * k_);
            std::vector<std::uint64_t> buf;
            for (std::uint64_t a = 0; a < n_; ++a)
                for (std::uint64_t b = a + 1; b < n_; ++b) {
                    compute(a, b, buf);
                    const std::uint64_t base = slot(a, b) * k_;
                    for (std::size_t i = 0; i < k_; ++i) table_[base + i] = std::uint16_t(buf[i]);
                }
        }
    }

    std::size_t per_line() const { return k_; }

    template <class Fn>
    void each(std::uint64_t a, std::uint64_t b, Fn&& fn) const {
        if (a == b) {
            fn(a);
            return;
        }
        if (a > b) std::swap(a, b);
        if (!table_.empty()) {
            const std::uint16_t* p = &table_[slot(a, b) * k_];
            for (std::size_t i = 0; i < k_; ++i) fn(std::uint64_t(p[i]));
            return;
        }
        thread_local std::vector<std::uint64_t> buf;
        compute(a, b, buf);
        for (auto x : buf) fn(x);
    }

private:
    std::uint64_t slot(std::uint64_t a, std::uint64_t b) const { return a * n_ - a * (a + 1) / 2 + (b - a - 1); }

    void compute(std::uint64_t a, std::uint64_t b, std::vector<std::uint64_t>& out) const {
        out.clear();
        out.push_back(b);
        const Field& f = sp_.field();
        const Point& P = pts_[a];
        const Point& Q = pts_[b];
        Point x(P.size());
        for (Elem c = 0; c < f.q(); ++c) {
            for (std::size_t i = 0; i < P.size(); ++i) x[i] = f.add(P[i], f.mul(c, Q[i]));
            out.push_back(sp_.index_of(x));
        }
    }

    const Space& sp_;
    std::uint64_t n_;
    std::size_t k_;
    std::vector<Point> pts_;
    std::vector<std::uint16_t> table_;
};

// cov[k]: points in the span of at most k+1 chosen points
struct Cover {
    std::vector<Bits> cov;
    Cover(int rho, std::size_t n) : cov(std::size_t(rho) + 1, Bits((n + 63) / 64, 0)) {}

    void add(const Lines& L, std::uint64_t t) {
        for (std::size_t k = cov.size() - 1; k >= 1; --k) {
            Bits& dst = cov[k];
            each_bit(cov[k - 1], [&](std::size_t R) { L.each(t, R, [&](std::uint64_t x) { set(dst, x); }); });
            set(dst, t);
        }
        set(cov[0], t);
    }
};

struct Problem {
    Space sp;
    int rho;
    Lines lines;
    std::vector<int> weight;
    std::size_t N;

    Problem(int v, const Field& f, int r) : sp(v, f), rho(r), lines(sp), N(sp.size()) {
        for (std::uint64_t i = 0; i < N; ++i) {
            int w = 0;
            for (auto c : sp.point(i)) w += c != 0;
            weight.push_back(w);
        }
    }

    std::vector<std::uint64_t> uncovered(const Cover& c) const {
        std::vector<std::uint64_t> u;
        for (std::uint64_t i = 0; i < N; ++i)
            if (!test(c.cov[std::size_t(rho)], i)) u.push_back(i);
        return u;
    }

    // X completes the cover iff each uncovered Y is X or line XY meets
    // cov[rho-1] in a point other than X
    bool completes(const Cover& c, const std::vector<std::uint64_t>& U, std::uint64_t X) const {
        const Bits& low = c.cov[std::size_t(rho) - 1];
        for (auto Y : U) {
            if (Y == X) continue;
            bool hit = false;
            lines.each(X, Y, [&](std::uint64_t z) { hit = hit || (z != X && test(low, z)); });
            if (!hit) return false;
        }
        return true;
    }
};

struct Task {
    int s;
    std::uint64_t P;
    std::size_t first;  // index into cand, or npos when the task is the whole branch
};

PointSet to_set(const Problem& pr, const std::vector<std::uint64_t>& idx) {
    std::vector<Point> pts;
    for (auto i : idx) pts.push_back(pr.sp.point(i));
    return PointSet::from_points(pr.sp.v(), pr.sp.field(), pts);
}

std::uint64_t unit_index(const Space& sp, int i) {
    Point e(std::size_t(sp.dim()), 0);
    e[std::size_t(i)] = 1;
    return sp.index(e);
}

}  // namespace

double default_budget_secs() {
    if (const char* s = std::getenv("COVERCRAFT_BUDGET_SECS")) {
        try {
            const double v = std::stod(s);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
    }
    return 60.0;
}

std::optional<PointSet> find_saturating(int v, const Field& f, int rho, std::size_t n, const SearchOptions& opt,
                                        std::uint64_t* leaves_out) {
    if (rho < 1 || rho > v) throw Error(ErrorKind::DomainViolation, "need 1 <= rho <= v");
    Problem pr(v, f, rho);
    const auto deadline = Clock::now() + std::chrono::duration<double>(opt.budget_secs);
    std::vector<std::uint64_t> basis;
    for (int i = 0; i <= v; ++i) basis.push_back(unit_index(pr.sp, i));
    if (leaves_out) *leaves_out = 0;
    if (n < std::size_t(v) + 1) return std::nullopt;  // cannot span
    if (n == std::size_t(v) + 1) {
        Cover c(rho, pr.N);
        for (auto b : basis) c.add(pr.lines, b);
        if (pr.uncovered(c).empty()) return to_set(pr, basis);
        return std::nullopt;
    }
    const std::size_t k = n - std::size_t(v) - 2;  // points beyond basis and P

    std::vector<Task> tasks;
    std::vector<std::vector<std::uint64_t>> cands(std::size_t(v) + 2);
    for (int s = 2; s <= v + 1; ++s) {
        Point P(std::size_t(v) + 1, 0);
        for (int i = v + 1 - s; i <= v; ++i) P[std::size_t(i)] = 1;
        const std::uint64_t Pi = pr.sp.index(P);
        auto& cand = cands[std::size_t(s)];
        for (std::uint64_t i = 0; i < pr.N; ++i)
            if (pr.weight[i] >= 2 && pr.weight[i] <= s && i != Pi) cand.push_back(i);
        if (k >= 2) {
            for (std::size_t i = 0; i + k <= cand.size(); ++i) tasks.push_back({s, Pi, i});
        } else {
            tasks.push_back({s, Pi, std::string::npos});
        }
    }

    std::atomic<std::size_t> next{0}, best{tasks.size()};
    std::atomic<bool> aborted{false};
    std::atomic<std::uint64_t> leaves{0};
    std::vector<std::vector<std::uint64_t>> found(tasks.size());

    auto run_task = [&](std::size_t id) {
        const Task& t = tasks[id];
        const auto& cand = cands[std::size_t(t.s)];
        Cover base(rho, pr.N);
        std::vector<std::uint64_t> S = basis;
        S.push_back(t.P);
        for (auto x : S) base.add(pr.lines, x);
        std::uint64_t local = 0;

        std::vector<Cover> stack(k + 1, base);
        // returns true when a witness is stored
        std::function<bool(std::size_t, std::size_t)> dfs = [&](std::size_t depth, std::size_t pos) -> bool {
            const Cover& c = stack[depth];
            if (depth + 1 == k || k == 0) {
                if (aborted.load(std::memory_order_relaxed)) return false;
                ++local;
                if ((local & 255) == 0 && Clock::now() > deadline) {
                    aborted = true;
                    return false;
                }
                auto U = pr.uncovered(c);
                if (k == 0) {
                    if (U.empty()) {
                        found[id] = S;
                        return true;
                    }
                    return false;
                }
                for (std::size_t i = pos; i < cand.size(); ++i)
                    if (pr.completes(c, U, cand[i])) {
                        found[id] = S;
                        found[id].push_back(cand[i]);
                        return true;
                    }
                return false;
            }
            for (std::size_t i = pos; i + (k - depth) <= cand.size(); ++i) {
                if (id > best.load(std::memory_order_relaxed) || aborted.load(std::memory_order_relaxed)) return false;
                stack[depth + 1] = c;
                stack[depth + 1].add(pr.lines, cand[i]);
                S.push_back(cand[i]);
                const bool ok = dfs(depth + 1, i + 1);
                if (ok) return true;
                S.pop_back();
            }
            return false;
        };

        bool ok;
        if (t.first == std::string::npos) {
            ok = dfs(0, 0);
        } else {
            stack[1] = base;
            stack[1].add(pr.lines, cand[t.first]);
            S.push_back(cand[t.first]);
            ok = dfs(1, t.first + 1);
        }
        leaves += local;
        if (ok) {
            std::size_t cur = best.load();
            while (id < cur && !best.compare_exchange_weak(cur, id)) {
            }
        }
    };

    unsigned nt = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    nt = unsigned(std::min<std::size_t>(nt, tasks.size()));
    auto worker = [&] {
        for (;;) {
            const std::size_t id = next++;
            if (id >= tasks.size() || aborted) return;
            if (id > best.load()) continue;
            run_task(id);
        }
    };
    if (nt <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < nt; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (leaves_out) *leaves_out = leaves;
    const std::size_t b = best.load();
    if (aborted) {
        // a witness only counts if every earlier task finished
        throw Error(ErrorKind::BudgetExceeded, "search for a " + std::to_string(rho) + "-saturating " +
                                                   std::to_string(n) + "-set in PG(" + std::to_string(v) + "," +
                                                   std::to_string(f.q()) + ") ran out of time");
    }
    if (b < tasks.size()) return to_set(pr, found[b]);
    return std::nullopt;
}

ExhaustiveResult exhaustive_min_saturating(int v, const Field& f, int rho, std::size_t n_max,
                                           const SearchOptions& opt) {
    const auto start = Clock::now();
    ExhaustiveResult res;
    for (std::size_t n = 1; n <= n_max; ++n) {
        SearchOptions o = opt;
        o.budget_secs = opt.budget_secs - std::chrono::duration<double>(Clock::now() - start).count();
        std::uint64_t leaves = 0;
        std::optional<PointSet> w;
        try {
            if (o.budget_secs <= 0) throw Error(ErrorKind::BudgetExceeded, "");
            w = find_saturating(v, f, rho, n, o, &leaves);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::BudgetExceeded) throw;
            throw Error(ErrorKind::BudgetExceeded, "budget exceeded: the minimum lies in [" + std::to_string(n) + ", " +
                                                       std::to_string(n_max) + "] or above");
        }
        res.leaves += leaves;
        if (w) {
            res.n_min = n;
            res.witness = *w;
            res.seconds = std::chrono::duration<double>(Clock::now() - start).count();
            auto rep = verify_saturating(res.witness, rho);
            if (!rep.smallest_rho || *rep.smallest_rho > rho)
                throw Error(ErrorKind::ConstraintViolated, "search witness failed verification");
            return res;
        }
    }
    throw Error(ErrorKind::SearchExhausted, "no " + std::to_string(rho) + "-saturating set with at most " +
                                                std::to_string(n_max) + " points");
}

PointSet greedy_saturating(int v, const Field& f, int rho, GreedySeed seed) {
    if (rho < 1 || rho > v) throw Error(ErrorKind::DomainViolation, "need 1 <= rho <= v");
    Problem pr(v, f, rho);
    Cover c(rho, pr.N);
    std::vector<std::uint64_t> S;
    std::vector<char> in(pr.N, 0);
    auto take = [&](std::uint64_t x) {
        c.add(pr.lines, x);
        S.push_back(x);
        in[x] = 1;
    };
    if (seed == GreedySeed::Basis)
        for (int i = 0; i <= v; ++i) take(unit_index(pr.sp, i));
    Bits mark(c.cov[0].size());
    for (;;) {
        if (pr.uncovered(c).empty()) break;
        std::uint64_t best = pr.N, best_gain = 0;
        const Bits& top = c.cov[std::size_t(rho)];
        for (std::uint64_t X = 0; X < pr.N; ++X) {
            if (in[X]) continue;
            std::fill(mark.begin(), mark.end(), 0);
            set(mark, X);
            each_bit(c.cov[std::size_t(rho) - 1],
                     [&](std::size_t R) { pr.lines.each(X, R, [&](std::uint64_t z) { set(mark, z); }); });
            std::uint64_t gain = 0;
            for (std::size_t w = 0; w < mark.size(); ++w) gain += std::uint64_t(std::popcount(mark[w] & ~top[w]));
            if (gain > best_gain) {
                best_gain = gain;
                best = X;
            }
        }
        take(best);
    }
    auto out = to_set(pr, S);
    auto rep = verify_saturating(out, rho);
    if (!rep.smallest_rho || *rep.smallest_rho > rho)
        throw Error(ErrorKind::ConstraintViolated, "greedy result failed verification");
    return out;
}

TableRange default_table_range(const std::string& table) {
    if (table == "I") return {9, 25};
    if (table == "III") return {5, 13};
    if (table == "IV") return {4, 9};
    return {};
}

namespace {

struct Geometry {
    int v, rho;
};

Geometry geometry_of(const std::string& table) {
    if (table == "I") return {2, 1};
    if (table == "III") return {3, 2};
    if (table == "IV") return {4, 2};
    throw Error(ErrorKind::DomainViolation, "no search geometry for table " + table);
}

}  // namespace

std::vector<TableReproRow> table_reproduce(const std::string& table, const TableStore& t,
                                           std::optional<TableRange> range, unsigned rmax, const SearchOptions& opt) {
    std::vector<TableReproRow> out;
    if (table == "V") {
        std::vector<std::uint64_t> qs;
        for (const auto& e : t.rows("V"))
            if (std::find(qs.begin(), qs.end(), e.q) == qs.end()) qs.push_back(e.q);
        for (const auto& c : reproduce_table_v(t, qs, rmax)) {
            TableReproRow row{"V", c.q, c.r, 0, c.stored ? c.stored->str() : "", c.value.str(), "", c.source};
            row.status = c.matches() ? "FORMULA_MATCH" : "MISMATCH";
            out.push_back(row);
        }
        return out;
    }
    if (table == "VI") {
        for (const auto& c : reproduce_table_vi(t)) {
            TableReproRow row{"VI", c.q, 0, c.gamma, c.stored, c.rounded, "", c.family + " " + c.density.str()};
            row.status = c.matches() ? "FORMULA_MATCH" : "MISMATCH";
            out.push_back(row);
        }
        return out;
    }
    const auto g = geometry_of(table);
    const TableRange rg = range.value_or(default_table_range(table));
    for (const auto& e : t.rows(table)) {
        if (e.q > std::max(rg.exact_max, rg.upper_max)) continue;
        TableReproRow row{table, e.q, 0, 0, e.value, "", "", ""};
        const auto stored = std::size_t(std::stoul(e.value));
        const Field f = field_of_order(e.q);
        if (e.q <= rg.exact_max) {
            try {
                auto r = exhaustive_min_saturating(g.v, f, g.rho, stored, opt);
                row.computed = std::to_string(r.n_min);
                row.status = r.n_min == stored ? "MATCH_EXACT" : "MISMATCH";
                row.detail = std::to_string(r.leaves) + " leaves";
                if (!e.dot) row.detail += ", stored entry carries no dot";
            } catch (const Error& err) {
                row.status = err.kind() == ErrorKind::BudgetExceeded ? "BUDGET_EXCEEDED" : "MISMATCH";
                row.detail = err.what();
            }
        } else {
            auto s = greedy_saturating(g.v, f, g.rho);
            row.computed = std::to_string(s.size());
            row.status = s.size() <= stored ? "MATCH_UPPER" : (s.size() <= stored + 2 ? "UPPER_GAP" : "MISMATCH");
            row.detail = "greedy";
            if (s.size() > stored) row.detail += ", gap " + std::to_string(s.size() - stored);
        }
        out.push_back(row);
    }
    return out;
}

bool BoundReport::holds() const {
    return std::all_of(clauses.begin(), clauses.end(), [](const BoundClause& c) { return c.holds; });
}

BoundReport bound_check(const std::string& name, const TableStore& t) {
    struct Spec {
        std::string table, quantity;
        unsigned power, qexp;  // value^power = lbar^power / q^qexp
        std::vector<std::pair<Rational, std::uint64_t>> clauses;
    };
    Spec sp;
    if (name == "a")
        sp = {"I", "a_q = lbar_q(3,2)/q^(1/2)", 2, 1, {{3, 109}, {Rational(7, 2), 349}, {4, 1217}}};
    else if (name == "b")
        sp = {"III", "b_q = lbar_q(4,3)/q^(1/3)", 3, 1, {{4, 83}, {Rational(9, 2), 343}, {5, 563}}};
    else if (name == "c")
        sp = {"IV", "c_q = lbar_q(5,3)/q^(2/3)", 3, 2, {{4, 27}, {Rational(21, 5), 32}, {5, 43}}};
    else
        throw Error(ErrorKind::DomainViolation, "unknown bound quantity '" + name + "' (a, b or c)");

    BoundReport rep{name, sp.quantity, {}};
    for (const auto& [thr, qmax] : sp.clauses) {
        BoundClause c{thr, qmax, true, 0, 0, {}};
        for (const auto& e : t.rows(sp.table)) {
            if (e.q > qmax) continue;
            const BigInt L = e.length();
            const BigInt lhs = boost::multiprecision::pow(L, sp.power);
            const Rational rhs = Rational(boost::multiprecision::pow(BigInt(e.q), sp.qexp)) *
                                 Rational(boost::multiprecision::pow(boost::multiprecision::numerator(thr), sp.power),
                                          boost::multiprecision::pow(boost::multiprecision::denominator(thr), sp.power));
            const double val = L.convert_to<double>() / std::pow(double(e.q), double(sp.qexp) / sp.power);
            if (val > c.worst_value) {
                c.worst_value = val;
                c.worst_q = e.q;
            }
            if (!(Rational(lhs) < rhs)) {
                c.holds = false;
                c.failing_q.push_back(e.q);
            }
        }
        rep.clauses.push_back(c);
    }
    return rep;
}

}  // namespace covercraft
