#include "covercraft/blocking.hpp"

#include <algorithm>
#include <set>

namespace covercraft {

BigInt gaussian_binomial(unsigned n, unsigned k, std::uint64_t q) {
    if (k > n) return 0;
    BigInt num = 1, den = 1;
    for (unsigned i = 0; i < k; ++i) {
        num *= boost::multiprecision::pow(BigInt(q), n - i) - 1;
        den *= boost::multiprecision::pow(BigInt(q), i + 1) - 1;
    }
    return num / den;
}

void for_each_subspace(int v, const Field& f, int k,
                       const std::function<void(const std::vector<Point>&, const std::vector<int>&)>& fn,
                       std::uint64_t cap) {
    const int n = v + 1;
    if (k < 1 || k > n) throw Error(ErrorKind::DimensionMismatch, "subspace dimension out of range");
    if (gaussian_binomial(unsigned(n), unsigned(k), f.q()) > cap)
        throw Error(ErrorKind::CapExceeded, "too many subspaces to enumerate");
    const Elem q = Elem(f.q());
    std::vector<int> piv(k);
    for (int i = 0; i < k; ++i) piv[i] = i;
    std::vector<Point> rows(k, Point(n, 0));
    while (true) {
        std::vector<char> is_piv(n, 0);
        for (int c : piv) is_piv[c] = 1;
        std::vector<std::pair<int, int>> free;
        for (int i = 0; i < k; ++i) {
            std::fill(rows[i].begin(), rows[i].end(), 0);
            rows[i][piv[i]] = 1;
            for (int j = piv[i] + 1; j < n; ++j)
                if (!is_piv[j]) free.emplace_back(i, j);
        }
        while (true) {
            fn(rows, piv);
            std::size_t s = 0;
            for (; s < free.size(); ++s) {
                Elem& e = rows[free[s].first][free[s].second];
                if (++e < q) break;
                e = 0;
            }
            if (s == free.size()) break;
        }
        int i = k;
        while (i > 0 && piv[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++piv[i - 1];
        for (int j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
}

namespace {

// Rank of the points of B inside the subspace with the given echelon basis,
// capped at rows.size(); also counts them.
struct Meet {
    std::size_t count = 0;
    std::size_t rank = 0;
};

Meet meet(const Field& f, const PointSet& B, const std::vector<Point>& rows, const std::vector<int>& piv,
          bool need_rank) {
    const std::size_t k = rows.size(), n = rows[0].size();
    Meet m;
    std::vector<std::vector<Elem>> echelon;  // reduced vectors with their leading position
    std::vector<std::size_t> lead;
    std::vector<Elem> c(k);
    for (const auto& b : B) {
        bool inside = true;
        for (std::size_t j = 0; j < n && inside; ++j) {
            Elem s = 0;
            for (std::size_t i = 0; i < k; ++i)
                if (rows[i][j]) s = f.add(s, f.mul(b[piv[i]], rows[i][j]));
            inside = s == b[j];
        }
        if (!inside) continue;
        ++m.count;
        if (!need_rank || m.rank == k) continue;
        for (std::size_t i = 0; i < k; ++i) c[i] = b[piv[i]];
        for (std::size_t e = 0; e < echelon.size(); ++e) {
            const Elem x = c[lead[e]];
            if (x == 0) continue;
            for (std::size_t i = 0; i < k; ++i) c[i] = f.sub(c[i], f.mul(x, echelon[e][i]));
        }
        std::size_t l = 0;
        while (l < k && c[l] == 0) ++l;
        if (l == k) continue;
        const Elem inv = f.inv(c[l]);
        for (auto& x : c) x = f.mul(x, inv);
        echelon.push_back(c);
        lead.push_back(l);
        ++m.rank;
    }
    return m;
}

}  // namespace

BlockingReport verify_strong_blocking(const PointSet& B, int t, std::uint64_t cap) {
    if (t < 2 || t > B.v()) throw Error(ErrorKind::DomainViolation, "need 2 <= t <= v");
    BlockingReport rep;
    rep.t = t;
    rep.is_tfold_strong = true;
    rep.is_tfold = true;
    for_each_subspace(
        B.v(), B.field(), t,
        [&](const std::vector<Point>& rows, const std::vector<int>& piv) {
            ++rep.subspaces_checked;
            auto m = meet(B.field(), B, rows, piv, true);
            if (m.count < std::size_t(t)) rep.is_tfold = false;
            if (m.rank < std::size_t(t)) {
                rep.is_tfold_strong = false;
                if (rep.failing_subspace_witnesses.size() < 10) rep.failing_subspace_witnesses.push_back(rows);
            }
        },
        cap);
    return rep;
}

bool verify_tfold_blocking(const PointSet& B, int t, int subspace_dim, std::uint64_t cap) {
    bool ok = true;
    for_each_subspace(
        B.v(), B.field(), subspace_dim + 1,
        [&](const std::vector<Point>& rows, const std::vector<int>& piv) {
            if (ok && meet(B.field(), B, rows, piv, false).count < std::size_t(t)) ok = false;
        },
        cap);
    return ok;
}

PointSet strong_to_saturating(const PointSet& B, int rho) {
    if (rho < 1) throw Error(ErrorKind::DomainViolation, "rho must be positive");
    if (!verify_strong_blocking(B, rho + 1).is_tfold_strong)
        throw Error(ErrorKind::NotStrongBlocking, "input is not a (rho+1)-fold strong blocking set");
    const Field& sub = B.field();
    Field sup = Field::create(sub.p(), sub.degree() * std::uint32_t(rho + 1));
    Embedding emb(sub, sup);
    std::vector<Point> pts;
    for (const auto& b : B) {
        Point x(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) x[i] = emb(b[i]);
        pts.push_back(std::move(x));
    }
    return PointSet::from_unique(B.v(), sup, std::move(pts));
}

namespace {

// q = p^e with p prime, or nullopt
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
    if (q < 2) return std::nullopt;
    std::uint64_t p = 2;
    while (q % p) ++p;
    std::uint32_t e = 0;
    while (q % p == 0) {
        q /= p;
        ++e;
    }
    if (q != 1) return std::nullopt;
    return std::make_pair(std::uint32_t(p), e);
}

}  // namespace

PointSet baer_pair_set(std::uint64_t qp) {
    auto pp = prime_power(qp);
    if (!pp || pp->second % 2) throw Error(ErrorKind::DomainViolation, "baer pair needs a square prime power");
    const auto [p, e] = *pp;
    Field F = Field::create(p, e);
    Field sub = Field::create(p, e / 2);
    PointSet base = subgeometry_points(2, sub, F);
    // PG(2,qp) as K*/F* with K = GF(qp^3); multiplying by a primitive element
    // of K is a Singer cycle, and its powers permute the Baer subplanes.
    Field K = Field::extend(F, 3);
    Space sp(2, F);
    std::vector<char> in_base(sp.size(), 0);
    for (const auto& b : base) in_base[sp.index(b)] = 1;
    auto to_elem = [&](const Point& x) { return Elem(x[0] + x[1] * qp + x[2] * qp * qp); };
    auto to_point = [&](Elem y) {
        Point x{Elem(y % qp), Elem(y / qp % qp), Elem(y / qp / qp)};
        sp.normalize(x);
        return x;
    };
    const std::uint64_t order = sp.size();
    for (std::uint64_t k = 1; k < order; ++k) {
        const Elem w = K.exp(k);
        std::vector<Point> image;
        bool disjoint = true;
        for (const auto& b : base) {
            Point x = to_point(K.mul(to_elem(b), w));
            if (in_base[sp.index(x)]) {
                disjoint = false;
                break;
            }
            image.push_back(std::move(x));
        }
        if (!disjoint) continue;
        std::vector<Point> all(base.begin(), base.end());
        all.insert(all.end(), image.begin(), image.end());
        PointSet out = PointSet::from_unique(2, F, std::move(all));
        if (verify_tfold_blocking(out, 2, 1)) return out;
    }
    throw Error(ErrorKind::SearchExhausted, "no disjoint Baer subplane found");
}

CubicPair cubic_blocking_pair(std::uint32_t p) {
    if (!is_prime_number(p)) throw Error(ErrorKind::NonPrime, "p must be prime");
    Field F = Field::create(p, 3);
    const std::uint64_t q = F.q();
    const std::uint64_t h_exp = std::uint64_t(p) * p + p + 1;
    auto in_h = [&](Elem y) { return y != 0 && F.pow(y, h_exp) == 1; };

    std::vector<char> hit(q, 0);
    for (Elem x = 0; x < q; ++x) {
        const Elem y = F.mul(F.pow(F.sub(F.pow(x, p), 1), p - 1), x);
        hit[y] = 1;
    }
    std::optional<Elem> c;
    for (Elem y = 1; y < q && !c; ++y)
        if (!in_h(y) && !hit[y]) c = y;
    if (!c) throw Error(ErrorKind::NoSuitableC, "no c outside H avoids (x^p-1)^(p-1) x");

    // d: smallest element of the coset cH, then a^(p-1) = c/d and b = d^(p^2)
    Elem d = 0;
    for (Elem y = 1; y < q; ++y)
        if (in_h(F.div(*c, y))) {
            d = y;
            break;
        }
    const Elem target = F.div(*c, d);
    Elem a = 0;
    for (Elem y = 1; y < q; ++y)
        if (F.pow(y, p - 1) == target) {
            a = y;
            break;
        }
    const Elem b = F.pow(d, std::uint64_t(p) * p);

    Space sp(2, F);
    std::vector<Point> base;
    for (Elem x = 0; x < q; ++x) base.push_back({1, x, F.pow(x, p)});
    for (Elem m = 1; m < q; ++m)
        if (in_h(m)) base.push_back({0, 1, m});
    PointSet B = PointSet::from_unique(2, F, base);

    std::vector<char> in_b(sp.size(), 0);
    for (const auto& x : B) in_b[sp.index(x)] = 1;
    const Elem ab = F.mul(a, b);
    std::vector<Point> all(B.begin(), B.end());
    for (const auto& x : B) {
        Point y{F.sub(x[2], x[0]), F.mul(ab, x[0]), F.mul(a, x[1])};
        sp.normalize(y);
        if (in_b[sp.index(y)]) throw Error(ErrorKind::NoSuitableC, "projectivity image meets B");
        all.push_back(std::move(y));
    }
    PointSet out = PointSet::from_unique(2, F, std::move(all));
    if (!verify_tfold_blocking(out, 2, 1)) throw Error(ErrorKind::NoSuitableC, "union is not 2-fold blocking");
    return {std::move(out), std::move(B), *c, d, a, b};
}

FourLines four_lines_set(const Field& f) {
    const Elem q = Elem(f.q());
    Elem k = 0;
    if (f.p() != 2) {
        for (Elem y = 1; y < q && !k; ++y)
            if (!f.is_square(y)) k = y;
    } else {
        for (Elem y = 1; y < q && !k; ++y) {
            bool root = false;
            for (Elem x = 0; x < q && !root; ++x) root = f.add(f.add(f.mul(x, x), x), y) == 0;
            if (!root) k = y;
        }
    }
    if (!k) throw Error(ErrorKind::NoWitnessK, "no suitable k for the fourth line");

    PointSet out(3, f);
    auto add_line = [&](const Point& a, const Point& b) {
        for (const auto& x : line_points(f, a, b)) out.add(x);
    };
    add_line({0, 1, 0, 0}, {0, 0, 0, 1});
    add_line({1, 0, 0, 0}, {0, 0, 1, 0});
    add_line({1, 0, 0, 1}, {0, 1, 1, 0});
    PointSet g = f.p() != 2 ? line_points(f, {1, 1, 0, 0}, {0, 0, k, 1}) : line_points(f, {1, 1, 0, 0}, {1, 0, k, 1});
    for (const auto& x : g) {
        if (f.mul(x[0], x[1]) == f.mul(x[2], x[3]))
            throw Error(ErrorKind::NoWitnessK, "fourth line meets the quadric");
        out.add(x);
    }
    if (out.size() != 4 * std::size_t(q) + 4) throw Error(ErrorKind::NoWitnessK, "lines are not pairwise disjoint");
    return {std::move(out), k};
}

PointSet construction_a_step(const PointSet& B, bool verify) {
    const int v = B.v();
    const Field& f = B.field();
    if (verify && !verify_strong_blocking(B, v).is_tfold_strong)
        throw Error(ErrorKind::NotStrongBlocking, "input is not a v-fold strong blocking set");
    std::vector<Point> pts;
    for (const auto& b : B) {
        Point x = b;
        x.push_back(0);
        pts.push_back(std::move(x));
    }
    Point apex(v + 2, 0);
    apex[v + 1] = 1;
    pts.push_back(apex);
    for (int i = 0; i <= v; ++i)
        for (Elem l = 1; l < f.q(); ++l) {
            Point x(v + 2, 0);
            x[i] = 1;
            x[v + 1] = l;
            pts.push_back(std::move(x));
        }
    return PointSet::from_unique(v + 1, f, std::move(pts));
}

PointSet weight_set_bk(int v, const Field& f, int k) {
    if (k < 1 || k > v - 1) throw Error(ErrorKind::DomainViolation, "need 1 <= k <= v-1");
    Space sp(v, f);
    if (sp.size() > kDefaultPointCap) throw Error(ErrorKind::CapExceeded, "ambient space too large");
    std::vector<Point> pts;
    for (std::uint64_t i = 0; i < sp.size(); ++i) {
        Point x = sp.point(i);
        const auto w = std::count_if(x.begin(), x.end(), [](Elem e) { return e != 0; });
        if (w <= v - k + 1) pts.push_back(std::move(x));
    }
    return PointSet::from_unique(v, f, std::move(pts));
}

PointSet nine_planes_set(const Field& f) {
    static const int planes[9][3] = {{0, 1, 2}, {0, 3, 4}, {0, 1, 3}, {0, 2, 4}, {0, 1, 4},
                                     {1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}};
    Space sp(4, f);
    std::vector<Point> pts;
    for (std::uint64_t i = 0; i < sp.size(); ++i) {
        Point x = sp.point(i);
        unsigned support = 0;
        for (int c = 0; c < 5; ++c)
            if (x[c]) support |= 1u << c;
        for (const auto& pl : planes) {
            const unsigned mask = (1u << pl[0]) | (1u << pl[1]) | (1u << pl[2]);
            if ((support & ~mask) == 0) {
                pts.push_back(x);
                break;
            }
        }
    }
    return PointSet::from_unique(4, f, std::move(pts));
}

bool line_u_admissible(std::uint64_t q, int u) {
    if (u >= 2 && std::uint64_t(u) <= (q + 2) / 2) return true;
    if (std::uint64_t(u) == q - 1 && u >= 1) return true;
    return q >= 4 && u >= 3 && std::uint64_t(u) <= q;
}

LineWitness line_combination_witness(const PointSet& line, std::size_t target, int u) {
    const Field& f = line.field();
    const std::uint64_t q = f.q();
    if (line.size() != q + 1 || span_dim(line) != 1)
        throw Error(ErrorKind::DimensionMismatch, "expected all q+1 points of a line");
    if (target >= line.size()) throw Error(ErrorKind::DimensionMismatch, "target index out of range");
    if (u < 1 || std::uint64_t(u) > q) throw Error(ErrorKind::NoWitness, "u outside 1..q");
    const Point& T = line[target];
    const std::size_t dim = T.size();
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < line.size(); ++i)
        if (i != target) others.push_back(i);

    // choose u-1 points and coefficients; the last point's coefficient is
    // forced, if the remainder is a nonzero multiple of it
    LineWitness w;
    std::uint64_t work = 0;
    std::vector<Elem> acc(dim, 0);
    std::function<bool(std::size_t, int)> rec = [&](std::size_t start, int left) -> bool {
        if (++work > (std::uint64_t{1} << 24)) throw Error(ErrorKind::NoWitness, "search budget exhausted");
        if (left == 1) {
            for (std::size_t s = start; s < others.size(); ++s) {
                const Point& P = line[others[s]];
                Point rem(dim);
                for (std::size_t i = 0; i < dim; ++i) rem[i] = f.sub(T[i], acc[i]);
                std::size_t l = 0;
                while (l < dim && P[l] == 0) ++l;
                const Elem c = f.div(rem[l], P[l]);
                if (c == 0) continue;
                bool ok = true;
                for (std::size_t i = 0; i < dim && ok; ++i) ok = rem[i] == f.mul(c, P[i]);
                if (!ok) continue;
                w.points.push_back(others[s]);
                w.coeffs.push_back(c);
                return true;
            }
            return false;
        }
        for (std::size_t s = start; s + std::size_t(left) <= others.size(); ++s) {
            const Point& P = line[others[s]];
            for (Elem c = 1; c < q; ++c) {
                for (std::size_t i = 0; i < dim; ++i) acc[i] = f.add(acc[i], f.mul(c, P[i]));
                w.points.push_back(others[s]);
                w.coeffs.push_back(c);
                if (rec(s + 1, left - 1)) return true;
                w.points.pop_back();
                w.coeffs.pop_back();
                for (std::size_t i = 0; i < dim; ++i) acc[i] = f.sub(acc[i], f.mul(c, P[i]));
            }
        }
        return false;
    };
    if (!rec(0, u)) throw Error(ErrorKind::NoWitness, "no combination with nonzero coefficients");
    // substitution check
    std::vector<Elem> sum(dim, 0);
    for (std::size_t i = 0; i < w.points.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j) sum[j] = f.add(sum[j], f.mul(w.coeffs[i], line[w.points[i]][j]));
    if (sum != T) throw Error(ErrorKind::NoWitness, "witness failed substitution");
    return w;
}

}  // namespace covercraft
