#pragma once

#include <cstdint>
#include <vector>

#include "covercraft/gf.hpp"

namespace covercraft {

using Point = std::vector<Elem>;

inline constexpr std::uint64_t kDefaultPointCap = std::uint64_t{1} << 24;

// (q^m - 1)/(q - 1)
std::uint64_t theta(unsigned m, std::uint64_t q);

// PG(v,q) with points indexed in lexicographic order of their normalized
// coordinate vectors (leftmost nonzero coordinate equal to 1).
class Space {
public:
    Space(int v, Field f);

    int v() const { return v_; }
    int dim() const { return v_ + 1; }
    const Field& field() const { return f_; }
    std::uint64_t size() const { return size_; }

    // false for the zero vector
    bool normalize(Point& x) const;
    Point point(std::uint64_t idx) const;
    // x must already be normalized
    std::uint64_t index(const Point& x) const;
    std::uint64_t index_of(Point x) const;

    // Visits the index of every nonzero combination of `gens` whose leading
    // coefficient is 1. For independent generators that is each point of
    // their span exactly once.
    template <class Fn>
    void for_each_span_point(const std::vector<const Point*>& gens, Fn&& fn) const;

private:
    int v_;
    Field f_;
    std::uint64_t size_;
    std::vector<std::uint64_t> qpow_;
    std::vector<std::uint64_t> theta_;
};

class PointSet {
public:
    PointSet(int v, Field f) : v_(v), f_(std::move(f)) {}
    static PointSet from_points(int v, Field f, const std::vector<Point>& pts);
    // Caller guarantees the points are normalized and pairwise distinct.
    static PointSet from_unique(int v, Field f, std::vector<Point> pts);

    int v() const { return v_; }
    const Field& field() const { return f_; }
    std::size_t size() const { return pts_.size(); }
    bool empty() const { return pts_.empty(); }
    const Point& operator[](std::size_t i) const { return pts_[i]; }
    const std::vector<Point>& points() const { return pts_; }
    auto begin() const { return pts_.begin(); }
    auto end() const { return pts_.end(); }

    // Normalizes; returns false if the point was zero or already present.
    bool add(Point p);
    bool contains(const Point& normalized) const;
    // same points, any order
    bool same_set(const PointSet& o) const;

private:
    int v_;
    Field f_;
    std::vector<Point> pts_;
};

std::vector<std::uint64_t> indices_of(const Space& sp, const PointSet& s);

PointSet pg_points(int v, const Field& f, std::uint64_t cap = kDefaultPointCap);

bool span_contains(const PointSet& gens, const Point& x);
// rank - 1, so -1 for the empty set
int span_dim(const PointSet& gens);

PointSet line_points(const Field& f, const Point& P, const Point& Q);

// PG(v, sub) pushed coordinate-wise into PG(v, sup).
PointSet subgeometry_points(int v, const Field& sub, const Field& sup);

// {P, P^s, P^{s^2}, ..., P^{s^rho}} with duplicates removed.
PointSet frobenius_orbit(const Field& f, const Point& P, std::uint64_t s, int rho);

template <class Fn>
void Space::for_each_span_point(const std::vector<const Point*>& gens, Fn&& fn) const {
    const std::size_t k = gens.size();
    const std::size_t n = dim();
    const std::uint64_t q = f_.q();
    if (k == 0) return;
    // mult[j][c] = c * gens[j]
    std::vector<std::vector<Point>> mult(k, std::vector<Point>(q, Point(n, 0)));
    for (std::size_t j = 0; j < k; ++j)
        for (Elem c = 1; c < q; ++c)
            for (std::size_t i = 0; i < n; ++i) mult[j][c][i] = f_.mul(c, (*gens[j])[i]);
    std::vector<Elem> coef(k, 0);
    Point sum(n), tmp(n);
    for (std::size_t lead = 0; lead < k; ++lead) {
        sum = *gens[lead];
        std::fill(coef.begin(), coef.end(), 0);
        std::uint64_t total = 1;
        for (std::size_t j = lead + 1; j < k; ++j) total *= q;
        for (std::uint64_t t = 0; t < total; ++t) {
            tmp = sum;
            if (normalize(tmp)) fn(index(tmp));
            if (t + 1 == total) break;
            for (std::size_t j = k - 1;; --j) {
                const Elem old = coef[j];
                const Elem nxt = old + 1 == q ? 0 : old + 1;
                for (std::size_t i = 0; i < n; ++i)
                    sum[i] = f_.add(f_.sub(sum[i], mult[j][old][i]), mult[j][nxt][i]);
                coef[j] = nxt;
                if (nxt != 0) break;
            }
        }
    }
}

}  // namespace covercraft
