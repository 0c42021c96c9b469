#include "covercraft/pg.hpp"

#include <algorithm>
#include <set>

namespace covercraft {

std::uint64_t theta(unsigned m, std::uint64_t q) {
    std::uint64_t t = 0, pw = 1;
    for (unsigned i = 0; i < m; ++i) {
        t += pw;
        pw *= q;
    }
    return t;
}

Space::Space(int v, Field f) : v_(v), f_(std::move(f)) {
    if (v < 0) throw Error(ErrorKind::DimensionMismatch, "negative projective dimension");
    const std::uint64_t q = f_.q();
    qpow_.assign(v_ + 2, 1);
    theta_.assign(v_ + 2, 0);
    for (int i = 1; i <= v_ + 1; ++i) {
        qpow_[i] = qpow_[i - 1] * q;
        theta_[i] = theta_[i - 1] + qpow_[i - 1];
    }
    size_ = theta_[v_ + 1];
}

bool Space::normalize(Point& x) const {
    if (x.size() != std::size_t(dim())) throw Error(ErrorKind::DimensionMismatch, "point length");
    std::size_t lead = 0;
    while (lead < x.size() && x[lead] == 0) ++lead;
    if (lead == x.size()) return false;
    if (x[lead] != 1) {
        const Elem inv = f_.inv(x[lead]);
        for (std::size_t i = lead; i < x.size(); ++i) x[i] = f_.mul(x[i], inv);
    }
    return true;
}

std::uint64_t Space::index(const Point& x) const {
    std::size_t lead = 0;
    while (x[lead] == 0) ++lead;
    std::uint64_t idx = 0;
    for (std::size_t k = lead + 1; k < x.size(); ++k) idx = idx * f_.q() + x[k];
    return theta_[v_ - lead] + idx;
}

std::uint64_t Space::index_of(Point x) const {
    if (!normalize(x)) throw Error(ErrorKind::DimensionMismatch, "zero vector is not a point");
    return index(x);
}

Point Space::point(std::uint64_t idx) const {
    if (idx >= size_) throw Error(ErrorKind::DimensionMismatch, "point index out of range");
    Point x(dim(), 0);
    // lead position i occupies [theta(v-i), theta(v-i) + q^{v-i})
    int lead = v_;
    while (!(idx >= theta_[v_ - lead] && idx < theta_[v_ - lead] + qpow_[v_ - lead])) --lead;
    std::uint64_t rest = idx - theta_[v_ - lead];
    x[lead] = 1;
    for (int k = v_; k > lead; --k) {
        x[k] = Elem(rest % f_.q());
        rest /= f_.q();
    }
    return x;
}

PointSet PointSet::from_points(int v, Field f, const std::vector<Point>& pts) {
    PointSet s(v, std::move(f));
    for (const auto& p : pts) s.add(p);
    return s;
}

bool PointSet::add(Point p) {
    Space sp(v_, f_);
    if (!sp.normalize(p)) return false;
    if (contains(p)) return false;
    pts_.push_back(std::move(p));
    return true;
}

bool PointSet::contains(const Point& normalized) const {
    return std::find(pts_.begin(), pts_.end(), normalized) != pts_.end();
}

bool PointSet::same_set(const PointSet& o) const {
    if (v_ != o.v_ || f_ != o.f_ || size() != o.size()) return false;
    std::set<Point> a(pts_.begin(), pts_.end()), b(o.pts_.begin(), o.pts_.end());
    return a == b;
}

std::vector<std::uint64_t> indices_of(const Space& sp, const PointSet& s) {
    std::vector<std::uint64_t> out;
    out.reserve(s.size());
    for (const auto& p : s) out.push_back(sp.index(p));
    return out;
}

PointSet pg_points(int v, const Field& f, std::uint64_t cap) {
    Space sp(v, f);
    if (sp.size() > cap)
        throw Error(ErrorKind::CapExceeded,
                    "PG(" + std::to_string(v) + "," + std::to_string(f.q()) + ") has too many points");
    std::vector<Point> pts;
    pts.reserve(sp.size());
    for (std::uint64_t i = 0; i < sp.size(); ++i) pts.push_back(sp.point(i));
    return PointSet::from_unique(v, f, std::move(pts));
}

namespace {
Matrix as_columns(const PointSet& s, std::size_t extra = 0) {
    Matrix m(s.field(), s.v() + 1, s.size() + extra);
    for (std::size_t j = 0; j < s.size(); ++j) m.set_column(j, s[j]);
    return m;
}
}  // namespace

bool span_contains(const PointSet& gens, const Point& x) {
    if (x.size() != std::size_t(gens.v() + 1)) throw Error(ErrorKind::DimensionMismatch, "point length");
    if (gens.empty()) return false;
    return solve_membership(as_columns(gens), x).has_value();
}

int span_dim(const PointSet& gens) {
    if (gens.empty()) return -1;
    return int(rank(as_columns(gens))) - 1;
}

PointSet line_points(const Field& f, const Point& P, const Point& Q) {
    if (P.size() != Q.size()) throw Error(ErrorKind::DimensionMismatch, "point length");
    const int v = int(P.size()) - 1;
    Space sp(v, f);
    Point a = P, b = Q;
    if (!sp.normalize(a) || !sp.normalize(b)) throw Error(ErrorKind::DimensionMismatch, "zero vector");
    if (a == b) throw Error(ErrorKind::SamePoint, "line needs two distinct points");
    PointSet out(v, f);
    out.add(a);
    for (Elem t = 0; t < f.q(); ++t) {
        Point x(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) x[i] = f.add(f.mul(t, a[i]), b[i]);
        out.add(x);
    }
    return out;
}

PointSet subgeometry_points(int v, const Field& sub, const Field& sup) {
    Embedding emb(sub, sup);
    PointSet base = pg_points(v, sub);
    std::vector<Point> pts;
    pts.reserve(base.size());
    for (const auto& p : base) {
        Point x(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) x[i] = emb(p[i]);
        pts.push_back(std::move(x));  // embedding keeps the leading 1
    }
    return PointSet::from_unique(v, sup, std::move(pts));
}

PointSet frobenius_orbit(const Field& f, const Point& P, std::uint64_t s, int rho) {
    const int v = int(P.size()) - 1;
    PointSet out(v, f);
    Point x = P;
    for (int k = 0; k <= rho; ++k) {
        out.add(x);
        for (auto& c : x) c = f.frobenius(c, s);
    }
    return out;
}

PointSet PointSet::from_unique(int v, Field f, std::vector<Point> pts) {
    PointSet s(v, std::move(f));
    s.pts_ = std::move(pts);
    return s;
}

}  // namespace covercraft
