#include "covercraft/codes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace covercraft {

Code::Code(Matrix H) : H_(std::move(H)) {
    if (H_.rows() == 0 || H_.cols() == 0) throw Error(ErrorKind::DimensionMismatch, "code needs r >= 1 and n >= 1");
    for (std::size_t j = 0; j < H_.cols(); ++j) {
        bool zero = true;
        for (std::size_t i = 0; i < H_.rows() && zero; ++i) zero = H_.at(i, j) == 0;
        if (zero) throw Error(ErrorKind::DimensionMismatch, "zero column " + std::to_string(j));
    }
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

SyndromeSpace::SyndromeSpace(Field f, std::size_t r) : f_(std::move(f)), r_(r), q_(f_.q()) {
    size_ = 1;
    for (std::size_t i = 0; i < r; ++i) {
        if (size_ > (std::uint64_t{1} << 62) / q_) throw Error(ErrorKind::CapExceeded, "syndrome space overflow");
        size_ *= q_;
    }
    xor_mode_ = f_.p() == 2;
    if (xor_mode_) return;
    std::size_t c = 1;
    chunk_ = q_;
    while (chunk_ * q_ <= 256 && c < r) {
        chunk_ *= q_;
        ++c;
    }
    chunks_ = (r + c - 1) / c;
    table_.resize(chunk_ * chunk_);
    for (std::uint64_t a = 0; a < chunk_; ++a)
        for (std::uint64_t b = 0; b < chunk_; ++b) {
            std::uint64_t x = a, y = b, res = 0, mult = 1;
            for (std::size_t i = 0; i < c; ++i) {
                res += f_.add(Elem(x % q_), Elem(y % q_)) * mult;
                x /= q_;
                y /= q_;
                mult *= q_;
            }
            table_[a * chunk_ + b] = std::uint16_t(res);
        }
}

std::uint64_t SyndromeSpace::encode(const std::vector<Elem>& x) const {
    std::uint64_t s = 0;
    for (std::size_t i = x.size(); i-- > 0;) s = s * q_ + x[i];
    return s;
}

std::vector<Elem> SyndromeSpace::decode(std::uint64_t s) const {
    std::vector<Elem> x(r_);
    for (std::size_t i = 0; i < r_; ++i) {
        x[i] = Elem(s % q_);
        s /= q_;
    }
    return x;
}

std::uint64_t SyndromeSpace::add(std::uint64_t a, std::uint64_t b) const {
    if (xor_mode_) return a ^ b;
    std::uint64_t res = 0, mult = 1;
    for (std::size_t i = 0; i < chunks_; ++i) {
        res += table_[(a % chunk_) * chunk_ + b % chunk_] * mult;
        a /= chunk_;
        b /= chunk_;
        mult *= chunk_;
    }
    return res;
}

std::uint64_t SyndromeSpace::scale(std::uint64_t a, Elem c) const {
    auto x = decode(a);
    for (auto& e : x) e = f_.mul(e, c);
    return encode(x);
}

Partition Partition::trivial(std::size_t n) {
    Partition p;
    for (std::size_t j = 0; j < n; ++j) p.subsets.push_back({j});
    return p;
}

void Partition::validate(std::size_t n) const {
    std::vector<int> seen(n, 0);
    for (const auto& s : subsets) {
        if (s.empty()) throw Error(ErrorKind::InvalidPartition, "empty subset");
        for (auto j : s) {
            if (j >= n) throw Error(ErrorKind::InvalidPartition, "column index out of range");
            if (seen[j]++) throw Error(ErrorKind::InvalidPartition, "column in two subsets");
        }
    }
    for (std::size_t j = 0; j < n; ++j)
        if (!seen[j]) throw Error(ErrorKind::InvalidPartition, "column " + std::to_string(j) + " uncovered");
}

namespace {

std::vector<std::uint64_t> column_syndromes(const Code& c, const SyndromeSpace& ss) {
    std::vector<std::uint64_t> out(c.n());
    for (std::size_t j = 0; j < c.n(); ++j) out[j] = ss.encode(c.H().column(j));
    return out;
}

}  // namespace

int covering_radius(const Code& c, std::uint64_t cap) {
    SyndromeSpace ss(c.field(), c.r());
    if (ss.size() > cap) throw Error(ErrorKind::CapExceeded, "q^r above syndrome cap");
    const std::uint64_t q = c.field().q();
    std::set<std::uint64_t> gens;
    auto cols = column_syndromes(c, ss);
    for (auto s : cols)
        for (Elem l = 1; l < q; ++l) gens.insert(ss.scale(s, l));
    const std::vector<std::uint64_t> g(gens.begin(), gens.end());

    std::vector<std::uint64_t> seen((ss.size() + 63) / 64, 0);
    auto test_set = [&](std::uint64_t s) {
        std::uint64_t& w = seen[s >> 6];
        const std::uint64_t bit = std::uint64_t{1} << (s & 63);
        if (w & bit) return false;
        w |= bit;
        return true;
    };
    test_set(0);
    std::uint64_t reached = 1;
    std::vector<std::uint64_t> frontier{0}, next;
    int layer = 0;
    while (reached < ss.size()) {
        next.clear();
        for (auto s : frontier)
            for (auto h : g) {
                const std::uint64_t t = ss.add(s, h);
                if (test_set(t)) next.push_back(t);
            }
        if (next.empty()) throw Error(ErrorKind::RankDeficient, "columns do not span F_q^r");
        reached += next.size();
        frontier.swap(next);
        ++layer;
    }
    return layer;
}

int covering_radius_oracle(const Code& c, double max_bits) {
    const std::size_t n = c.n();
    const std::uint64_t q = c.field().q();
    if (double(n) * std::log2(double(q)) > max_bits) throw Error(ErrorKind::CapExceeded, "q^n too large for oracle");
    const Field& F = c.field();
    auto basis = null_space(c.H());
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= q;
    std::vector<std::uint8_t> dist(total, 0xff);
    std::vector<std::uint64_t> frontier;
    // every codeword: all combinations of the null-space basis
    const std::size_t k = basis.size();
    std::vector<Elem> coef(k, 0);
    std::uint64_t words = 1;
    for (std::size_t i = 0; i < k; ++i) words *= q;
    for (std::uint64_t w = 0; w < words; ++w) {
        std::uint64_t t = w;
        for (std::size_t i = 0; i < k; ++i) {
            coef[i] = Elem(t % q);
            t /= q;
        }
        std::uint64_t enc = 0;
        for (std::size_t pos = n; pos-- > 0;) {
            Elem x = 0;
            for (std::size_t i = 0; i < k; ++i) x = F.add(x, F.mul(coef[i], basis[i][pos]));
            enc = enc * q + x;
        }
        if (dist[enc] != 0) {
            dist[enc] = 0;
            frontier.push_back(enc);
        }
    }
    std::vector<std::uint64_t> pw(n, 1);
    for (std::size_t i = 1; i < n; ++i) pw[i] = pw[i - 1] * q;
    int d = 0;
    std::vector<std::uint64_t> next;
    while (!frontier.empty()) {
        next.clear();
        for (auto v : frontier)
            for (std::size_t pos = 0; pos < n; ++pos) {
                const std::uint64_t digit = (v / pw[pos]) % q;
                const std::uint64_t base = v - digit * pw[pos];
                for (std::uint64_t x = 0; x < q; ++x) {
                    const std::uint64_t u = base + x * pw[pos];
                    if (dist[u] == 0xff) {
                        dist[u] = std::uint8_t(d + 1);
                        next.push_back(u);
                    }
                }
            }
        if (!next.empty()) ++d;
        frontier.swap(next);
    }
    return d;
}

std::optional<int> min_distance(const Code& c, std::uint64_t cap) {
    const std::size_t n = c.n();
    std::uint64_t work = 0;
    std::vector<std::size_t> idx;
    for (std::size_t d = 1; d <= n; ++d) {
        idx.resize(d);
        for (std::size_t i = 0; i < d; ++i) idx[i] = i;
        while (true) {
            if (++work > cap) throw Error(ErrorKind::CapExceeded, "minimum distance search too large");
            if (rank(c.H().select_columns(idx)) < d) return int(d);
            std::size_t i = d;
            while (i > 0 && idx[i - 1] == n - d + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (d > c.r()) break;  // any r+1 columns are dependent, so we returned already
    }
    return std::nullopt;
}

BigInt sphere_size(std::uint64_t n, std::uint64_t R, std::uint64_t q) {
    BigInt total = 0, binom = 1, pw = 1;
    for (std::uint64_t i = 0; i <= R && i <= n; ++i) {
        total += pw * binom;
        binom = binom * (n - i) / (i + 1);
        pw *= (q - 1);
    }
    return total;
}

Rational covering_density(std::uint64_t n, std::uint64_t r, int R, std::uint64_t q) {
    BigInt den = boost::multiprecision::pow(BigInt(q), unsigned(r));
    return Rational(sphere_size(n, std::uint64_t(R), q), den);
}

Rational covering_density(const Code& c, int R) { return covering_density(c.n(), c.r(), R, c.field().q()); }

Code extend(const Code& c, int delta) {
    if (delta < 1) throw Error(ErrorKind::DomainViolation, "delta must be >= 1");
    Matrix H(c.field(), c.r(), c.n() + delta);
    for (std::size_t i = 0; i < c.r(); ++i) {
        for (std::size_t j = 0; j < c.n(); ++j) H.at(i, j) = c.H().at(i, j);
        for (int d = 0; d < delta; ++d) H.at(i, c.n() + d) = c.H().at(i, 0);
    }
    return Code(std::move(H));
}

namespace {

// mask[s] has bit k set when syndrome s is a combination, with nonzero
// coefficients, of k columns lying in pairwise distinct subsets (k <= R).
class ReachMasks {
public:
    ReachMasks(const Code& c, int R) : ss_(c.field(), c.r()), R_(R), n_(c.n()) {
        if (ss_.size() > (std::uint64_t{1} << 26))
            throw Error(ErrorKind::CapExceeded, "q^r too large for partition check");
        auto cols = column_syndromes(c, ss_);
        mult_.resize(n_);
        for (std::size_t j = 0; j < n_; ++j)
            for (Elem l = 1; l < c.field().q(); ++l) mult_[j].push_back(ss_.scale(cols[j], l));
        mask_.resize(ss_.size());
    }

    const std::vector<std::uint32_t>& compute(const std::vector<int>& owner) {
        owner_ = &owner;
        std::fill(mask_.begin(), mask_.end(), 0);
        mask_[0] = 1u;
        used_.assign(n_, 0);
        rec(0, 0, 0);
        return mask_;
    }

private:
    void rec(std::size_t start, int k, std::uint64_t s) {
        if (k == R_) return;
        for (std::size_t j = start; j < n_; ++j) {
            const int o = (*owner_)[j];
            if (used_[o]) continue;
            used_[o] = 1;
            for (auto m : mult_[j]) {
                const std::uint64_t t = ss_.add(s, m);
                mask_[t] |= 1u << (k + 1);
                rec(j + 1, k + 1, t);
            }
            used_[o] = 0;
        }
    }

    SyndromeSpace ss_;
    int R_;
    std::size_t n_;
    std::vector<std::vector<std::uint64_t>> mult_;
    std::vector<std::uint32_t> mask_;
    std::vector<char> used_;
    const std::vector<int>* owner_ = nullptr;
};

std::vector<int> owners(const Partition& p, std::size_t n) {
    std::vector<int> o(n, -1);
    for (std::size_t i = 0; i < p.subsets.size(); ++i)
        for (auto j : p.subsets[i]) o[j] = int(i);
    return o;
}

// largest ell valid for these masks, -1 if some syndrome is unreachable
int best_ell(const std::vector<std::uint32_t>& mask, int R) {
    int ell = R;
    for (auto m : mask) {
        if (m == 0) return -1;
        ell = std::min(ell, 31 - __builtin_clz(m));
    }
    return ell;
}

bool admits(const std::vector<std::uint32_t>& mask, int R, int ell) {
    const std::uint32_t want = ((1u << (R + 1)) - 1) & ~((1u << ell) - 1);
    for (auto m : mask)
        if (!(m & want)) return false;
    return true;
}

}  // namespace

bool verify_partition(const Code& c, const Partition& p, int R, int ell) {
    p.validate(c.n());
    if (ell < 0 || ell > R) throw Error(ErrorKind::DomainViolation, "need 0 <= ell <= R");
    ReachMasks rm(c, R);
    return admits(rm.compute(owners(p, c.n())), R, ell);
}

std::optional<EllResult> find_max_ell(const Code& c, int R) {
    const std::size_t n = c.n();
    if (n > 8) throw Error(ErrorKind::CapExceeded, "partition search limited to n <= 8");
    ReachMasks rm(c, R);
    // Refining a partition only adds representations, so the singletons give
    // the largest ell; what is left is to find the fewest subsets reaching it.
    std::vector<int> a(n);
    for (std::size_t j = 0; j < n; ++j) a[j] = int(j);
    const int ell = best_ell(rm.compute(a), R);
    if (ell < 0) return std::nullopt;
    for (std::size_t blocks = 1; blocks <= n; ++blocks) {
        // restricted growth strings with exactly `blocks` values
        bool found = false;
        std::function<void(std::size_t, int)> rec = [&](std::size_t i, int maxv) {
            if (found) return;
            if (int(n - i) < int(blocks) - 1 - maxv) return;
            if (i == n) {
                if (maxv + 1 != int(blocks)) return;
                if (admits(rm.compute(a), R, ell)) found = true;
                return;
            }
            for (int v = 0; v <= std::min(maxv + 1, int(blocks) - 1) && !found; ++v) {
                a[i] = v;
                rec(i + 1, std::max(maxv, v));
            }
        };
        a.assign(n, 0);
        rec(1, 0);
        if (found) {
            Partition p;
            p.subsets.assign(blocks, {});
            for (std::size_t j = 0; j < n; ++j) p.subsets[a[j]].push_back(j);
            return EllResult{std::move(p), ell};
        }
    }
    return std::nullopt;  // unreachable: the singletons admit ell
}

Code code_from_set(const PointSet& s) {
    if (s.empty()) throw Error(ErrorKind::EmptySet, "empty point set");
    Matrix H(s.field(), s.v() + 1, s.size());
    for (std::size_t j = 0; j < s.size(); ++j) H.set_column(j, s[j]);
    return Code(std::move(H));
}

SetFromCode set_from_code(const Code& c) {
    PointSet s(int(c.r()) - 1, c.field());
    std::size_t dropped = 0;
    for (std::size_t j = 0; j < c.n(); ++j)
        if (!s.add(c.H().column(j))) ++dropped;
    return {std::move(s), dropped};
}

SaturationReport verify_saturating(const PointSet& s, std::optional<int> claimed, std::uint64_t point_cap,
                                   std::uint64_t subset_cap) {
    Space sp(s.v(), s.field());
    if (sp.size() > point_cap) throw Error(ErrorKind::CapExceeded, "ambient space above point cap");
    SaturationReport rep;
    rep.claimed = claimed;
    const int rk = span_dim(s) + 1;
    std::vector<char> covered(sp.size(), 0);
    std::uint64_t count = 0;
    const std::size_t n = s.size();
    auto record_failures = [&](int rho) {
        auto& f = rep.failures[rho];
        for (std::uint64_t i = 0; i < sp.size() && f.size() < 10; ++i)
            if (!covered[i]) f.push_back(sp.point(i));
    };
    int top = rk - 1;
    if (claimed) top = std::max(top, *claimed);
    for (int rho = 0; rho <= top && rho < int(n); ++rho) {
        const std::size_t k = std::size_t(rho) + 1;
        if (binomial(n, k) > subset_cap) throw Error(ErrorKind::CapExceeded, "too many subsets to check");
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        std::vector<const Point*> gens(k);
        while (true) {
            for (std::size_t i = 0; i < k; ++i) gens[i] = &s[idx[i]];
            sp.for_each_span_point(gens, [&](std::uint64_t p) {
                if (!covered[p]) {
                    covered[p] = 1;
                    ++count;
                }
            });
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (count == sp.size()) {
            rep.smallest_rho = rho;
            break;
        }
        record_failures(rho);
    }
    return rep;
}

}  // namespace covercraft
