#include "covercraft/gf.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace covercraft {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::NonPrime: return "NonPrime";
        case ErrorKind::DegreeZero: return "DegreeZero";
        case ErrorKind::CapExceeded: return "CapExceeded";
        case ErrorKind::DivByZero: return "DivByZero";
        case ErrorKind::FieldMismatch: return "FieldMismatch";
        case ErrorKind::NotSubfieldOrder: return "NotSubfieldOrder";
        case ErrorKind::NotExtension: return "NotExtension";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::RankDeficient: return "RankDeficient";
        case ErrorKind::SamePoint: return "SamePoint";
        case ErrorKind::EmptySet: return "EmptySet";
        case ErrorKind::InvalidPartition: return "InvalidPartition";
        case ErrorKind::ConstraintViolated: return "ConstraintViolated";
        case ErrorKind::AuxMissing: return "AuxMissing";
        case ErrorKind::UniverseTooSmall: return "UniverseTooSmall";
        case ErrorKind::CsiInfeasible: return "CsiInfeasible";
        case ErrorKind::MissingTableEntry: return "MissingTableEntry";
        case ErrorKind::DomainViolation: return "DomainViolation";
        case ErrorKind::NonIntegralResult: return "NonIntegralResult";
        case ErrorKind::NotStrongBlocking: return "NotStrongBlocking";
        case ErrorKind::SearchExhausted: return "SearchExhausted";
        case ErrorKind::NoSuitableC: return "NoSuitableC";
        case ErrorKind::NoWitnessK: return "NoWitnessK";
        case ErrorKind::NoWitness: return "NoWitness";
        case ErrorKind::WrongField: return "WrongField";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::NotConstructible: return "NotConstructible";
        case ErrorKind::Parse: return "Parse";
    }
    return "Unknown";
}

namespace {
constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;
constexpr std::uint64_t kAddTableLimit = 256;
}  // namespace

struct Field::Impl {
    std::uint32_t p = 0;
    std::uint32_t degree = 1;  // over GF(p)
    std::uint32_t m = 1;       // over base
    std::uint64_t q = 0;
    std::uint64_t qb = 0;      // order of the base (p for a prime field)
    std::shared_ptr<const Impl> base;
    std::vector<Elem> modulus;
    std::vector<Elem> exp_t;
    std::vector<std::uint32_t> log_t;
    std::vector<Elem> add_t;
    Elem prim = 0;
    std::string name;
};

namespace {

using Impl = Field::Impl;

Elem digit_add(const Impl& F, Elem a, Elem b) {
    if (F.p == 2) return a ^ b;
    if (!F.add_t.empty()) return F.add_t[a * F.q + b];
    Elem r = 0, mult = 1;
    while (a || b) {
        r += ((a % F.p + b % F.p) % F.p) * mult;
        a /= F.p;
        b /= F.p;
        mult *= F.p;
    }
    return r;
}

Elem digit_neg(const Impl& F, Elem a) {
    if (F.p == 2) return a;
    Elem r = 0, mult = 1;
    while (a) {
        r += ((F.p - a % F.p) % F.p) * mult;
        a /= F.p;
        mult *= F.p;
    }
    return r;
}

Elem slow_mul(const Impl& F, Elem a, Elem b);

Elem fmul(const Impl& F, Elem a, Elem b) {
    if (a == 0 || b == 0) return 0;
    if (!F.log_t.empty()) {
        std::uint64_t s = std::uint64_t(F.log_t[a]) + F.log_t[b];
        if (s >= F.q - 1) s -= F.q - 1;
        return F.exp_t[s];
    }
    return slow_mul(F, a, b);
}

Elem slow_mul(const Impl& F, Elem a, Elem b) {
    if (!F.base) return Elem((std::uint64_t(a) * b) % F.p);
    const Impl& B = *F.base;
    const std::uint32_t m = F.m;
    std::vector<Elem> x(m), y(m), prod(2 * m - 1, 0);
    for (std::uint32_t i = 0; i < m; ++i) {
        x[i] = Elem(a % F.qb);
        a /= F.qb;
        y[i] = Elem(b % F.qb);
        b /= F.qb;
    }
    for (std::uint32_t i = 0; i < m; ++i) {
        if (!x[i]) continue;
        for (std::uint32_t j = 0; j < m; ++j)
            prod[i + j] = digit_add(B, prod[i + j], fmul(B, x[i], y[j]));
    }
    for (std::size_t k = prod.size(); k-- > m;) {
        Elem c = prod[k];
        if (!c) continue;
        for (std::uint32_t j = 0; j < m; ++j)
            prod[k - m + j] = digit_add(B, prod[k - m + j], digit_neg(B, fmul(B, c, F.modulus[j])));
        prod[k] = 0;
    }
    Elem r = 0;
    for (std::uint32_t i = m; i-- > 0;) r = Elem(r * F.qb + prod[i]);
    return r;
}

Elem fpow(const Impl& F, Elem a, std::uint64_t e) {
    Elem r = 1;
    while (e) {
        if (e & 1) r = fmul(F, r, a);
        a = fmul(F, a, a);
        e >>= 1;
    }
    return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Polynomials over a field, low degree first, trimmed.
using Poly = std::vector<Elem>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(const Impl& B, Poly a, const Poly& f) {
    trim(a);
    const std::size_t df = f.size() - 1;
    const Elem lead_inv = fpow(B, f.back(), B.q - 2);
    while (a.size() >= f.size()) {
        Elem c = fmul(B, a.back(), lead_inv);
        std::size_t shift = a.size() - 1 - df;
        for (std::size_t j = 0; j <= df; ++j)
            a[shift + j] = digit_add(B, a[shift + j], digit_neg(B, fmul(B, c, f[j])));
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Impl& B, const Poly& a, const Poly& b, const Poly& f) {
    if (a.empty() || b.empty()) return {};
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = digit_add(B, prod[i + j], fmul(B, a[i], b[j]));
    }
    return poly_mod(B, std::move(prod), f);
}

Poly poly_powmod(const Impl& B, Poly a, std::uint64_t e, const Poly& f) {
    Poly r{1};
    a = poly_mod(B, a, f);
    while (e) {
        if (e & 1) r = poly_mulmod(B, r, a, f);
        a = poly_mulmod(B, a, a, f);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(const Impl& B, Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(B, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Ben-Or: f (monic, degree m) is irreducible iff gcd(f, x^{Q^i} - x) = 1
// for every i <= m/2.
bool irreducible(const Impl& B, const Poly& f) {
    const std::size_t m = f.size() - 1;
    if (m <= 1) return m == 1;
    Poly h{0, 1};
    for (std::size_t i = 1; i <= m / 2; ++i) {
        h = poly_powmod(B, h, B.q, f);
        Poly g = h;
        if (g.size() < 2) g.resize(2, 0);
        g[1] = digit_add(B, g[1], digit_neg(B, 1));
        trim(g);
        Poly d = poly_gcd(B, f, g);
        if (d.size() > 1) return false;
    }
    return true;
}

void build_tables(Impl& F) {
    if (F.p != 2 && F.q <= kAddTableLimit && F.base) {
        F.add_t.resize(F.q * F.q);
        for (Elem a = 0; a < F.q; ++a)
            for (Elem b = 0; b < F.q; ++b) {
                Elem r = 0, mult = 1, x = a, y = b;
                while (x || y) {
                    r += ((x % F.p + y % F.p) % F.p) * mult;
                    x /= F.p;
                    y /= F.p;
                    mult *= F.p;
                }
                F.add_t[a * F.q + b] = r;
            }
    }
    // smallest primitive element, found with the slow multiply
    auto factors = prime_factors(F.q - 1);
    auto slow_pow = [&](Elem a, std::uint64_t e) {
        Elem r = 1;
        while (e) {
            if (e & 1) r = slow_mul(F, r, a);
            a = slow_mul(F, a, a);
            e >>= 1;
        }
        return r;
    };
    for (Elem g = 1; g < F.q; ++g) {
        bool ok = true;
        for (auto f : factors)
            if (slow_pow(g, (F.q - 1) / f) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            F.prim = g;
            break;
        }
    }
    if (F.q == 2) F.prim = 1;
    if (F.q > kTableLimit) return;
    F.exp_t.assign(F.q - 1, 0);
    F.log_t.assign(F.q, 0);
    Elem x = 1;
    for (std::uint64_t i = 0; i + 1 < F.q; ++i) {
        F.exp_t[i] = x;
        F.log_t[x] = std::uint32_t(i);
        x = slow_mul(F, x, F.prim);
    }
}

std::mutex g_cache_mu;
std::map<std::string, std::shared_ptr<const Impl>> g_cache;

std::string modulus_name(const Poly& f) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i];
    os << "]";
    return os.str();
}

std::shared_ptr<const Impl> make_prime(std::uint32_t p) {
    std::string key = "GF(" + std::to_string(p) + ")";
    std::lock_guard<std::mutex> lk(g_cache_mu);
    if (auto it = g_cache.find(key); it != g_cache.end()) return it->second;
    auto F = std::make_shared<Impl>();
    F->p = p;
    F->q = p;
    F->qb = p;
    F->degree = 1;
    F->m = 1;
    F->modulus = {0, 1};
    F->name = key;
    build_tables(*F);
    g_cache[key] = F;
    return F;
}

std::shared_ptr<const Impl> make_extension(std::shared_ptr<const Impl> B, std::uint32_t m, std::uint64_t cap) {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        q *= B->q;
        if (q > cap) throw Error(ErrorKind::CapExceeded, "field order exceeds cap");
    }
    std::string prefix = B->name + "^" + std::to_string(m);
    {
        std::lock_guard<std::mutex> lk(g_cache_mu);
        if (auto it = g_cache.find(prefix); it != g_cache.end()) return it->second;
    }
    const std::uint64_t Q = B->q;
    Poly f(m + 1, 0);
    f[m] = 1;
    std::uint64_t total = q;
    bool found = false;
    for (std::uint64_t N = 0; N < total && !found; ++N) {
        // c0 is the most significant digit of N
        std::uint64_t t = N;
        for (std::uint32_t i = m; i-- > 0;) {
            f[i] = Elem(t % Q);
            t /= Q;
        }
        if (f[0] == 0) continue;
        if (irreducible(*B, f)) found = true;
    }
    if (!found) throw Error(ErrorKind::SearchExhausted, "no irreducible polynomial");
    auto F = std::make_shared<Impl>();
    F->p = B->p;
    F->degree = B->degree * m;
    F->m = m;
    F->q = q;
    F->qb = Q;
    F->base = B;
    F->modulus = f;
    F->name = prefix;
    build_tables(*F);
    std::lock_guard<std::mutex> lk(g_cache_mu);
    g_cache[prefix] = F;
    return F;
}

}  // namespace

bool is_prime_number(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Field Field::create(std::uint32_t p, std::uint32_t m, std::uint64_t cap) {
    if (!is_prime_number(p)) throw Error(ErrorKind::NonPrime, std::to_string(p) + " is not prime");
    if (m == 0) throw Error(ErrorKind::DegreeZero, "extension degree must be >= 1");
    if (p > cap) throw Error(ErrorKind::CapExceeded, "field order exceeds cap");
    auto P = make_prime(p);
    if (m == 1) return Field(P);
    return Field(make_extension(P, m, cap));
}

Field Field::extend(const Field& base, std::uint32_t m, std::uint64_t cap) {
    if (m == 0) throw Error(ErrorKind::DegreeZero, "extension degree must be >= 1");
    if (m == 1) return base;
    return Field(make_extension(base.impl_, m, cap));
}

std::uint32_t Field::p() const { return impl_->p; }
std::uint32_t Field::degree() const { return impl_->degree; }
std::uint32_t Field::ext_degree() const { return impl_->m; }
std::uint64_t Field::q() const { return impl_->q; }
bool Field::is_prime() const { return !impl_->base; }
std::optional<Field> Field::base() const {
    if (!impl_->base) return std::nullopt;
    return Field(impl_->base);
}
const std::vector<Elem>& Field::modulus() const { return impl_->modulus; }

Field field_of_order(std::uint64_t q) {
    if (q < 2) throw Error(ErrorKind::NonPrime, std::to_string(q) + " is not a prime power");
    std::uint64_t p = 2;
    while (q % p) ++p;
    std::uint32_t e = 0;
    for (std::uint64_t x = q; x > 1; x /= p) {
        if (x % p) throw Error(ErrorKind::NonPrime, std::to_string(q) + " is not a prime power");
        ++e;
    }
    return Field::create(std::uint32_t(p), e);
}

std::string Field::describe() const {
    std::ostringstream os;
    os << "GF(" << impl_->q << ")";
    if (impl_->base) os << " over GF(" << impl_->qb << ") mod " << modulus_name(impl_->modulus);
    return os.str();
}

Elem Field::add(Elem a, Elem b) const {
    if (!impl_->base) {
        Elem s = a + b;
        return s >= impl_->p ? s - impl_->p : s;
    }
    return digit_add(*impl_, a, b);
}
Elem Field::neg(Elem a) const {
    if (!impl_->base) return a ? impl_->p - a : 0;
    return digit_neg(*impl_, a);
}
Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }
Elem Field::mul(Elem a, Elem b) const { return fmul(*impl_, a, b); }
Elem Field::inv(Elem a) const {
    if (a == 0) throw Error(ErrorKind::DivByZero, "inverse of zero");
    if (!impl_->log_t.empty()) {
        std::uint32_t l = impl_->log_t[a];
        return impl_->exp_t[l == 0 ? 0 : impl_->q - 1 - l];
    }
    return fpow(*impl_, a, impl_->q - 2);
}
Elem Field::div(Elem a, Elem b) const {
    if (b == 0) throw Error(ErrorKind::DivByZero, "division by zero");
    return mul(a, inv(b));
}
Elem Field::pow(Elem a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    if (!impl_->log_t.empty()) {
        std::uint64_t l = (std::uint64_t(impl_->log_t[a]) * (e % (impl_->q - 1))) % (impl_->q - 1);
        return impl_->exp_t[l];
    }
    return fpow(*impl_, a, e);
}
Elem Field::primitive() const { return impl_->prim; }
std::uint64_t Field::log(Elem a) const {
    if (a == 0) throw Error(ErrorKind::DivByZero, "log of zero");
    if (!impl_->log_t.empty()) return impl_->log_t[a];
    Elem x = 1;
    for (std::uint64_t i = 0; i + 1 < impl_->q; ++i) {
        if (x == a) return i;
        x = mul(x, impl_->prim);
    }
    throw Error(ErrorKind::SearchExhausted, "discrete log failed");
}
Elem Field::exp(std::uint64_t k) const {
    k %= (impl_->q - 1);
    if (!impl_->exp_t.empty()) return impl_->exp_t[k];
    return fpow(*impl_, impl_->prim, k);
}
bool Field::is_square(Elem a) const {
    if (a == 0 || impl_->p == 2) return true;
    return log(a) % 2 == 0;
}

Elem Field::frobenius(Elem x, std::uint64_t s) const {
    std::uint64_t t = s;
    std::uint32_t k = 0;
    while (t > 1 && t % impl_->p == 0) {
        t /= impl_->p;
        ++k;
    }
    if (t != 1 || k == 0 || impl_->degree % k != 0)
        throw Error(ErrorKind::NotSubfieldOrder, std::to_string(s) + " is not a subfield order of GF(" +
                                                     std::to_string(impl_->q) + ")");
    return pow(x, s);
}

Elem frobenius(const Field& f, Elem x, std::uint64_t s) { return f.frobenius(x, s); }

bool Field::operator==(const Field& o) const {
    if (impl_ == o.impl_) return true;
    const Impl* a = impl_.get();
    const Impl* b = o.impl_.get();
    while (a && b) {
        if (a->q != b->q || a->modulus != b->modulus) return false;
        a = a->base.get();
        b = b->base.get();
    }
    return a == b;
}

Embedding::Embedding(const Field& src, const Field& dst) : src_(src), dst_(dst) {
    if (src.p() != dst.p() || dst.degree() % src.degree() != 0)
        throw Error(ErrorKind::NotExtension, src.describe() + " does not embed in " + dst.describe());
    const std::uint64_t qs = src.q();
    table_.assign(qs, 0);
    if (src.is_prime()) {
        for (Elem x = 0; x < qs; ++x) table_[x] = x;
        return;
    }
    auto eval_roots = [&](const std::vector<Elem>& f) {
        // f has prime-field coefficients, which encode identically in dst
        for (Elem y = 0; y < dst.q(); ++y) {
            Elem v = 0;
            for (std::size_t i = f.size(); i-- > 0;) v = dst.add(dst.mul(v, y), f[i]);
            if (v == 0) return y;
        }
        throw Error(ErrorKind::NotExtension, "no root of the generator polynomial");
    };
    if (src.base() && src.base()->is_prime()) {
        const Elem alpha = eval_roots(src.modulus());
        const std::uint32_t p = src.p();
        for (Elem x = 0; x < qs; ++x) {
            Elem v = 0, t = x;
            std::vector<Elem> digits;
            while (t) {
                digits.push_back(t % p);
                t /= p;
            }
            for (std::size_t i = digits.size(); i-- > 0;) v = dst.add(dst.mul(v, alpha), digits[i]);
            table_[x] = v;
        }
        return;
    }
    // Tower source: minimal polynomial of the primitive element over GF(p).
    const Elem g = src.primitive();
    std::vector<Elem> conj;
    Elem c = g;
    do {
        conj.push_back(c);
        c = src.pow(c, src.p());
    } while (c != g);
    std::vector<Elem> mp{1};
    for (Elem r : conj) {
        std::vector<Elem> next(mp.size() + 1, 0);
        for (std::size_t i = 0; i < mp.size(); ++i) {
            next[i + 1] = src.add(next[i + 1], mp[i]);
            next[i] = src.sub(next[i], src.mul(mp[i], r));
        }
        mp = std::move(next);
    }
    for (Elem coef : mp)
        if (coef >= src.p()) throw Error(ErrorKind::NotExtension, "minimal polynomial not over the prime field");
    const Elem beta = eval_roots(mp);
    Elem x = 1, y = 1;
    for (std::uint64_t k = 0; k + 1 < qs; ++k) {
        table_[x] = y;
        x = src.mul(x, g);
        y = dst.mul(y, beta);
    }
}

Elem subfield_embed(const Field& src, const Field& dst, Elem x) {
    if (x >= src.q()) throw Error(ErrorKind::FieldMismatch, "element outside source field");
    return Embedding(src, dst)(x);
}

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : f_(std::move(f)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : f_(std::move(f)), rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows * cols) throw Error(ErrorKind::DimensionMismatch, "entry count != rows*cols");
    for (Elem e : a_)
        if (e >= f_.q()) throw Error(ErrorKind::FieldMismatch, "entry outside field");
}

Matrix Matrix::identity(Field f, std::size_t n) {
    Matrix m(std::move(f), n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

std::vector<Elem> Matrix::column(std::size_t j) const {
    std::vector<Elem> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

void Matrix::set_column(std::size_t j, const std::vector<Elem>& c) {
    if (c.size() != rows_) throw Error(ErrorKind::DimensionMismatch, "column length");
    for (std::size_t i = 0; i < rows_; ++i) at(i, j) = c[i];
}

Matrix Matrix::transpose() const {
    Matrix t(f_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& idx) const {
    Matrix s(f_, rows_, idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k)
        for (std::size_t i = 0; i < rows_; ++i) s.at(i, k) = at(i, idx[k]);
    return s;
}

bool Matrix::operator==(const Matrix& o) const {
    return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Matrix hstack(const std::vector<Matrix>& parts) {
    if (parts.empty()) throw Error(ErrorKind::DimensionMismatch, "hstack of nothing");
    std::size_t rows = parts[0].rows(), cols = 0;
    for (auto& p : parts) {
        if (p.rows() != rows) throw Error(ErrorKind::DimensionMismatch, "hstack row mismatch");
        if (p.field() != parts[0].field()) throw Error(ErrorKind::FieldMismatch, "hstack field mismatch");
        cols += p.cols();
    }
    Matrix out(parts[0].field(), rows, cols);
    std::size_t off = 0;
    for (auto& p : parts) {
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < p.cols(); ++j) out.at(i, off + j) = p.at(i, j);
        off += p.cols();
    }
    return out;
}

Matrix vstack(const std::vector<Matrix>& parts) {
    if (parts.empty()) throw Error(ErrorKind::DimensionMismatch, "vstack of nothing");
    std::size_t cols = parts[0].cols(), rows = 0;
    for (auto& p : parts) {
        if (p.cols() != cols) throw Error(ErrorKind::DimensionMismatch, "vstack column mismatch");
        if (p.field() != parts[0].field()) throw Error(ErrorKind::FieldMismatch, "vstack field mismatch");
        rows += p.rows();
    }
    Matrix out(parts[0].field(), rows, cols);
    std::size_t off = 0;
    for (auto& p : parts) {
        for (std::size_t i = 0; i < p.rows(); ++i)
            for (std::size_t j = 0; j < cols; ++j) out.at(off + i, j) = p.at(i, j);
        off += p.rows();
    }
    return out;
}

Matrix block_diag(const std::vector<Matrix>& parts) {
    if (parts.empty()) throw Error(ErrorKind::DimensionMismatch, "block_diag of nothing");
    std::size_t rows = 0, cols = 0;
    for (auto& p : parts) {
        if (p.field() != parts[0].field()) throw Error(ErrorKind::FieldMismatch, "block_diag field mismatch");
        rows += p.rows();
        cols += p.cols();
    }
    Matrix out(parts[0].field(), rows, cols);
    std::size_t r0 = 0, c0 = 0;
    for (auto& p : parts) {
        for (std::size_t i = 0; i < p.rows(); ++i)
            for (std::size_t j = 0; j < p.cols(); ++j) out.at(r0 + i, c0 + j) = p.at(i, j);
        r0 += p.rows();
        c0 += p.cols();
    }
    return out;
}

std::vector<std::size_t> rref(Matrix& m) {
    const Field& F = m.field();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t piv = row;
        while (piv < m.rows() && m.at(piv, col) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(row, j));
        Elem inv = F.inv(m.at(row, col));
        for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) = F.mul(m.at(row, j), inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            Elem f = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(const Matrix& m) {
    Matrix t = m;
    return rref(t).size();
}

std::optional<std::vector<Elem>> solve_membership(const Matrix& m, const std::vector<Elem>& v) {
    if (v.size() != m.rows()) throw Error(ErrorKind::DimensionMismatch, "vector length != rows");
    Matrix aug(m.field(), m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = v[i];
    }
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
    std::vector<Elem> x(m.cols(), 0);
    for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = aug.at(k, m.cols());
    return x;
}

std::vector<std::vector<Elem>> null_space(const Matrix& m) {
    Matrix t = m;
    auto piv = rref(t);
    const Field& F = m.field();
    std::vector<bool> is_piv(m.cols(), false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::vector<Elem>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_piv[f]) continue;
        std::vector<Elem> x(m.cols(), 0);
        x[f] = 1;
        for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = F.neg(t.at(k, f));
        basis.push_back(std::move(x));
    }
    return basis;
}

}  // namespace covercraft
