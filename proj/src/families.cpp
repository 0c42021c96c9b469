#include "covercraft/families.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <map>

#include "covercraft/blocking.hpp"
#include "covercraft/concat.hpp"

namespace covercraft {

namespace bmp = boost::multiprecision;

namespace {

BigInt ipow(const BigInt& b, unsigned e) { return bmp::pow(b, e); }

Rational rpow(const Rational& b, unsigned e) {
    Rational out = 1;
    for (unsigned i = 0; i < e; ++i) out *= b;
    return out;
}

// q^e for any integer e
Rational qp(std::uint64_t q, long e) {
    if (e >= 0) return Rational(ipow(BigInt(q), unsigned(e)));
    return Rational(BigInt(1), ipow(BigInt(q), unsigned(-e)));
}

BigInt floor_of(const Rational& x) {
    BigInt n = bmp::numerator(x), d = bmp::denominator(x);
    BigInt f = n / d;
    if (n < 0 && f * d != n) f -= 1;
    return f;
}

BigInt integral(const Rational& x, const std::string& where) {
    if (bmp::denominator(x) != 1) throw Error(ErrorKind::NonIntegralResult, where + " gives " + bmp::numerator(x).str() + "/" + bmp::denominator(x).str());
    return bmp::numerator(x);
}

BigInt theta_big(std::uint64_t q, long k) {
    if (k <= 0) return 0;
    return (ipow(BigInt(q), unsigned(k)) - 1) / (q - 1);
}

bool prime_power(std::uint64_t q, std::uint64_t* p = nullptr) {
    if (q < 2) return false;
    std::uint64_t x = q, f = 0;
    for (std::uint64_t d = 2; d * d <= x; ++d)
        if (x % d == 0) {
            f = d;
            break;
        }
    if (!f) f = x;
    while (x % f == 0) x /= f;
    if (p) *p = f;
    return x == 1;
}

bool is_prime(std::uint64_t x) {
    std::uint64_t p;
    return prime_power(x, &p) && p == x;
}

std::optional<std::uint64_t> exact_root(std::uint64_t q, unsigned k) {
    if (k == 1) return q;
    auto g = std::uint64_t(std::llround(std::pow(double(q), 1.0 / k)));
    for (std::uint64_t c = (g > 2 ? g - 2 : 1); c <= g + 2; ++c) {
        BigInt v = ipow(BigInt(c), k);
        if (v == q) return c;
    }
    return std::nullopt;
}

std::uint64_t must_root(std::uint64_t q, unsigned k) {
    auto r = exact_root(q, k);
    if (!r) throw Error(ErrorKind::DomainViolation, "q is not a perfect power of the required order");
    return *r;
}

int ceil3(int R) { return (R + 2) / 3; }

int g2_of(int R) {
    switch (R % 3) {
        case 0: return 0;
        case 2: return 1;
        default: return 2;
    }
}

BigInt factorial(unsigned n) {
    BigInt f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

// (q'-1)(R(R+1)/2 - 2) + R + 5
BigInt n_one(int R, std::uint64_t qp1) { return BigInt(qp1 - 1) * (R * (R + 1) / 2 - 2) + R + 5; }

// sum_{i=1}^{gamma+1} (q'-1)^(i-1) C(R+gamma, i)
BigInt n_gamma(int R, int gamma, std::uint64_t qp1) {
    BigInt s = 0;
    for (int i = 1; i <= gamma + 1; ++i) s += ipow(BigInt(qp1 - 1), unsigned(i - 1)) * BigInt(binomial(std::uint64_t(R + gamma), std::uint64_t(i)));
    return s;
}

// smallest t >= 2 with q^(t-1) >= n
unsigned t_zero(std::uint64_t q, const BigInt& n) {
    unsigned t = 2;
    while (ipow(BigInt(q), t - 1) < n) ++t;
    return t;
}

FamilyDescriptor fd(FamilyKind k, std::string id, int R, int gamma, std::string qd, std::string rd,
                    std::string origin, bool infinite = true) {
    FamilyDescriptor d{k, std::move(id), R, gamma, 0, 0, infinite, std::move(qd), std::move(rd), std::move(origin)};
    return d;
}

}  // namespace

// ---------------------------------------------------------------- Surd

Surd Surd::root(BigInt base, unsigned k, Rational c) {
    if (k == 0 || base < 1) throw Error(ErrorKind::DomainViolation, "bad surd");
    Surd s{std::move(c), std::move(base), k};
    if (s.k > 1 && s.b < BigInt(std::numeric_limits<std::uint64_t>::max())) {
        auto r = exact_root(s.b.convert_to<std::uint64_t>(), s.k);
        if (r) {
            s.c *= *r;
            s.b = 1;
            s.k = 1;
        }
    }
    if (s.b == 1) s.k = 1;
    return s;
}

Surd Surd::pow(unsigned e) const {
    Rational c2 = rpow(c, e);
    const unsigned whole = e / k, rem = e % k;
    c2 *= Rational(ipow(b, whole));
    return Surd::root(ipow(b, rem), k, c2);
}

Surd Surd::operator*(const Rational& x) const { return Surd{c * x, b, k}; }

int Surd::compare(const Rational& x) const {
    const int s1 = c > 0 ? 1 : (c < 0 ? -1 : 0);
    const int s2 = x > 0 ? 1 : (x < 0 ? -1 : 0);
    if (s1 != s2) return s1 > s2 ? 1 : -1;
    if (s1 == 0) return 0;
    const Rational lhs = rpow(c < 0 ? Rational(-c) : c, k) * Rational(b);
    const Rational rhs = rpow(x < 0 ? Rational(-x) : x, k);
    const int mag = lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
    return s1 > 0 ? mag : -mag;
}

int Surd::compare(const Surd& o) const {
    if (b == o.b && k == o.k) return c > o.c ? 1 : (c < o.c ? -1 : 0);
    const int s1 = c > 0 ? 1 : (c < 0 ? -1 : 0);
    const int s2 = o.c > 0 ? 1 : (o.c < 0 ? -1 : 0);
    if (s1 != s2) return s1 > s2 ? 1 : -1;
    if (s1 == 0) return 0;
    const unsigned K = k * o.k;
    const Rational lhs = rpow(c < 0 ? Rational(-c) : c, K) * Rational(ipow(b, o.k));
    const Rational rhs = rpow(o.c < 0 ? Rational(-o.c) : o.c, K) * Rational(ipow(o.b, k));
    const int mag = lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
    return s1 > 0 ? mag : -mag;
}

double Surd::to_double() const { return c.convert_to<double>() * std::pow(b.convert_to<double>(), 1.0 / k); }

Rational Surd::round_to(unsigned decimals) const {
    const BigInt scale = ipow(BigInt(10), decimals);
    // largest m with (2m-1)/(2*scale) <= value
    auto m = BigInt(std::llround(to_double() * scale.convert_to<double>()));
    auto ok = [&](const BigInt& mm) { return compare(Rational(2 * mm - 1, 2 * scale)) >= 0; };
    while (!ok(m)) --m;
    while (ok(m + 1)) ++m;
    return Rational(m, scale);
}

std::string Surd::str() const {
    std::string s = bmp::numerator(c).str();
    if (bmp::denominator(c) != 1) s += "/" + bmp::denominator(c).str();
    if (k > 1) s += "*" + b.str() + "^(1/" + std::to_string(k) + ")";
    return s;
}

std::string decimal(const Rational& x, unsigned decimals) {
    const BigInt scale = ipow(BigInt(10), decimals);
    const bool neg = x < 0;
    BigInt m = floor_of((neg ? Rational(-x) : x) * scale + Rational(1, 2));
    std::string digits = m.str();
    while (digits.size() <= decimals) digits = "0" + digits;
    std::string out = digits.substr(0, digits.size() - decimals);
    if (decimals) out += "." + digits.substr(digits.size() - decimals);
    return (neg && m != 0 ? "-" : "") + out;
}

Surd asymptotic_density(const Surd& a, int R, std::uint64_t q) {
    if (R < 1) throw Error(ErrorKind::DomainViolation, "R must be >= 1");
    const Rational f(ipow(BigInt(q - 1), unsigned(R)), factorial(unsigned(R)) * ipow(BigInt(q), unsigned(R)));
    return a.pow(unsigned(R)) * f;
}

// ---------------------------------------------------------------- catalog

std::vector<FamilyDescriptor> catalog(int R) {
    using K = FamilyKind;
    std::vector<FamilyDescriptor> out;
    if (R >= 1)
        out.push_back(fd(K::HammingSum, "hamming-sum", R, 0, "any q", "r = R i, i >= 1", "direct sum of R Hamming codes"));
    if (R == 2) {
        out.push_back(fd(K::R2EvenQ3, "r2-even-q3", 2, 0, "q = 3", "r even >= 4, r != 8", "doubling of literature codes"));
        out.push_back(fd(K::R2EvenOval, "r2-even-oval", 2, 0, "q >= 7, q != 9", "r even >= 4, r != 8, 12",
                         "concatenation of oval-plus-line codes"));
        out.push_back(fd(K::R2EvenOvalGap, "r2-even-oval-gap", 2, 0, "q >= 7, q != 9", "r in {8, 12}",
                         "literature codes", false));
        out.push_back(fd(K::R2EvenSmallQ, "r2-even-small-q", 2, 0, "q in {4, 5, 9}",
                         "r even >= 4; r != 8,12,14,20 (q = 4), r != 8,12 (q = 5, 9)", "concatenation"));
        out.push_back(fd(K::R2EvenSmallQGap, "r2-even-small-q-gap", 2, 0, "q in {4, 5, 9}", "r in {8, 12}",
                         "literature codes", false));
        out.push_back(fd(K::R2OddQ3, "r2-odd-q3", 2, 1, "q = 3", "r odd >= 5, r != 7", "literature codes"));
        out.push_back(fd(K::R2OddQ4, "r2-odd-q4", 2, 1, "q = 4", "r odd >= 5, r != 7,11,13,19", "literature codes"));
        out.push_back(fd(K::R2OddQ5, "r2-odd-q5", 2, 1, "q = 5", "r odd >= 7, r != 9", "literature codes"));
        out.push_back(fd(K::R2OddSquare, "r2-odd-square", 2, 1, "q = q'^2 >= 16", "r odd >= 3",
                         "concatenation of a (3 sqrt q - 1)-set"));
        out.push_back(fd(K::R2OddFourth, "r2-odd-fourth", 2, 1, "q = q'^4", "r odd >= 3",
                         "concatenation of two disjoint Baer subplanes"));
        out.push_back(fd(K::R2OddShortSeed, "r2-odd-short-seed", 2, 1, "q >= 7, stored lbar_q(3,2) < q",
                         "r odd >= 3", "concatenation of a short [n,n-3]2 seed"));
        out.push_back(fd(K::R2OddSixth, "r2-odd-sixth", 2, 1, "q = q'^6, q' prime <= 73", "r odd >= 3, r != 9, 13",
                         "concatenation of the cubic blocking pair"));
        out.push_back(fd(K::R2OddTable, "r2-odd-table", 2, 1, "7 <= q <= 1217 with a stored lbar_q(3,2)",
                         "r odd >= 3, r != 9, 13", "concatenation of tabulated saturating sets"));
    }
    if (R == 3) {
        out.push_back(fd(K::R3Codim6, "r3-codim6", 3, 0, "q >= 4", "r = 6", "two ovals plus line", false));
        out.push_back(fd(K::R3Triple, "r3-triple", 3, 0, "q >= 5", "r = 3t >= 6, r != 9", "concatenation"));
        out.push_back(fd(K::R3TripleGap9, "r3-triple-gap9", 3, 0, "q in {5,7,8,9,11,13,16,17,19} or q >= 23",
                         "r = 9", "concatenation or direct sums", false));
        out.push_back(fd(K::R3OneQ3, "r3-one-q3", 3, 1, "q = 3", "r = 3t+1 >= 7, r != 10", "direct sums"));
        out.push_back(fd(K::R3OneTable, "r3-one-table", 3, 1, "7 <= q <= 563 with a stored lbar_q(4,3)",
                         "r = 3t+1 >= 4", "QM2 / QM4 on tabulated codes"));
        out.push_back(fd(K::R3OneCube, "r3-one-cube", 3, 1, "q = q'^3 >= 64", "r = 3t+1 >= 7",
                         "QM3 on four skew lines"));
        out.push_back(fd(K::R3TwoQ3, "r3-two-q3", 3, 2, "q = 3", "r = 3t+2 >= 8, r != 11", "direct sums"));
        out.push_back(fd(K::R3TwoTable, "r3-two-table", 3, 2, "3 <= q <= 43 with a stored lbar_q(5,3)",
                         "r = 3t+2 >= 5, r != 8", "QM2 / QM4 on tabulated codes"));
        out.push_back(fd(K::R3TwoCube, "r3-two-cube", 3, 2, "q = q'^3 >= 27", "r = 3t+2 >= 8",
                         "QM3 on nine planes"));
    }
    if (R >= 4) {
        out.push_back(fd(FamilyKind::RCodim2R, "rR-codim2R", R, 0, "q >= 4", "r = 2R",
                         "direct sum of oval-plus-line and two-ovals-plus-line codes", false));
        out.push_back(fd(K::RMultipleGeneral, "rR-multiple", R, 0, "q >= 7, q != 9", "r = Rt >= 5R, r != 6R",
                         "direct sums of R = 2 and R = 3 families"));
        out.push_back(fd(K::RMultipleQ59, "rR-multiple-q59", R, 0, "q in {5, 9}", "r = Rt >= 2R, r != 3R,4R,6R",
                         "direct sums of R = 2 and R = 3 families"));
        out.push_back(fd(K::RPlusOnePower, "rR-plus-one-power", R, 1, "q = q'^R",
                         "r = Rt+1, t = 1 or t >= t0", "QM2 / QM3 on the cone chain"));
        for (int g = 2; g <= R - 1; ++g) {
            auto d = fd(K::RPlusGammaPower, "rR-plus-gamma-power-g" + std::to_string(g), R, g, "q = q'^R",
                        "r = Rt+gamma, t = 1 or t >= t0", "QM2 / QM3 on the low-weight set");
            d.sub_gamma = g;
            out.push_back(d);
        }
        if (R % 2 == 0) {
            out.push_back(fd(K::EvenHalfSquare, "even-half-square", R, R / 2, "q = q'^2", "r = Rt + R/2, t >= 1",
                             "direct sum of R/2 codes of r2-odd-square"));
            out.push_back(fd(K::EvenHalfFourth, "even-half-fourth", R, R / 2, "q = q'^4", "r = Rt + R/2, t >= 1",
                             "direct sum of R/2 codes of r2-odd-fourth"));
            out.push_back(fd(K::EvenHalfSixth, "even-half-sixth", R, R / 2, "q = q'^6, q' prime <= 73",
                             "r = Rt + R/2, t >= 1, t != 4, 6", "direct sum of R/2 codes of r2-odd-sixth"));
        }
        for (int Rp = 4; Rp < R; ++Rp) {
            if (R % Rp) continue;
            const int s = R / Rp;
            auto d = fd(K::SplitPlusS, "split-plus-s-R'" + std::to_string(Rp), R, s, "q = q'^R'",
                        "r = Rt + s, t = 1 or t >= t0", "direct sum of s codes of rR-plus-one-power");
            d.Rp = Rp;
            out.push_back(d);
            for (int g = 2; g <= Rp - 1; ++g) {
                auto e = fd(K::SplitPlusSGamma,
                            "split-plus-s-gamma-R'" + std::to_string(Rp) + "-g" + std::to_string(g), R, s * g,
                            "q = q'^R'", "r = Rt + s gamma, t = 1 or t >= t0",
                            "direct sum of s codes of rR-plus-gamma-power");
                e.Rp = Rp;
                e.sub_gamma = g;
                out.push_back(e);
            }
        }
    }
    if (R >= 3 && R % 3 == 0) {
        out.push_back(fd(K::ThirdCube, "third-cube", R, R / 3, "q = q'^3 >= 64", "r = Rt + R/3, t >= 1",
                         "direct sum of R/3 codes of r3-one-cube"));
        out.push_back(fd(K::TwoThirdCube, "two-third-cube", R, 2 * R / 3, "q = q'^3 >= 27", "r = Rt + 2R/3, t >= 1",
                         "direct sum of R/3 codes of r3-two-cube"));
    }
    return out;
}

const FamilyDescriptor& find_family(const std::string& id, int R) {
    static std::map<int, std::vector<FamilyDescriptor>> cache;
    auto& v = cache[R];
    if (v.empty()) v = catalog(R);
    for (const auto& d : v)
        if (d.id == id) return d;
    throw Error(ErrorKind::DomainViolation, "no family '" + id + "' for R = " + std::to_string(R));
}

// ---------------------------------------------------------------- context

std::optional<BigInt> FamilyContext::ell(std::uint64_t q, unsigned r, unsigned R) const {
    if (r == 0) return BigInt(0);
    if (R == 2 && r2_override_) {
        if (auto v = r2_override_(q, r)) return v;
    }
    if (auto v = tables_->ell_bar(q, r, R)) return v;
    if (R != 2) return std::nullopt;
    std::optional<BigInt> best;
    for (const auto& d : catalog(2)) {
        if (domain_error(d, q, r, *this)) continue;
        try {
            auto n = family_length(d, q, r, *this).length;
            if (!best || n < *best) best = n;
        } catch (const Error&) {
        }
    }
    return best;
}

// ---------------------------------------------------------------- domains

bool admits_q(const FamilyDescriptor& d, std::uint64_t q, const FamilyContext& ctx) {
    if (!prime_power(q)) return false;
    using K = FamilyKind;
    switch (d.kind) {
        case K::HammingSum: return true;
        case K::R2EvenQ3:
        case K::R2OddQ3:
        case K::R3OneQ3:
        case K::R3TwoQ3: return q == 3;
        case K::R2EvenOval:
        case K::R2EvenOvalGap: return q >= 7 && q != 9;
        case K::R2EvenSmallQ:
        case K::R2EvenSmallQGap: return q == 4 || q == 5 || q == 9;
        case K::R2OddQ4: return q == 4;
        case K::R2OddQ5: return q == 5;
        case K::R2OddSquare: return exact_root(q, 2) && q >= 16;
        case K::R2OddFourth: return exact_root(q, 4).has_value();
        case K::R2OddShortSeed: {
            if (q < 7) return false;
            auto n = ctx.tables().ell_bar(q, 3, 2);
            return n && *n < q;
        }
        case K::R2OddSixth: {
            auto r = exact_root(q, 6);
            return r && is_prime(*r) && *r <= 73;
        }
        case K::R2OddTable: return q >= 7 && q <= 1217 && ctx.tables().find("I", q);
        case K::R3Codim6: return q >= 4;
        case K::R3Triple: return q >= 5;
        case K::R3TripleGap9:
            return q == 5 || q == 7 || q == 8 || q == 9 || q == 11 || q == 13 || q == 16 || q == 17 || q == 19 ||
                   q >= 23;
        case K::R3OneTable: return q >= 7 && q <= 563 && ctx.tables().find("III", q);
        case K::R3OneCube: return exact_root(q, 3) && q >= 64;
        case K::R3TwoTable: return q >= 3 && q <= 43 && ctx.tables().find("IV", q);
        case K::R3TwoCube: return exact_root(q, 3) && q >= 27;
        case K::RCodim2R: return q >= 4;
        case K::RMultipleGeneral: return q >= 7 && q != 9;
        case K::RMultipleQ59: return q == 5 || q == 9;
        case K::RPlusOnePower:
        case K::RPlusGammaPower: return exact_root(q, unsigned(d.R)).has_value();
        case K::EvenHalfSquare: return exact_root(q, 2).has_value();
        case K::EvenHalfFourth: return exact_root(q, 4).has_value();
        case K::EvenHalfSixth: {
            auto r = exact_root(q, 6);
            return r && is_prime(*r) && *r <= 73;
        }
        case K::ThirdCube: return exact_root(q, 3) && q >= 64;
        case K::TwoThirdCube: return exact_root(q, 3) && q >= 27;
        case K::SplitPlusS:
        case K::SplitPlusSGamma: return exact_root(q, unsigned(d.Rp)).has_value();
    }
    return false;
}

namespace {

bool in(unsigned r, std::initializer_list<unsigned> xs) {
    for (auto x : xs)
        if (r == x) return true;
    return false;
}

// the t of r = Rt + offset, or nullopt
std::optional<unsigned> t_of(unsigned r, int R, int offset) {
    if (int(r) < offset || (int(r) - offset) % R) return std::nullopt;
    return unsigned((int(r) - offset) / R);
}

}  // namespace

std::optional<std::string> domain_error(const FamilyDescriptor& d, std::uint64_t q, unsigned r,
                                        const FamilyContext& ctx) {
    if (!admits_q(d, q, ctx)) return "q = " + std::to_string(q) + " outside " + d.q_domain;
    using K = FamilyKind;
    const bool even = r % 2 == 0;
    bool ok = false;
    const int R = d.R;
    switch (d.kind) {
        case K::HammingSum: ok = r >= unsigned(R) && r % R == 0; break;
        case K::R2EvenQ3: ok = even && r >= 4 && r != 8; break;
        case K::R2EvenOval: ok = even && r >= 4 && !in(r, {8, 12}); break;
        case K::R2EvenOvalGap:
        case K::R2EvenSmallQGap: ok = in(r, {8, 12}); break;
        case K::R2EvenSmallQ: ok = even && r >= 4 && (q == 4 ? !in(r, {8, 12, 14, 20}) : !in(r, {8, 12})); break;
        case K::R2OddQ3: ok = !even && r >= 5 && r != 7; break;
        case K::R2OddQ4: ok = !even && r >= 5 && !in(r, {7, 11, 13, 19}); break;
        case K::R2OddQ5: ok = !even && r >= 7 && r != 9; break;
        case K::R2OddSquare:
        case K::R2OddFourth:
        case K::R2OddShortSeed: ok = !even && r >= 3; break;
        case K::R2OddSixth:
        case K::R2OddTable: ok = !even && r >= 3 && !in(r, {9, 13}); break;
        case K::R3Codim6: ok = r == 6; break;
        case K::R3Triple: ok = r % 3 == 0 && r >= 6 && r != 9; break;
        case K::R3TripleGap9: ok = r == 9; break;
        case K::R3OneQ3: ok = r % 3 == 1 && r >= 7 && r != 10; break;
        case K::R3OneTable: ok = r % 3 == 1 && r >= 4; break;
        case K::R3OneCube: ok = r % 3 == 1 && r >= 7; break;
        case K::R3TwoQ3: ok = r % 3 == 2 && r >= 8 && r != 11; break;
        case K::R3TwoTable: ok = r % 3 == 2 && r >= 5 && r != 8; break;
        case K::R3TwoCube: ok = r % 3 == 2 && r >= 8; break;
        case K::RCodim2R: ok = r == unsigned(2 * R); break;
        case K::RMultipleGeneral: ok = r % R == 0 && r >= unsigned(5 * R) && r != unsigned(6 * R); break;
        case K::RMultipleQ59: ok = r % R == 0 && r >= unsigned(2 * R) && !in(r, {unsigned(3 * R), unsigned(4 * R), unsigned(6 * R)}); break;
        case K::RPlusOnePower:
        case K::RPlusGammaPower:
        case K::SplitPlusS:
        case K::SplitPlusSGamma: {
            auto t = t_of(r, R, d.gamma);
            if (!t || *t < 1) break;
            const unsigned Rp = d.kind == K::RPlusOnePower || d.kind == K::RPlusGammaPower ? unsigned(R) : unsigned(d.Rp);
            const auto qq = must_root(q, Rp);
            const BigInt seed = (d.kind == K::RPlusOnePower || d.kind == K::SplitPlusS) ? n_one(int(Rp), qq)
                                                                                         : n_gamma(int(Rp), d.sub_gamma, qq);
            ok = *t == 1 || *t >= t_zero(q, seed);
            break;
        }
        case K::EvenHalfSquare:
        case K::EvenHalfFourth:
        case K::ThirdCube:
        case K::TwoThirdCube: {
            auto t = t_of(r, R, d.gamma);
            ok = t && *t >= 1;
            break;
        }
        case K::EvenHalfSixth: {
            auto t = t_of(r, R, d.gamma);
            ok = t && *t >= 1 && *t != 4 && *t != 6;
            break;
        }
    }
    if (!ok) return "r = " + std::to_string(r) + " outside " + d.r_domain;
    return std::nullopt;
}

unsigned r_min(const FamilyDescriptor& d, std::uint64_t q, const FamilyContext& ctx) {
    for (unsigned r = 1; r < 400; ++r)
        if (!domain_error(d, q, r, ctx)) return r;
    throw Error(ErrorKind::DomainViolation, d.id + " has no codimension for q = " + std::to_string(q));
}

// ---------------------------------------------------------------- lengths

namespace {

BigInt need(const FamilyContext& ctx, std::uint64_t q, unsigned r, unsigned R) {
    auto v = ctx.ell(q, r, R);
    if (!v) throw Error(ErrorKind::MissingTableEntry, "no lbar_" + std::to_string(q) + "(" + std::to_string(r) + "," + std::to_string(R) + ")");
    return *v;
}

Rational R_(long n, long d = 1) { return Rational(n, d); }

}  // namespace

FamilyLength family_length(const FamilyDescriptor& d, std::uint64_t q, unsigned r, const FamilyContext& ctx) {
    if (auto e = domain_error(d, q, r, ctx)) throw Error(ErrorKind::DomainViolation, d.id + ": " + *e);
    using K = FamilyKind;
    const long rl = long(r);
    const int R = d.R;
    auto P = [&](long e) { return qp(q, e); };
    auto F = [&](long e) { return Rational(floor_of(qp(q, e))); };
    Rational n = 0;
    BigInt width = 0;
    switch (d.kind) {
        case K::HammingSum: n = Rational(BigInt(R) * theta_big(q, rl / R)); break;
        case K::R2EvenQ3: {
            n = R_(5, 2) * P((rl - 2) / 2) - R_(1, 2);
            if (r % 8 == 4) n += R_(1, 2) * P(rl / 4) - R_(1, 2);
            else if (r % 8 == 0) n += R_(1, 2) * P((rl + 4) / 4) - R_(1, 2);
            break;
        }
        case K::R2EvenOval: n = 2 * P((rl - 2) / 2) + P((rl - 4) / 2); break;
        case K::R2EvenOvalGap: n = 2 * P((rl - 2) / 2) + P((rl - 4) / 2) + P((rl - 6) / 2) + P((rl - 8) / 2); break;
        case K::R2EvenSmallQ: n = 2 * P((rl - 2) / 2) + P((rl - 4) / 2) + F((rl - 6) / 2); break;
        case K::R2EvenSmallQGap:
            n = r == 8 ? 2 * P(3) + P(2) + 2 * P(1) + 2 : P(5) + Rational(theta_big(q, 6));
            break;
        case K::R2OddQ3: {
            n = R_(5, 4) * P((rl - 1) / 2) - R_(1, 4);
            if (r % 8 == 3) n += R_(3, 4) * P((rl + 1) / 4) - R_(3, 4);
            else if (r % 8 == 7) n += R_(3, 4) * P((rl + 5) / 4) - R_(3, 4);
            break;
        }
        case K::R2OddQ4: n = 2 * qp(2, rl - 2) + R_(3, 2) * qp(2, rl - 4); break;
        case K::R2OddQ5: {
            n = P((rl - 1) / 2);
            if (r % 4 == 3) n += Rational(need(ctx, 5, unsigned((rl - 1) / 2), 2));
            else if (r % 8 == 5) n += (Rational(need(ctx, 5, unsigned((rl - 1) / 4), 2)) + R_(1, 4)) * P((rl - 1) / 4) - R_(1, 4);
            else n += (Rational(need(ctx, 5, unsigned((rl - 5) / 4), 2)) + R_(1, 2)) * P((rl + 3) / 4) - R_(1, 2);
            break;
        }
        case K::R2OddSquare: {
            const auto s = must_root(q, 2);
            n = Rational(BigInt(3 * s - 1)) * qp(s, rl - 3) + F((rl - 5) / 2);
            break;
        }
        case K::R2OddFourth: {
            const auto s = must_root(q, 4);
            n = (2 + R_(2) / s + R_(2) / (s * s)) * qp(s, 2 * (rl - 2)) + F((rl - 5) / 2);
            break;
        }
        case K::R2OddShortSeed: {
            const BigInt nq = need(ctx, q, 3, 2);
            const BigInt p0 = ctx.table_i_has_d3(q) ? nq - 1 : nq;
            if (r == 9 || r == 13)
                n = Rational(nq) * P((rl - 3) / 2) + 2 * P((rl - 5) / 2) + P((rl - 7) / 2) + P((rl - 9) / 2);
            else
                n = Rational(nq) * P((rl - 3) / 2) + 2 * F((rl - 5) / 2) + (2 * p0 > q + 1 ? F((rl - 7) / 2) : Rational(0));
            break;
        }
        case K::R2OddSixth: {
            const auto s = must_root(q, 6);
            n = (2 + R_(2) / s + R_(2) / (s * s) + R_(2) / (s * s * s)) * qp(s, 3 * (rl - 2)) + 2 * F((rl - 5) / 2);
            break;
        }
        case K::R2OddTable: {
            const BigInt L = need(ctx, q, 3, 2);
            n = Rational(L) * P((rl - 3) / 2) + 2 * F((rl - 5) / 2) + (q <= 13 ? F((rl - 7) / 2) : Rational(0));
            break;
        }
        case K::R3Codim6: n = 3 * P(1) + 1; break;
        case K::R3Triple: n = 3 * P((rl - 3) / 3) + P((rl - 6) / 3); break;
        case K::R3TripleGap9:
            if (q == 16 || q >= 23) n = 3 * P(2) + P(1);
            else if (q == 5 || q == 9) n = 3 * P(2) + 2 * P(1) + 2;
            else n = 3 * P(2) + 2 * P(1) + 1;
            break;
        case K::R3OneQ3: {
            n = R_(7, 4) * P((rl - 1) / 3);
            if (r % 6 == 1) n -= R_(3, 4);
            else if (r % 12 == 4) n += R_(3, 4) * P((rl + 2) / 6) - R_(3, 2);
            else n += R_(3, 4) * P((rl + 8) / 6) - R_(3, 2);
            break;
        }
        case K::R3OneTable: {
            const long k = (rl - 4) / 3;
            const BigInt L = need(ctx, q, 4, 3);
            n = Rational(L) * P(k) + Rational(theta_big(q, k));
            n += ctx.in_q3(q) ? Rational(theta_big(q, k)) : Rational(need(ctx, q, unsigned(2 * k), 2));
            break;
        }
        case K::R3OneCube: {
            const auto s = must_root(q, 3);
            n = Rational(BigInt(4 * s + 4)) * qp(s, rl - 4);
            break;
        }
        case K::R3TwoQ3: {
            n = R_(11, 4) * P((rl - 2) / 3);
            if (r % 6 == 2) n -= R_(3, 4);
            else if (r % 12 == 5) n += R_(3, 4) * P((rl + 1) / 6) - R_(3, 2);
            else n += R_(3, 4) * P((rl + 7) / 6) - R_(3, 2);
            break;
        }
        case K::R3TwoTable: {
            const long k = (rl - 5) / 3;
            const BigInt L = need(ctx, q, 5, 3);
            n = Rational(L) * P(k) + Rational(theta_big(q, k));
            const bool special = q == 2 || q == 5 || q == 19;
            n += special ? Rational(need(ctx, q, unsigned(2 * k), 2)) : Rational(theta_big(q, k));
            break;
        }
        case K::R3TwoCube: {
            const auto s = std::int64_t(must_root(q, 3));
            n = Rational(BigInt(9 * s * s - 8 * s + 4)) * qp(std::uint64_t(s), rl - 5);
            break;
        }
        case K::RCodim2R: n = Rational(BigInt(R) * q + ceil3(R)); break;
        case K::RMultipleGeneral: {
            const long t = rl / R;
            n = R * P(t - 1) + ceil3(R) * P(t - 2);
            break;
        }
        case K::RMultipleQ59: {
            const long t = rl / R;
            // g2 copies of the q = 5, 9 radius-2 codes contribute floor(q^(t-3)) each
            n = R * P(t - 1) + ceil3(R) * P(t - 2) + g2_of(R) * F(t - 3);
            break;
        }
        case K::RPlusOnePower: {
            const auto s = must_root(q, unsigned(R));
            const long t = (rl - 1) / R;
            n = Rational(n_one(R, s)) * P(t - 1);
            if (s <= 3) width = theta_big(q, t - 1);
            break;
        }
        case K::RPlusGammaPower: {
            const auto s = must_root(q, unsigned(R));
            const long t = (rl - d.gamma) / R;
            n = Rational(n_gamma(R, d.sub_gamma, s)) * P(t - 1);
            width = BigInt(R - 3) * theta_big(q, t - 1);
            break;
        }
        case K::EvenHalfSquare: {
            const auto s = must_root(q, 2);
            const long t = (rl - R / 2) / R;
            n = R_(R, 2) * Rational(BigInt(3 * s - 1)) * P(t - 1) + R_(R, 2) * Rational(floor_of(P(t - 2) / s));
            break;
        }
        case K::EvenHalfFourth: {
            const auto s = must_root(q, 4);
            const long t = (rl - R / 2) / R;
            n = R * Rational(BigInt(s * s + s + 1)) * P(t - 1) + R_(R, 2) * Rational(floor_of(P(t - 2) / (s * s)));
            break;
        }
        case K::EvenHalfSixth: {
            const auto s = must_root(q, 6);
            const long t = (rl - R / 2) / R;
            n = R * Rational(BigInt(s * s * s + s * s + s + 1)) * P(t - 1) +
                R * Rational(floor_of(P(t - 2) / (s * s * s)));
            break;
        }
        case K::ThirdCube: {
            const auto s = must_root(q, 3);
            const long t = (rl - R / 3) / R;
            n = R_(4 * R, 3) * Rational(BigInt(s + 1)) * P(t - 1);
            break;
        }
        case K::TwoThirdCube: {
            const auto s = std::int64_t(must_root(q, 3));
            const long t = (rl - 2 * R / 3) / R;
            n = R_(R, 3) * Rational(BigInt(9 * s * s - 8 * s + 4)) * P(t - 1);
            break;
        }
        case K::SplitPlusS: {
            const auto s = must_root(q, unsigned(d.Rp));
            const int sc = R / d.Rp;
            const long t = (rl - sc) / R;
            n = sc * Rational(n_one(d.Rp, s)) * P(t - 1);
            if (s <= 3) width = BigInt(sc) * theta_big(q, t - 1);
            break;
        }
        case K::SplitPlusSGamma: {
            const auto s = must_root(q, unsigned(d.Rp));
            const int sc = R / d.Rp;
            const long t = (rl - d.gamma) / R;
            n = sc * Rational(n_gamma(d.Rp, d.sub_gamma, s)) * P(t - 1);
            width = BigInt(R - 3) * theta_big(q, t - 1);
            break;
        }
    }
    return {integral(n, d.id + " at q=" + std::to_string(q) + ", r=" + std::to_string(r)), width};
}

// ---------------------------------------------------------------- densities

namespace {

// the smallest leading coefficient among infinite R = 2, gamma = 0 families
Rational best_even_r2(std::uint64_t q, const FamilyContext& ctx) {
    std::optional<Surd> best;
    for (const auto& d : catalog(2)) {
        if (!d.infinite || d.gamma != 0 || !admits_q(d, q, ctx)) continue;
        auto a = leading_coefficient(d, q, ctx);
        if (!best || a.compare(*best) < 0) best = a;
    }
    if (!best || best->k != 1) throw Error(ErrorKind::MissingTableEntry, "no even R = 2 family for q");
    return best->c;
}

}  // namespace

Surd leading_coefficient(const FamilyDescriptor& d, std::uint64_t q, const FamilyContext& ctx) {
    if (!admits_q(d, q, ctx)) throw Error(ErrorKind::DomainViolation, d.id + ": q outside " + d.q_domain);
    using K = FamilyKind;
    const Rational Q(q);
    const int R = d.R;
    switch (d.kind) {
        case K::HammingSum: return Surd::of(Rational(R) * Q / (Q - 1));
        case K::R2EvenQ3: return Surd::of(R_(5, 2));
        case K::R2EvenOval: return Surd::of(2 + 1 / Q);
        case K::R2EvenOvalGap: return Surd::of(2 + 1 / Q + 1 / (Q * Q) + 1 / (Q * Q * Q));
        case K::R2EvenSmallQ: return Surd::of(2 + 1 / Q + 1 / (Q * Q));
        case K::R2EvenSmallQGap: return Surd::of(2 + 1 / Q + 2 / (Q * Q) + 2 / (Q * Q * Q));
        case K::R2OddQ3: return Surd::root(3, 2, R_(5, 4));
        case K::R2OddQ4: return Surd::of(R_(19, 8));
        case K::R2OddQ5: return Surd::root(5, 2);
        case K::R2OddSquare: {
            const Rational s(must_root(q, 2));
            return Surd::of(3 - 1 / s + 1 / (s * s * s));
        }
        case K::R2OddFourth: {
            const Rational s(must_root(q, 4));
            return Surd::of(2 + 2 / s + 2 / (s * s) + 1 / rpow(s, 6));
        }
        case K::R2OddShortSeed: {
            const BigInt nq = need(ctx, q, 3, 2);
            const BigInt p0 = ctx.table_i_has_d3(q) ? nq - 1 : nq;
            Rational c = Rational(nq) / Q + 2 / (Q * Q);
            if (2 * p0 > q + 1) c += 1 / (Q * Q * Q);
            return Surd::root(BigInt(q), 2, c);
        }
        case K::R2OddSixth: {
            const Rational s(must_root(q, 6));
            return Surd::of(2 + 2 / s + 2 / (s * s) + 2 / rpow(s, 3) + 2 / rpow(s, 9));
        }
        case K::R2OddTable: {
            Rational c = Rational(need(ctx, q, 3, 2)) / Q + 2 / (Q * Q);
            if (q <= 13) c += 1 / (Q * Q * Q);
            return Surd::root(BigInt(q), 2, c);
        }
        case K::R3Codim6:
        case K::R3Triple:
        case K::R3TripleGap9: return Surd::of(3 + 1 / Q);
        case K::R3OneQ3: return Surd::root(9, 3, R_(7, 4));
        case K::R3OneTable: {
            Rational c = Rational(need(ctx, q, 4, 3)) + 1 / (Q - 1);
            c += ctx.in_q3(q) ? 1 / (Q - 1) : best_even_r2(q, ctx) / Q;
            return Surd::root(BigInt(q) * q, 3, c / Q);
        }
        case K::R3OneCube: return Surd::of(4 + 4 / Rational(must_root(q, 3)));
        case K::R3TwoQ3: return Surd::root(3, 3, R_(11, 4));
        case K::R3TwoTable: {
            Rational c = Rational(need(ctx, q, 5, 3)) + 1 / (Q - 1);
            const bool special = q == 2 || q == 5 || q == 19;
            c += special ? best_even_r2(q, ctx) / Q : 1 / (Q - 1);
            return Surd::root(BigInt(q), 3, c / Q);
        }
        case K::R3TwoCube: {
            const Rational s(must_root(q, 3));
            return Surd::of(9 - 8 / s + 4 / (s * s));
        }
        case K::RCodim2R:
        case K::RMultipleGeneral: return Surd::of(R + Rational(ceil3(R)) / Q);
        case K::RMultipleQ59: return Surd::of(R + Rational(ceil3(R)) / Q + Rational(g2_of(R)) / (Q * Q));
        case K::RPlusOnePower: {
            const auto s = must_root(q, unsigned(R));
            return Surd::of(Rational(n_one(R, s)) / s);
        }
        case K::RPlusGammaPower: {
            const auto s = must_root(q, unsigned(R));
            return Surd::of(Rational(n_gamma(R, d.sub_gamma, s)) / rpow(Rational(s), unsigned(d.sub_gamma)));
        }
        case K::EvenHalfSquare: {
            const Rational s(must_root(q, 2));
            return Surd::of(R_(R, 2) * (3 - 1 / s) + R_(R, 2) / rpow(s, 4));
        }
        case K::EvenHalfFourth: {
            const Rational s(must_root(q, 4));
            return Surd::of(R * (1 + 1 / s + 1 / (s * s)) + R_(R, 2) / rpow(s, 8));
        }
        case K::EvenHalfSixth: {
            const Rational s(must_root(q, 6));
            return Surd::of(R * (1 + 1 / s + 1 / (s * s) + 1 / rpow(s, 3)) + R / rpow(s, 12));
        }
        case K::ThirdCube: return Surd::of(R_(4 * R, 3) * (1 + 1 / Rational(must_root(q, 3))));
        case K::TwoThirdCube: {
            const Rational s(must_root(q, 3));
            return Surd::of(R_(R, 3) * (9 - 8 / s + 4 / (s * s)));
        }
        case K::SplitPlusS: {
            const auto s = must_root(q, unsigned(d.Rp));
            return Surd::of(Rational(R / d.Rp) * Rational(n_one(d.Rp, s)) / s);
        }
        case K::SplitPlusSGamma: {
            const auto s = must_root(q, unsigned(d.Rp));
            return Surd::of(Rational(R / d.Rp) * Rational(n_gamma(d.Rp, d.sub_gamma, s)) /
                            rpow(Rational(s), unsigned(d.sub_gamma)));
        }
    }
    throw Error(ErrorKind::DomainViolation, "unknown family");
}

Surd effective_coefficient(const FamilyDescriptor& d, std::uint64_t q, const FamilyContext& ctx) {
    return leading_coefficient(d, q, ctx);
}

DensityBound family_density_bound(const FamilyDescriptor& d, std::uint64_t q, const FamilyContext& ctx) {
    if (!admits_q(d, q, ctx)) throw Error(ErrorKind::DomainViolation, d.id + ": q outside " + d.q_domain);
    using K = FamilyKind;
    const Rational Q(q);
    auto stated = [](Rational x) { return DensityBound{Surd::of(std::move(x)), true}; };
    switch (d.kind) {
        case K::HammingSum: return stated(Rational(bmp::pow(BigInt(d.R), unsigned(d.R)), factorial(unsigned(d.R))));
        case K::R2EvenQ3: return stated(R_(25, 18));
        case K::R2EvenOval: return stated(2 - 2 / Q - 3 / (2 * Q * Q) + 1 / rpow(Q, 3) + 1 / rpow(Q, 4));
        case K::R2EvenSmallQ: return stated(2 - 2 / Q + 1 / (2 * Q * Q) - 2 / rpow(Q, 3) + 2 / rpow(Q, 4));
        case K::R2OddQ3: return stated(R_(25, 24));
        case K::R2OddQ5: return stated(R_(8, 5));
        case K::R2OddSquare: {
            const Rational s(must_root(q, 2));
            return stated(R_(9, 2) - 3 / s - 17 / (2 * Q) + 9 / (Q * s) + 5 / (2 * Q * Q));
        }
        case K::R2OddFourth: {
            const Rational s(must_root(q, 4));
            return stated(2 + 4 / s + 6 / (s * s) + 4 / rpow(s, 3) - 2 / rpow(s, 4) - 8 / rpow(s, 5));
        }
        case K::R2OddSixth: {
            const Rational s(must_root(q, 6));
            return stated(2 + 4 / s + 6 / (s * s) + 8 / rpow(s, 3) + 6 / rpow(s, 4) + 5 / rpow(s, 5));
        }
        case K::R2OddTable: {
            const Rational L(need(ctx, q, 3, 2));
            return stated(L * L / (2 * Q));
        }
        case K::R3Triple: return stated(R_(9, 2) - 9 / Q + 3 / (2 * Q * Q) + 14 / (3 * rpow(Q, 3)) - 1 / (2 * rpow(Q, 4)));
        case K::R3OneTable: {
            const Rational L(need(ctx, q, 4, 3));
            return stated(rpow(L, 3) / (6 * Q));
        }
        case K::R3OneCube: {
            const Rational s(must_root(q, 3));
            return stated(R_(32, 3) + 32 / s + 32 / (s * s) - 64 / (3 * rpow(s, 3)));
        }
        case K::R3TwoTable: {
            const Rational L(need(ctx, q, 5, 3));
            return stated(rpow(L, 3) / (6 * Q * Q));
        }
        case K::R3TwoCube: {
            const Rational s(must_root(q, 3));
            return stated(R_(243, 2) - 324 / s + 72 / (s * s));
        }
        default: return {asymptotic_density(leading_coefficient(d, q, ctx), d.R, q), false};
    }
}

// ---------------------------------------------------------------- reports

std::vector<FamilyDescriptor> list_families(int R, std::uint64_t q, const FamilyContext& ctx) {
    std::vector<FamilyDescriptor> out;
    for (const auto& d : catalog(R))
        if (admits_q(d, q, ctx)) out.push_back(d);
    return out;
}

OpenProblemReport open_problem_one_check(int R, std::uint64_t q, const FamilyContext& ctx) {
    OpenProblemReport rep;
    rep.R = R;
    rep.q = q;
    rep.by_gamma.resize(std::size_t(std::max(R, 1)));
    for (const auto& d : list_families(R, q, ctx))
        if (d.infinite) rep.by_gamma[std::size_t(d.gamma % R)].push_back(d.id);
    rep.covered = true;
    for (const auto& g : rep.by_gamma) rep.covered = rep.covered && !g.empty();
    return rep;
}

namespace {

PointSet embed_set(const PointSet& s, const Field& big) {
    Embedding e(s.field(), big);
    std::vector<Point> pts;
    for (const auto& p : s.points()) {
        Point x;
        for (auto c : p) x.push_back(e(c));
        pts.push_back(x);
    }
    return PointSet::from_points(s.v(), big, pts);
}

}  // namespace

CrossCheckReport cross_check_family(const FamilyDescriptor& d, std::uint64_t q, const FamilyContext& ctx,
                                    bool verify) {
    using K = FamilyKind;
    CrossCheckReport rep;
    rep.id = d.id;
    rep.q = q;
    rep.r = r_min(d, q, ctx);
    rep.formula = family_length(d, q, rep.r, ctx).length;
    auto done = [&](BigInt n, std::string detail) {
        rep.constructed = n;
        rep.status = n == rep.formula && rep.radius_ok.value_or(true) ? "MATCH" : "MISMATCH";
        rep.detail = std::move(detail);
        return rep;
    };
    switch (d.kind) {
        case K::HammingSum: {
            const Field f = field_of_order(q);
            unsigned i = 1;
            while (std::pow(double(q), double(d.R) * (i + 1)) <= double(1u << 20)) ++i;
            rep.r = unsigned(d.R) * i;
            rep.formula = family_length(d, q, rep.r, ctx).length;
            Code h(hamming_pcm(i, f));
            auto c = direct_sum(std::vector<Code>(std::size_t(d.R), h));
            if (verify) rep.radius_ok = covering_radius(c) == d.R;
            return done(BigInt(c.n()), "direct sum of Hamming codes");
        }
        case K::R2EvenQ3: {
            auto arc = code_from_set(PointSet::from_points(2, Field::prime(3), {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}));
            auto c = doubling(arc);
            if (verify) rep.radius_ok = covering_radius(c) == 2;
            return done(BigInt(c.n()), "doubling of the [4,1]_3 2 code");
        }
        case K::R2OddFourth: {
            const auto s = must_root(q, 2);
            if (q > 256) break;
            auto B = baer_pair_set(s);
            if (verify) rep.radius_ok = covering_radius(code_from_set(B)) == 2;
            return done(BigInt(B.size()), "two disjoint Baer subplanes");
        }
        case K::R2OddSixth: {
            const auto p = must_root(q, 6);
            auto cp = cubic_blocking_pair(std::uint32_t(p));
            return done(BigInt(cp.set.size()), "cubic blocking pair (size only)");
        }
        case K::R3OneCube: {
            const auto s = must_root(q, 3);
            const Field small = field_of_order(s);
            const Field big = Field::extend(small, 3);
            auto lines = four_lines_set(small);
            auto seed = code_from_set(embed_set(lines.set, big));
            if (verify && q <= 64) {
                auto res = qm_construct(QmVariant::QM3, seed, Partition::trivial(seed.n()), 3, 3, 1, std::nullopt, false);
                return done(BigInt(res.code.n()), "QM3 with m = 1 on four skew lines");
            }
            return done(BigInt(qm_length(QmVariant::QM3, seed.n(), 3, 3, 1, q)), "QM3 length on four skew lines");
        }
        case K::R3TwoCube: {
            const auto s = must_root(q, 3);
            auto S = nine_planes_set(field_of_order(s));
            rep.formula = rep.formula / q;  // seed of the m = 1 step
            return done(BigInt(S.size()), "nine planes seed");
        }
        case K::RPlusOnePower: {
            const auto s = must_root(q, unsigned(d.R));
            if (s != 2 || d.R > 6) break;
            auto B = four_lines_set(Field::prime(2)).set;
            for (int v = 4; v <= d.R; ++v) B = construction_a_step(B, false);
            if (verify) rep.radius_ok = verify_strong_blocking(B, d.R).is_tfold_strong;
            return done(BigInt(B.size()), "cone chain from four lines of PG(3,2)");
        }
        case K::RPlusGammaPower: {
            const auto s = must_root(q, unsigned(d.R));
            if (s > 3) break;
            auto B = weight_set_bk(d.R + d.sub_gamma - 1, field_of_order(s), d.R - 1);
            return done(BigInt(B.size()), "low-weight set");
        }
        case K::ThirdCube: {
            const auto s = must_root(q, 3);
            if (q > 512) break;
            const Field small = field_of_order(s);
            auto seed = code_from_set(embed_set(four_lines_set(small).set, Field::extend(small, 3)));
            auto c = direct_sum(std::vector<Code>(std::size_t(d.R / 3), seed));
            return done(BigInt(c.n()), "direct sum of four-lines codes");
        }
        case K::EvenHalfFourth: {
            const auto s = must_root(q, 2);
            if (q > 256) break;
            auto seed = code_from_set(baer_pair_set(s));
            auto c = direct_sum(std::vector<Code>(std::size_t(d.R / 2), seed));
            return done(BigInt(c.n()), "direct sum of Baer pair codes");
        }
        default: break;
    }
    rep.status = "NOT_CONSTRUCTIBLE";
    rep.detail = "codes come from " + d.origin;
    return rep;
}

// ---------------------------------------------------------------- tables

bool table_v_base_cell(std::uint64_t q, unsigned r) {
    static const std::map<std::uint64_t, std::vector<unsigned>> base{
        {3, {7, 8}}, {4, {7, 11}}, {5, {5, 8, 9}}, {7, {}}};
    auto it = base.find(q);
    if (it == base.end()) return false;
    for (auto x : it->second)
        if (x == r) return true;
    return false;
}

std::vector<TableVCell> reproduce_table_v(const TableStore& t, const std::vector<std::uint64_t>& qs, unsigned rmax) {
    std::vector<TableVCell> out;
    for (auto q : qs) {
        std::map<unsigned, BigInt> memo;
        FamilyContext ctx(t);
        ctx.set_r2_override([&](std::uint64_t qq, unsigned r) -> std::optional<BigInt> {
            if (qq != q) return std::nullopt;
            auto it = memo.find(r);
            if (it == memo.end()) return std::nullopt;
            return it->second;
        });
        for (unsigned r = 2; r <= rmax; ++r) {
            std::vector<std::pair<BigInt, std::string>> cand;
            if (r == 2) cand.push_back({2, "identity"});
            if (r == 3)
                if (auto v = t.ell_bar(q, 3, 2)) cand.push_back({*v, "Table I"});
            if (table_v_base_cell(q, r))
                if (const auto* e = t.find("V", q, r)) cand.push_back({e->length(), "literature"});
            for (const auto& d : catalog(2)) {
                if (d.kind == FamilyKind::HammingSum || domain_error(d, q, r, ctx)) continue;
                try {
                    cand.push_back({family_length(d, q, r, ctx).length, d.id});
                } catch (const Error&) {
                }
            }
            if (memo.count(r - 1)) {
                const BigInt prev = memo[r - 1];
                if (q == 3) cand.push_back({2 * prev, "doubling"});
                if (q == 4) cand.push_back({3 * prev - 1, "CP1"});
                if (q == 5) cand.push_back({3 * prev, "CP1"});
            }
            for (unsigned a = 1; a < r; ++a) cand.push_back({theta_big(q, a) + theta_big(q, r - a), "Hamming sum"});
            auto best = cand.front();
            for (const auto& c : cand)
                if (c.first < best.first) best = c;
            memo[r] = best.first;
            if (r < 3) continue;
            TableVCell cell{q, r, best.first, best.second, std::nullopt};
            if (const auto* e = t.find("V", q, r)) cell.stored = e->length();
            out.push_back(cell);
        }
    }
    return out;
}

std::vector<TableVICell> reproduce_table_vi(const TableStore& t) {
    std::vector<TableVICell> out;
    FamilyContext ctx(t);
    for (const auto& e : t.rows("VI")) {
        TableVICell cell;
        cell.q = e.q;
        cell.gamma = int(e.gamma);
        cell.stored = e.value;
        std::optional<Surd> best;
        for (const auto& d : list_families(2, e.q, ctx)) {
            if (!d.infinite || d.gamma != cell.gamma) continue;
            auto dens = asymptotic_density(leading_coefficient(d, e.q, ctx), 2, e.q);
            if (!best || dens.compare(*best) < 0) {
                best = dens;
                cell.family = d.id;
            }
        }
        if (best) {
            cell.density = *best;
            cell.rounded = decimal(best->round_to(3), 3);
        }
        out.push_back(cell);
    }
    return out;
}

}  // namespace covercraft
