#include "covercraft/concat.hpp"

#include <algorithm>

namespace covercraft {

Matrix hamming_pcm(unsigned m, const Field& f, std::uint64_t cap) {
    if (m < 1) throw Error(ErrorKind::DimensionMismatch, "m must be >= 1");
    auto pts = pg_points(int(m) - 1, f, cap);
    Matrix W(f, m, pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j) W.set_column(j, pts[j]);
    return W;
}

Matrix sigma_matrix(unsigned R2, unsigned m, const Field& f) {
    if (R2 < 1) throw Error(ErrorKind::DimensionMismatch, "need at least one block");
    return block_diag(std::vector<Matrix>(R2, hamming_pcm(m, f)));
}

Code direct_sum(const std::vector<Code>& parts) {
    if (parts.empty()) throw Error(ErrorKind::DomainViolation, "direct sum of nothing");
    std::vector<Matrix> hs;
    for (const auto& c : parts) {
        if (c.field() != parts[0].field()) throw Error(ErrorKind::FieldMismatch, "parts over different fields");
        hs.push_back(c.H());
    }
    return Code(block_diag(hs));
}

Partition dependent_triple_partition(const Code& c) {
    const std::size_t n = c.n();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                if (rank(c.H().select_columns({i, j, k})) > 2) continue;
                Partition p;
                for (std::size_t x = 0; x < n; ++x) {
                    if (x == j) continue;
                    if (x == i) p.subsets.push_back({i, j});
                    else p.subsets.push_back({x});
                }
                return p;
            }
    throw Error(ErrorKind::DomainViolation, "no three dependent columns");
}

Code doubling(const Code& c, std::uint64_t cap) {
    if (c.field().q() != 3) throw Error(ErrorKind::WrongField, "doubling is defined over GF(3)");
    if (covering_radius(c, cap) != 2) throw Error(ErrorKind::DomainViolation, "doubling needs a radius 2 code");
    const std::size_t n = c.n(), r = c.r();
    Matrix H(c.field(), r + 1, 2 * n);
    for (std::size_t j = 0; j < n; ++j) H.at(0, n + j) = 1;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            H.at(i + 1, j) = c.H().at(i, j);
            H.at(i + 1, n + j) = c.H().at(i, j);
        }
    return Code(std::move(H));
}

std::string qm_name(QmVariant v) { return "QM" + std::to_string(int(v)); }

QmVariant qm_from_int(int i) {
    if (i < 1 || i > 8) throw Error(ErrorKind::DomainViolation, "variant must be 1..8");
    return QmVariant(i);
}

IndicatorAssignment assign_indicators(const Partition& part, std::size_t n0, std::uint64_t qm, bool with_zero,
                                      bool with_star, bool csi) {
    part.validate(n0);
    std::vector<Indicator> universe;
    for (std::uint64_t x = with_zero ? 0 : 1; x < qm; ++x) universe.push_back({false, Elem(x)});
    if (with_star) universe.push_back({true, 0});
    if (universe.size() < part.size()) throw Error(ErrorKind::UniverseTooSmall, "fewer indicators than subsets");
    if (csi && n0 < universe.size()) throw Error(ErrorKind::CsiInfeasible, "fewer columns than indicators");

    std::vector<const std::vector<std::size_t>*> order;
    for (const auto& s : part.subsets) order.push_back(&s);
    std::sort(order.begin(), order.end(), [](auto* a, auto* b) {
        return *std::min_element(a->begin(), a->end()) < *std::min_element(b->begin(), b->end());
    });
    IndicatorAssignment out(n0);
    std::size_t next = 0;
    for (auto* s : order) {
        for (auto j : *s) out[j] = universe[next];
        ++next;
    }
    if (csi) {
        for (auto* s : order) {
            auto cols = *s;
            std::sort(cols.begin(), cols.end());
            for (std::size_t k = 1; k < cols.size() && next < universe.size(); ++k) out[cols[k]] = universe[next++];
        }
    }
    return out;
}

namespace {

struct Rules {
    int min_R = 2, exact_R = 0;
    bool ell_zero = false, ell_mid = false, ell_full = false;
    bool with_zero = true, with_star = false, csi = false;
    int p0_slack = 0;          // bound is q^m + slack >= p0
    int n0_slack = -1000;      // if set: n0 >= q^m + slack
    bool need_aux = false;
};

Rules rules(QmVariant v) {
    Rules r;
    switch (v) {
        case QmVariant::QM1: r.ell_zero = true; r.with_star = true; r.p0_slack = 1; break;
        case QmVariant::QM2: r.ell_mid = true; r.p0_slack = 0; break;
        case QmVariant::QM3: r.ell_full = true; r.with_star = true; r.p0_slack = 1; break;
        case QmVariant::QM4: r.ell_zero = true; r.with_zero = false; r.p0_slack = -1; r.need_aux = true; break;
        case QmVariant::QM5: r.ell_zero = true; r.csi = true; r.p0_slack = 0; r.n0_slack = 0; break;
        case QmVariant::QM6: r.min_R = 3; r.ell_zero = true; r.with_star = true; r.csi = true; r.p0_slack = 1; r.n0_slack = 1; break;
        case QmVariant::QM7: r.exact_R = 3; r.ell_zero = true; r.with_star = true; r.csi = true; r.p0_slack = 1; r.n0_slack = 1; break;
        case QmVariant::QM8: r.exact_R = 4; r.ell_zero = true; r.csi = true; r.p0_slack = 0; r.n0_slack = 0; r.need_aux = true; break;
    }
    return r;
}

[[noreturn]] void violated(QmVariant v, const std::string& what) {
    throw Error(ErrorKind::ConstraintViolated, qm_name(v) + ": " + what);
}

Matrix zeros(const Field& f, std::size_t rows, std::size_t cols) { return Matrix(f, rows, cols); }

}  // namespace

std::size_t qm_length(QmVariant variant, std::size_t n0, int R, int ell0, unsigned m, std::uint64_t q,
                      std::size_t aux_cols) {
    std::uint64_t qm = 1;
    for (unsigned i = 0; i < m; ++i) qm *= q;
    const std::size_t th = theta(m, q);
    const std::size_t base = qm * n0;
    switch (variant) {
        case QmVariant::QM1: return base + std::size_t(R) * th;
        case QmVariant::QM2: return base + std::size_t(R - ell0) * th;
        case QmVariant::QM3: return base;
        case QmVariant::QM4: return base + std::size_t(R / 2) * th + aux_cols;
        case QmVariant::QM5:
        case QmVariant::QM6: return base + std::size_t(R - 1) * th;
        case QmVariant::QM7: return base + th;
        case QmVariant::QM8: return base + aux_cols + th;
    }
    return 0;
}

QmResult qm_construct(QmVariant variant, const Code& v0, const Partition& part, int R, int ell0, unsigned m,
                      const std::optional<Matrix>& aux, bool verify, std::uint64_t cap) {
    const Field& F = v0.field();
    const std::uint64_t q = F.q();
    const std::size_t n0 = v0.n(), r0 = v0.r();
    const std::size_t p0 = part.size();
    const Rules ru = rules(variant);
    if (m < 1) violated(variant, "m must be >= 1");
    std::uint64_t qm = 1;
    for (unsigned i = 0; i < m; ++i) qm *= q;

    if (R < ru.min_R) violated(variant, "R too small");
    if (ru.exact_R && R != ru.exact_R) violated(variant, "needs R = " + std::to_string(ru.exact_R));
    if (ru.ell_zero && ell0 != 0) violated(variant, "needs ell0 = 0");
    if (ru.ell_mid && !(ell0 >= 1 && ell0 < R)) violated(variant, "needs 1 <= ell0 < R");
    if (ru.ell_full && ell0 != R) violated(variant, "needs ell0 = R");
    if (std::int64_t(qm) + ru.p0_slack < std::int64_t(p0)) violated(variant, "too many partition subsets for q^m");
    if (ru.n0_slack > -1000 && std::int64_t(n0) < std::int64_t(qm) + ru.n0_slack)
        violated(variant, "starting code too short for a complete indicator set");
    if (variant == QmVariant::QM7 && F.p() != 2) violated(variant, "needs q a power of 2");
    if (variant == QmVariant::QM8 && (qm - 1) % 3 == 0) violated(variant, "3 divides q^m - 1");
    const unsigned aux_R = variant == QmVariant::QM4 ? unsigned((R + 1) / 2) : 2u;
    if (ru.need_aux) {
        if (!aux) throw Error(ErrorKind::AuxMissing, qm_name(variant) + " needs the A block");
        if (aux->field() != F || aux->rows() != aux_R * m)
            violated(variant, "A block must have " + std::to_string(aux_R * m) + " rows over the same field");
    }
    if (!verify_partition(v0, part, R, ell0)) throw Error(ErrorKind::InvalidPartition, "not an (R,ell0)-partition");

    const auto ind = assign_indicators(part, n0, qm, ru.with_zero, ru.with_star, ru.csi);
    Field K = Field::extend(F, m);
    auto coords = [&](Elem x, std::vector<Elem>& col, std::size_t at) {
        for (unsigned i = 0; i < m; ++i) {
            col[at + i] = Elem(x % q);
            x = Elem(x / q);
        }
    };
    // xi order: 0, 1, then the rest by encoding
    std::vector<Elem> xi;
    for (std::uint64_t x = 0; x < qm; ++x) xi.push_back(Elem(x));

    const std::size_t rows = r0 + std::size_t(R) * m;
    std::vector<Matrix> blocks;
    switch (variant) {
        case QmVariant::QM1:
            blocks.push_back(vstack({zeros(F, r0, R * theta(m, q)), sigma_matrix(unsigned(R), m, F)}));
            break;
        case QmVariant::QM2:
            blocks.push_back(vstack({zeros(F, r0 + ell0 * m, (R - ell0) * theta(m, q)),
                                     sigma_matrix(unsigned(R - ell0), m, F)}));
            break;
        case QmVariant::QM3: break;
        case QmVariant::QM4: {
            const unsigned lo = unsigned(R / 2);
            std::vector<Matrix> parts{zeros(F, r0, lo * theta(m, q) + aux->cols())};
            parts.push_back(block_diag({sigma_matrix(lo, m, F), *aux}));
            blocks.push_back(vstack(parts));
            break;
        }
        case QmVariant::QM5:
        case QmVariant::QM6:
            blocks.push_back(vstack({zeros(F, r0 + m, (R - 1) * theta(m, q)), sigma_matrix(unsigned(R - 1), m, F)}));
            break;
        case QmVariant::QM7:
            blocks.push_back(vstack({zeros(F, r0 + m, theta(m, q)), hamming_pcm(m, F), zeros(F, m, theta(m, q))}));
            break;
        case QmVariant::QM8:
            blocks.push_back(vstack({zeros(F, r0 + m, aux->cols() + theta(m, q)), block_diag({*aux, hamming_pcm(m, F)})}));
            break;
    }
    Matrix B(F, rows, n0 * qm);
    std::vector<Elem> col(rows);
    std::size_t c = 0;
    for (std::size_t j = 0; j < n0; ++j) {
        const auto h = v0.H().column(j);
        for (Elem x : xi) {
            std::fill(col.begin(), col.end(), 0);
            std::copy(h.begin(), h.end(), col.begin());
            if (ind[j].star) {
                coords(x, col, r0 + (R - 1) * m);
            } else {
                Elem pw = 1;  // beta^k
                for (int k = 0; k < R; ++k) {
                    coords(K.mul(pw, x), col, r0 + k * m);
                    pw = K.mul(pw, ind[j].value);
                }
            }
            B.set_column(c++, col);
        }
    }
    blocks.push_back(std::move(B));
    QmResult res{Code(hstack(blocks)), ind, 0, R, false, std::nullopt};
    res.formula_length = qm_length(variant, n0, R, ell0, m, q, aux ? aux->cols() : 0);
    if (verify) {
        long double size = 1;
        for (std::size_t i = 0; i < rows; ++i) size *= (long double)q;
        if (size <= (long double)cap) {
            res.radius = covering_radius(res.code, cap);
            res.verified = *res.radius == R;
        }
    }
    return res;
}

BigInt qm_length_bound(unsigned r0, unsigned R, unsigned m, std::uint64_t q, const EllTable& table) {
    auto L = table(r0, R);
    if (!L) throw Error(ErrorKind::MissingTableEntry, "no length for r0=" + std::to_string(r0));
    const BigInt qm = boost::multiprecision::pow(BigInt(q), m);
    const BigInt th = (qm - 1) / (q - 1);
    std::optional<BigInt> best;
    if (qm + 1 >= *L) best = qm * *L + R * th;
    if (qm > *L) {
        const unsigned hi = (R + 1) / 2;
        auto A = table(hi * m, hi);
        if (A) {
            BigInt v = qm * *L + (R / 2) * th + *A;
            if (!best || v < *best) best = v;
        } else if (!best) {
            throw Error(ErrorKind::MissingTableEntry, "no length for the auxiliary code");
        }
    }
    if (!best) throw Error(ErrorKind::DomainViolation, "q^m too small for both branches");
    return *best;
}

}  // namespace covercraft
