#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "covercraft/codes.hpp"

namespace covercraft {

// m x theta(m,q) matrix whose columns are the points of PG(m-1,q).
Matrix hamming_pcm(unsigned m, const Field& f, std::uint64_t cap = kDefaultPointCap);
// R2 copies of W_m on the diagonal.
Matrix sigma_matrix(unsigned R2, unsigned m, const Field& f);

// Two of three linearly dependent columns share a subset, every other column
// is alone: a (2,0)-partition of a radius-2 code with n-1 subsets.
Partition dependent_triple_partition(const Code& c);

Code direct_sum(const std::vector<Code>& parts);
// [0 1; H H] over GF(3); the input must have radius 2.
Code doubling(const Code& c, std::uint64_t cap = kDefaultSyndromeCap);

enum class QmVariant { QM1 = 1, QM2, QM3, QM4, QM5, QM6, QM7, QM8 };
std::string qm_name(QmVariant v);
QmVariant qm_from_int(int i);

// An element of F_{q^m} or the extra symbol *.
struct Indicator {
    bool star = false;
    Elem value = 0;
    bool operator==(const Indicator& o) const { return star == o.star && (star || value == o.value); }
};
using IndicatorAssignment = std::vector<Indicator>;  // one per column of H_0

// Universe F_{q^m} (optionally without 0) in encoding order, then * if
// allowed. Subsets, ordered by smallest column, take universe elements in
// order. With csi every universe element must be used, so leftovers go to
// further columns inside the subsets.
IndicatorAssignment assign_indicators(const Partition& part, std::size_t n0, std::uint64_t qm, bool with_zero,
                                      bool with_star, bool csi);

struct QmResult {
    Code code;
    IndicatorAssignment indicators;
    std::size_t formula_length = 0;
    int R = 0;
    bool verified = false;  // radius computed exhaustively and equal to R
    std::optional<int> radius;
};

// Columns of the concatenated code; `aux` is the A block for QM4 / QM8.
QmResult qm_construct(QmVariant variant, const Code& v0, const Partition& part, int R, int ell0, unsigned m,
                      const std::optional<Matrix>& aux = std::nullopt, bool verify = true,
                      std::uint64_t cap = kDefaultSyndromeCap);

std::size_t qm_length(QmVariant variant, std::size_t n0, int R, int ell0, unsigned m, std::uint64_t q,
                      std::size_t aux_cols = 0);

// Upper bound on l_q(r0+Rm, R) from the two branches, whichever apply.
// table(r, R) returns a known length or nullopt.
using EllTable = std::function<std::optional<BigInt>(unsigned, unsigned)>;
BigInt qm_length_bound(unsigned r0, unsigned R, unsigned m, std::uint64_t q, const EllTable& table);

}  // namespace covercraft
