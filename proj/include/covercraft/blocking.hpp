#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "covercraft/codes.hpp"
#include "covercraft/pg.hpp"

namespace covercraft {

inline constexpr std::uint64_t kDefaultSubspaceCap = std::uint64_t{1} << 22;

// Number of k-dimensional vector subspaces of F_q^n (Gaussian binomial).
BigInt gaussian_binomial(unsigned n, unsigned k, std::uint64_t q);

// Calls fn(rows, pivots) once per k-dimensional vector subspace of F_q^{v+1},
// the rows being its reduced echelon basis.
void for_each_subspace(int v, const Field& f, int k,
                       const std::function<void(const std::vector<Point>&, const std::vector<int>&)>& fn,
                       std::uint64_t cap = kDefaultSubspaceCap);

struct BlockingReport {
    int t = 0;
    bool is_tfold_strong = false;
    bool is_tfold = false;
    std::uint64_t subspaces_checked = 0;
    // reduced echelon bases of failing subspaces, at most 10
    std::vector<std::vector<Point>> failing_subspace_witnesses;
};

// Every (t-1)-dimensional subspace spanned by t points of B?
BlockingReport verify_strong_blocking(const PointSet& B, int t, std::uint64_t cap = kDefaultSubspaceCap);

// Every subspace of projective dimension `subspace_dim` meets B in >= t points?
bool verify_tfold_blocking(const PointSet& B, int t, int subspace_dim, std::uint64_t cap = kDefaultSubspaceCap);

// Re-embeds a (rho+1)-fold strong blocking set of PG(v,q') into PG(v,q'^(rho+1)).
PointSet strong_to_saturating(const PointSet& B, int rho);

// Two disjoint Baer subplanes of PG(2,qp), qp a square.
PointSet baer_pair_set(std::uint64_t qp);

struct CubicPair {
    PointSet set;
    PointSet base;  // the 1-blocking set {(1,x,x^p)} u {(0,1,m)}
    Elem c, d, a, b;
};
// 2-fold blocking set of PG(2,p^3) from a 1-blocking set and a projectivity.
CubicPair cubic_blocking_pair(std::uint32_t p);

// Four pairwise skew lines of PG(3,q), three on the quadric x0x1 = x2x3 and
// one missing it.
struct FourLines {
    PointSet set;
    Elem k;
};
FourLines four_lines_set(const Field& f);

// One step of the cone construction from PG(v,q) to PG(v+1,q).
PointSet construction_a_step(const PointSet& B, bool verify = true);

// Points of Hamming weight at most v-k+1.
PointSet weight_set_bk(int v, const Field& f, int k);

// Union of the nine coordinate planes of PG(4,q').
PointSet nine_planes_set(const Field& f);

struct LineWitness {
    std::vector<std::size_t> points;  // indices into the line
    std::vector<Elem> coeffs;         // nonzero, sum coeffs[i]*line[points[i]] == line[target]
};
// target expressed with nonzero coefficients through u other points of the line
LineWitness line_combination_witness(const PointSet& line, std::size_t target, int u);
// u values covered by the three admissibility arguments for a line of PG(1,q)
bool line_u_admissible(std::uint64_t q, int u);

}  // namespace covercraft
