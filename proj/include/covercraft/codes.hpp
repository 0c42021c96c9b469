#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "covercraft/gf.hpp"
#include "covercraft/pg.hpp"

namespace covercraft {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::uint64_t kDefaultSyndromeCap = std::uint64_t{1} << 28;

// Linear [n, n-r]_q code given by an r x n parity-check matrix.
class Code {
public:
    explicit Code(Matrix H);
    const Matrix& H() const { return H_; }
    const Field& field() const { return H_.field(); }
    std::size_t n() const { return H_.cols(); }
    std::size_t r() const { return H_.rows(); }

private:
    Matrix H_;
};

// Vectors of F_q^r packed as integers sum x_i q^i.
class SyndromeSpace {
public:
    SyndromeSpace(Field f, std::size_t r);
    std::uint64_t size() const { return size_; }
    std::size_t r() const { return r_; }
    std::uint64_t encode(const std::vector<Elem>& x) const;
    std::vector<Elem> decode(std::uint64_t s) const;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t scale(std::uint64_t a, Elem c) const;

private:
    Field f_;
    std::size_t r_;
    std::uint64_t q_, size_;
    bool xor_mode_;
    std::uint64_t chunk_ = 1;
    std::size_t chunks_ = 0;
    std::vector<std::uint16_t> table_;
};

struct Partition {
    std::vector<std::vector<std::size_t>> subsets;
    static Partition trivial(std::size_t n);
    std::size_t size() const { return subsets.size(); }
    // throws InvalidPartition unless disjoint, covering {0..n-1}, nonempty
    void validate(std::size_t n) const;
};

struct SaturationReport {
    std::optional<int> smallest_rho;  // nullopt: S does not span, never saturating
    std::optional<int> claimed;
    std::map<int, std::vector<Point>> failures;  // at most 10 uncovered points per rho
    bool matches_claim() const { return claimed && smallest_rho && *claimed == *smallest_rho; }
};

// Smallest R with every syndrome a combination of at most R columns.
int covering_radius(const Code& c, std::uint64_t cap = kDefaultSyndromeCap);
// Max distance from a vector of F_q^n to the code; q^n must be tiny.
int covering_radius_oracle(const Code& c, double max_bits = 22.0);
// nullopt when every set of columns is independent (the code is {0}).
std::optional<int> min_distance(const Code& c, std::uint64_t cap = std::uint64_t{1} << 26);

BigInt sphere_size(std::uint64_t n, std::uint64_t R, std::uint64_t q);
Rational covering_density(const Code& c, int R);
Rational covering_density(std::uint64_t n, std::uint64_t r, int R, std::uint64_t q);

// Appends delta copies of the first column.
Code extend(const Code& c, int delta);

bool verify_partition(const Code& c, const Partition& p, int R, int ell);

struct EllResult {
    Partition partition;
    int ell;
};
// Largest ell admitted by any partition; among those, the fewest subsets.
// nullopt if the radius exceeds R.
std::optional<EllResult> find_max_ell(const Code& c, int R);

Code code_from_set(const PointSet& s);
struct SetFromCode {
    PointSet set;
    std::size_t dropped = 0;  // proportional duplicate columns
};
SetFromCode set_from_code(const Code& c);

SaturationReport verify_saturating(const PointSet& s, std::optional<int> claimed = std::nullopt,
                                   std::uint64_t point_cap = kDefaultPointCap,
                                   std::uint64_t subset_cap = std::uint64_t{1} << 20);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace covercraft
