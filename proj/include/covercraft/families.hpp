#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "covercraft/codes.hpp"
#include "covercraft/tables.hpp"

namespace covercraft {

// c * b^(1/k) with c rational and b a positive integer. Every leading
// coefficient and density in the catalog has this shape.
struct Surd {
    Rational c{0};
    BigInt b{1};
    unsigned k = 1;

    static Surd of(Rational x) { return Surd{std::move(x), 1, 1}; }
    static Surd root(BigInt base, unsigned k, Rational c = 1);

    Surd pow(unsigned e) const;
    Surd operator*(const Rational& x) const;
    int compare(const Rational& x) const;  // sign of (this - x)
    int compare(const Surd& o) const;
    double to_double() const;
    // nearest multiple of 10^-decimals, ties rounded up; exact
    Rational round_to(unsigned decimals) const;
    std::string str() const;
};

// Fixed-point decimal rendering of a rational, e.g. "1.389".
std::string decimal(const Rational& x, unsigned decimals);

// a^R (q-1)^R / (R! q^R)
Surd asymptotic_density(const Surd& a, int R, std::uint64_t q);

enum class FamilyKind {
    HammingSum,        // R Hamming codes in direct sum
    R2EvenQ3,
    R2EvenOval,
    R2EvenOvalGap,     // the r = 8, 12 lengths quoted alongside
    R2EvenSmallQ,      // q = 4, 5, 9
    R2EvenSmallQGap,
    R2OddQ3,
    R2OddQ4,
    R2OddQ5,
    R2OddSquare,       // q = q'^2 >= 16
    R2OddFourth,       // q = q'^4
    R2OddShortSeed,    // any seed of length < q, here the stored lbar_q(3,2)
    R2OddSixth,        // q = q'^6, q' prime <= 73
    R2OddTable,
    R3Codim6,
    R3Triple,
    R3TripleGap9,
    R3OneQ3,
    R3OneTable,
    R3OneCube,
    R3TwoQ3,
    R3TwoTable,
    R3TwoCube,
    RCodim2R,          // r = 2R, q >= 4
    RMultipleGeneral,  // r = Rt, q >= 7, q != 9
    RMultipleQ59,
    RPlusOnePower,     // r = Rt+1, q = q'^R
    RPlusGammaPower,   // r = Rt+gamma, q = q'^R
    EvenHalfSquare,    // R even, r = Rt + R/2
    EvenHalfFourth,
    EvenHalfSixth,
    ThirdCube,         // 3 | R, r = Rt + R/3
    TwoThirdCube,      // 3 | R, r = Rt + 2R/3
    SplitPlusS,        // R = sR', r = Rt + s
    SplitPlusSGamma,   // R = sR', r = Rt + s*gamma
};

struct FamilyDescriptor {
    FamilyKind kind;
    std::string id;
    int R = 2;
    int gamma = 0;      // r = gamma (mod R) along the family
    int sub_gamma = 0;  // gamma of the building block for the power families
    int Rp = 0;         // R' for the split families
    bool infinite = true;
    std::string q_domain;
    std::string r_domain;
    std::string origin;  // how the codes arise
};

// Stored tables plus an optional override for lbar_q(r, 2); lengths of R = 2
// codes not in any table fall back to the best catalog family.
class FamilyContext {
public:
    explicit FamilyContext(const TableStore& t) : tables_(&t) {}
    using Lookup = std::function<std::optional<BigInt>(std::uint64_t q, unsigned r)>;
    void set_r2_override(Lookup f) { r2_override_ = std::move(f); }

    std::optional<BigInt> ell(std::uint64_t q, unsigned r, unsigned R) const;
    bool in_q3(std::uint64_t q) const { return tables_->lists_distance("III", q, 3); }
    bool table_i_has_d3(std::uint64_t q) const { return tables_->lists_distance("I", q, 3); }
    const TableStore& tables() const { return *tables_; }

private:
    const TableStore* tables_;
    Lookup r2_override_;
};

struct FamilyLength {
    BigInt length;     // lower end
    BigInt width = 0;  // unresolved w terms: the length lies in [length, length + width]
};

// Every descriptor for covering radius R (parametrised ones instantiated).
std::vector<FamilyDescriptor> catalog(int R);
std::vector<FamilyDescriptor> list_families(int R, std::uint64_t q, const FamilyContext& ctx);
const FamilyDescriptor& find_family(const std::string& id, int R);

bool admits_q(const FamilyDescriptor& d, std::uint64_t q, const FamilyContext& ctx);
// empty when (q, r) lies in the family's domain, else the reason
std::optional<std::string> domain_error(const FamilyDescriptor& d, std::uint64_t q, unsigned r,
                                        const FamilyContext& ctx);
unsigned r_min(const FamilyDescriptor& d, std::uint64_t q, const FamilyContext& ctx);
FamilyLength family_length(const FamilyDescriptor& d, std::uint64_t q, unsigned r, const FamilyContext& ctx);

// n ~ a q^((r-R)/R): the main coefficient, and the one that also keeps the
// lower terms growing at the same rate
Surd leading_coefficient(const FamilyDescriptor& d, std::uint64_t q, const FamilyContext& ctx);
Surd effective_coefficient(const FamilyDescriptor& d, std::uint64_t q, const FamilyContext& ctx);

struct DensityBound {
    Surd value;
    bool stated = false;  // closed form given with the family; otherwise the asymptotic density
};
DensityBound family_density_bound(const FamilyDescriptor& d, std::uint64_t q, const FamilyContext& ctx);

struct OpenProblemReport {
    int R = 0;
    std::uint64_t q = 0;
    bool covered = false;
    std::vector<std::vector<std::string>> by_gamma;  // family ids per residue
};
OpenProblemReport open_problem_one_check(int R, std::uint64_t q, const FamilyContext& ctx);

struct CrossCheckReport {
    std::string id;
    std::uint64_t q = 0;
    unsigned r = 0;
    BigInt formula;
    std::optional<BigInt> constructed;
    std::optional<bool> radius_ok;  // set when the radius was computed
    std::string status;             // MATCH, MISMATCH, NOT_CONSTRUCTIBLE
    std::string detail;
};
CrossCheckReport cross_check_family(const FamilyDescriptor& d, std::uint64_t q, const FamilyContext& ctx,
                                    bool verify = true);

struct TableVCell {
    std::uint64_t q = 0;
    unsigned r = 0;
    BigInt value;
    std::string source;
    std::optional<BigInt> stored;
    bool matches() const { return stored && *stored == value; }
};
// Minimum over the R = 2 families, doubling / CP1, Hamming direct sums and the
// stored literature values that no construction here produces.
std::vector<TableVCell> reproduce_table_v(const TableStore& t, const std::vector<std::uint64_t>& qs, unsigned rmax);
// cells of Table V taken as given (codes from the literature)
bool table_v_base_cell(std::uint64_t q, unsigned r);

struct TableVICell {
    std::uint64_t q = 0;
    int gamma = 0;
    Surd density;
    std::string family;
    std::string rounded;  // 3 decimals
    std::string stored;
    bool matches() const { return rounded == stored; }
};
std::vector<TableVICell> reproduce_table_vi(const TableStore& t);

}  // namespace covercraft
