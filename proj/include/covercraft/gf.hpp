#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "covercraft/error.hpp"

namespace covercraft {

// Field elements are plain integers. In GF(p^m) built over GF(p) the value
// sum c_i p^i stands for sum c_i T^i. Tower extensions over GF(Q) pack
// their GF(Q) coefficients in base Q, so base-p digits always add
// independently.
using Elem = std::uint32_t;

inline constexpr std::uint64_t kDefaultFieldCap = std::uint64_t{1} << 32;

class Field {
public:
    // Lexicographically smallest monic irreducible of degree m over GF(p)
    // (coefficient vector compared from the constant term up).
    static Field create(std::uint32_t p, std::uint32_t m, std::uint64_t cap = kDefaultFieldCap);
    static Field prime(std::uint32_t p) { return create(p, 1); }
    // GF(Q^m) as a polynomial ring over `base`, same modulus rule.
    static Field extend(const Field& base, std::uint32_t m, std::uint64_t cap = kDefaultFieldCap);

    std::uint32_t p() const;
    // degree over the prime field
    std::uint32_t degree() const;
    // degree over the immediate base (== degree() unless this is a tower)
    std::uint32_t ext_degree() const;
    std::uint64_t q() const;
    bool is_prime() const;
    // null for a prime field
    std::optional<Field> base() const;
    // monic modulus over the base, low degree first
    const std::vector<Elem>& modulus() const;
    std::string describe() const;

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const;
    Elem pow(Elem a, std::uint64_t e) const;
    // a primitive element (smallest encoding)
    Elem primitive() const;
    // discrete log base primitive(); a != 0
    std::uint64_t log(Elem a) const;
    Elem exp(std::uint64_t k) const;
    bool is_square(Elem a) const;

    // x -> x^s with s = p^k, k dividing the degree
    Elem frobenius(Elem x, std::uint64_t s) const;

    bool operator==(const Field& o) const;
    bool operator!=(const Field& o) const { return !(*this == o); }

    struct Impl;

private:
    explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

bool is_prime_number(std::uint64_t n);

// GF(q) built directly over its prime field; NonPrime unless q is a prime power.
Field field_of_order(std::uint64_t q);

// Frobenius, free-function form.
Elem frobenius(const Field& f, Elem x, std::uint64_t s);

// A fixed field embedding src -> dst. If src is built directly over GF(p)
// the generator T goes to the smallest-encoded root of src's modulus in
// dst; otherwise the primitive element goes to the smallest root of its
// minimal polynomial.
class Embedding {
public:
    Embedding(const Field& src, const Field& dst);
    Elem operator()(Elem x) const { return table_.at(x); }
    const Field& src() const { return src_; }
    const Field& dst() const { return dst_; }

private:
    Field src_, dst_;
    std::vector<Elem> table_;
};

Elem subfield_embed(const Field& src, const Field& dst, Elem x);

class Matrix {
public:
    Matrix(Field f, std::size_t rows, std::size_t cols);
    Matrix(Field f, std::size_t rows, std::size_t cols, std::vector<Elem> entries);
    static Matrix identity(Field f, std::size_t n);

    const Field& field() const { return f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Elem at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    Elem& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    std::vector<Elem> column(std::size_t j) const;
    void set_column(std::size_t j, const std::vector<Elem>& c);
    const std::vector<Elem>& entries() const { return a_; }

    Matrix transpose() const;
    Matrix select_columns(const std::vector<std::size_t>& idx) const;
    bool operator==(const Matrix& o) const;

private:
    Field f_;
    std::size_t rows_, cols_;
    std::vector<Elem> a_;
};

// [A B] and block-diagonal assembly
Matrix hstack(const std::vector<Matrix>& parts);
Matrix vstack(const std::vector<Matrix>& parts);
Matrix block_diag(const std::vector<Matrix>& parts);

std::size_t rank(const Matrix& m);
// Coefficients x with M x = v, or nullopt if v is outside the column span.
std::optional<std::vector<Elem>> solve_membership(const Matrix& m, const std::vector<Elem>& v);

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m);

// Basis of {x : M x = 0}, one vector per row of the result.
std::vector<std::vector<Elem>> null_space(const Matrix& m);

}  // namespace covercraft
