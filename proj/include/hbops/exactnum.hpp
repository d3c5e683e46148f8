#pragma once

// Exact rational scalars, vectors and dense matrices.
//
// Scalars are GMP rationals (mpq_class), which are kept in canonical form by
// every arithmetic operator. Vectors are plain std::vector so that they
// compose with the standard algorithms; matrices are dense and row-major.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hbops {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Parses "p/q", "p", "-p/q" (and decimal literals such as "0.25").
/// The result is canonicalized; a zero denominator is a ParseError.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form, or "p" when the denominator is one.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// Exact binary value of a finite double.
Rational from_double(double x);

/// Nearest fraction with denominator at most max_den (continued fractions).
Rational approximate(double x, long max_den);

// ---- vectors -------------------------------------------------------------

RationalVector zeros(std::size_t n);
RationalVector unit_vector(std::size_t n, std::size_t i);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);
RationalVector add(std::span<const Rational> a, std::span<const Rational> b);
RationalVector sub(std::span<const Rational> a, std::span<const Rational> b);
RationalVector scaled(std::span<const Rational> a, const Rational& s);
RationalVector negated(std::span<const Rational> a);
/// a += s * b
void axpy(RationalVector& a, const Rational& s, std::span<const Rational> b);

bool is_zero(std::span<const Rational> a);
std::vector<double> to_doubles(std::span<const Rational> a);

/// Lexicographic comparison; the canonical order for vertex and facet lists.
bool lex_less(const RationalVector& a, const RationalVector& b);

/// Sorts lexicographically and removes duplicates.
void canonicalize(std::vector<RationalVector>& vs);

std::string to_string(std::span<const Rational> v);

// ---- matrices ------------------------------------------------------------

class RationalMatrix {
  public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);
    RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static RationalMatrix from_rows(const std::vector<RationalVector>& rows, std::size_t cols);
    static RationalMatrix from_rows(const std::vector<RationalVector>& rows);
    static RationalMatrix from_columns(const std::vector<RationalVector>& cols, std::size_t rows);
    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Rational> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }
    RationalVector row_vector(std::size_t i) const;
    RationalVector column(std::size_t j) const;
    std::vector<RationalVector> row_list() const;

    RationalMatrix transpose() const;
    RationalVector apply(std::span<const Rational> v) const;
    RationalMatrix operator*(const RationalMatrix& other) const;
    RationalMatrix scaled(const Rational& s) const;

    bool operator==(const RationalMatrix& other) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

// ---- linear algebra ------------------------------------------------------

/// Exact rank, by fraction-free (Bareiss) elimination on an integer-scaled
/// copy. Pivots are the first nonzero entry in column order.
std::size_t rank(const RationalMatrix& m);
std::size_t rank(const std::vector<RationalVector>& rows, std::size_t cols);

struct RowEchelon {
    RationalMatrix reduced;            // reduced row echelon form
    std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

RowEchelon rref(const RationalMatrix& m);

/// cols - rank(m) vectors spanning ker m, one per free column.
std::vector<RationalVector> kernel_basis(const RationalMatrix& m);

/// Inverse of a square matrix; DomainError when singular.
RationalMatrix inverse(const RationalMatrix& m);

/// Solves m x = b for square nonsingular m.
RationalVector solve(const RationalMatrix& m, std::span<const Rational> b);

/// Extends `given` = {x0*, x1*, ..., xm*} to a basis of the dual coordinate
/// space. Completion vectors are e_j - e_j(x0) x0* for j in index order,
/// kept when independent of what has been accepted so far, so every added
/// functional vanishes at x0.
std::vector<RationalVector> complete_basis_annihilating(
    std::span<const Rational> x0, const std::vector<RationalVector>& given);

/// For a basis of functionals f_0..f_r returns vectors v_0..v_r with
/// f_i(v_j) = delta_ij (columns of the inverse of the functional matrix).
std::vector<RationalVector> biorthogonal_vectors(const std::vector<RationalVector>& functional_basis);

} // namespace hbops
