#pragma once

#include "jordan/field.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace jordan {

/// Coordinate vector over a fixed field. All entries share the field; the
/// helpers below throw std::invalid_argument on dimension or field mismatch.
using Vec = std::vector<Scalar>;

Vec zero_vec(FieldSpec f, std::size_t n);
Vec unit_vec(FieldSpec f, std::size_t n, std::size_t i);
bool is_zero_vec(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec neg(const Vec& a);
Vec scale(const Scalar& c, const Vec& v);
int lex_cmp(const Vec& a, const Vec& b);
std::string vec_to_string(const Vec& v);

/// Dense rows x cols matrix over a fixed field. Rows act on column vectors:
/// apply(x) = M x.
class Matrix {
public:
  Matrix(FieldSpec f, std::size_t rows, std::size_t cols); // zero matrix
  static Matrix identity(FieldSpec f, std::size_t n);
  static Matrix from_rows(FieldSpec f, const std::vector<Vec>& rows);
  /// Columns are the given vectors (convenient for "images of basis vectors").
  static Matrix from_columns(FieldSpec f, std::size_t rows, const std::vector<Vec>& cols);

  FieldSpec field() const { return f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;

  Vec apply(const Vec& x) const;
  Matrix mul(const Matrix& o) const;
  Matrix add(const Matrix& o) const;
  Matrix sub(const Matrix& o) const;
  Matrix scale(const Scalar& c) const;
  Matrix transpose() const;
  bool is_zero() const;

  /// Reduced row echelon form; if pivots is non-null it receives the pivot
  /// column indices in row order.
  Matrix rref(std::vector<std::size_t>* pivots = nullptr) const;
  std::size_t rank() const;
  std::optional<Matrix> inverse() const;
  bool invertible() const;

  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  int lex_cmp(const Matrix& o) const;
  std::string to_string() const; // rows separated by "; "

private:
  FieldSpec f_;
  std::size_t rows_, cols_;
  std::vector<Scalar> a_;
};

/// One exact solution of M x = b with free variables set to zero, or nullopt
/// when the system is inconsistent.
std::optional<Vec> solve_linear(const Matrix& m, const Vec& b);

/// Echelon basis of the null space, one vector per free column in ascending
/// column order, each normalized so its first nonzero coordinate is 1.
std::vector<Vec> kernel(const Matrix& m);

/// Echelon basis of the span of the given vectors (rref rows, zero rows
/// dropped). The result is a canonical form: two spans are equal iff their
/// echelon bases are equal.
std::vector<Vec> echelon_basis(FieldSpec f, std::size_t n, const std::vector<Vec>& vectors);

/// Reduces v against echelon rows (as produced by echelon_basis); the
/// remainder is zero iff v lies in the span.
Vec reduce_against(const std::vector<Vec>& echelon, const Vec& v);
bool in_span(const std::vector<Vec>& echelon, const Vec& v);

} // namespace jordan
