#pragma once

// Exact rational linear algebra: sparse row-major matrices and subspaces
// held in reduced row echelon form.
//
// Vectors are rows. A matrix acts on column vectors, so the image of a
// subspace spanned by rows v under m is spanned by the rows (m v)^T.

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wwrel {

using Rational = mpq_class;

// "p/q", or "p" when q = 1.
std::string format_rational(const Rational& value);

// Accepts "p", "-p", "p/q" with q != 0; the result is canonicalized.
// Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

struct Entry {
  std::size_t col;
  Rational value;

  friend bool operator==(const Entry&, const Entry&) = default;
};

// Nonzero entries sorted by strictly increasing column.
using SparseRow = std::vector<Entry>;

class Matrix {
 public:
  Matrix() = default;
  // Zero matrix.
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);
  // Rows must be sorted, in range, and free of explicit zeros.
  static Matrix from_rows(std::size_t cols, std::vector<SparseRow> rows);
  // All rows must have length cols.
  static Matrix from_dense(std::size_t cols,
                           const std::vector<std::vector<Rational>>& rows);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  Rational at(std::size_t r, std::size_t c) const;
  const SparseRow& row(std::size_t r) const { return rows_[r]; }
  std::span<const SparseRow> row_data() const { return rows_; }
  std::size_t nonzeros() const;
  bool is_zero() const;

  std::vector<std::vector<Rational>> to_dense() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<SparseRow> rows_;
};

Matrix transpose(const Matrix& m);
Matrix multiply(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& top, const Matrix& bottom);
// Column j of m becomes column new_index[j] of a matrix with new_cols
// columns. new_index must be injective.
Matrix remap_columns(const Matrix& m, std::size_t new_cols,
                     std::span<const std::size_t> new_index);
// Keeps the listed columns, in the listed order.
Matrix select_columns(const Matrix& m, std::span<const std::size_t> columns);

// Unique reduced row echelon form, zero rows dropped.
Matrix rref(const Matrix& m);
std::size_t rank(const Matrix& m);

// A subspace of Q^n stored by its canonical basis: reduced row echelon
// form, no zero rows, strictly increasing pivots. Equal subspaces have
// identical representations.
class Subspace {
 public:
  Subspace() = default;

  static Subspace span(const Matrix& generators);
  static Subspace zero(std::size_t ambient_dim);
  static Subspace full(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  bool contains(const SparseRow& vector) const;

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  explicit Subspace(Matrix canonical) : basis_(std::move(canonical)) {}

  Matrix basis_;
};

// {x : m x = 0}, a subspace of Q^{m.cols}.
Subspace kernel(const Matrix& m);
// Throws DomainError on ambient-dimension mismatch.
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);
Subspace apply_map(const Matrix& m, const Subspace& s);

// Sparse dot product of two rows.
Rational dot(const SparseRow& a, const SparseRow& b);

}  // namespace wwrel
