#ifndef MODINV_MATRIX_HPP
#define MODINV_MATRIX_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "modinv/field.hpp"

namespace modinv {

// Dense row-major matrix over a finite field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Elem> entries);

  static Matrix identity(FieldPtr field, std::size_t n);
  // Matrix whose columns are the given vectors (all of length `rows`).
  static Matrix from_columns(FieldPtr field, std::size_t rows, const std::vector<std::vector<Elem>>& cols);

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Elem at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Elem& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::span<const Elem> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<Elem> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::vector<Elem> column(std::size_t j) const;
  const std::vector<Elem>& entries() const { return data_; }

  bool is_zero() const;
  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  std::vector<Elem> apply(std::span<const Elem> v) const;
  bool operator==(const Matrix& o) const;

 private:
  FieldPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

// Result of Gauss-Jordan elimination with leftmost-pivot, topmost-row order.
struct Reduction {
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero rref row
  Matrix kernel;  // cols x (cols - rank); one column per free column
  Matrix image;  // rows x rank; the pivot columns of the input
  Matrix rref;  // same shape as the input
};

Reduction reduce(const Matrix& m);

// Coordinates modulo a subspace. Representatives are the standard unit
// vectors at the non-pivot positions of rref(sub^T), so projecting a vector
// amounts to clearing the pivot positions and reading off the rest.
class QuotientBasis {
 public:
  QuotientBasis(Matrix sub_rref, std::vector<std::size_t> pivots, std::size_t ambient);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return free_.size(); }
  // ambient x dim matrix of representatives.
  Matrix reps() const;
  std::vector<Elem> project(std::span<const Elem> v) const;
  std::vector<Elem> lift(std::span<const Elem> coords) const;
  bool in_sub(std::span<const Elem> v) const;

 private:
  Matrix sub_rref_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> free_;
  std::size_t ambient_;
};

// Throws InputError when the columns of `sub` are dependent.
QuotientBasis quotient_basis(const Matrix& sub, std::size_t ambient_dim);

// Solves m * x = b; returns false when b is outside the column space.
bool solve(const Matrix& m, std::span<const Elem> b, std::vector<Elem>& x);

}  // namespace modinv

#endif  // MODINV_MATRIX_HPP
