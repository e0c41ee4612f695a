#include "modinv/matrix.hpp"

#include <algorithm>

namespace modinv {

namespace {

// row_dst += c * row_src over the tail starting at `from`.
void axpy_row(const Field& f, std::span<Elem> dst, std::span<const Elem> src, Elem c, std::size_t from) {
  if (c == 0) return;
  if (f.p() == 2 && c == 1) {
    for (std::size_t j = from; j < dst.size(); ++j) dst[j] ^= src[j];
    return;
  }
  for (std::size_t j = from; j < dst.size(); ++j) {
    if (src[j] != 0) dst[j] = f.add(dst[j], f.mul(c, src[j]));
  }
}

}  // namespace

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) throw InputError("matrix entry count does not match dimensions");
  for (Elem e : data_) {
    if (e >= field_->q()) throw InputError("matrix entry outside field");
  }
}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_columns(FieldPtr field, std::size_t rows, const std::vector<std::vector<Elem>>& cols) {
  Matrix m(std::move(field), rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw InputError("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

std::vector<Elem> Matrix::column(std::size_t j) const {
  std::vector<Elem> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Elem e) { return e == 0; });
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (!same_field(field_, o.field_)) throw InputError("mixed-field matrix product");
  if (cols_ != o.rows_) throw InputError("matrix product dimension mismatch");
  Matrix out(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) axpy_row(*field_, out.row(i), o.row(k), at(i, k), 0);
  return out;
}

std::vector<Elem> Matrix::apply(std::span<const Elem> v) const {
  if (v.size() != cols_) throw InputError("matrix-vector dimension mismatch");
  std::vector<Elem> out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    Elem acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc = field_->add(acc, field_->mul(at(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_ &&
         (empty() || same_field(field_, o.field_));
}

Reduction reduce(const Matrix& m) {
  const Field& f = *m.field();
  Reduction out;
  Matrix a = m;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && a.at(piv, col) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row) {
      auto r1 = a.row(piv), r2 = a.row(row);
      std::swap_ranges(r1.begin(), r1.end(), r2.begin());
    }
    Elem inv = f.inv(a.at(row, col));
    for (std::size_t j = col; j < a.cols(); ++j) a.at(row, j) = f.mul(a.at(row, j), inv);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row) continue;
      Elem c = a.at(i, col);
      if (c != 0) axpy_row(f, a.row(i), a.row(row), f.neg(c), col);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.rank = out.pivots.size();

  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : out.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  out.kernel = Matrix(m.field(), a.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    std::size_t fc = free_cols[k];
    out.kernel.at(fc, k) = 1;
    for (std::size_t r = 0; r < out.rank; ++r) out.kernel.at(out.pivots[r], k) = f.neg(a.at(r, fc));
  }
  out.image = Matrix(m.field(), m.rows(), out.rank);
  for (std::size_t k = 0; k < out.rank; ++k)
    for (std::size_t i = 0; i < m.rows(); ++i) out.image.at(i, k) = m.at(i, out.pivots[k]);
  out.rref = std::move(a);
  return out;
}

QuotientBasis::QuotientBasis(Matrix sub_rref, std::vector<std::size_t> pivots, std::size_t ambient)
    : sub_rref_(std::move(sub_rref)), pivots_(std::move(pivots)), ambient_(ambient) {
  std::vector<bool> is_pivot(ambient_, false);
  for (auto c : pivots_) is_pivot[c] = true;
  for (std::size_t c = 0; c < ambient_; ++c)
    if (!is_pivot[c]) free_.push_back(c);
}

Matrix QuotientBasis::reps() const {
  Matrix r(sub_rref_.field(), ambient_, free_.size());
  for (std::size_t k = 0; k < free_.size(); ++k) r.at(free_[k], k) = 1;
  return r;
}

std::vector<Elem> QuotientBasis::project(std::span<const Elem> v) const {
  if (v.size() != ambient_) throw InputError("projection of a vector of the wrong length");
  const Field& f = *sub_rref_.field();
  std::vector<Elem> w(v.begin(), v.end());
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    Elem c = w[pivots_[r]];
    if (c != 0) axpy_row(f, w, sub_rref_.row(r), f.neg(c), pivots_[r]);
  }
  std::vector<Elem> coords(free_.size());
  for (std::size_t k = 0; k < free_.size(); ++k) coords[k] = w[free_[k]];
  return coords;
}

std::vector<Elem> QuotientBasis::lift(std::span<const Elem> coords) const {
  if (coords.size() != free_.size()) throw InputError("lift of coordinates of the wrong length");
  std::vector<Elem> v(ambient_, 0);
  for (std::size_t k = 0; k < free_.size(); ++k) v[free_[k]] = coords[k];
  return v;
}

bool QuotientBasis::in_sub(std::span<const Elem> v) const {
  auto c = project(v);
  return std::all_of(c.begin(), c.end(), [](Elem e) { return e == 0; });
}

QuotientBasis quotient_basis(const Matrix& sub, std::size_t ambient_dim) {
  if (sub.cols() == 0) {
    return QuotientBasis(Matrix(sub.field(), 0, ambient_dim), {}, ambient_dim);
  }
  if (sub.rows() != ambient_dim) throw InputError("subspace vectors do not live in the ambient space");
  Reduction red = reduce(sub.transpose());
  if (red.rank != sub.cols()) throw InputError("subspace generators are linearly dependent");
  Matrix rows(sub.field(), red.rank, ambient_dim);
  for (std::size_t r = 0; r < red.rank; ++r)
    for (std::size_t j = 0; j < ambient_dim; ++j) rows.at(r, j) = red.rref.at(r, j);
  return QuotientBasis(std::move(rows), red.pivots, ambient_dim);
}

bool solve(const Matrix& m, std::span<const Elem> b, std::vector<Elem>& x) {
  if (b.size() != m.rows()) throw InputError("right-hand side length mismatch");
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  Reduction red = reduce(aug);
  if (!red.pivots.empty() && red.pivots.back() == m.cols()) return false;
  x.assign(m.cols(), 0);
  for (std::size_t r = 0; r < red.rank; ++r) x[red.pivots[r]] = red.rref.at(r, m.cols());
  return true;
}

}  // namespace modinv
