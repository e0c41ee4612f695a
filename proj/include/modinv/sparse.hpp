#ifndef MODINV_SPARSE_HPP
#define MODINV_SPARSE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "modinv/field.hpp"

namespace modinv {

struct SparseEntry {
  std::uint32_t index;
  Elem value;
  bool operator==(const SparseEntry&) const = default;
};

// Sorted by index, no stored zeros.
using SparseVec = std::vector<SparseEntry>;

SparseVec to_sparse(std::span<const Elem> dense);
std::vector<Elem> to_dense(const SparseVec& v, std::size_t dim);
// y + a x
SparseVec sparse_axpy(const Field& f, Elem a, const SparseVec& x, const SparseVec& y);
SparseVec sparse_scale(const Field& f, Elem a, const SparseVec& x);

// Incremental semi-echelon basis of a subspace of F^dim, leftmost pivots.
// 
// Each stored row has leading entry 1 at its pivot column and every other
// entry strictly to the right. Normal forms have no entry on a pivot column,
// which makes them canonical coordinates modulo the span. With tracking on,
// every row also records which combination of inserted vectors it is, so
// members of the span can be solved for.
// 
// Not safe for concurrent calls on one instance (shared scratch buffers).
class SparseEchelon {
 public:
  SparseEchelon(FieldPtr field, std::size_t dim, bool track = false);

  const FieldPtr& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  std::size_t inserted() const { return inserted_; }

  // Returns true when v was independent of the current span.
  bool insert(const SparseVec& v);
  SparseVec normal_form(const SparseVec& v) const;
  bool contains(const SparseVec& v) const { return normal_form(v).empty(); }
  // Coefficients over the inserted vectors (by insertion order) that sum to v.
  // Requires tracking.
  std::optional<SparseVec> solve(const SparseVec& v) const;

  std::vector<std::uint32_t> pivots() const;
  const std::vector<SparseVec>& rows() const { return rows_; }
  // Back-substitutes so that pivot columns carry a single nonzero (RREF).
  void full_reduce();

 private:
  SparseVec reduce_impl(const SparseVec& v, SparseVec* history) const;

  FieldPtr field_;
  std::size_t dim_;
  bool track_;
  std::size_t inserted_ = 0;
  std::vector<SparseVec> rows_;
  std::vector<SparseVec> history_;
  std::vector<std::int32_t> pivot_row_;
  mutable std::vector<Elem> acc_;
  mutable std::vector<char> queued_;
};

// Kernel of the matrix whose rows are given, as vectors in F^ncols: one
// vector per free column of the RREF (in increasing column order), with
// entry 1 at that column.
std::vector<SparseVec> sparse_kernel(FieldPtr field, const std::vector<SparseVec>& rows, std::size_t ncols,
                                     std::vector<std::uint32_t>* free_columns = nullptr);

// Column-compressed sparse matrix: column j is a SparseVec over the rows.
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<SparseVec> columns;

  SparseVec apply(const Field& f, const SparseVec& v) const;
  std::vector<SparseVec> row_vectors() const;
};

// a * b as sparse matrices.
SparseMatrix sparse_product(const Field& f, const SparseMatrix& a, const SparseMatrix& b);

}  // namespace modinv

#endif  // MODINV_SPARSE_HPP
