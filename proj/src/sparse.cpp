#include "modinv/sparse.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace modinv {

SparseVec to_sparse(std::span<const Elem> dense) {
  SparseVec v;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i] != 0) v.push_back({std::uint32_t(i), dense[i]});
  return v;
}

std::vector<Elem> to_dense(const SparseVec& v, std::size_t dim) {
  std::vector<Elem> d(dim, 0);
  for (auto& e : v) d.at(e.index) = e.value;
  return d;
}

SparseVec sparse_axpy(const Field& f, Elem a, const SparseVec& x, const SparseVec& y) {
  if (a == 0) return y;
  SparseVec out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].index < y[j].index)) {
      out.push_back({x[i].index, f.mul(a, x[i].value)});
      ++i;
    } else if (i == x.size() || y[j].index < x[i].index) {
      out.push_back(y[j]);
      ++j;
    } else {
      Elem s = f.add(y[j].value, f.mul(a, x[i].value));
      if (s != 0) out.push_back({x[i].index, s});
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec sparse_scale(const Field& f, Elem a, const SparseVec& x) {
  if (a == 0) return {};
  SparseVec out = x;
  for (auto& e : out) e.value = f.mul(a, e.value);
  return out;
}

SparseEchelon::SparseEchelon(FieldPtr field, std::size_t dim, bool track)
    : field_(std::move(field)), dim_(dim), track_(track), pivot_row_(dim, -1), acc_(dim, 0), queued_(dim, 0) {}

SparseVec SparseEchelon::reduce_impl(const SparseVec& v, SparseVec* history) const {
  const Field& f = *field_;
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> heap;
  std::vector<std::uint32_t> touched;
  for (auto& e : v) {
    if (e.index >= dim_) throw InputError("sparse vector index outside ambient space");
    acc_[e.index] = e.value;
    queued_[e.index] = 1;
    heap.push(e.index);
    touched.push_back(e.index);
  }
  SparseVec rest;
  while (!heap.empty()) {
    std::uint32_t idx = heap.top();
    heap.pop();
    queued_[idx] = 0;
    Elem c = acc_[idx];
    if (c == 0) continue;
    std::int32_t r = pivot_row_[idx];
    if (r < 0) {
      rest.push_back({idx, c});
      acc_[idx] = 0;
      continue;
    }
    Elem neg = f.neg(c);
    for (auto& e : rows_[r]) {
      if (e.index == idx) continue;
      acc_[e.index] = f.add(acc_[e.index], f.mul(neg, e.value));
      if (!queued_[e.index]) {
        queued_[e.index] = 1;
        heap.push(e.index);
        touched.push_back(e.index);
      }
    }
    acc_[idx] = 0;
    if (history) *history = sparse_axpy(f, neg, history_[r], *history);
  }
  for (auto i : touched) {
    acc_[i] = 0;
    queued_[i] = 0;
  }
  return rest;
}

bool SparseEchelon::insert(const SparseVec& v) {
  SparseVec hist;
  if (track_) hist.push_back({std::uint32_t(inserted_), 1});
  ++inserted_;
  SparseVec rest = reduce_impl(v, track_ ? &hist : nullptr);
  if (rest.empty()) return false;
  const Field& f = *field_;
  Elem inv = f.inv(rest.front().value);
  for (auto& e : rest) e.value = f.mul(inv, e.value);
  pivot_row_[rest.front().index] = std::int32_t(rows_.size());
  rows_.push_back(std::move(rest));
  if (track_) history_.push_back(sparse_scale(f, inv, hist));
  return true;
}

SparseVec SparseEchelon::normal_form(const SparseVec& v) const { return reduce_impl(v, nullptr); }

std::optional<SparseVec> SparseEchelon::solve(const SparseVec& v) const {
  if (!track_) throw std::logic_error("SparseEchelon::solve requires tracking");
  // v - sum c_r row_r = rest; each row_r = sum history_r over inserted vectors.
  SparseVec hist;
  SparseVec rest = reduce_impl(v, &hist);
  if (!rest.empty()) return std::nullopt;
  // hist accumulated -c_r * history_r, so negate.
  return sparse_scale(*field_, field_->neg(1), hist);
}

std::vector<std::uint32_t> SparseEchelon::pivots() const {
  std::vector<std::uint32_t> p;
  p.reserve(rows_.size());
  for (auto& r : rows_) p.push_back(r.front().index);
  return p;
}

void SparseEchelon::full_reduce() {
  const Field& f = *field_;
  std::vector<std::size_t> order(rows_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return rows_[a].front().index > rows_[b].front().index; });
  for (std::size_t k : order) {
    SparseVec& row = rows_[k];
    std::uint32_t piv = row.front().index;
    SparseVec tail(row.begin() + 1, row.end());
    // Temporarily detach this row's pivot so the tail reduces against the others.
    pivot_row_[piv] = -1;
    SparseVec hist;
    SparseVec reduced = reduce_impl(tail, track_ ? &hist : nullptr);
    pivot_row_[piv] = std::int32_t(k);
    SparseVec fresh;
    fresh.reserve(reduced.size() + 1);
    fresh.push_back({piv, 1});
    fresh.insert(fresh.end(), reduced.begin(), reduced.end());
    row = std::move(fresh);
    if (track_) history_[k] = sparse_axpy(f, 1, hist, history_[k]);
  }
}

std::vector<SparseVec> sparse_kernel(FieldPtr field, const std::vector<SparseVec>& rows, std::size_t ncols,
                                     std::vector<std::uint32_t>* free_columns) {
  SparseEchelon ech(field, ncols);
  for (auto& r : rows) ech.insert(r);
  ech.full_reduce();
  const Field& f = *field;
  std::vector<std::int32_t> free_slot(ncols, -1);
  std::vector<char> is_pivot(ncols, 0);
  for (auto p : ech.pivots()) is_pivot[p] = 1;
  std::vector<std::uint32_t> free_cols;
  for (std::size_t c = 0; c < ncols; ++c) {
    if (!is_pivot[c]) {
      free_slot[c] = std::int32_t(free_cols.size());
      free_cols.push_back(std::uint32_t(c));
    }
  }
  std::vector<SparseVec> kernel(free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) kernel[k].push_back({free_cols[k], 1});
  // Rows sorted by pivot so that each kernel vector receives increasing indices.
  std::vector<std::size_t> order(ech.rank());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return ech.rows()[a].front().index < ech.rows()[b].front().index; });
  for (std::size_t k : order) {
    const SparseVec& row = ech.rows()[k];
    std::uint32_t piv = row.front().index;
    for (std::size_t t = 1; t < row.size(); ++t) {
      std::int32_t slot = free_slot[row[t].index];
      if (slot < 0) continue;
      kernel[slot].push_back({piv, f.neg(row[t].value)});
    }
  }
  for (auto& v : kernel) {
    std::sort(v.begin(), v.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
  }
  if (free_columns) *free_columns = std::move(free_cols);
  return kernel;
}

SparseVec SparseMatrix::apply(const Field& f, const SparseVec& v) const {
  std::vector<Elem> acc(rows, 0);
  std::vector<std::uint32_t> touched;
  for (auto& e : v) {
    for (auto& c : columns.at(e.index)) {
      if (acc[c.index] == 0) touched.push_back(c.index);
      acc[c.index] = f.add(acc[c.index], f.mul(e.value, c.value));
    }
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  SparseVec out;
  for (auto i : touched)
    if (acc[i] != 0) out.push_back({i, acc[i]});
  return out;
}

std::vector<SparseVec> SparseMatrix::row_vectors() const {
  std::vector<SparseVec> r(rows);
  for (std::size_t j = 0; j < cols; ++j)
    for (auto& e : columns[j]) r[e.index].push_back({std::uint32_t(j), e.value});
  return r;
}

SparseMatrix sparse_product(const Field& f, const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols != b.rows) throw InputError("sparse product dimension mismatch");
  SparseMatrix out{a.rows, b.cols, {}};
  out.columns.reserve(b.cols);
  for (auto& col : b.columns) out.columns.push_back(a.apply(f, col));
  return out;
}

}  // namespace modinv
