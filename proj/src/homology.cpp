#include "modinv/homology.hpp"

#include <algorithm>

namespace modinv {

namespace {

void combinations(unsigned m, unsigned i, unsigned start, std::vector<unsigned>& cur,
                  std::vector<std::vector<unsigned>>& out) {
  if (cur.size() == i) {
    out.push_back(cur);
    return;
  }
  for (unsigned k = start; k < m; ++k) {
    cur.push_back(k);
    combinations(m, i, k + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<Elem>> columns(const Matrix& m) {
  std::vector<std::vector<Elem>> out;
  for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.column(j));
  return out;
}

// Basis of ker m, as columns; handles the degenerate shapes.
std::vector<std::vector<Elem>> kernel_columns(const Matrix& m, const FieldPtr& field) {
  if (m.rows() == 0) return columns(Matrix::identity(field, m.cols()));
  if (m.cols() == 0) return {};
  return columns(reduce(m).kernel);
}

}  // namespace

KoszulComplex::KoszulComplex(InvariantRing& ring, std::vector<Polynomial> x) : ring_(ring), x_(std::move(x)) {
  const auto& g = ring_.group();
  if (x_.size() > 16) throw InputError("at most 16 Koszul elements");
  for (auto& f : x_) {
    if (f.nvars() != g.dim() || !same_field(f.field(), g.field())) throw InputError("element outside the group's ring");
    auto e = f.homogeneous_degree();
    if (f.is_zero() || !e) throw InputError("Koszul elements must be nonzero and homogeneous");
    if (!is_invariant(g, f)) throw InputError("Koszul element " + to_string(f) + " is not invariant");
    deg_.push_back(*e);
  }
  if (x_.size() == g.dim()) {
    bool all_positive = std::all_of(deg_.begin(), deg_.end(), [](unsigned e) { return e > 0; });
    hsop_ = all_positive && validate_hsop(g, x_);
  }
  subsets_.resize(x_.size() + 1);
  for (unsigned i = 0; i <= x_.size(); ++i) {
    std::vector<unsigned> cur;
    combinations(unsigned(x_.size()), i, 0, cur, subsets_[i]);
  }
}

std::vector<std::size_t> KoszulComplex::offsets(unsigned i, unsigned n) {
  std::vector<std::size_t> off{0};
  if (i > length()) return off;
  for (auto& I : subsets_[i]) {
    unsigned e = 0;
    for (auto k : I) e += deg_[k];
    off.push_back(off.back() + (e <= n ? ring_.dim(n - e) : 0));
  }
  return off;
}

std::size_t KoszulComplex::chain_dim(unsigned i, unsigned n) { return offsets(i, n).back(); }

const Matrix& KoszulComplex::mult(std::size_t k, unsigned n) {
  auto key = std::make_pair(k, n);
  auto it = mult_.find(key);
  if (it == mult_.end()) it = mult_.emplace(key, ring_.multiplication(x_[k], n)).first;
  return it->second;
}

Matrix KoszulComplex::boundary(unsigned i, unsigned n) {
  const FieldPtr& field = ring_.group().field();
  const Field& f = *field;
  if (i == 0) return Matrix(field, 0, chain_dim(0, n));
  if (i > length()) return Matrix(field, chain_dim(i - 1, n), 0);
  auto src = offsets(i, n), dst = offsets(i - 1, n);
  Matrix out(field, dst.back(), src.back());
  const auto& lower = subsets_[i - 1];
  for (std::size_t b = 0; b < subsets_[i].size(); ++b) {
    const auto& I = subsets_[i][b];
    unsigned e = 0;
    for (auto k : I) e += deg_[k];
    if (e > n || src[b + 1] == src[b]) continue;
    for (std::size_t pos = 0; pos < I.size(); ++pos) {
      std::vector<unsigned> J = I;
      J.erase(J.begin() + pos);
      std::size_t tb = std::lower_bound(lower.begin(), lower.end(), J) - lower.begin();
      const Matrix& mx = mult(I[pos], n - e);
      Elem sign = (pos % 2) ? f.neg(1) : Elem(1);
      for (std::size_t r = 0; r < mx.rows(); ++r)
        for (std::size_t c = 0; c < mx.cols(); ++c)
          if (Elem v = mx.at(r, c)) out.at(dst[tb] + r, src[b] + c) = f.add(out.at(dst[tb] + r, src[b] + c), f.mul(sign, v));
    }
  }
  return out;
}

KoszulSlice KoszulComplex::slice(unsigned i, unsigned n) {
  if (i > length()) throw InputError("Koszul index exceeds the sequence length");
  const FieldPtr& field = ring_.group().field();
  KoszulSlice s;
  s.x = x_;
  s.i = i;
  s.n = n;
  s.chain_dim = chain_dim(i, n);
  s.boundary_out = boundary(i, n);
  s.boundary_in = i + 1 <= length() ? boundary(i + 1, n) : Matrix(field, s.chain_dim, 0);
  if (!s.boundary_out.empty() && !s.boundary_in.empty() && !(s.boundary_out * s.boundary_in).is_zero())
    throw AuditError("Koszul boundary does not square to zero");
  auto z = kernel_columns(s.boundary_out, field);
  s.cycle_rank = z.size();
  SparseEchelon ech(field, s.chain_dim);
  for (auto& c : columns(s.boundary_in)) ech.insert(to_sparse(c));
  s.boundary_rank = ech.rank();
  for (auto& c : z)
    if (ech.insert(to_sparse(c))) s.homology.push_back(c);
  if (s.homology.size() != s.cycle_rank - s.boundary_rank) throw AuditError("boundaries are not cycles");
  return s;
}

std::vector<Elem> KoszulComplex::multiply(const Polynomial& q, unsigned i, unsigned n, const std::vector<Elem>& v) {
  auto e = q.homogeneous_degree();
  if (q.is_zero() || !e) throw InputError("multiplier must be nonzero and homogeneous");
  const Field& f = *ring_.group().field();
  auto src = offsets(i, n), dst = offsets(i, n + *e);
  std::vector<Elem> out(dst.back(), 0);
  for (std::size_t b = 0; b + 1 < src.size(); ++b) {
    if (src[b + 1] == src[b]) continue;
    unsigned eI = 0;
    for (auto k : subsets_[i][b]) eI += deg_[k];
    Matrix mq = ring_.multiplication(q, n - eI);
    for (std::size_t r = 0; r < mq.rows(); ++r) {
      Elem acc = 0;
      for (std::size_t c = 0; c < mq.cols(); ++c) acc = f.add(acc, f.mul(mq.at(r, c), v[src[b] + c]));
      out[dst[b] + r] = acc;
    }
  }
  return out;
}

bool KoszulComplex::is_boundary(unsigned i, unsigned n, const std::vector<Elem>& v) {
  if (i >= length()) return std::all_of(v.begin(), v.end(), [](Elem a) { return a == 0; });
  Matrix d = boundary(i + 1, n);
  std::vector<Elem> sol;
  return solve(d, v, sol);
}

std::optional<std::vector<std::vector<Elem>>> KoszulComplex::ideal_coefficients(const Polynomial& q) {
  const unsigned e = *q.homogeneous_degree();
  auto target = ring_.slice(e).coordinates(q);
  if (!target) return std::nullopt;
  std::vector<std::vector<Elem>> cols;
  std::vector<std::pair<std::size_t, std::size_t>> owner;  // (k, index in S_{e - deg x_k})
  for (std::size_t k = 0; k < length(); ++k) {
    if (deg_[k] > e) continue;
    const Matrix& m = mult(k, e - deg_[k]);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      cols.push_back(m.column(j));
      owner.push_back({k, j});
    }
  }
  std::vector<std::vector<Elem>> out(length());
  for (std::size_t k = 0; k < length(); ++k) out[k].assign(deg_[k] <= e ? ring_.dim(e - deg_[k]) : 0, 0);
  if (cols.empty()) return std::nullopt;
  std::vector<Elem> x;
  if (!solve(Matrix::from_columns(ring_.group().field(), ring_.dim(e), cols), *target, x)) return std::nullopt;
  for (std::size_t j = 0; j < x.size(); ++j) out[owner[j].first][owner[j].second] = x[j];
  return out;
}

std::vector<Elem> KoszulComplex::wedge(std::size_t k, const std::vector<Elem>& c, unsigned m, unsigned i, unsigned n,
                                       const std::vector<Elem>& z) {
  const Field& f = *ring_.group().field();
  const unsigned N = n + m + deg_[k];
  auto src = offsets(i, n), dst = offsets(i + 1, N);
  std::vector<Elem> out(dst.back(), 0);
  Polynomial cp = ring_.slice(m).combine(c);
  if (cp.is_zero()) return out;
  const auto& upper = subsets_[i + 1];
  for (std::size_t b = 0; b < subsets_[i].size(); ++b) {
    const auto& I = subsets_[i][b];
    if (src[b + 1] == src[b] || std::find(I.begin(), I.end(), k) != I.end()) continue;
    std::vector<unsigned> J = I;
    J.insert(std::upper_bound(J.begin(), J.end(), unsigned(k)), unsigned(k));
    std::size_t before = std::count_if(I.begin(), I.end(), [&](unsigned l) { return l < k; });
    Elem sign = before % 2 ? f.neg(1) : Elem(1);
    std::size_t tb = std::lower_bound(upper.begin(), upper.end(), J) - upper.begin();
    unsigned eI = 0;
    for (auto l : I) eI += deg_[l];
    Matrix mc = ring_.multiplication(cp, n - eI);
    for (std::size_t r = 0; r < mc.rows(); ++r) {
      Elem acc = 0;
      for (std::size_t col = 0; col < mc.cols(); ++col) acc = f.add(acc, f.mul(mc.at(r, col), z[src[b] + col]));
      out[dst[tb] + r] = f.add(out[dst[tb] + r], f.mul(sign, acc));
    }
  }
  return out;
}

KoszulSlice koszul_slice(const MatrixGroup& group, const std::vector<Polynomial>& x, unsigned i, unsigned n) {
  InvariantRing ring(group);
  KoszulComplex k(ring, x);
  return k.slice(i, n);
}

IdealSlices::IdealSlices(InvariantRing& ring, std::vector<Polynomial> gens) : ring_(ring), gens_(std::move(gens)) {}

const SparseEchelon& IdealSlices::slice(unsigned n) {
  auto it = slices_.find(n);
  if (it != slices_.end()) return *it->second;
  auto ech = std::make_unique<SparseEchelon>(ring_.group().field(), ring_.dim(n));
  for (auto& g : gens_) {
    unsigned e = *g.homogeneous_degree();
    if (e > n) continue;
    Matrix m = ring_.multiplication(g, n - e);
    for (std::size_t j = 0; j < m.cols(); ++j) ech->insert(to_sparse(m.column(j)));
  }
  return *slices_.emplace(n, std::move(ech)).first->second;
}

namespace {

void check_colon_input(const MatrixGroup& g, const std::vector<Polynomial>& x, unsigned t) {
  if (t < 1 || t > x.size()) throw InputError("colon position t out of range");
  for (auto& f : x) {
    if (f.is_zero() || !f.is_homogeneous()) throw InputError("sequence entries must be nonzero and homogeneous");
    if (!is_invariant(g, f)) throw InputError("sequence entry " + to_string(f) + " is not invariant");
  }
}

}  // namespace

ColonQuotientSlice colon_quotient_slice(InvariantRing& ring, const std::vector<Polynomial>& x, unsigned t, unsigned n) {
  check_colon_input(ring.group(), x, t);
  const FieldPtr& field = ring.group().field();
  IdealSlices ideal(ring, std::vector<Polynomial>(x.begin(), x.begin() + (t - 1)));
  const Polynomial& xt = x[t - 1];
  const unsigned e = *xt.homogeneous_degree();
  Matrix mx = ring.multiplication(xt, n);
  const auto& target = ideal.slice(n + e);
  // Kernel of S_n -> S_{n+e} / I_{n+e}; normal forms are linear, so stack them as rows.
  std::vector<SparseVec> cols;
  for (std::size_t j = 0; j < mx.cols(); ++j) cols.push_back(target.normal_form(to_sparse(mx.column(j))));
  SparseMatrix sm{ring.dim(n + e), mx.cols(), cols};
  auto ker = sparse_kernel(field, sm.row_vectors(), mx.cols());

  ColonQuotientSlice out;
  out.x = x;
  out.t = t;
  out.n = n;
  out.colon_dim = ker.size();
  const auto& in = ideal.slice(n);
  out.ideal_dim = in.rank();
  SparseEchelon ech(field, ring.dim(n));
  for (auto& r : in.rows()) ech.insert(r);
  const auto& sn = ring.slice(n);
  for (auto& v : ker)
    if (ech.insert(v)) out.basis.push_back(sn.combine(to_dense(v, sn.dim())));
  if (out.basis.size() + out.ideal_dim != out.colon_dim) throw AuditError("ideal is not inside its colon");
  return out;
}

ColonQuotientSlice colon_quotient_slice(const MatrixGroup& group, const std::vector<Polynomial>& x, unsigned t,
                                        unsigned n) {
  InvariantRing ring(group);
  return colon_quotient_slice(ring, x, t, n);
}

namespace {

unsigned multiplier_degree(const MatrixGroup& g, const Polynomial& q, unsigned window) {
  auto e = q.homogeneous_degree();
  if (q.is_zero() || !e) throw InputError("multiplier must be nonzero and homogeneous");
  if (!is_invariant(g, q)) throw InputError("multiplier is not invariant");
  if (*e > window) throw InputError("window too small to contain any shifted slice");
  return *e;
}

}  // namespace

AnnihilationReport annihilation_check_koszul(KoszulComplex& k, const Polynomial& q, unsigned i, unsigned window) {
  const unsigned e = multiplier_degree(k.ring_group(), q, window);
  AnnihilationReport rep;
  if (!k.validated_hsop() && i > 0)
    rep.note = "codim(x) = |x| is taken on trust: x is not a validated hsop";
  auto coeffs = i < k.length() ? k.ideal_coefficients(q) : std::nullopt;
  rep.method = coeffs ? "homotopy witness" : "boundary solve";
  for (unsigned n = 0; n + e <= window; ++n) {
    KoszulSlice s = k.slice(i, n);
    AnnihilationEntry entry{n, s.dim(), true};
    for (auto& h : s.homology) {
      auto qh = k.multiply(q, i, n, h);
      if (!coeffs) {
        if (!k.is_boundary(i, n + e, qh)) entry.passed = false;
        continue;
      }
      // q h = d(sum_k e_k ^ c_k h) for a cycle h.
      const Field& f = *k.ring_group().field();
      std::vector<Elem> w(k.chain_dim(i + 1, n + e), 0);
      for (std::size_t j = 0; j < k.length(); ++j) {
        unsigned dj = *k.x()[j].homogeneous_degree();
        if (dj > e) continue;
        auto part = k.wedge(j, (*coeffs)[j], e - dj, i, n, h);
        for (std::size_t r = 0; r < w.size(); ++r) w[r] = f.add(w[r], part[r]);
      }
      if (k.boundary(i + 1, n + e).apply(w) != qh) throw AuditError("Koszul homotopy witness does not verify");
    }
    rep.passed = rep.passed && entry.passed;
    rep.entries.push_back(entry);
  }
  return rep;
}

AnnihilationReport annihilation_check_colon(InvariantRing& ring, const std::vector<Polynomial>& x,
                                            const Polynomial& q, unsigned t, unsigned window) {
  const unsigned e = multiplier_degree(ring.group(), q, window);
  check_colon_input(ring.group(), x, t);
  AnnihilationReport rep;
  IdealSlices ideal(ring, std::vector<Polynomial>(x.begin(), x.begin() + (t - 1)));
  for (unsigned n = 0; n + e <= window; ++n) {
    ColonQuotientSlice s = colon_quotient_slice(ring, x, t, n);
    AnnihilationEntry entry{n, s.dim(), true};
    for (auto& u : s.basis) {
      auto c = ring.slice(n + e).coordinates(q * u);
      if (!c) throw AuditError("product of invariants left S");
      if (!ideal.contains(n + e, *c)) entry.passed = false;
    }
    rep.passed = rep.passed && entry.passed;
    rep.entries.push_back(entry);
  }
  return rep;
}

DepthEstimate depth_estimate(const MatrixGroup& group, const std::vector<Polynomial>& x, unsigned window) {
  InvariantRing ring(group);
  KoszulComplex k(ring, x);
  if (!k.validated_hsop()) throw InputError("depth_estimate needs a validated hsop");
  const unsigned d = unsigned(group.dim());
  DepthEstimate est;
  est.fixed_dim = fixed_subspace(group, sylow_p(group)).dimension;
  est.lower = unsigned(std::min<std::size_t>(est.fixed_dim + 2, d));
  est.h_dims.assign(d + 1, std::vector<std::size_t>(window + 1, 0));
  unsigned top = 0;
  for (unsigned i = 0; i <= d; ++i)
    for (unsigned n = 0; n <= window; ++n) {
      est.h_dims[i][n] = k.slice(i, n).dim();
      if (i > 0 && est.h_dims[i][n] > 0) top = std::max(top, i);
    }
  est.upper = d - top;
  for (unsigned n = window + 1; n-- > 0;) {
    bool zero = true;
    for (unsigned i = 1; i <= d; ++i) zero = zero && est.h_dims[i][n] == 0;
    if (!zero) break;
    ++est.stable_run;
  }
  unsigned maxdeg = 0;
  for (auto& f : x) maxdeg = std::max(maxdeg, *f.homogeneous_degree());
  est.stability_evidence = est.stable_run >= maxdeg;
  if (est.upper < est.lower)
    throw AuditError("depth contradiction: Koszul upper bound " + std::to_string(est.upper) +
                     " below the fixed-point lower bound " + std::to_string(est.lower));
  return est;
}

}  // namespace modinv
