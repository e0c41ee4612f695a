#include "modinv/cohomology.hpp"

#include <algorithm>

#include "modinv/invariants.hpp"
#include "modinv/steenrod.hpp"

namespace modinv {

std::size_t tuple_count(std::size_t order, unsigned n) {
  std::size_t t = 1;
  for (unsigned k = 0; k < n; ++k) t *= order;
  return t;
}

std::vector<std::size_t> tuple_of(std::size_t index, std::size_t order, unsigned n) {
  std::vector<std::size_t> t(n);
  for (unsigned k = n; k-- > 0;) {
    t[k] = index % order;
    index /= order;
  }
  return t;
}

std::size_t tuple_index(const std::vector<std::size_t>& tuple, std::size_t order) {
  std::size_t idx = 0;
  for (auto g : tuple) idx = idx * order + g;
  return idx;
}

void check_bar_budget(const MatrixGroup& group, unsigned levels, unsigned m, std::size_t budget) {
  std::size_t size = graded_dimension(group.dim(), m);
  for (unsigned k = 0; k < levels; ++k) {
    size *= group.order();
    if (size > budget)
      throw BudgetError("bar complex needs |G|^" + std::to_string(levels) + " * dim R_" + std::to_string(m) +
                        " > " + std::to_string(budget) + " entries");
  }
  if (size > budget) throw BudgetError("bar complex slice exceeds the budget of " + std::to_string(budget));
}

SparseVec cochain_vector(const Cochain& c, const GradedBasis& basis) {
  SparseVec out;
  const std::size_t D = basis.size();
  for (std::size_t t = 0; t < c.values.size(); ++t) {
    SparseVec v = coeff_sparse(c.values[t], basis);
    std::sort(v.begin(), v.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
    for (auto& e : v) out.push_back({std::uint32_t(t * D + e.index), e.value});
  }
  return out;
}

Cochain zero_cochain(const MatrixGroup& group, unsigned n, unsigned m) {
  Cochain c{n, m, {}};
  c.values.assign(tuple_count(group.order(), n), group.context().zero());
  return c;
}

Cochain cochain_from_vector(const MatrixGroup& group, unsigned n, const SparseVec& v, const GradedBasis& basis) {
  Cochain c = zero_cochain(group, n, basis.degree());
  const std::size_t D = basis.size();
  for (auto& e : v) {
    std::size_t t = e.index / D;
    if (t >= c.values.size()) throw InputError("cochain vector index out of range");
    c.values[t].add_term(basis[e.index % D], e.value);
  }
  return c;
}

namespace {

void sort_merge(const Field& f, SparseVec& v) {
  std::sort(v.begin(), v.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
  SparseVec out;
  out.reserve(v.size());
  for (auto& e : v) {
    if (!out.empty() && out.back().index == e.index)
      out.back().value = f.add(out.back().value, e.value);
    else
      out.push_back(e);
    if (!out.empty() && out.back().value == 0) out.pop_back();
  }
  v = std::move(out);
}

SparseMatrix build_differential(const MatrixGroup& group, unsigned n, const GradedBasis& basis) {
  const Field& f = *group.field();
  const std::size_t G = group.order(), D = basis.size();
  const std::size_t Tn = tuple_count(G, n), Tn1 = Tn * G;
  std::vector<SparseMatrix> rho;
  rho.reserve(G);
  for (std::size_t g = 0; g < G; ++g) rho.push_back(action_matrix(group, g, basis));
  const Elem minus = f.neg(1);

  SparseMatrix d{Tn1 * D, Tn * D, {}};
  d.columns.resize(Tn * D);
  for (std::size_t t = 0; t < Tn; ++t) {
    auto tup = tuple_of(t, G, n);
    for (std::size_t k = 0; k < D; ++k) {
      SparseVec col;
      // g_1 psi(g_2..g_{n+1})
      for (std::size_t g = 0; g < G; ++g) {
        std::size_t row_t = g * Tn + t;
        for (auto& e : rho[g].columns[k]) col.push_back({std::uint32_t(row_t * D + e.index), e.value});
      }
      // (-1)^i psi(.., g_i g_{i+1}, ..): pick g_i = h, g_{i+1} = h^{-1} t_i
      for (unsigned i = 1; i <= n; ++i) {
        Elem sign = (i % 2) ? minus : Elem(1);
        std::vector<std::size_t> big(n + 1);
        for (std::size_t h = 0; h < G; ++h) {
          std::size_t pos = 0;
          for (unsigned j = 0; j + 1 < i; ++j) big[pos++] = tup[j];
          big[pos++] = h;
          big[pos++] = group.mul(group.inverse(h), tup[i - 1]);
          for (unsigned j = i; j < n; ++j) big[pos++] = tup[j];
          col.push_back({std::uint32_t(tuple_index(big, G) * D + k), sign});
        }
      }
      // (-1)^{n+1} psi(g_1..g_n)
      Elem last = ((n + 1) % 2) ? minus : Elem(1);
      for (std::size_t g = 0; g < G; ++g) col.push_back({std::uint32_t((t * G + g) * D + k), last});
      sort_merge(f, col);
      d.columns[t * D + k] = std::move(col);
    }
  }
  return d;
}

// Evaluates the defining formula directly on polynomial values.
Cochain coboundary_direct(const MatrixGroup& group, const Cochain& c) {
  const std::size_t G = group.order();
  const unsigned n = c.n;
  Cochain out = zero_cochain(group, n + 1, c.m);
  for (std::size_t t = 0; t < out.values.size(); ++t) {
    auto g = tuple_of(t, G, n + 1);
    std::vector<std::size_t> rest(g.begin() + 1, g.end());
    Polynomial v = act_on_poly(group, g[0], c.values[tuple_index(rest, G)]);
    for (unsigned i = 1; i <= n; ++i) {
      std::vector<std::size_t> contracted;
      for (unsigned j = 0; j < n + 1; ++j) {
        if (j + 1 == i) {
          contracted.push_back(group.mul(g[j], g[j + 1]));
          ++j;
        } else {
          contracted.push_back(g[j]);
        }
      }
      const Polynomial& term = c.values[tuple_index(contracted, G)];
      if (i % 2) v -= term;
      else v += term;
    }
    std::vector<std::size_t> head(g.begin(), g.end() - 1);
    const Polynomial& term = c.values[tuple_index(head, G)];
    if ((n + 1) % 2) v -= term;
    else v += term;
    out.values[t] = std::move(v);
  }
  return out;
}

}  // namespace

Cochain coboundary(const MatrixGroup& group, const Cochain& c) {
  if (c.values.size() != tuple_count(group.order(), c.n)) throw InputError("cochain has the wrong number of values");
  return coboundary_direct(group, c);
}

SparseMatrix differential(const MatrixGroup& group, unsigned n, unsigned m, std::size_t budget) {
  check_bar_budget(group, n + 1, m, budget);
  GradedBasis basis(group.dim(), m);
  SparseMatrix d = build_differential(group, n, basis);
  const Field& f = *group.field();
  // Audit d^{n+1} d^n = 0.
  std::size_t next = d.rows * group.order();
  if (next <= (std::size_t{1} << 18)) {
    SparseMatrix d2 = build_differential(group, n + 1, basis);
    for (auto& col : d.columns)
      if (!d2.apply(f, col).empty()) throw AuditError("d^" + std::to_string(n + 1) + " d^" + std::to_string(n) + " != 0");
  } else {
    for (std::size_t j : {std::size_t{0}, d.cols / 2, d.cols - 1}) {
      if (j >= d.cols) continue;
      Cochain c = cochain_from_vector(group, n + 1, d.columns[j], basis);
      for (auto& v : coboundary_direct(group, c).values)
        if (!v.is_zero()) throw AuditError("d^" + std::to_string(n + 1) + " d^" + std::to_string(n) + " != 0");
    }
  }
  return d;
}

CoboundarySpace::CoboundarySpace(const MatrixGroup& group, unsigned n, unsigned m, std::size_t budget)
    : n_(n), m_(m), basis_(group.dim(), m) {
  check_bar_budget(group, n, m, budget);
  ech_ = std::make_unique<SparseEchelon>(group.field(), tuple_count(group.order(), n) * basis_.size(), true);
  if (n == 0) return;
  SparseMatrix d = differential(group, n - 1, m, budget);
  for (auto& col : d.columns) ech_->insert(col);
}

std::optional<SparseVec> CoboundarySpace::preimage(const SparseVec& v) const {
  if (n_ == 0) {
    if (v.empty()) return SparseVec{};
    return std::nullopt;
  }
  return ech_->solve(v);
}

std::vector<Cochain> CohomologySlice::cocycle_reps(const MatrixGroup& group) const {
  std::vector<Cochain> out;
  for (auto& r : reps_) out.push_back(cochain_from_vector(group, i_, r, basis_));
  return out;
}

std::optional<std::vector<Elem>> CohomologySlice::project(const SparseVec& v) const {
  auto sol = ech_->solve(v);
  if (!sol) return std::nullopt;
  std::vector<Elem> coords(reps_.size(), 0);
  for (auto& e : *sol) {
    auto it = std::lower_bound(rep_slot_.begin(), rep_slot_.end(), e.index);
    if (it != rep_slot_.end() && *it == e.index) coords[std::size_t(it - rep_slot_.begin())] = e.value;
  }
  return coords;
}

bool CohomologySlice::is_coboundary(const SparseVec& v) const {
  auto c = project(v);
  if (!c) return false;
  return std::all_of(c->begin(), c->end(), [](Elem e) { return e == 0; });
}

CohomologySlice cohomology_slice(const MatrixGroup& group, unsigned i, unsigned m, std::size_t budget) {
  check_bar_budget(group, i + 1, m, budget);
  CohomologySlice s;
  s.i_ = i;
  s.m_ = m;
  s.field_ = group.field();
  s.basis_ = GradedBasis(group.dim(), m);
  s.cochain_dim_ = tuple_count(group.order(), i) * s.basis_.size();
  s.ech_ = std::make_shared<SparseEchelon>(group.field(), s.cochain_dim_, true);
  if (i > 0) {
    SparseMatrix b = differential(group, i - 1, m, budget);
    s.boundary_cols_ = std::move(b.columns);
    for (auto& col : s.boundary_cols_) s.ech_->insert(col);
  }
  s.coboundary_rank_ = s.ech_->rank();
  SparseMatrix d = differential(group, i, m, budget);
  auto cocycles = sparse_kernel(group.field(), d.row_vectors(), s.cochain_dim_);
  for (auto& z : cocycles) {
    SparseVec nf = s.ech_->normal_form(z);
    if (nf.empty()) continue;
    s.rep_slot_.push_back(std::uint32_t(s.ech_->inserted()));
    s.ech_->insert(nf);
    s.reps_.push_back(std::move(nf));
  }
  if (s.coboundary_rank_ + s.reps_.size() != cocycles.size() && i > 0)
    throw AuditError("coboundaries are not contained in the cocycles");
  return s;
}

namespace {

std::vector<SparseVec> transpose_columns(const std::vector<SparseVec>& cols, std::size_t rows) {
  SparseMatrix m{rows, cols.size(), cols};
  return m.row_vectors();
}

}  // namespace

PeriodicSlice periodic_oracle(const MatrixGroup& group, std::size_t generator, unsigned i, unsigned m) {
  if (generator >= group.order()) throw InputError("generator index out of range");
  if (group.generated_subgroup({generator}).size() != group.order())
    throw InputError("group is not cyclic on the given generator");
  const FieldPtr& field = group.field();
  const Field& f = *field;
  GradedBasis basis(group.dim(), m);
  const std::size_t D = basis.size();
  SparseMatrix T = action_matrix(group, generator, basis);

  std::vector<SparseVec> tm1(D), norm(D);
  for (std::size_t j = 0; j < D; ++j) {
    SparseVec e{{std::uint32_t(j), 1}};
    tm1[j] = sparse_axpy(f, f.neg(1), e, T.columns[j]);
    SparseVec acc, cur = e;
    for (std::size_t k = 0; k < group.order(); ++k) {
      acc = sparse_axpy(f, 1, cur, acc);
      cur = T.apply(f, cur);
    }
    norm[j] = std::move(acc);
  }
  const std::vector<SparseVec>* ker_of;
  const std::vector<SparseVec>* im_of;
  if (i == 0) {
    ker_of = &tm1;
    im_of = nullptr;
  } else if (i % 2) {
    ker_of = &norm;
    im_of = &tm1;
  } else {
    ker_of = &tm1;
    im_of = &norm;
  }
  auto ker = sparse_kernel(field, transpose_columns(*ker_of, D), D);
  SparseEchelon ech(field, D);
  if (im_of)
    for (auto& c : *im_of) ech.insert(c);
  PeriodicSlice out;
  for (auto& z : ker) {
    SparseVec nf = ech.normal_form(z);
    if (nf.empty()) continue;
    ech.insert(nf);
    out.basis.push_back(from_sparse(field, nf, basis));
  }
  out.dim = out.basis.size();
  return out;
}

Cochain multiply_cochain(const Polynomial& s, const Cochain& c) {
  auto deg = s.homogeneous_degree();
  if (s.is_zero() || !deg) throw InputError("multiplier must be a nonzero homogeneous polynomial");
  Cochain out{c.n, c.m + *deg, {}};
  out.values.reserve(c.values.size());
  for (auto& v : c.values) out.values.push_back(s * v);
  return out;
}

SparseVec multiply_cochain_vector(const Polynomial& s, const SparseVec& v, std::size_t tuples, const GradedBasis& from,
                                  const GradedBasis& to) {
  auto deg = s.homogeneous_degree();
  if (s.is_zero() || !deg || to.degree() != from.degree() + *deg) throw InputError("multiplier degree mismatch");
  const Field& f = *s.field();
  const std::size_t Df = from.size(), Dt = to.size();
  SparseVec out;
  for (auto& e : v) {
    std::size_t t = e.index / Df;
    if (t >= tuples) throw InputError("cochain vector index out of range");
    const Monomial& mono = from[e.index % Df];
    for (auto& [sm, sc] : s.terms())
      out.push_back({std::uint32_t(t * Dt + to.index_of(mono * sm)), f.mul(e.value, sc)});
  }
  sort_merge(f, out);
  return out;
}

Matrix s_action(const MatrixGroup& group, const Polynomial& s, const CohomologySlice& from, const CohomologySlice& to) {
  if (!is_invariant(group, s)) throw InputError("s is not invariant");
  auto deg = s.homogeneous_degree();
  if (s.is_zero() || !deg) throw InputError("s must be a nonzero homogeneous invariant");
  if (from.index() != to.index() || to.degree() != from.degree() + *deg)
    throw InputError("target slice does not match the source shifted by deg s");
  const unsigned n = from.index();
  Matrix out(group.field(), to.dim(), from.dim());
  auto image = [&](const SparseVec& v) {
    Cochain c = cochain_from_vector(group, n, v, from.basis());
    return cochain_vector(multiply_cochain(s, c), to.basis());
  };
  for (std::size_t j = 0; j < from.dim(); ++j) {
    auto coords = to.project(image(from.reps()[j]));
    if (!coords) throw AuditError("s times a cocycle is not a cocycle");
    for (std::size_t r = 0; r < to.dim(); ++r) out.at(r, j) = (*coords)[r];
  }
  for (auto& b : from.coboundary_generators())
    if (!b.empty() && !to.is_coboundary(image(b))) throw AuditError("s times a coboundary is not a coboundary");
  return out;
}

Cochain q_operator(unsigned mpow, const Cochain& c) {
  if (c.values.empty()) return c;
  const unsigned q = c.values.front().field()->q();
  Cochain out{c.n, c.m + mpow * (q - 1), {}};
  out.values.reserve(c.values.size());
  for (auto& v : c.values) out.values.push_back(steenrod_p(mpow, v));
  return out;
}

SparseMatrix q_operator_matrix(const MatrixGroup& group, unsigned n, unsigned m, unsigned mpow) {
  const unsigned q = group.field()->q();
  GradedBasis src(group.dim(), m), dst(group.dim(), m + mpow * (q - 1));
  const std::size_t T = tuple_count(group.order(), n);
  std::vector<SparseVec> block;
  for (auto& mono : src.monomials()) {
    SparseVec v = coeff_sparse(steenrod_p(mpow, Polynomial::monomial(group.field(), group.dim(), mono)), dst);
    std::sort(v.begin(), v.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
    block.push_back(std::move(v));
  }
  SparseMatrix out{T * dst.size(), T * src.size(), {}};
  out.columns.reserve(T * src.size());
  for (std::size_t t = 0; t < T; ++t) {
    for (auto& b : block) {
      SparseVec col;
      for (auto& e : b) col.push_back({std::uint32_t(t * dst.size() + e.index), e.value});
      out.columns.push_back(std::move(col));
    }
  }
  return out;
}

}  // namespace modinv
