#include "modinv/group.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace modinv {

GroupContext::GroupContext(FieldPtr f, std::size_t dim) : field(std::move(f)), d(dim) {
  if (!field) throw InputError("group context without field");
  if (d < 1) throw InputError("dimension of V must be at least 1");
  if (d > kMaxVars) throw InputError("dimension of V exceeds " + std::to_string(kMaxVars));
}

bool is_invertible(const Matrix& m) { return m.rows() == m.cols() && reduce(m).rank == m.rows(); }

Matrix matrix_inverse(const Matrix& m) {
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  Reduction red = reduce(aug);
  if (red.rank < n || red.pivots[n - 1] != n - 1) throw InputError("matrix is singular");
  Matrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = red.rref.at(i, n + j);
  return inv;
}

namespace {

struct MatrixKeyLess {
  bool operator()(const Matrix& a, const Matrix& b) const { return a.entries() < b.entries(); }
};

}  // namespace

MatrixGroup MatrixGroup::close(const GroupContext& ctx, const std::vector<Matrix>& generators, std::size_t cap) {
  MatrixGroup g(ctx);
  const FieldPtr& field = ctx.field;
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const Matrix& m = generators[k];
    if (m.rows() != ctx.d || m.cols() != ctx.d)
      throw InputError("generator " + std::to_string(k) + " is not " + std::to_string(ctx.d) + "x" +
                       std::to_string(ctx.d));
    if (!same_field(m.field(), field)) throw InputError("generator " + std::to_string(k) + " over another field");
    if (!is_invertible(m)) throw InputError("generator " + std::to_string(k) + " not invertible");
  }

  // Breadth first from the identity, right-multiplying by generators in order.
  std::map<Matrix, std::size_t, MatrixKeyLess> index;
  auto add = [&](const Matrix& m) -> std::size_t {
    auto it = index.find(m);
    if (it != index.end()) return it->second;
    if (g.elements_.size() >= cap)
      throw BudgetError("group closure exceeds the cap of " + std::to_string(cap) + " elements");
    index.emplace(m, g.elements_.size());
    g.elements_.push_back(m);
    return g.elements_.size() - 1;
  };
  add(Matrix::identity(field, ctx.d));
  for (std::size_t pos = 0; pos < g.elements_.size(); ++pos) {
    for (auto& gen : generators) add(g.elements_[pos] * gen);
  }
  for (auto& m : generators) g.generators_.push_back(index.at(m));

  const std::size_t n = g.elements_.size();
  g.table_.assign(n * n, 0);
  g.inverses_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto it = index.find(g.elements_[a] * g.elements_[b]);
      if (it == index.end()) throw AuditError("group closure is not closed under multiplication");
      g.table_[a * n + b] = it->second;
      if (it->second == 0) g.inverses_[a] = b;
    }
  }

  g.var_images_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    Matrix inv = matrix_inverse(g.elements_[a]);
    for (std::size_t i = 0; i < ctx.d; ++i) {
      auto row = inv.row(i);
      Polynomial img = Polynomial::linear_form(field, row);
      if (img.size() != 1) g.monomial_ = false;
      g.var_images_[a].push_back(std::move(img));
    }
  }
  return g;
}

std::size_t MatrixGroup::element_order(std::size_t a) const {
  std::size_t k = 1, x = a;
  while (x != 0) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

std::optional<std::size_t> MatrixGroup::index_of(const Matrix& m) const {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i] == m) return i;
  return std::nullopt;
}

std::vector<std::size_t> MatrixGroup::generated_subgroup(const std::vector<std::size_t>& gens) const {
  std::vector<char> in(order(), 0);
  std::vector<std::size_t> elems{0};
  in[0] = 1;
  for (std::size_t pos = 0; pos < elems.size(); ++pos) {
    for (auto g : gens) {
      std::size_t p = mul(elems[pos], g);
      if (!in[p]) {
        in[p] = 1;
        elems.push_back(p);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

bool MatrixGroup::is_subgroup(const std::vector<std::size_t>& subset) const {
  if (subset.empty()) return false;
  std::vector<char> in(order(), 0);
  for (auto s : subset) {
    if (s >= order()) return false;
    in[s] = 1;
  }
  for (auto a : subset)
    for (auto b : subset)
      if (!in[mul(a, b)]) return false;
  return true;
}

Polynomial act_on_poly(const MatrixGroup& group, std::size_t g, const Polynomial& f) {
  if (f.nvars() != group.dim() || !same_field(f.field(), group.field()))
    throw InputError("polynomial does not belong to the group's context");
  const auto& images = group.variable_images(g);
  Polynomial out(f.field(), f.nvars());
  if (g == 0) return f;
  // Powers of the variable images, built on demand.
  std::vector<std::vector<Polynomial>> powers(group.dim());
  auto power = [&](std::size_t i, unsigned e) -> const Polynomial& {
    auto& list = powers[i];
    if (list.empty()) list.push_back(group.context().one());
    while (list.size() <= e) list.push_back(list.back() * images[i]);
    return list[e];
  };
  const Field& field = *f.field();
  for (auto& [m, c] : f.terms()) {
    if (group.is_monomial()) {
      Monomial img;
      Elem coef = c;
      for (std::size_t i = 0; i < group.dim(); ++i) {
        if (m.exps[i] == 0) continue;
        const auto& [vm, vc] = *images[i].terms().begin();
        for (std::size_t j = 0; j < group.dim(); ++j)
          if (vm.exps[j]) img.exps[j] = static_cast<std::uint16_t>(img.exps[j] + m.exps[i]);
        coef = field.mul(coef, field.pow(vc, m.exps[i]));
      }
      out.add_term(img, coef);
      continue;
    }
    Polynomial term = Polynomial::constant(f.field(), f.nvars(), c);
    for (std::size_t i = 0; i < group.dim(); ++i)
      if (m.exps[i]) term = term * power(i, m.exps[i]);
    out += term;
  }
  return out;
}

Polynomial act_by_matrix(const Matrix& g, const Polynomial& f) {
  const std::size_t d = f.nvars();
  if (g.rows() != d || g.cols() != d) throw InputError("matrix size does not match the polynomial ring");
  Matrix inv = matrix_inverse(g);
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < d; ++i) images.push_back(Polynomial::linear_form(f.field(), inv.row(i)));
  Polynomial out(f.field(), d);
  for (auto& [m, c] : f.terms()) {
    Polynomial term = Polynomial::constant(f.field(), d, c);
    for (std::size_t i = 0; i < d; ++i)
      if (m.exps[i]) term = term * images[i].pow(m.exps[i]);
    out += term;
  }
  return out;
}

SparseMatrix action_matrix(const MatrixGroup& group, std::size_t g, const GradedBasis& basis) {
  SparseMatrix m{basis.size(), basis.size(), {}};
  m.columns.reserve(basis.size());
  const FieldPtr& field = group.field();
  for (auto& mono : basis.monomials()) {
    Polynomial img = act_on_poly(group, g, Polynomial::monomial(field, group.dim(), mono));
    SparseVec col = coeff_sparse(img, basis);
    std::sort(col.begin(), col.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
    m.columns.push_back(std::move(col));
  }
  return m;
}

FixedSubspace fixed_subspace(const MatrixGroup& group, const std::vector<std::size_t>& subgroup) {
  if (!group.is_subgroup(subgroup)) throw InputError("element set is not a subgroup");
  const std::size_t d = group.dim();
  const FieldPtr& field = group.field();
  const Field& f = *field;
  Matrix stacked(field, d * subgroup.size(), d);
  for (std::size_t k = 0; k < subgroup.size(); ++k) {
    const Matrix& h = group.element(subgroup[k]);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) stacked.at(k * d + i, j) = i == j ? f.sub(h.at(i, j), 1) : h.at(i, j);
  }
  Reduction red = reduce(stacked);
  return FixedSubspace{red.kernel.cols(), red.kernel};
}

std::vector<std::size_t> sylow_p(const MatrixGroup& group) {
  const unsigned p = group.field()->p();
  std::size_t target = 1, n = group.order();
  while (n % p == 0) {
    n /= p;
    target *= p;
  }
  auto is_p_power = [p](std::size_t k) {
    while (k % p == 0) k /= p;
    return k == 1;
  };
  std::vector<std::size_t> gens;
  std::vector<std::size_t> current{0};
  for (std::size_t x = 1; x < group.order() && current.size() < target; ++x) {
    if (!is_p_power(group.element_order(x))) continue;
    if (std::binary_search(current.begin(), current.end(), x)) continue;
    auto trial = gens;
    trial.push_back(x);
    auto h = group.generated_subgroup(trial);
    if (is_p_power(h.size())) {
      gens = std::move(trial);
      current = std::move(h);
    }
  }
  if (current.size() != target) throw AuditError("Sylow search ended below the full p-part of |G|");
  return current;
}

}  // namespace modinv
