#include "modinv/invariants.hpp"

#include <algorithm>
#include <random>

namespace modinv {

std::optional<std::vector<Elem>> InvariantBasis::coordinates(const Polynomial& f) const {
  if (f.is_zero()) return std::vector<Elem>(dim(), 0);
  if (f.homogeneous_degree() != degree) return std::nullopt;
  std::vector<Elem> v = coeff_vector(f, monomials);
  std::vector<Elem> c(dim());
  for (std::size_t j = 0; j < dim(); ++j) c[j] = v[lead[j]];
  if (combine(c) != f) return std::nullopt;
  return c;
}

Polynomial InvariantBasis::combine(const std::vector<Elem>& coords) const {
  SparseVec acc;
  for (std::size_t j = 0; j < dim(); ++j)
    if (coords[j]) acc = sparse_axpy(*field, coords[j], coeffs[j], acc);
  return from_sparse(field, acc, monomials);
}

bool is_invariant(const MatrixGroup& group, const Polynomial& f) {
  for (auto g : group.generator_indices())
    if (act_on_poly(group, g, f) != f) return false;
  return true;
}

InvariantBasis invariant_space(const MatrixGroup& group, unsigned n) {
  const FieldPtr& field = group.field();
  const Field& f = *field;
  InvariantBasis out;
  out.degree = n;
  out.monomials = GradedBasis(group.dim(), n);
  out.field = field;
  const std::size_t dim = out.monomials.size();

  std::vector<std::size_t> gens = group.generator_indices();
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  gens.erase(std::remove(gens.begin(), gens.end(), std::size_t{0}), gens.end());

  std::vector<SparseVec> rows;
  for (auto g : gens) {
    SparseMatrix rho = action_matrix(group, g, out.monomials);
    auto rv = rho.row_vectors();
    for (std::size_t i = 0; i < dim; ++i) {
      SparseVec r = sparse_axpy(f, f.neg(1), SparseVec{{std::uint32_t(i), 1}}, rv[i]);
      if (!r.empty()) rows.push_back(std::move(r));
    }
  }
  auto ker = sparse_kernel(field, rows, dim, &out.lead);
  for (auto& v : ker) {
    out.basis.push_back(from_sparse(field, v, out.monomials));
    out.coeffs.push_back(std::move(v));
  }
  return out;
}

namespace {

std::size_t field_power(std::size_t q, std::size_t d) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < d; ++i) r *= q;
  return r;
}

void check_budget(const GroupContext& ctx, std::size_t budget) {
  std::size_t q = ctx.field->q(), r = 1;
  for (std::size_t i = 0; i < ctx.d; ++i) {
    r *= q;
    if (r > budget) throw BudgetError("q^d exceeds the Dickson budget of " + std::to_string(budget));
  }
}

// f(x) with every coefficient polynomial raised to the q-th power.
Polynomial frobenius_q(const Polynomial& f) {
  const unsigned q = f.field()->q();
  Polynomial out(f.field(), f.nvars());
  for (auto& [m, c] : f.terms()) {
    Monomial mq;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      unsigned e = unsigned(m.exps[i]) * q;
      if (e > 0xffff) throw BudgetError("exponent overflow in Dickson construction");
      mq.exps[i] = std::uint16_t(e);
    }
    out.add_term(mq, c);  // c^q = c in F_q
  }
  return out;
}

void verify_gl_invariance(const GroupContext& ctx, const Polynomial& f) {
  std::mt19937 rng(0x5eed);
  for (int k = 0; k < 4; ++k) {
    Matrix g = random_invertible(ctx.field, ctx.d, rng);
    if (act_by_matrix(g, f) != f) throw AuditError("Dickson class is not GL-invariant");
  }
}

// F_k(X) = prod over v in span(x_0..x_{k-1}) of (X + v) is additive in X:
// F_k(X) = sum_i c[i] X^{q^i}, and F_{k+1}(X) = F_k(X)^q - F_k(x_k)^{q-1} F_k(X).
std::vector<Polynomial> dickson_coefficients(const GroupContext& ctx) {
  const FieldPtr& field = ctx.field;
  const std::size_t d = ctx.d;
  const unsigned q = field->q();
  std::vector<Polynomial> c{ctx.one()};
  for (std::size_t k = 0; k < d; ++k) {
    Polynomial at = ctx.zero();
    for (std::size_t i = 0; i < c.size(); ++i)
      at += c[i] * Polynomial::monomial(field, d, Monomial::var(k, unsigned(field_power(q, i))));
    Polynomial w = at.pow(q - 1);
    std::vector<Polynomial> next(c.size() + 1, ctx.zero());
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += frobenius_q(c[i]);
      next[i] -= w * c[i];
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace

Hsop dickson_family(const GroupContext& ctx, std::size_t budget) {
  check_budget(ctx, budget);
  const unsigned q = ctx.field->q();
  auto c = dickson_coefficients(ctx);
  Hsop h;
  std::size_t qd = field_power(q, ctx.d);
  for (std::size_t i = 0; i < ctx.d; ++i) {
    h.elements.push_back(c[i]);
    h.degrees.push_back(unsigned(qd - field_power(q, i)));
    if (c[i].homogeneous_degree() != h.degrees.back()) throw AuditError("Dickson class has the wrong degree");
    verify_gl_invariance(ctx, c[i]);
  }
  if (!is_zero_dimensional(h.elements)) throw AuditError("Dickson family failed the hsop check");
  return h;
}

// The X-coefficient of prod_v (X + v) is the product of the nonzero forms.
DicksonClass dickson_top(const GroupContext& ctx, std::size_t budget) {
  check_budget(ctx, budget);
  auto c = dickson_coefficients(ctx);
  verify_gl_invariance(ctx, c[0]);
  return DicksonClass{c[0], unsigned(field_power(ctx.field->q(), ctx.d) - 1)};
}

Polynomial reynolds(const MatrixGroup& group, const Polynomial& f) {
  const Field& field = *group.field();
  if (group.order() % field.p() == 0) throw InputError("p divides |G|; the Reynolds operator is undefined");
  Polynomial sum(f.field(), f.nvars());
  for (std::size_t g = 0; g < group.order(); ++g) sum += act_on_poly(group, g, f);
  return sum.scaled(field.inv(field.from_int(static_cast<long long>(group.order()))));
}

bool validate_hsop(const MatrixGroup& group, const std::vector<Polynomial>& theta) {
  if (theta.size() != group.dim())
    throw InputError("an hsop needs exactly " + std::to_string(group.dim()) + " elements");
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const auto& t = theta[i];
    if (t.nvars() != group.dim() || !same_field(t.field(), group.field()))
      throw InputError("hsop element " + std::to_string(i) + " is outside the ring");
    if (t.is_zero() || !t.is_homogeneous() || t.degree() == 0)
      throw InputError("hsop element " + std::to_string(i) + " is not homogeneous of positive degree");
    if (!is_invariant(group, t)) throw InputError("hsop element " + std::to_string(i) + " is not invariant");
  }
  return is_zero_dimensional(theta);
}

const InvariantBasis& InvariantRing::slice(unsigned n) {
  auto it = slices_.find(n);
  if (it == slices_.end()) it = slices_.emplace(n, invariant_space(group_, n)).first;
  return it->second;
}

Matrix InvariantRing::multiplication(const Polynomial& f, unsigned n) {
  auto e = f.homogeneous_degree();
  if (f.is_zero() || !e) throw InputError("multiplier must be nonzero and homogeneous");
  const auto& src = slice(n);
  const auto& dst = slice(n + *e);
  Matrix out(group_.field(), dst.dim(), src.dim());
  for (std::size_t j = 0; j < src.dim(); ++j) {
    auto c = dst.coordinates(f * src.basis[j]);
    if (!c) throw InputError("multiplier is not invariant");
    for (std::size_t r = 0; r < dst.dim(); ++r) out.at(r, j) = (*c)[r];
  }
  return out;
}

}  // namespace modinv
