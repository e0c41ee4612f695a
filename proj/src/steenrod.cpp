#include "modinv/steenrod.hpp"

#include <algorithm>

#include "modinv/invariants.hpp"

namespace modinv {

namespace {

// Adds c * prod_k C(e_k, j_k) x_k^{e_k + j_k (q-1)} over all j with sum j = i
// (or over all j when i is negative, bucketing by sum j).
struct PowerExpander {
  const Field& field;
  unsigned q;
  std::size_t nvars;
  const Monomial* mono = nullptr;
  Elem coef = 0;
  std::vector<Polynomial>* buckets = nullptr;
  long target = -1;

  void run(std::size_t k, unsigned used, Elem acc, Monomial out) {
    if (k == nvars) {
      if (target >= 0 && used != unsigned(target)) return;
      (*buckets)[target >= 0 ? 0 : used].add_term(out, acc);
      return;
    }
    unsigned e = mono->exps[k];
    unsigned jmax = e;
    if (target >= 0) jmax = std::min<unsigned>(e, unsigned(target) - used);
    for (unsigned j = 0; j <= jmax; ++j) {
      unsigned b = binomial_mod(e, j, field.p());
      if (b == 0) continue;
      unsigned ne = e + j * (q - 1);
      if (ne > 0xffff) throw BudgetError("exponent overflow in Steenrod power");
      Monomial next = out;
      next.exps[k] = std::uint16_t(ne);
      run(k + 1, used + j, field.mul(acc, field.from_int(b)), next);
    }
  }
};

}  // namespace

TotalPower total_power(const Polynomial& f) {
  TotalPower t;
  t.base = f;
  const unsigned top = f.is_zero() ? 0 : f.degree();
  t.coeffs.assign(top + 1, Polynomial(f.field(), f.nvars()));
  PowerExpander ex{*f.field(), f.field()->q(), f.nvars()};
  ex.buckets = &t.coeffs;
  for (auto& [m, c] : f.terms()) {
    ex.mono = &m;
    ex.run(0, 0, c, Monomial{});
  }
  return t;
}

Polynomial steenrod_p(unsigned i, const Polynomial& f) {
  std::vector<Polynomial> out(1, Polynomial(f.field(), f.nvars()));
  if (!f.is_zero() && i > f.degree()) return out[0];
  PowerExpander ex{*f.field(), f.field()->q(), f.nvars()};
  ex.buckets = &out;
  ex.target = long(i);
  for (auto& [m, c] : f.terms()) {
    ex.mono = &m;
    ex.run(0, 0, c, Monomial{});
  }
  return out[0];
}

Polynomial check_invariant_closure(const MatrixGroup& group, const Polynomial& s, unsigned i) {
  if (s.nvars() != group.dim() || !same_field(s.field(), group.field()))
    throw InputError("polynomial does not belong to the group's context");
  if (!is_invariant(group, s)) throw InputError("input is not invariant");
  Polynomial r = steenrod_p(i, s);
  if (!is_invariant(group, r)) throw AuditError("P^" + std::to_string(i) + " left the invariant ring");
  return r;
}

}  // namespace modinv
