#include <algorithm>
#include <set>
#include <utility>

#include "modinv/poly.hpp"

namespace modinv {

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis) {
  const Field& field = *f.field();
  Polynomial rest = f;
  Polynomial rem(f.field(), f.nvars());
  while (!rest.is_zero()) {
    const Monomial lm = rest.leading_monomial();
    const Elem lc = rest.leading_coeff();
    const Polynomial* divisor = nullptr;
    for (auto& g : basis) {
      if (!g.is_zero() && g.leading_monomial().divides(lm)) {
        divisor = &g;
        break;
      }
    }
    if (divisor) {
      Elem c = field.neg(field.div(lc, divisor->leading_coeff()));
      rest += divisor->times_monomial(divisor->leading_monomial().quotient_of(lm), c);
    } else {
      rem.add_term(lm, lc);
      rest.add_term(lm, field.neg(lc));
    }
  }
  return rem;
}

namespace {

Polynomial s_polynomial(const Polynomial& a, const Polynomial& b) {
  const Field& field = *a.field();
  Monomial l = a.leading_monomial().lcm(b.leading_monomial());
  Polynomial sa = a.times_monomial(a.leading_monomial().quotient_of(l), field.inv(a.leading_coeff()));
  Polynomial sb = b.times_monomial(b.leading_monomial().quotient_of(l), field.inv(b.leading_coeff()));
  return sa - sb;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.exps[i] && b.exps[i]) return false;
  return true;
}

Polynomial monic(const Polynomial& f) { return f.scaled(f.field()->inv(f.leading_coeff())); }

}  // namespace

std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& gens) {
  std::vector<Polynomial> g;
  for (auto& f : gens)
    if (!f.is_zero()) g.push_back(monic(f));
  if (g.empty()) return g;

  std::set<std::pair<std::size_t, std::size_t>> pending;
  for (std::size_t j = 1; j < g.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pending.insert({i, j});

  auto is_pending = [&](std::size_t a, std::size_t b) { return pending.count({std::min(a, b), std::max(a, b)}) > 0; };

  while (!pending.empty()) {
    auto [i, j] = *pending.begin();
    pending.erase(pending.begin());
    const Monomial& li = g[i].leading_monomial();
    const Monomial& lj = g[j].leading_monomial();
    if (coprime(li, lj)) continue;  // first criterion
    Monomial l = li.lcm(lj);
    bool chain = false;  // second criterion
    for (std::size_t k = 0; k < g.size() && !chain; ++k) {
      if (k == i || k == j) continue;
      if (g[k].leading_monomial().divides(l) && !is_pending(i, k) && !is_pending(j, k)) chain = true;
    }
    if (chain) continue;
    Polynomial r = normal_form(s_polynomial(g[i], g[j]), g);
    if (r.is_zero()) continue;
    g.push_back(monic(r));
    std::size_t n = g.size() - 1;
    for (std::size_t k = 0; k < n; ++k) pending.insert({k, n});
  }

  // Minimalize: drop elements whose leading monomial is divisible by another's.
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial& lj = g[j].leading_monomial();
      const Monomial& li = g[i].leading_monomial();
      if (lj.divides(li) && (lj != li || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  // Interreduce tails.
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Polynomial head = Polynomial::monomial(minimal[i].field(), minimal[i].nvars(), minimal[i].leading_monomial(), 1);
    minimal[i] = head + normal_form(minimal[i] - head, others);
  }
  std::sort(minimal.begin(), minimal.end(), [](const Polynomial& a, const Polynomial& b) {
    return grlex_less(a.leading_monomial(), b.leading_monomial());
  });

  for (std::size_t j = 1; j < minimal.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (!normal_form(s_polynomial(minimal[i], minimal[j]), minimal).is_zero())
        throw AuditError("Buchberger output is not a Groebner basis");
  return minimal;
}

bool is_zero_dimensional(const std::vector<Polynomial>& gens) {
  if (gens.empty()) return false;
  const std::size_t nvars = gens.front().nvars();
  for (auto& f : gens) {
    if (f.nvars() != nvars) throw InputError("generators over different numbers of variables");
    if (!f.is_homogeneous()) throw InputError("zero-dimensionality test expects homogeneous generators");
  }
  if (nvars == 0) return true;
  auto gb = groebner_basis(gens);
  for (auto& g : gb)
    if (g.leading_monomial().degree() == 0) return true;
  for (std::size_t v = 0; v < nvars; ++v) {
    bool pure = false;
    for (auto& g : gb) {
      const Monomial& lm = g.leading_monomial();
      bool only_v = lm.exps[v] > 0;
      for (std::size_t w = 0; w < nvars && only_v; ++w)
        if (w != v && lm.exps[w] != 0) only_v = false;
      if (only_v) pure = true;
    }
    if (!pure) return false;
  }
  return true;
}

}  // namespace modinv
