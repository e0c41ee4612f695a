// Acceptance run: one PASS/FAIL line per criterion. Everything is exact over
// finite fields (tolerance 0); the only inexact quantity is wall time, and
// each criterion carries its own time limit.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "modinv/annihilators.hpp"
#include "modinv/homology.hpp"
#include "modinv/localcoh.hpp"
#include "modinv/steenrod.hpp"

using namespace modinv;

namespace {

struct Verdict {
  bool ok = true;
  std::ostringstream why;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

MatrixGroup trivial_f2() {
  auto f = Field::make(2);
  return MatrixGroup::close(GroupContext(f, 2), {Matrix::identity(f, 2)});
}

MatrixGroup transvection_f2() {
  auto f = Field::make(2);
  return MatrixGroup::close(GroupContext(f, 2), {Matrix(f, 2, 2, {1, 1, 0, 1})});
}

MatrixGroup minus_one_f3() {
  auto f = Field::make(3);
  return MatrixGroup::close(GroupContext(f, 2), {Matrix(f, 2, 2, {2, 0, 0, 2})});
}

MatrixGroup z3_f3() {
  auto f = Field::make(3);
  return MatrixGroup::close(GroupContext(f, 2), {Matrix(f, 2, 2, {1, 1, 0, 1})});
}

// Z/4 cyclically permuting the coordinates of F_2^4.
MatrixGroup bertin() {
  auto f = Field::make(2);
  Matrix c(f, 4, 4);
  for (std::size_t i = 0; i < 4; ++i) c.at((i + 1) % 4, i) = 1;
  return MatrixGroup::close(GroupContext(f, 4), {c});
}

std::vector<Polynomial> elementary_symmetric(const GroupContext& ctx) {
  std::vector<Polynomial> e(ctx.d + 1, ctx.zero());
  e[0] = ctx.one();
  for (std::size_t v = 0; v < ctx.d; ++v)
    for (std::size_t k = ctx.d; k >= 1; --k) e[k] = e[k] + e[k - 1] * ctx.var(v);
  return {e.begin() + 1, e.end()};
}

Polynomial random_homogeneous(const FieldPtr& f, std::size_t d, unsigned deg, std::mt19937& rng) {
  std::uniform_int_distribution<unsigned> coef(1, f->q() - 1);
  Polynomial p(f, d);
  Monomial m;
  for (int k = 0; k < 4; ++k) {
    m = Monomial{};
    for (unsigned e = 0; e < deg; ++e) m.exps[rng() % d]++;
    p.add_term(m, Elem(coef(rng)));
  }
  if (p.is_zero()) p.add_term(m, 1);  // repeated monomials can cancel
  return p;
}

// P^i by literal substitution x_j -> x_j + x_j^q xi, xi an extra variable.
Polynomial substituted_power(unsigned i, const Polynomial& f) {
  const std::size_t d = f.nvars();
  const FieldPtr& field = f.field();
  Polynomial xi = Polynomial::variable(field, d + 1, d), total(field, d + 1);
  for (auto& [m, c] : f.terms()) {
    Polynomial term = Polynomial::constant(field, d + 1, c);
    for (std::size_t j = 0; j < d; ++j) {
      Polynomial x = Polynomial::variable(field, d + 1, j);
      term = term * (x + x.pow(field->q()) * xi).pow(m.exps[j]);
    }
    total += term;
  }
  Polynomial out(field, d);
  for (auto& [m, c] : total.terms())
    if (m.exps[d] == i) {
      Monomial mm = m;
      mm.exps[d] = 0;
      out.add_term(mm, c);
    }
  return out;
}

Cochain random_cochain(const MatrixGroup& g, unsigned n, unsigned m, std::mt19937& rng) {
  GradedBasis b(g.dim(), m);
  Cochain c = zero_cochain(g, n, m);
  std::uniform_int_distribution<unsigned> coef(0, g.field()->q() - 1);
  for (auto& v : c.values)
    for (int k = 0; k < 3; ++k) v.add_term(b[rng() % b.size()], Elem(coef(rng)));
  return c;
}

Polynomial random_invariant(const MatrixGroup& g, unsigned deg, std::mt19937& rng) {
  auto inv = invariant_space(g, deg);
  if (inv.dim() == 0) return g.context().zero();
  std::vector<Elem> c(inv.dim());
  for (auto& e : c) e = Elem(rng() % g.field()->q());
  auto s = inv.combine(c);
  return s.is_zero() ? inv.basis[0] : s;
}

// ---------------------------------------------------------------------------

Verdict steenrod_laws() {
  Verdict v;
  std::mt19937 rng(101);
  for (auto f : {Field::make(2), Field::make(3), Field::make(2, 2)}) {
    const unsigned q = f->q();
    for (int k = 0; k < 200; ++k) {
      std::size_t d = 1 + rng() % 3;
      unsigned nu = rng() % 7, nv = rng() % 7;
      auto u = random_homogeneous(f, d, nu, rng), w = random_homogeneous(f, d, nv, rng);
      v.require(steenrod_p(0, u) == u, "P^0 != id");
      v.require(steenrod_p(nu, u) == u.pow(q), "P^{deg f} f != f^q");
      v.require(steenrod_p(nu + 1, u).is_zero(), "P^i f != 0 above deg f");
      for (unsigned i = 0; i <= nu; ++i) v.require(steenrod_p(i, u) == substituted_power(i, u), "P^i differs from substitution");
      for (unsigned kk = 0; kk <= nu + nv; ++kk) {
        Polynomial rhs(f, d);
        for (unsigned i = 0; i <= kk; ++i) rhs += steenrod_p(i, u) * steenrod_p(kk - i, w);
        v.require(steenrod_p(kk, u * w) == rhs, "Cartan formula fails");
      }
      auto sigma = random_invertible(f, d, rng);
      for (unsigned i = 0; i <= nu; ++i)
        v.require(act_by_matrix(sigma, steenrod_p(i, u)) == steenrod_p(i, act_by_matrix(sigma, u)), "equivariance fails");
      for (std::size_t j = 0; j < d; ++j)
        for (unsigned i = 2; i <= 3; ++i)
          v.require(steenrod_p(i, Polynomial::variable(f, d, j)).is_zero(), "P^i(x) != 0 for i >= 2");
    }
  }
  return v;
}

Verdict cochain_complex() {
  Verdict v;
  for (auto g : {trivial_f2(), transvection_f2(), bertin()})
    for (unsigned n = 0; n <= 2; ++n)
      for (unsigned m = 0; m <= 8; ++m) {
        auto d0 = differential(g, n, m), d1 = differential(g, n + 1, m);
        for (auto& col : d0.columns) v.require(d1.apply(*g.field(), col).empty(), "d d != 0");
      }
  return v;
}

Verdict q_operators() {
  Verdict v;
  std::mt19937 rng(103);
  int cochains = 0;
  for (auto g : {transvection_f2(), z3_f3(), bertin()}) {
    const int reps = g.order() == 4 ? 10 : 25;
    for (int k = 0; k < reps; ++k, ++cochains) {
      unsigned n = rng() % 2, m = 1 + rng() % 3;
      auto psi = random_cochain(g, n, m, rng);
      auto s = random_invariant(g, 1 + rng() % 3, rng);
      auto dpsi = coboundary(g, psi);
      for (unsigned mp = 0; mp <= 4; ++mp) {
        v.require(coboundary(g, q_operator(mp, psi)).values == q_operator(mp, dpsi).values, "d Q != Q d");
        if (s.is_zero()) continue;
        auto lhs = q_operator(mp, multiply_cochain(s, psi));
        for (std::size_t t = 0; t < psi.values.size(); ++t) {
          Polynomial rhs = g.context().zero();
          for (unsigned a = 0; a <= mp; ++a) rhs += steenrod_p(a, s) * q_operator(mp - a, psi).values[t];
          v.require(lhs.values[t] == rhs, "module formula fails");
        }
      }
    }
  }
  v.require(cochains >= 50, "fewer than 50 cochains");
  return v;
}

Verdict oracle_equivalence() {
  Verdict v;
  auto z2 = transvection_f2();
  for (unsigned i = 0; i <= 3; ++i)
    for (unsigned m = 0; m <= 8; ++m)
      v.require(periodic_oracle(z2, 1, i, m).dim == cohomology_slice(z2, i, m).dim(), "Z/2 dims differ");
  auto z4 = bertin();
  for (unsigned i = 0; i <= 2; ++i)
    for (unsigned m = 0; m <= 4; ++m)
      v.require(periodic_oracle(z4, 1, i, m).dim == cohomology_slice(z4, i, m).dim(), "Z/4 dims differ");
  return v;
}

Verdict main_certificate() {
  Verdict v;
  auto g = transvection_f2();
  auto s = dickson_top(g.context()).poly;
  auto cert = nilpotency_search(g, 1, s, 12, 4);
  v.require(cert.found, "no certificate");
  std::string why;
  v.require(cert.found && recheck_certificate(g, cert, &why), "recheck failed: " + why);
  v.require(cert.a == 1, "a != 1 (pinned)");
  return v;
}

Verdict pstar_check() {
  Verdict v;
  auto g = transvection_f2();
  auto w = windowed_annihilator(g, 1, 12, 6);
  std::size_t tested = 0;
  for (unsigned k = 0; k < w.by_degree.size(); ++k) {
    const auto& b = w.by_degree[k];
    // every nonzero element of the degree-k piece (F_2, small dimension)
    v.require(b.size() < 16, "degree piece too large to enumerate");
    for (std::uint32_t mask = 1; mask < (1u << b.size()); ++mask) {
      Polynomial t = g.context().zero();
      for (std::size_t j = 0; j < b.size(); ++j)
        if (mask >> j & 1) t += b[j];
      auto r = pstar_invariance_check(g, 1, t, 3, 12);
      v.require(r.passed, "P* check fails in degree " + std::to_string(k));
      ++tested;
    }
  }
  v.require(tested > 0, "empty windowed annihilator");
  return v;
}

Verdict dickson() {
  Verdict v;
  std::mt19937 rng(107);
  for (auto [q, d] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}}) {
    auto f = Field::make(q);
    GroupContext ctx(f, d);
    auto top = dickson_top(ctx);
    unsigned qd = 1;
    for (unsigned k = 0; k < d; ++k) qd *= q;
    v.require(top.degree == qd - 1 && top.poly.homogeneous_degree() == qd - 1, "deg d_{d,0} != q^d - 1");
    for (int k = 0; k < 100; ++k)
      v.require(act_by_matrix(random_invertible(f, d, rng), top.poly) == top.poly, "d_{d,0} not GL-invariant");
    auto fam = dickson_family(ctx);
    auto triv = MatrixGroup::close(ctx, {Matrix::identity(f, d)});
    v.require(validate_hsop(triv, fam.elements), "Dickson family is not an hsop");
  }
  return v;
}

Verdict koszul_cm() {
  Verdict v;
  auto tv = transvection_f2();
  auto m1 = minus_one_f3();
  auto x1 = tv.context().var(0), y1 = tv.context().var(1);
  auto x3 = m1.context().var(0), y3 = m1.context().var(1);
  std::vector<std::pair<const MatrixGroup*, std::vector<Polynomial>>> cases{{&tv, {y1, x1 * x1 + x1 * y1}},
                                                                             {&m1, {x3 * x3, y3 * y3}}};
  for (auto& [g, x] : cases) {
    InvariantRing s(*g);
    KoszulComplex k(s, x);
    for (unsigned i = 1; i <= 2; ++i)
      for (unsigned n = 0; n <= 12; ++n) v.require(k.slice(i, n).dim() == 0, "H_i != 0");
    for (unsigned t = 1; t <= 2; ++t)
      for (unsigned n = 0; n <= 12; ++n) v.require(colon_quotient_slice(s, x, t, n).dim() == 0, "colon quotient != 0");
    auto e = depth_estimate(*g, x, 12);
    v.require(e.lower == 2 && e.upper == 2, "depth bounds != d");
  }
  return v;
}

Verdict local_cohomology_cm() {
  Verdict v;
  auto tv = transvection_f2();
  auto m1 = minus_one_f3();
  auto x1 = tv.context().var(0), y1 = tv.context().var(1);
  auto x3 = m1.context().var(0), y3 = m1.context().var(1);
  std::vector<std::pair<const MatrixGroup*, std::vector<Polynomial>>> cases{{&tv, {y1, x1 * x1 + x1 * y1}},
                                                                             {&m1, {x3 * x3, y3 * y3}}};
  for (auto& [g, th] : cases) {
    auto res = free_resolution(present_over_hsop(*g, th, 12), 2);
    for (unsigned j = 0; j < 2; ++j) {
      ExtModule e(res, 2 - j);
      for (int n = -12; n <= 12; ++n) v.require(e.dim(n) == 0, "Ext^{d-j} != 0 for j < d");
    }
  }
  return v;
}

Verdict bertin_pipeline(std::string& detail) {
  Verdict v;
  auto g = bertin();
  const auto& ctx = g.context();
  auto d40 = dickson_top(ctx).poly;
  std::ostringstream info;

  // (a)
  std::vector<std::size_t> all(g.order());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  auto fix = fixed_subspace(g, all);
  auto fixp = fixed_subspace(g, sylow_p(g));
  unsigned es = std::min<unsigned>(unsigned(fixp.dimension) + 2, 4);
  v.require(fix.dimension == 1, "(a) dim V^G != 1");
  v.require(es == 3, "(a) ES bound != 3");

  // (b)
  bool h1 = false;
  for (unsigned m = 0; m <= 10 && !h1; ++m) h1 = periodic_oracle(g, 1, 1, m).dim > 0;
  v.require(h1, "(b) H^1 = 0 through degree 10");
  auto cert = nilpotency_search(g, 1, d40, 6, 4);
  std::string why;
  v.require(cert.found && recheck_certificate(g, cert, &why), "(b) no rechecked certificate " + why);
  v.require(cert.a == 1, "(b) a != 1 (pinned)");

  // (c)
  auto x = elementary_symmetric(ctx);
  auto dep = depth_estimate(g, x, 10);
  std::size_t h1dim = 0;
  for (auto d : dep.h_dims[1]) h1dim += d;
  v.require(h1dim > 0, "(c) Koszul H_1 = 0");
  v.require(dep.lower == 3 && dep.upper == 3, "(c) depth != 3");
  const unsigned W = 21;
  auto pres = present_over_hsop(g, x, W);
  auto res = free_resolution(pres, 4);
  auto lift = lift_action(pres, res, d40), lift2 = lift_action(pres, res, d40, 99);
  const int lo = -res.max_twist(), hi = int(W) - res.max_twist();
  std::vector<std::optional<unsigned>> a(4);
  std::size_t ext1 = 0;
  for (unsigned j = 0; j < 4; ++j) {
    ExtModule e(res, 4 - j);
    for (int n = lo; n <= hi; ++n)
      if (e.dim(n)) v.require(e.action(lift, n) == e.action(lift2, n), "(c) the two lifts disagree");
    auto nil = ext_nilpotency(e, lift, lo, hi, 4);
    if (nil.found) a[j] = nil.zero_window ? 0u : nil.a;
    if (j == 3)
      for (int n = lo; n <= hi; ++n) ext1 += e.dim(n);
  }
  v.require(ext1 > 0, "(c) Ext^1 = 0");
  v.require(ext1 == 6 && h1dim == 1, "(c) pinned class counts changed");  // one class every 4 degrees from -6
  v.require(a[3] && *a[3] == 1, "(c) d_{4,0} does not kill Ext^1 with a = 1 (pinned)");

  // (d)
  bool have = a[0] && a[1] && a[2] && a[3];
  v.require(have, "(d) ledger incomplete");
  if (have) {
    auto led = exponent_ledger(d40, a);
    InvariantRing s(g);
    for (unsigned t = 1; t <= 4; ++t)
      v.require(annihilation_check_colon(s, x, led.q[3], t, 22).passed, "(d) colon table fails at t = " + std::to_string(t));
    KoszulComplex k(s, x);
    for (unsigned i = 1; i <= 4; ++i)
      v.require(annihilation_check_koszul(k, led.q[4 - i], i, 22).passed, "(d) Koszul table fails at i = " + std::to_string(i));
    info << "a = (" << led.a[0] << "," << led.a[1] << "," << led.a[2] << "," << led.a[3] << ")";
  }
  info << ", Ext^1 classes in window " << ext1 << ", H_1 classes " << h1dim;
  detail = info.str();
  return v;
}

}  // namespace

int main() {
  int failed = 0;
  auto run = [&](int k, const char* name, double limit, const std::function<Verdict(std::string&)>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    std::string detail;
    try {
      v = body(detail);
    } catch (const std::exception& e) {
      v.ok = false;
      v.why << "exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = v.ok && secs < limit;
    if (v.ok && !ok) v.why << "over the " << limit << " s limit";
    std::printf("%s criterion %d: %s [exact, %.2f s / %.0f s]%s%s\n", ok ? "PASS" : "FAIL", k, name, secs, limit,
                ok ? (detail.empty() ? "" : (" " + detail).c_str()) : " -- ", ok ? "" : v.why.str().c_str());
    std::fflush(stdout);
    failed += !ok;
  };
  auto plain = [](Verdict (*f)()) { return [f](std::string&) { return f(); }; };
  run(1, "Steenrod laws (Cartan, equivariance, P^0, P^i(x), P^{deg f}f = f^q) on F_2, F_3, F_4", 30, plain(steenrod_laws));
  run(2, "d^{n+1} d^n = 0 for n <= 2, m <= 8 on trivial, Z/2, Z/4", 60, plain(cochain_complex));
  run(3, "Q^m chain maps and module formula, m <= 4", 60, plain(q_operators));
  run(4, "bar complex dims = periodic dims (Z/2 i<=3 m<=8, Z/4 i<=2 m<=4)", 60, plain(oracle_equivalence));
  run(5, "transvection i=1 certificate, N=12, A=4, a=1 rechecked", 120, plain(main_certificate));
  run(6, "windowed annihilator (N=12, N'=6) passes P* check with M=3", 120, plain(pstar_check));
  run(7, "Dickson degree, GL-invariance, family is an hsop", 30, plain(dickson));
  run(8, "Koszul/CM suite on transvection and -I over F_3", 120, plain(koszul_cm));
  run(9, "Ext^{d-j} = 0 for j < d on both CM examples", 120, plain(local_cohomology_cm));
  run(10, "Bertin Z/4 pipeline (a)-(d)", 1800, bertin_pipeline);
  std::printf("%d of 10 criteria failed\n", failed);
  return failed ? 1 : 0;
}
