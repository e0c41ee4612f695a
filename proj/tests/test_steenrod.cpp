#include <gtest/gtest.h>

#include <random>

#include "modinv/invariants.hpp"
#include "modinv/steenrod.hpp"

using namespace modinv;

namespace {

// P^i by literal substitution x_j -> x_j + x_j^q * xi with xi an extra variable.
Polynomial substituted_power(unsigned i, const Polynomial& f) {
  const std::size_t d = f.nvars();
  const FieldPtr& field = f.field();
  Polynomial xi = Polynomial::variable(field, d + 1, d);
  Polynomial total(field, d + 1);
  for (auto& [m, c] : f.terms()) {
    Polynomial term = Polynomial::constant(field, d + 1, c);
    for (std::size_t j = 0; j < d; ++j) {
      Polynomial x = Polynomial::variable(field, d + 1, j);
      term = term * (x + x.pow(field->q()) * xi).pow(m.exps[j]);
    }
    total += term;
  }
  Polynomial out(field, d);
  for (auto& [m, c] : total.terms()) {
    if (m.exps[d] != i) continue;
    Monomial mm = m;
    mm.exps[d] = 0;
    out.add_term(mm, c);
  }
  return out;
}

Polynomial random_homogeneous(const FieldPtr& f, std::size_t d, unsigned deg, std::mt19937& rng) {
  std::uniform_int_distribution<unsigned> coef(1, f->q() - 1);
  Polynomial p(f, d);
  for (int k = 0; k < 4; ++k) {
    Monomial m;
    for (unsigned e = 0; e < deg; ++e) m.exps[rng() % d]++;
    p.add_term(m, Elem(coef(rng)));
  }
  return p;
}

}  // namespace

TEST(TotalPower, Examples) {
  auto f2 = Field::make(2);
  auto x = Polynomial::variable(f2, 2, 0), y = Polynomial::variable(f2, 2, 1);
  EXPECT_EQ(total_power(x).coeffs, (std::vector<Polynomial>{x, x * x}));
  EXPECT_EQ(total_power(Polynomial::constant(f2, 2, 1)).coeffs, (std::vector<Polynomial>{Polynomial::constant(f2, 2, 1)}));
  auto xy = total_power(x * y);
  EXPECT_EQ(xy.coeffs, (std::vector<Polynomial>{x * y, x * x * y + x * y * y, x * x * y * y}));
  EXPECT_EQ(xy.truncation(), 2u);
}

TEST(SteenrodP, Examples) {
  auto f2 = Field::make(2);
  auto x = Polynomial::variable(f2, 2, 0), y = Polynomial::variable(f2, 2, 1);
  EXPECT_EQ(steenrod_p(0, x * y + x), x * y + x);
  EXPECT_EQ(steenrod_p(1, x * y), x * x * y + x * y * y);
  for (unsigned i = 2; i < 6; ++i) EXPECT_TRUE(steenrod_p(i, x).is_zero());
}

TEST(SteenrodP, MatchesSubstitution) {
  std::mt19937 rng(13);
  for (auto f : {Field::make(2), Field::make(3), Field::make(2, 2), Field::make(5)}) {
    for (int k = 0; k < 40; ++k) {
      std::size_t d = 1 + rng() % 3;
      auto p = random_homogeneous(f, d, rng() % 6, rng);
      auto tp = total_power(p);
      for (unsigned i = 0; i <= p.degree() + 1; ++i) {
        auto expect = substituted_power(i, p);
        EXPECT_EQ(steenrod_p(i, p), expect);
        if (i < tp.coeffs.size()) EXPECT_EQ(tp.coeffs[i], expect);
      }
    }
  }
}

TEST(SteenrodP, CartanFormula) {
  std::mt19937 rng(17);
  for (auto f : {Field::make(2), Field::make(3), Field::make(2, 2)}) {
    for (int k = 0; k < 200; ++k) {
      std::size_t d = 1 + rng() % 3;
      auto u = random_homogeneous(f, d, rng() % 7, rng), v = random_homogeneous(f, d, rng() % 7, rng);
      unsigned top = u.degree() + v.degree();
      for (unsigned kk = 0; kk <= top; ++kk) {
        Polynomial rhs(f, d);
        for (unsigned i = 0; i <= kk; ++i) rhs += steenrod_p(i, u) * steenrod_p(kk - i, v);
        EXPECT_EQ(steenrod_p(kk, u * v), rhs);
      }
    }
  }
}

TEST(SteenrodP, InstabilityAndDegrees) {
  std::mt19937 rng(19);
  for (auto f : {Field::make(2), Field::make(3), Field::make(2, 2)}) {
    for (int k = 0; k < 60; ++k) {
      std::size_t d = 1 + rng() % 3;
      unsigned n = rng() % 6;
      auto u = random_homogeneous(f, d, n, rng);
      EXPECT_EQ(steenrod_p(n, u), u.pow(f->q()));
      EXPECT_TRUE(steenrod_p(n + 1, u).is_zero());
      for (unsigned i = 0; i <= n; ++i) {
        auto pi = steenrod_p(i, u);
        if (!pi.is_zero()) EXPECT_EQ(pi.homogeneous_degree(), n + i * (f->q() - 1));
      }
    }
  }
}

TEST(SteenrodP, Linearity) {
  std::mt19937 rng(23);
  auto f = Field::make(3, 2);
  for (int k = 0; k < 100; ++k) {
    auto u = random_homogeneous(f, 2, 4, rng), v = random_homogeneous(f, 2, 4, rng);
    Elem a = Elem(rng() % f->q()), b = Elem(rng() % f->q());
    for (unsigned i = 0; i <= 4; ++i)
      EXPECT_EQ(steenrod_p(i, u.scaled(a) + v.scaled(b)), steenrod_p(i, u).scaled(a) + steenrod_p(i, v).scaled(b));
  }
}

TEST(SteenrodP, Equivariance) {
  std::mt19937 rng(29);
  auto f3 = Field::make(3);
  auto g3 = MatrixGroup::close(GroupContext(f3, 2), {Matrix(f3, 2, 2, {1, 1, 0, 1}), Matrix(f3, 2, 2, {0, 1, 1, 0})});
  auto f4 = Field::make(2, 2);
  auto g4 = MatrixGroup::close(GroupContext(f4, 2), {Matrix(f4, 2, 2, {1, 2, 0, 1}), Matrix(f4, 2, 2, {3, 0, 0, 1})});
  for (auto* g : {&g3, &g4}) {
    for (int k = 0; k < 30; ++k) {
      auto r = random_homogeneous(g->field(), 2, rng() % 5, rng);
      for (std::size_t s = 0; s < g->order(); ++s)
        for (unsigned i = 0; i <= r.degree(); ++i)
          EXPECT_EQ(act_on_poly(*g, s, steenrod_p(i, r)), steenrod_p(i, act_on_poly(*g, s, r)));
    }
  }
}

TEST(InvariantClosure, Examples) {
  auto f2 = Field::make(2);
  GroupContext ctx(f2, 2);
  auto gl = MatrixGroup::close(ctx, {Matrix(f2, 2, 2, {1, 1, 0, 1}), Matrix(f2, 2, 2, {0, 1, 1, 0})});
  auto top = dickson_top(ctx).poly;
  // P^1 of x^2y + xy^2 is x^2y^2 + x^2y^2 = 0 over F_2.
  EXPECT_TRUE(check_invariant_closure(gl, top, 1).is_zero());
  auto d1 = dickson_family(ctx).elements[1];
  auto p1 = check_invariant_closure(gl, d1, 1);
  EXPECT_EQ(p1, top);
  EXPECT_TRUE(check_invariant_closure(gl, Polynomial::constant(f2, 2, 1), 1).is_zero());
  auto triv = MatrixGroup::close(ctx, {});
  EXPECT_EQ(check_invariant_closure(triv, ctx.var(0), 1), ctx.var(0).pow(2));
  EXPECT_THROW(check_invariant_closure(gl, ctx.var(0), 1), InputError);
}
