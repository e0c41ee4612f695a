#include <gtest/gtest.h>

#include <random>

#include "modinv/invariants.hpp"

using namespace modinv;

namespace {

Matrix mat(const FieldPtr& f, std::size_t d, std::vector<Elem> rows) { return Matrix(f, d, d, std::move(rows)); }

MatrixGroup transvection_f2() {
  auto f = Field::make(2);
  return MatrixGroup::close(GroupContext(f, 2), {mat(f, 2, {1, 1, 0, 1})});
}

// prod over v in V* of (X + v), X being an extra variable x_d.
Polynomial brute_dickson_product(const FieldPtr& f, std::size_t d, bool with_x) {
  std::size_t n = with_x ? d + 1 : d;
  Polynomial prod = Polynomial::constant(f, n, 1);
  std::size_t count = 1;
  for (std::size_t k = 0; k < d; ++k) count *= f->q();
  for (std::size_t code = with_x ? 0 : 1; code < count; ++code) {
    std::vector<Elem> c(n, 0);
    std::size_t x = code;
    for (std::size_t k = 0; k < d; ++k) {
      c[k] = Elem(x % f->q());
      x /= f->q();
    }
    if (with_x) c[d] = 1;
    prod = prod * Polynomial::linear_form(f, c);
  }
  return prod;
}

// Coefficient of X^e in a polynomial in x_0..x_{d-1}, X.
Polynomial x_coefficient(const Polynomial& p, std::size_t d, unsigned e) {
  Polynomial out(p.field(), d);
  for (auto& [m, c] : p.terms()) {
    if (m.exps[d] != e) continue;
    Monomial mm = m;
    mm.exps[d] = 0;
    out.add_term(mm, c);
  }
  return out;
}

Polynomial random_homogeneous(const FieldPtr& f, std::size_t d, unsigned deg, std::mt19937& rng) {
  std::uniform_int_distribution<unsigned> coef(1, f->q() - 1);
  Polynomial p(f, d);
  for (int k = 0; k < 6; ++k) {
    Monomial m;
    for (unsigned e = 0; e < deg; ++e) m.exps[rng() % d]++;
    p.add_term(m, Elem(coef(rng)));
  }
  return p;
}

std::vector<MatrixGroup> sample_groups() {
  std::vector<MatrixGroup> out;
  out.push_back(transvection_f2());
  auto f3 = Field::make(3);
  out.push_back(MatrixGroup::close(GroupContext(f3, 2), {mat(f3, 2, {2, 0, 0, 2})}));
  out.push_back(MatrixGroup::close(GroupContext(f3, 2), {mat(f3, 2, {1, 1, 0, 1}), mat(f3, 2, {2, 0, 0, 1})}));
  auto f2 = Field::make(2);
  Matrix cyc(f2, 4, 4);
  for (std::size_t i = 0; i < 4; ++i) cyc.at((i + 1) % 4, i) = 1;
  out.push_back(MatrixGroup::close(GroupContext(f2, 4), {cyc}));
  auto f4 = Field::make(2, 2);
  out.push_back(MatrixGroup::close(GroupContext(f4, 2), {mat(f4, 2, {1, 2, 0, 1}), mat(f4, 2, {1, 0, 0, 2})}));
  return out;
}

}  // namespace

TEST(InvariantSpace, TrivialGroupIsEverything) {
  auto g = MatrixGroup::close(GroupContext(Field::make(2), 2), {});
  EXPECT_EQ(invariant_space(g, 2).dim(), 3u);
}

TEST(InvariantSpace, TransvectionDegreeOne) {
  auto g = transvection_f2();
  auto s = invariant_space(g, 1);
  ASSERT_EQ(s.dim(), 1u);
  EXPECT_EQ(s.basis[0], g.context().var(1));
}

TEST(InvariantSpace, TransvectionIsPolynomialInDegreesOneAndTwo) {
  auto g = transvection_f2();
  for (unsigned n = 0; n <= 10; ++n) EXPECT_EQ(invariant_space(g, n).dim(), n / 2 + 1) << n;
}

TEST(InvariantSpace, FixedByEveryElementAndCoordinatesRoundTrip) {
  for (auto& g : sample_groups()) {
    for (unsigned n = 0; n <= 6; ++n) {
      auto s = invariant_space(g, n);
      for (std::size_t j = 0; j < s.dim(); ++j) {
        for (std::size_t e = 0; e < g.order(); ++e) EXPECT_EQ(act_on_poly(g, e, s.basis[j]), s.basis[j]);
        auto c = s.coordinates(s.basis[j]);
        ASSERT_TRUE(c.has_value());
        for (std::size_t k = 0; k < c->size(); ++k) EXPECT_EQ((*c)[k], k == j ? 1 : 0);
      }
      // Oracle: dimension equals the dense kernel of the stacked (rho(g) - I).
      GradedBasis b(g.dim(), n);
      std::size_t gens = g.generator_indices().size();
      Matrix stacked(g.field(), b.size() * gens, b.size());
      for (std::size_t k = 0; k < gens; ++k) {
        for (std::size_t j = 0; j < b.size(); ++j) {
          auto img = coeff_vector(act_on_poly(g, g.generator_indices()[k], Polynomial::monomial(g.field(), g.dim(), b[j])), b);
          for (std::size_t i = 0; i < b.size(); ++i)
            stacked.at(k * b.size() + i, j) = i == j ? g.field()->sub(img[i], 1) : img[i];
        }
      }
      EXPECT_EQ(s.dim(), b.size() - reduce(stacked).rank);
    }
  }
}

TEST(InvariantSpace, ProductsStayInvariant) {
  for (auto& g : sample_groups()) {
    for (unsigned a = 1; a <= 3; ++a) {
      for (unsigned b = a; b <= 3; ++b) {
        auto sa = invariant_space(g, a), sb = invariant_space(g, b), sab = invariant_space(g, a + b);
        for (auto& u : sa.basis)
          for (auto& v : sb.basis) EXPECT_TRUE(sab.coordinates(u * v).has_value());
      }
    }
  }
}

TEST(InvariantSpace, ShrinkingTheGroupGrowsInvariants) {
  for (auto& g : sample_groups()) {
    for (std::size_t h = 0; h < g.order(); ++h) {
      auto sub = MatrixGroup::close(g.context(), {g.element(h)});
      for (unsigned n = 0; n <= 4; ++n) EXPECT_LE(invariant_space(g, n).dim(), invariant_space(sub, n).dim());
    }
  }
}

TEST(Dickson, SmallExamples) {
  auto f2 = Field::make(2), f3 = Field::make(3);
  EXPECT_EQ(dickson_top(GroupContext(f2, 1)).poly, Polynomial::variable(f2, 1, 0));
  auto top = dickson_top(GroupContext(f2, 2));
  EXPECT_EQ(top.poly, parse_polynomial("x0^2*x1 + x0*x1^2", f2, 2));
  EXPECT_EQ(top.degree, 3u);
  EXPECT_EQ(dickson_top(GroupContext(f3, 1)).poly, parse_polynomial("2*x0^2", f3, 1));
  auto fam = dickson_family(GroupContext(f2, 2));
  EXPECT_EQ(fam.degrees, (std::vector<unsigned>{3, 2}));
  EXPECT_EQ(fam.elements[0], parse_polynomial("x0^2*x1 + x0*x1^2", f2, 2));
  EXPECT_EQ(fam.elements[1], parse_polynomial("x0^2 + x0*x1 + x1^2", f2, 2));
  auto one = dickson_family(GroupContext(f2, 1));
  EXPECT_EQ(one.elements, std::vector<Polynomial>{Polynomial::variable(f2, 1, 0)});
}

TEST(Dickson, MatchesBruteForceProducts) {
  for (auto [p, r, d] : {std::tuple{2u, 1u, 2u}, {2u, 1u, 3u}, {3u, 1u, 2u}, {2u, 2u, 2u}, {2u, 1u, 4u}, {5u, 1u, 2u}}) {
    auto f = Field::make(p, r);
    GroupContext ctx(f, d);
    auto top = dickson_top(ctx);
    EXPECT_EQ(top.poly, brute_dickson_product(f, d, false));
    auto fam = dickson_family(ctx);
    auto big = brute_dickson_product(f, d, true);
    unsigned qi = 1;
    for (std::size_t i = 0; i < d; ++i, qi *= f->q()) EXPECT_EQ(fam.elements[i], x_coefficient(big, d, qi));
    EXPECT_EQ(fam.elements[0], top.poly);
    EXPECT_TRUE(validate_hsop(MatrixGroup::close(ctx, {}), fam.elements));
  }
}

TEST(Dickson, FixedByRandomGL) {
  std::mt19937 rng(21);
  for (auto [q, d] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}}) {
    auto f = Field::make(q);
    auto top = dickson_top(GroupContext(f, d));
    for (int k = 0; k < 100; ++k) EXPECT_EQ(act_by_matrix(random_invertible(f, d, rng), top.poly), top.poly);
  }
}

TEST(Dickson, BudgetEnforced) {
  EXPECT_THROW(dickson_top(GroupContext(Field::make(3), 8)), BudgetError);
  EXPECT_THROW(dickson_family(GroupContext(Field::make(5), 2), 20), BudgetError);
}

TEST(Reynolds, Examples) {
  auto f3 = Field::make(3);
  auto minus = MatrixGroup::close(GroupContext(f3, 2), {mat(f3, 2, {2, 0, 0, 2})});
  EXPECT_TRUE(reynolds(minus, minus.context().var(0)).is_zero());
  auto sq = parse_polynomial("x0^2 + x0*x1", f3, 2);
  EXPECT_EQ(reynolds(minus, sq), sq);
  auto triv = MatrixGroup::close(GroupContext(f3, 2), {});
  EXPECT_EQ(reynolds(triv, sq + minus.context().var(1)), sq + minus.context().var(1));
  EXPECT_THROW(reynolds(transvection_f2(), transvection_f2().context().var(0)), InputError);
}

TEST(Reynolds, IdempotentProjector) {
  std::mt19937 rng(5);
  auto f3 = Field::make(3);
  auto g = MatrixGroup::close(GroupContext(f3, 2), {mat(f3, 2, {0, 1, 1, 0}), mat(f3, 2, {2, 0, 0, 1})});
  auto f5 = Field::make(5);
  auto h = MatrixGroup::close(GroupContext(f5, 2), {mat(f5, 2, {0, 1, 1, 0}), mat(f5, 2, {4, 0, 0, 1})});
  for (auto* grp : {&g, &h}) {
    if (grp->order() % grp->field()->p() == 0) continue;
    for (int k = 0; k < 100; ++k) {
      auto p = random_homogeneous(grp->field(), 2, 1 + rng() % 5, rng);
      auto r = reynolds(*grp, p);
      EXPECT_EQ(reynolds(*grp, r), r);
      EXPECT_TRUE(is_invariant(*grp, r));
    }
  }
}

TEST(ValidateHsop, Examples) {
  auto g = transvection_f2();
  auto f2 = g.field();
  EXPECT_TRUE(validate_hsop(g, {g.context().var(1), parse_polynomial("x0^2 + x0*x1", f2, 2)}));
  auto fam = dickson_family(g.context());
  EXPECT_TRUE(validate_hsop(g, fam.elements));
  EXPECT_FALSE(validate_hsop(g, {fam.elements[0], fam.elements[0]}));
  EXPECT_THROW(validate_hsop(g, {g.context().var(0), g.context().var(1)}), InputError);
  EXPECT_THROW(validate_hsop(g, {g.context().var(1)}), InputError);
}
