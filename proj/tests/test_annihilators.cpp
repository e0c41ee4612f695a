#include <gtest/gtest.h>

#include "modinv/annihilators.hpp"
#include "modinv/invariants.hpp"
#include "modinv/steenrod.hpp"

using namespace modinv;

namespace {

MatrixGroup trivial_f2() { return MatrixGroup::close(GroupContext(Field::make(2), 2), {}); }

MatrixGroup transvection_f2() {
  auto f = Field::make(2);
  return MatrixGroup::close(GroupContext(f, 2), {Matrix(f, 2, 2, {1, 1, 0, 1})});
}

MatrixGroup z3_f3() {
  auto f = Field::make(3);
  return MatrixGroup::close(GroupContext(f, 2), {Matrix(f, 2, 2, {1, 1, 0, 1})});
}

Polynomial d20(const MatrixGroup& g) { return dickson_top(g.context()).poly; }

// Odd-degree periodic model for a cyclic group: H^1_m = ker N / im(g - 1).
// Returns true when s kills every class of the window.
bool periodic_kills(const MatrixGroup& g, const Polynomial& s, unsigned N) {
  const std::size_t gen = g.generator_indices().front();
  for (unsigned m = 0; m <= N; ++m) {
    GradedBasis b(g.dim(), m + s.degree());
    SparseEchelon im(g.field(), b.size());
    for (auto& mono : b.monomials()) {
      auto f = Polynomial::monomial(g.field(), g.dim(), mono);
      im.insert(to_sparse(coeff_vector(act_on_poly(g, gen, f) - f, b)));
    }
    for (auto& z : periodic_oracle(g, gen, 1, m).basis)
      if (!im.contains(to_sparse(coeff_vector(s * z, b)))) return false;
  }
  return true;
}

}  // namespace

TEST(Nilpotency, TrivialGroupGivesOne) {
  auto g = trivial_f2();
  auto c = nilpotency_search(g, 1, g.context().var(0), 6, 3);
  ASSERT_TRUE(c.found);
  EXPECT_EQ(c.a, 1u);
  EXPECT_TRUE(c.witnesses.empty());
  for (auto& s : c.slices) EXPECT_EQ(s.exponent, 0u);
  EXPECT_TRUE(recheck_certificate(g, c));
}

TEST(Nilpotency, TransvectionTopDickson) {
  auto g = transvection_f2();
  auto s = d20(g);
  auto c = nilpotency_search(g, 1, s, 12, 4);
  ASSERT_TRUE(c.found);
  EXPECT_EQ(c.a, 1u);
  EXPECT_EQ(c.slices.size(), 13u);
  std::size_t reps = 0;
  for (auto& sl : c.slices) reps += sl.dim;
  EXPECT_EQ(c.witnesses.size(), reps);
  EXPECT_GT(reps, 0u);
  std::string why;
  EXPECT_TRUE(recheck_certificate(g, c, &why)) << why;
  EXPECT_TRUE(periodic_kills(g, s, 12));
}

TEST(Nilpotency, AgreesWithPeriodicModel) {
  // Per slice, the least exponent equals the one read off the periodic model.
  for (auto g : {transvection_f2(), z3_f3()}) {
    auto x = g.context().var(0), y = g.context().var(1);
    std::vector<Polynomial> cands{y, d20(g)};
    for (auto& s : cands) {
      auto c = nilpotency_search(g, 1, s, 6, 3);
      unsigned expect = 0;
      for (unsigned a = 1; a <= 3 && !expect; ++a)
        if (periodic_kills(g, s.pow(a), 6)) expect = a;
      ASSERT_EQ(c.found, expect != 0);
      if (expect) EXPECT_EQ(c.a, expect);
    }
    (void)x;
  }
}

TEST(Nilpotency, ExhaustionReportsSurvivor) {
  auto g = transvection_f2();
  auto c = nilpotency_search(g, 1, g.context().one(), 6, 3);
  EXPECT_FALSE(c.found);
  ASSERT_TRUE(c.largest_surviving_degree.has_value());
  std::optional<unsigned> last;
  for (auto& s : c.slices)
    if (s.dim > 0) last = s.m;
  EXPECT_EQ(c.largest_surviving_degree, last);
  EXPECT_FALSE(recheck_certificate(g, c));
}

TEST(Nilpotency, RejectsBadInput) {
  auto g = transvection_f2();
  EXPECT_THROW(nilpotency_search(g, 0, d20(g), 4, 2), InputError);
  EXPECT_THROW(nilpotency_search(g, 1, g.context().var(0), 4, 2), InputError);  // x is not fixed
  EXPECT_THROW(nilpotency_search(g, 1, g.context().zero(), 4, 2), InputError);
}

TEST(Nilpotency, TamperedCertificateFails) {
  auto g = transvection_f2();
  auto c = nilpotency_search(g, 1, d20(g), 6, 3);
  ASSERT_TRUE(c.found);
  ASSERT_FALSE(c.witnesses.empty());
  auto bad = c;
  bad.witnesses[0].preimage.clear();
  EXPECT_FALSE(recheck_certificate(g, bad));
  bad = c;
  bad.slices[2].dim += 1;
  EXPECT_FALSE(recheck_certificate(g, bad));
}

TEST(Windowed, TransvectionExamples) {
  auto g = transvection_f2();
  auto w = windowed_annihilator(g, 1, 8, 4);
  ASSERT_EQ(w.by_degree.size(), 5u);
  EXPECT_TRUE(w.by_degree[0].empty());  // H^1 is nonzero in the window
  // y is invariant and kills H^1; x^2 + xy is the other generator and does not.
  auto y = g.context().var(1), x = g.context().var(0);
  ASSERT_EQ(w.by_degree[1].size(), 1u);
  EXPECT_EQ(w.by_degree[1][0], y);
  EXPECT_FALSE(annihilates_window(g, 1, x * x + x * y, 8));
  for (unsigned k = 0; k <= 4; ++k)
    for (auto& t : w.by_degree[k]) {
      EXPECT_TRUE(annihilates_window(g, 1, t, 8));
      EXPECT_TRUE(periodic_kills(g, t, 8));
    }
}

TEST(Windowed, MatchesMembershipOnEveryInvariant) {
  // The windowed kernel is exactly the set of invariants that annihilate.
  auto g = z3_f3();
  auto w = windowed_annihilator(g, 1, 5, 4);
  for (unsigned k = 1; k <= 4; ++k) {
    auto sk = invariant_space(g, k);
    std::size_t killers = 0;
    for (auto& b : sk.basis) killers += annihilates_window(g, 1, b, 5) ? 1 : 0;
    EXPECT_LE(killers, w.by_degree[k].size());
    EXPECT_LE(w.by_degree[k].size(), sk.dim());
    for (auto& t : w.by_degree[k]) EXPECT_TRUE(annihilates_window(g, 1, t, 5));
  }
}

TEST(Windowed, ZeroWindowGivesConstants) {
  auto g = trivial_f2();
  auto w = windowed_annihilator(g, 1, 4, 2);
  ASSERT_EQ(w.by_degree[0].size(), 1u);
  EXPECT_EQ(w.by_degree[1].size(), 2u);
  EXPECT_EQ(w.by_degree[2].size(), 3u);
}

TEST(Windowed, ClosedUnderInvariantMultiples) {
  auto g = transvection_f2();
  auto w = windowed_annihilator(g, 1, 6, 3);
  auto s1 = invariant_space(g, 2);
  for (auto& t : w.by_degree[1])
    for (auto& b : s1.basis) EXPECT_TRUE(annihilates_window(g, 1, t * b, 6));
}

TEST(PStar, TransvectionWindow) {
  auto g = transvection_f2();
  auto w = windowed_annihilator(g, 1, 12, 6);
  for (unsigned k = 1; k <= 6; ++k)
    for (auto& t : w.by_degree[k]) {
      auto r = pstar_invariance_check(g, 1, t, 3, 12);
      EXPECT_TRUE(r.passed) << to_string(t);
      EXPECT_EQ(r.entries.size(), 3u * 13u);
    }
}

TEST(PStar, RegionAndRejection) {
  auto g = z3_f3();
  auto y = g.context().var(1);
  auto r = pstar_invariance_check(g, 1, y, 2, 6);
  for (auto& e : r.entries) EXPECT_EQ(e.in_valid_region, e.m + e.mpow * 2 <= 6);
  EXPECT_TRUE(r.passed);
  auto x = g.context().var(0);
  auto n = x * x * x - x * y * y;  // orbit product, invariant
  ASSERT_TRUE(is_invariant(g, n));
  if (!annihilates_window(g, 1, n, 6)) EXPECT_THROW(pstar_invariance_check(g, 1, n, 1, 6), InputError);
}

TEST(Ledger, Examples) {
  auto g = transvection_f2();
  auto d = d20(g);
  auto led = exponent_ledger(d, {1u, 2u});
  EXPECT_EQ(led.a, (std::vector<unsigned>{1, 2}));
  EXPECT_EQ(led.q[0], d);
  EXPECT_EQ(led.q[1], d.pow(3));
  EXPECT_EQ(led.degrees, (std::vector<unsigned>{3, 9}));
  EXPECT_THROW(exponent_ledger(d, {1u, std::nullopt}), InputError);
  EXPECT_THROW(exponent_ledger(d, {}), InputError);
}

TEST(Ledger, ProductOfAnnihilatorsComposes) {
  // If s kills H^1 and t kills H^1 on the window, then so does s t.
  auto g = transvection_f2();
  auto y = g.context().var(1), d = d20(g);
  auto c1 = nilpotency_search(g, 1, y, 8, 2), c2 = nilpotency_search(g, 1, d, 8, 2);
  ASSERT_TRUE(c1.found && c2.found);
  EXPECT_TRUE(annihilates_window(g, 1, y.pow(c1.a) * d.pow(c2.a), 8));
}

TEST(Radical, PowerOfNonAnnihilatorNeverKills) {
  // x^2 + xy lies outside the radical on the transvection window: no power kills.
  auto g = transvection_f2();
  auto x = g.context().var(0), y = g.context().var(1);
  auto c = nilpotency_search(g, 1, x * x + x * y, 6, 3);
  EXPECT_FALSE(c.found);
  EXPECT_FALSE(periodic_kills(g, (x * x + x * y).pow(3), 6));
}
