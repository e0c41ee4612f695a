#include "modinv/annihilators.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include "modinv/invariants.hpp"
#include "modinv/steenrod.hpp"

namespace modinv {

namespace {

// Caches slices and coboundary spaces for one (G, i).
class Window {
 public:
  Window(const MatrixGroup& g, unsigned i, std::size_t budget) : g_(g), i_(i), budget_(budget) {}

  const CohomologySlice& slice(unsigned m) {
    auto it = slices_.find(m);
    if (it == slices_.end()) it = slices_.emplace(m, cohomology_slice(g_, i_, m, budget_)).first;
    return it->second;
  }

  const CoboundarySpace& boundaries(unsigned M) {
    auto it = spaces_.find(M);
    if (it == spaces_.end()) it = spaces_.emplace(M, std::make_unique<CoboundarySpace>(g_, i_, M, budget_)).first;
    return *it->second;
  }

  // u * rep as a vector in C^i(G, R_{m + deg u}).
  SparseVec times(const Polynomial& u, unsigned m, const SparseVec& rep) {
    const auto& src = slice(m).basis();
    const auto& dst = boundaries(m + u.degree()).basis();
    return multiply_cochain_vector(u, rep, tuple_count(g_.order(), i_), src, dst);
  }

  bool kills(const Polynomial& u, unsigned m) {
    if (u.is_zero()) return true;
    const auto& h = slice(m);
    if (h.dim() == 0) return true;
    const auto& b = boundaries(m + u.degree());
    for (auto& rep : h.reps())
      if (!b.contains(times(u, m, rep))) return false;
    return true;
  }

 private:
  const MatrixGroup& g_;
  unsigned i_;
  std::size_t budget_;
  std::map<unsigned, CohomologySlice> slices_;
  std::map<unsigned, std::unique_ptr<CoboundarySpace>> spaces_;
};

void check_index(unsigned i) {
  if (i == 0) throw InputError("i = 0 is rejected: J_0 = ann H^0 = 0, there is nothing to certify");
}

void check_multiplier(const MatrixGroup& group, const Polynomial& s, const char* what) {
  if (s.nvars() != group.dim() || !same_field(s.field(), group.field()))
    throw InputError(std::string(what) + " does not belong to the group's ring");
  if (s.is_zero() || !s.is_homogeneous()) throw InputError(std::string(what) + " must be nonzero and homogeneous");
  if (!is_invariant(group, s)) throw InputError(std::string(what) + " is not invariant");
}

}  // namespace

NilpotencyCertificate nilpotency_search(const MatrixGroup& group, unsigned i, const Polynomial& s, unsigned N,
                                        unsigned A, std::size_t budget) {
  check_index(i);
  check_multiplier(group, s, "s");
  NilpotencyCertificate cert;
  cert.i = i;
  cert.window = N;
  cert.max_power = A;
  cert.s = s;
  Window w(group, i, budget);
  std::vector<Polynomial> powers{group.context().one()};
  for (unsigned a = 1; a <= A; ++a) powers.push_back(powers.back() * s);

  bool all = true;
  unsigned worst = 1;
  for (unsigned m = 0; m <= N; ++m) {
    SliceExponent se{m, w.slice(m).dim(), std::nullopt};
    if (se.dim == 0) {
      se.exponent = 0;
    } else {
      for (unsigned a = 1; a <= A && !se.exponent; ++a)
        if (w.kills(powers[a], m)) se.exponent = a;
    }
    if (!se.exponent) {
      all = false;
      cert.largest_surviving_degree = m;
    } else {
      worst = std::max(worst, *se.exponent);
    }
    cert.slices.push_back(se);
  }
  if (!all) return cert;
  cert.found = true;
  cert.a = worst;
  const Polynomial& sa = powers[worst];
  for (unsigned m = 0; m <= N; ++m) {
    const auto& h = w.slice(m);
    if (h.dim() == 0) continue;
    const auto& b = w.boundaries(m + sa.degree());
    for (std::size_t r = 0; r < h.dim(); ++r) {
      auto pre = b.preimage(w.times(sa, m, h.reps()[r]));
      if (!pre) throw AuditError("annihilating power has no coboundary preimage");
      cert.witnesses.push_back({m, r, h.reps()[r], std::move(*pre)});
    }
  }
  return cert;
}

bool recheck_certificate(const MatrixGroup& group, const NilpotencyCertificate& cert, std::string* reason,
                         std::size_t budget) {
  auto fail = [&](const std::string& why) {
    if (reason) *reason = why;
    return false;
  };
  if (!cert.found) return fail("certificate records an exhaustion, nothing to recheck");
  const unsigned i = cert.i;
  Polynomial sa = cert.s.pow(cert.a);
  Polynomial sa1 = cert.s.pow(cert.a - 1);
  const std::size_t tuples = tuple_count(group.order(), i);
  bool minimal_seen = cert.a == 1;
  for (unsigned m = 0; m <= cert.window; ++m) {
    CohomologySlice h = cohomology_slice(group, i, m, budget);
    if (m >= cert.slices.size() || cert.slices[m].dim != h.dim()) return fail("slice dimension differs at m = " + std::to_string(m));
    if (h.dim() == 0) continue;
    CoboundarySpace b(group, i, m + sa.degree(), budget);
    for (auto& rep : h.reps()) {
      if (!b.contains(multiply_cochain_vector(sa, rep, tuples, h.basis(), b.basis())))
        return fail("s^a does not kill H^" + std::to_string(i) + "_" + std::to_string(m));
    }
    if (!minimal_seen) {
      CoboundarySpace b1(group, i, m + sa1.degree(), budget);
      for (auto& rep : h.reps())
        if (!b1.contains(multiply_cochain_vector(sa1, rep, tuples, h.basis(), b1.basis()))) minimal_seen = true;
    }
  }
  if (!minimal_seen) return fail("s^(a-1) already kills the window");
  // Witnesses through the polynomial-level coboundary formula.
  for (auto& wt : cert.witnesses) {
    GradedBasis src(group.dim(), wt.m), dst(group.dim(), wt.m + sa.degree());
    Cochain phi = cochain_from_vector(group, i - 1, wt.preimage, dst);
    Cochain lhs = coboundary(group, phi);
    Cochain rhs = multiply_cochain(sa, cochain_from_vector(group, i, wt.cocycle, src));
    for (std::size_t t = 0; t < lhs.values.size(); ++t)
      if (lhs.values[t] != rhs.values[t]) return fail("witness does not satisfy d(phi) = s^a psi at m = " + std::to_string(wt.m));
  }
  return true;
}

bool annihilates_window(const MatrixGroup& group, unsigned i, const Polynomial& t, unsigned N, std::size_t budget) {
  check_index(i);
  if (t.is_zero()) return true;
  check_multiplier(group, t, "t");
  Window w(group, i, budget);
  for (unsigned m = 0; m <= N; ++m)
    if (!w.kills(t, m)) return false;
  return true;
}

WindowedAnnihilator windowed_annihilator(const MatrixGroup& group, unsigned i, unsigned N, unsigned Nprime,
                                         std::size_t budget) {
  check_index(i);
  WindowedAnnihilator out;
  out.i = i;
  out.window = N;
  out.degree_window = Nprime;
  Window w(group, i, budget);
  for (unsigned k = 0; k <= Nprime; ++k) {
    InvariantBasis sk = invariant_space(group, k);
    std::vector<SparseVec> cols(sk.dim());
    std::size_t offset = 0;
    for (unsigned m = 0; m <= N; ++m) {
      const auto& h = w.slice(m);
      if (h.dim() == 0) continue;
      const auto& b = w.boundaries(m + k);
      const std::size_t block = tuple_count(group.order(), i) * b.basis().size();
      for (auto& rep : h.reps()) {
        for (std::size_t j = 0; j < sk.dim(); ++j) {
          SparseVec nf = b.normal_form(w.times(sk.basis[j], m, rep));
          for (auto& e : nf) cols[j].push_back({std::uint32_t(offset + e.index), e.value});
        }
        offset += block;
      }
    }
    SparseMatrix stacked{offset, sk.dim(), cols};
    auto ker = sparse_kernel(group.field(), stacked.row_vectors(), sk.dim());
    std::vector<Polynomial> basis;
    for (auto& v : ker) {
      std::vector<Elem> c(sk.dim(), 0);
      for (auto& e : v) c[e.index] = e.value;
      basis.push_back(sk.combine(c));
    }
    out.by_degree.push_back(std::move(basis));
  }
  return out;
}

PStarReport pstar_invariance_check(const MatrixGroup& group, unsigned i, const Polynomial& t, unsigned M, unsigned N,
                                   std::size_t budget) {
  check_index(i);
  check_multiplier(group, t, "t");
  Window w(group, i, budget);
  for (unsigned m = 0; m <= N; ++m)
    if (!w.kills(t, m)) throw InputError("t does not annihilate H^" + std::to_string(i) + " in the window");
  PStarReport rep;
  rep.i = i;
  rep.window = N;
  rep.t = t;
  const unsigned q = group.field()->q();
  for (unsigned mpow = 1; mpow <= M; ++mpow) {
    Polynomial u = check_invariant_closure(group, t, mpow);
    for (unsigned m = 0; m <= N; ++m) {
      PStarEntry e{mpow, m, m + mpow * (q - 1) <= N, w.kills(u, m)};
      if (e.in_valid_region && !e.annihilates) rep.passed = false;
      rep.entries.push_back(e);
    }
  }
  return rep;
}

ExponentLedger exponent_ledger(const Polynomial& top_dickson, const std::vector<std::optional<unsigned>>& exponents) {
  if (exponents.empty()) throw InputError("exponent ledger needs at least a_0");
  if (top_dickson.is_zero() || !top_dickson.is_homogeneous()) throw InputError("Dickson class must be homogeneous");
  ExponentLedger led;
  Polynomial acc = Polynomial::constant(top_dickson.field(), top_dickson.nvars(), 1);
  unsigned total = 0;
  for (std::size_t j = 0; j < exponents.size(); ++j) {
    if (!exponents[j]) throw InputError("missing certificate for j = " + std::to_string(j));
    led.a.push_back(*exponents[j]);
    acc = acc * top_dickson.pow(*exponents[j]);
    total += *exponents[j];
    led.q.push_back(acc);
    led.degrees.push_back(total * top_dickson.degree());
    if (acc.homogeneous_degree() != led.degrees.back()) throw AuditError("q_j has the wrong degree");
  }
  return led;
}

}  // namespace modinv
