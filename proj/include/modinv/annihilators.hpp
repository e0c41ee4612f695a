#ifndef MODINV_ANNIHILATORS_HPP
#define MODINV_ANNIHILATORS_HPP

#include <optional>
#include <string>
#include <vector>

#include "modinv/cohomology.hpp"

namespace modinv {

// Everything here is windowed: statements cover H^i_m for m <= N only.

struct NilpotencyWitness {
  unsigned m = 0;           // source degree
  std::size_t rep = 0;      // index of the cocycle representative in H^i_m
  SparseVec cocycle;        // the representative, in C^i(G, R_m)
  SparseVec preimage;       // phi in C^{i-1}(G, R_{m + a deg s}) with d phi = s^a * cocycle
};

struct SliceExponent {
  unsigned m = 0;
  std::size_t dim = 0;               // dim H^i_m
  std::optional<unsigned> exponent;  // least a <= A killing H^i_m (0 when the slice is zero)
};

struct NilpotencyCertificate {
  unsigned i = 0;
  unsigned window = 0;
  unsigned max_power = 0;
  Polynomial s;
  bool found = false;
  unsigned a = 0;  // valid when found
  std::vector<SliceExponent> slices;
  std::vector<NilpotencyWitness> witnesses;  // for s^a, filled when found
  std::optional<unsigned> largest_surviving_degree;  // set on exhaustion
};

// Least a <= A with s^a H^i_m = 0 for every m <= N.
NilpotencyCertificate nilpotency_search(const MatrixGroup& group, unsigned i, const Polynomial& s, unsigned N,
                                        unsigned A, std::size_t budget = kBarBudget);

// Recomputes the certificate from scratch: fresh slices, fresh coboundary
// spaces, and the witnesses through the direct coboundary formula.
bool recheck_certificate(const MatrixGroup& group, const NilpotencyCertificate& cert,
                         std::string* reason = nullptr, std::size_t budget = kBarBudget);

struct WindowedAnnihilator {
  unsigned i = 0;
  unsigned window = 0;         // N: source slices m <= N
  unsigned degree_window = 0;  // N': annihilator degrees k <= N'
  std::vector<std::vector<Polynomial>> by_degree;  // by_degree[k] spans the degree-k part
  static constexpr const char* semantics =
      "contains the degree <= N' part of ann H^i; may be larger because only slices m <= N are tested";
};

WindowedAnnihilator windowed_annihilator(const MatrixGroup& group, unsigned i, unsigned N, unsigned Nprime,
                                         std::size_t budget = kBarBudget);

// True when t * H^i_m = 0 for all m <= N.
bool annihilates_window(const MatrixGroup& group, unsigned i, const Polynomial& t, unsigned N,
                        std::size_t budget = kBarBudget);

struct PStarEntry {
  unsigned mpow = 0;
  unsigned m = 0;
  bool in_valid_region = false;  // m + mpow (q - 1) <= N
  bool annihilates = false;
};

struct PStarReport {
  unsigned i = 0;
  unsigned window = 0;
  Polynomial t;
  std::vector<PStarEntry> entries;
  bool passed = true;  // no failure inside the valid region
};

// For 1 <= mpow <= M, checks P^mpow(t) * H^i_m = 0 on every slice m <= N.
// Only slices with m + mpow (q - 1) <= N count toward pass/fail: there the
// annihilation of t on the window is enough to force it.
PStarReport pstar_invariance_check(const MatrixGroup& group, unsigned i, const Polynomial& t, unsigned M, unsigned N,
                                   std::size_t budget = kBarBudget);

struct ExponentLedger {
  std::vector<unsigned> a;         // a_0..a_i
  std::vector<Polynomial> q;       // q_j = prod_{k <= j} d^{a_k}
  std::vector<unsigned> degrees;
};

// Assembles q_j from the exponents; throws InputError if any a_j is missing.
ExponentLedger exponent_ledger(const Polynomial& top_dickson, const std::vector<std::optional<unsigned>>& exponents);

}  // namespace modinv

#endif  // MODINV_ANNIHILATORS_HPP
