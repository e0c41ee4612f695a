#ifndef MODINV_COHOMOLOGY_HPP
#define MODINV_COHOMOLOGY_HPP

#include <memory>
#include <optional>
#include <vector>

#include "modinv/group.hpp"

namespace modinv {

// Bar cochains C^n(G, R_m): functions G^n -> R_m. Tuples are enumerated
// lexicographically by element index (first entry most significant). As flat
// vectors, entry t * dim R_m + k is the coefficient of monomial k in psi(t).

inline constexpr std::size_t kBarBudget = std::size_t{1} << 24;

struct Cochain {
  unsigned n = 0;
  unsigned m = 0;
  std::vector<Polynomial> values;  // one per tuple
};

std::size_t tuple_count(std::size_t order, unsigned n);
std::vector<std::size_t> tuple_of(std::size_t index, std::size_t order, unsigned n);
std::size_t tuple_index(const std::vector<std::size_t>& tuple, std::size_t order);

// Throws BudgetError when |G|^levels * dim R_m exceeds the budget.
void check_bar_budget(const MatrixGroup& group, unsigned levels, unsigned m, std::size_t budget);

SparseVec cochain_vector(const Cochain& c, const GradedBasis& basis);
Cochain cochain_from_vector(const MatrixGroup& group, unsigned n, const SparseVec& v, const GradedBasis& basis);
Cochain zero_cochain(const MatrixGroup& group, unsigned n, unsigned m);

// Matrix of d^n : C^n(G, R_m) -> C^{n+1}(G, R_m) with
// (d psi)(g_1..g_{n+1}) = g_1 psi(g_2..) + sum_{i=1}^{n} (-1)^i psi(.., g_i g_{i+1}, ..)
//                         + (-1)^{n+1} psi(g_1..g_n).
// The composite with d^{n+1} is audited (fully when small, on probes otherwise).
SparseMatrix differential(const MatrixGroup& group, unsigned n, unsigned m, std::size_t budget = kBarBudget);

Cochain coboundary(const MatrixGroup& group, const Cochain& c);

// im d^{n-1} inside C^n(G, R_m), with preimages.
class CoboundarySpace {
 public:
  CoboundarySpace(const MatrixGroup& group, unsigned n, unsigned m, std::size_t budget = kBarBudget);

  unsigned level() const { return n_; }
  unsigned degree() const { return m_; }
  const GradedBasis& basis() const { return basis_; }
  std::size_t rank() const { return ech_->rank(); }
  bool contains(const SparseVec& v) const { return ech_->contains(v); }
  // Canonical representative of v modulo the coboundaries (linear in v).
  SparseVec normal_form(const SparseVec& v) const { return ech_->normal_form(v); }
  // phi in C^{n-1} with d phi = v, or nullopt.
  std::optional<SparseVec> preimage(const SparseVec& v) const;

 private:
  unsigned n_, m_;
  GradedBasis basis_;
  std::unique_ptr<SparseEchelon> ech_;
};

class CohomologySlice {
 public:
  unsigned index() const { return i_; }
  unsigned degree() const { return m_; }
  std::size_t dim() const { return reps_.size(); }
  std::size_t cochain_dim() const { return cochain_dim_; }
  std::size_t coboundary_rank() const { return coboundary_rank_; }
  std::size_t cocycle_rank() const { return coboundary_rank_ + reps_.size(); }
  const GradedBasis& basis() const { return basis_; }
  // Representatives as flat vectors.
  const std::vector<SparseVec>& reps() const { return reps_; }
  std::vector<Cochain> cocycle_reps(const MatrixGroup& group) const;
  // Coordinates of a cocycle modulo coboundaries; nullopt when v is not a cocycle.
  std::optional<std::vector<Elem>> project(const SparseVec& v) const;
  bool is_coboundary(const SparseVec& v) const;
  // Generators of the coboundary space (columns of d^{i-1}).
  const std::vector<SparseVec>& coboundary_generators() const { return boundary_cols_; }

 private:
  friend CohomologySlice cohomology_slice(const MatrixGroup&, unsigned, unsigned, std::size_t);
  unsigned i_ = 0, m_ = 0;
  std::size_t cochain_dim_ = 0, coboundary_rank_ = 0;
  GradedBasis basis_{1, 0};
  FieldPtr field_;
  std::vector<SparseVec> reps_;
  std::vector<SparseVec> boundary_cols_;
  std::shared_ptr<SparseEchelon> ech_;  // coboundary generators, then reps
  std::vector<std::uint32_t> rep_slot_;  // insertion index of each rep
};

// H^i(G, R_m) = ker d^i / im d^{i-1}.
CohomologySlice cohomology_slice(const MatrixGroup& group, unsigned i, unsigned m, std::size_t budget = kBarBudget);

struct PeriodicSlice {
  std::size_t dim = 0;
  std::vector<Polynomial> basis;
};

// Cohomology of a cyclic group generated by element `generator`, from the
// 2-periodic resolution: i odd -> ker N / im(g-1), i even >= 2 -> ker(g-1) / im N,
// i = 0 -> invariants.
PeriodicSlice periodic_oracle(const MatrixGroup& group, std::size_t generator, unsigned i, unsigned m);

// Matrix of multiplication by the invariant s from `from` to `to`
// (to.degree() == from.degree() + deg s). Checks that coboundaries map to coboundaries.
Matrix s_action(const MatrixGroup& group, const Polynomial& s, const CohomologySlice& from, const CohomologySlice& to);

// Pointwise product s * psi.
Cochain multiply_cochain(const Polynomial& s, const Cochain& c);

// The same product on flat vectors: C^n(G, R_m) -> C^n(G, R_{m + deg s}).
SparseVec multiply_cochain_vector(const Polynomial& s, const SparseVec& v, std::size_t tuples, const GradedBasis& from,
                                  const GradedBasis& to);

// Q^mpow(psi) = P^mpow composed with psi.
Cochain q_operator(unsigned mpow, const Cochain& c);

// Matrix of Q^mpow : C^n(G, R_m) -> C^n(G, R_{m + mpow(q-1)}).
SparseMatrix q_operator_matrix(const MatrixGroup& group, unsigned n, unsigned m, unsigned mpow);

}  // namespace modinv

#endif  // MODINV_COHOMOLOGY_HPP
