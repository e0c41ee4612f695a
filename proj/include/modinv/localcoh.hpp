#ifndef MODINV_LOCALCOH_HPP
#define MODINV_LOCALCOH_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "modinv/invariants.hpp"

namespace modinv {

// A = F_q[theta_1..theta_d] with theta_k in degree w_k. Elements of A are
// polynomials in d variables t_0..t_{d-1}; their degrees are weighted.
class HsopAlgebra {
 public:
  HsopAlgebra(FieldPtr field, std::vector<unsigned> weights);

  const FieldPtr& field() const { return field_; }
  std::size_t nvars() const { return weights_.size(); }
  const std::vector<unsigned>& weights() const { return weights_; }
  unsigned weighted_degree(const Monomial& m) const;
  // Weighted degree of a nonzero homogeneous element, nullopt otherwise.
  std::optional<unsigned> degree(const Polynomial& a) const;
  // Monomials of weighted degree n (empty for n < 0), in a fixed order.
  const std::vector<Monomial>& basis(int n);
  std::size_t dim(int n) { return basis(n).size(); }
  std::size_t index_of(int n, const Monomial& m);
  Polynomial variable(std::size_t k) const { return Polynomial::variable(field_, nvars(), k); }

 private:
  struct Slice {
    std::vector<Monomial> monos;
    std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  };
  const Slice& slice(int n);

  FieldPtr field_;
  std::vector<unsigned> weights_;
  std::map<int, Slice> slices_;
};

// Degree-preserving A-linear map between graded free modules
// sum_k A(-source[k]) -> sum_k' A(-target[k']). columns[k][k'] has weighted
// degree source[k] - target[k'] (or is zero).
struct FreeMap {
  std::vector<int> source, target;
  std::vector<std::vector<Polynomial>> columns;
};

// Offsets of the blocks A_{n - t_k} inside (sum_k A(-t_k))_n.
std::vector<std::size_t> free_offsets(HsopAlgebra& a, const std::vector<int>& twists, int n);
// The map in degree n, as a dense matrix.
Matrix map_slice(HsopAlgebra& a, const FreeMap& f, int n);
// Hom_A(-, A) applied to f, in degree n: Hom(target)_n -> Hom(source)_n,
// where Hom(sum A(-t_k), A)_n = sum_k A_{n + t_k}.
Matrix dual_slice(HsopAlgebra& a, const FreeMap& f, int n);
// g o f.
FreeMap compose(const FreeMap& g, const FreeMap& f);

struct ModulePresentation {
  std::shared_ptr<HsopAlgebra> algebra;
  unsigned window = 0;             // generators and relations complete in degrees <= window
  std::vector<int> generator_degrees;
  FreeMap relations;               // F_1 -> F_0
  // Only for S = R^G presented over its hsop subalgebra:
  std::vector<Polynomial> theta;
  std::vector<Polynomial> generators;
  std::vector<std::size_t> s_dims;             // dim S_n, n <= window
  std::vector<std::vector<std::uint32_t>> s_leads;  // R_n monomials carrying S_n coordinates
  bool is_ring() const { return !generators.empty(); }
};

// Minimal presentation of S over A = F_q[theta], certified in degrees <= W.
// Throws InputError for an invalid hsop; AuditError if the dimension audit fails.
ModulePresentation present_over_hsop(const MatrixGroup& group, const std::vector<Polynomial>& theta, unsigned W);

// An abstract module coker(relations), for toy inputs.
ModulePresentation presentation_from_relations(std::shared_ptr<HsopAlgebra> a, std::vector<int> generator_degrees,
                                               FreeMap relations, unsigned W);

struct GradedResolution {
  std::shared_ptr<HsopAlgebra> algebra;
  unsigned window = 0;                    // exact in degrees <= window at every level
  std::vector<std::vector<int>> twists;   // F_0 .. F_L
  std::vector<FreeMap> maps;              // maps[i - 1] = d_i : F_i -> F_{i-1}
  std::size_t length() const { return twists.size() - 1; }
  int max_twist() const;
};

// Minimal free resolution by iterated syzygies, exactness audited by rank
// counts in every degree <= window. Throws BudgetError if syzygies remain
// past max_length.
GradedResolution free_resolution(const ModulePresentation& pres, unsigned max_length);

struct ChainLift {
  Polynomial s;
  unsigned degree = 0;
  std::vector<FreeMap> levels;  // phi_i : F_i(-deg s) -> F_i
};

// Lifts multiplication by s to the resolution. For presentations of S, s is
// an invariant in R; for abstract presentations, an element of A. A nonzero
// seed shifts every level by a random element of the relevant kernel, giving
// a second, homotopic lift. InputError when some t + deg s exceeds the window.
ChainLift lift_action(const ModulePresentation& pres, const GradedResolution& res, const Polynomial& s,
                      std::uint64_t seed = 0);

// phi_i = a * identity for a in A.
ChainLift scalar_lift(const GradedResolution& res, const Polynomial& a);

// Ext^i_A(M, A) one degree at a time, from the A-dual of the resolution.
class ExtModule {
 public:
  ExtModule(const GradedResolution& res, unsigned i);

  unsigned index() const { return i_; }
  std::size_t dim(int n) { return slice(n).reps.size(); }
  const std::vector<SparseVec>& reps(int n) { return slice(n).reps; }
  // Coordinates of a cocycle modulo coboundaries; nullopt if v is not a cocycle.
  std::optional<std::vector<Elem>> project(int n, const SparseVec& v);
  // Induced map Ext^i_n -> Ext^i_{n + deg s}.
  Matrix action(const ChainLift& lift, int n);
  std::vector<std::size_t> dims(int lo, int hi);

 private:
  struct Slice {
    std::size_t cochain_dim = 0;
    std::vector<SparseVec> reps;
    std::unique_ptr<SparseEchelon> cocycles;  // coboundaries then reps, tracked
    std::vector<std::uint32_t> slots;         // insertion index of each rep
  };
  Slice& slice(int n);

  const GradedResolution& res_;
  unsigned i_;
  std::map<int, Slice> slices_;
};

struct ExtNilpotency {
  bool found = false;
  unsigned a = 0;
  bool zero_window = false;  // no nonzero slice: d^0 = 1 already annihilates
  std::vector<std::pair<int, std::optional<unsigned>>> exponents;  // (n, least a) for nonzero slices
};

// Least a <= max_power with (induced s)^a = 0 on every Ext^i_n, lo <= n <= hi.
ExtNilpotency ext_nilpotency(ExtModule& ext, const ChainLift& lift, int lo, int hi, unsigned max_power);

// Reason S is known to be Cohen-Macaulay without computation, if any.
std::optional<std::string> cm_by_theory(const MatrixGroup& group);

}  // namespace modinv

#endif  // MODINV_LOCALCOH_HPP
