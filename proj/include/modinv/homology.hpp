#ifndef MODINV_HOMOLOGY_HPP
#define MODINV_HOMOLOGY_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "modinv/invariants.hpp"

namespace modinv {

// Koszul complex K(x) over S for homogeneous invariants x_1..x_m.
// K_i in degree n is the sum over i-subsets I (lex order on sorted index
// lists) of S_{n - deg x_I}, each block in the basis of invariant_space.
// d(e_I) = sum_k (-1)^k x_{I_k} e_{I \ I_k}.

struct KoszulSlice {
  std::vector<Polynomial> x;
  unsigned i = 0, n = 0;
  std::size_t chain_dim = 0;
  Matrix boundary_in;   // d_{i+1}: K_{i+1,n} -> K_{i,n}
  Matrix boundary_out;  // d_i: K_{i,n} -> K_{i-1,n}
  std::size_t cycle_rank = 0, boundary_rank = 0;
  std::vector<std::vector<Elem>> homology;  // cycles independent mod boundaries
  std::size_t dim() const { return homology.size(); }
};

class KoszulComplex {
 public:
  // Throws InputError for zero, inhomogeneous or non-invariant entries.
  KoszulComplex(InvariantRing& ring, std::vector<Polynomial> x);

  const std::vector<Polynomial>& x() const { return x_; }
  std::size_t length() const { return x_.size(); }
  // True when |x| = d and x passed validate_hsop.
  bool validated_hsop() const { return hsop_; }
  const std::vector<std::vector<unsigned>>& subsets(unsigned i) const { return subsets_[i]; }
  std::size_t chain_dim(unsigned i, unsigned n);
  // d_i at degree n; an empty map when i = 0 or i > m.
  Matrix boundary(unsigned i, unsigned n);
  KoszulSlice slice(unsigned i, unsigned n);
  // q * v for v in K_{i,n}, landing in K_{i, n + deg q}.
  std::vector<Elem> multiply(const Polynomial& q, unsigned i, unsigned n, const std::vector<Elem>& v);
  bool is_boundary(unsigned i, unsigned n, const std::vector<Elem>& v);
  const MatrixGroup& ring_group() const { return ring_.group(); }
  // c_k in S with q = sum_k c_k x_k, as coordinates in S_{deg q - deg x_k}; nullopt if q is not in (x).
  std::optional<std::vector<std::vector<Elem>>> ideal_coefficients(const Polynomial& q);
  // e_k ^ (c z) for z in K_{i,n} and c in S_m: an element of K_{i+1, n + m + deg x_k}.
  std::vector<Elem> wedge(std::size_t k, const std::vector<Elem>& c, unsigned m, unsigned i, unsigned n,
                          const std::vector<Elem>& z);

 private:
  std::vector<std::size_t> offsets(unsigned i, unsigned n);
  const Matrix& mult(std::size_t k, unsigned n);

  InvariantRing& ring_;
  std::vector<Polynomial> x_;
  std::vector<unsigned> deg_;
  bool hsop_ = false;
  std::vector<std::vector<std::vector<unsigned>>> subsets_;
  std::map<std::pair<std::size_t, unsigned>, Matrix> mult_;
};

KoszulSlice koszul_slice(const MatrixGroup& group, const std::vector<Polynomial>& x, unsigned i, unsigned n);

// The ideal (gens) of S, one degree at a time, as subspaces of S_n.
class IdealSlices {
 public:
  IdealSlices(InvariantRing& ring, std::vector<Polynomial> gens);
  const SparseEchelon& slice(unsigned n);
  bool contains(unsigned n, const std::vector<Elem>& coords) { return slice(n).contains(to_sparse(coords)); }

 private:
  InvariantRing& ring_;
  std::vector<Polynomial> gens_;
  std::map<unsigned, std::unique_ptr<SparseEchelon>> slices_;
};

struct ColonQuotientSlice {
  std::vector<Polynomial> x;
  unsigned t = 0, n = 0;
  std::size_t ideal_dim = 0;  // dim (x_1..x_{t-1})_n
  std::size_t colon_dim = 0;  // dim ((x_1..x_{t-1}) : x_t)_n
  std::vector<Polynomial> basis;  // representatives, independent mod the ideal
  std::size_t dim() const { return basis.size(); }
};

// ((x_1..x_{t-1}) : x_t) / (x_1..x_{t-1}) in degree n; t is 1-based.
ColonQuotientSlice colon_quotient_slice(InvariantRing& ring, const std::vector<Polynomial>& x, unsigned t, unsigned n);
ColonQuotientSlice colon_quotient_slice(const MatrixGroup& group, const std::vector<Polynomial>& x, unsigned t,
                                        unsigned n);

struct AnnihilationEntry {
  unsigned n = 0;        // source degree
  std::size_t dim = 0;   // dimension of the source slice
  bool passed = true;
};

struct AnnihilationReport {
  std::vector<AnnihilationEntry> entries;
  bool passed = true;
  std::string method;  // "homotopy witness" when q lies in (x), else "boundary solve"
  std::string note;    // set when the codim hypothesis was taken on trust
};

// q * H_i(x)_n = 0 for every n with n + deg q <= window. When q = sum c_k x_k,
// each q z is checked against the explicit preimage sum_k e_k ^ (c_k z).
AnnihilationReport annihilation_check_koszul(KoszulComplex& k, const Polynomial& q, unsigned i, unsigned window);
// q * (colon quotient at t)_n = 0 for every n with n + deg q <= window.
AnnihilationReport annihilation_check_colon(InvariantRing& ring, const std::vector<Polynomial>& x,
                                            const Polynomial& q, unsigned t, unsigned window);

struct DepthEstimate {
  unsigned lower = 0;   // min(dim V^P + 2, d)
  unsigned upper = 0;   // d - max{i : H_i(x) != 0 in window}
  std::size_t fixed_dim = 0;
  std::vector<std::vector<std::size_t>> h_dims;  // h_dims[i][n] = dim H_i(x)_n
  unsigned stable_run = 0;         // zero H_{>=1} slices at the top of the window
  bool stability_evidence = false; // stable_run >= max deg x (evidence, not proof)
};

// Throws InputError unless x is a validated hsop; AuditError if upper < lower.
DepthEstimate depth_estimate(const MatrixGroup& group, const std::vector<Polynomial>& x, unsigned window);

}  // namespace modinv

#endif  // MODINV_HOMOLOGY_HPP
