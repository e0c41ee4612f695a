#ifndef MODINV_INVARIANTS_HPP
#define MODINV_INVARIANTS_HPP

#include <map>
#include <optional>
#include <vector>

#include "modinv/group.hpp"

namespace modinv {

// Basis of S_n = (R_n)^G. Stored in reduced form: basis[j] has coefficient 1
// at monomial lead[j] and 0 at every other lead, so coordinates of an
// invariant are read off at the lead monomials.
struct InvariantBasis {
  FieldPtr field;
  unsigned degree = 0;
  GradedBasis monomials{1, 0};
  std::vector<Polynomial> basis;
  std::vector<SparseVec> coeffs;     // w.r.t. monomials, sorted by index
  std::vector<std::uint32_t> lead;   // monomial index carrying the 1

  std::size_t dim() const { return basis.size(); }
  // Coordinates of f in the basis, or nullopt if f is not in S_n.
  std::optional<std::vector<Elem>> coordinates(const Polynomial& f) const;
  Polynomial combine(const std::vector<Elem>& coords) const;
};

InvariantBasis invariant_space(const MatrixGroup& group, unsigned n);

// S = R^G one degree at a time, with slices cached on first use.
class InvariantRing {
 public:
  explicit InvariantRing(const MatrixGroup& group) : group_(group) {}

  const MatrixGroup& group() const { return group_; }
  const InvariantBasis& slice(unsigned n);
  std::size_t dim(unsigned n) { return slice(n).dim(); }
  // Multiplication by the homogeneous invariant f as a map S_n -> S_{n + deg f}.
  Matrix multiplication(const Polynomial& f, unsigned n);

 private:
  const MatrixGroup& group_;
  std::map<unsigned, InvariantBasis> slices_;
};

// True when g.f = f for every generator.
bool is_invariant(const MatrixGroup& group, const Polynomial& f);

struct DicksonClass {
  Polynomial poly;
  unsigned degree = 0;
};

// Default ceiling on q^d for the Dickson constructions.
inline constexpr std::size_t kDicksonBudget = std::size_t{1} << 12;

// Product of all nonzero linear forms on V.
DicksonClass dickson_top(const GroupContext& ctx, std::size_t budget = kDicksonBudget);

struct Hsop {
  std::vector<Polynomial> elements;
  std::vector<unsigned> degrees;
};

// The d Dickson classes, ordered by i = 0..d-1 with degree q^d - q^i.
// Element i is the coefficient of X^{q^i} in prod_{v in V*} (X + v).
Hsop dickson_family(const GroupContext& ctx, std::size_t budget = kDicksonBudget);

// Average over the group; requires p not dividing |G|.
Polynomial reynolds(const MatrixGroup& group, const Polynomial& f);

// True iff R/(theta)R is finite dimensional. Throws InputError for non-invariant,
// inhomogeneous or wrongly sized input.
bool validate_hsop(const MatrixGroup& group, const std::vector<Polynomial>& theta);

}  // namespace modinv

#endif  // MODINV_INVARIANTS_HPP
