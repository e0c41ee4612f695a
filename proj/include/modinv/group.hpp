#ifndef MODINV_GROUP_HPP
#define MODINV_GROUP_HPP

#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "modinv/field.hpp"
#include "modinv/matrix.hpp"
#include "modinv/poly.hpp"
#include "modinv/sparse.hpp"

namespace modinv {

// V = F_q^d with the coordinate functions x_0..x_{d-1} as a basis of V*.
struct GroupContext {
  FieldPtr field;
  std::size_t d = 0;

  GroupContext(FieldPtr f, std::size_t dim);
  Polynomial zero() const { return Polynomial(field, d); }
  Polynomial one() const { return Polynomial::constant(field, d, 1); }
  Polynomial var(std::size_t i) const { return Polynomial::variable(field, d, i); }
};

// A finite subgroup of GL_d(F_q), stored as an explicit element list with
// its multiplication table. Element 0 is the identity.
// 
// Action on R = F_q[V]: (g.f)(v) = f(g^{-1} v), so x_i maps to
// sum_j (g^{-1})_{ij} x_j. This is a left action by graded ring automorphisms.
class MatrixGroup {
 public:
  static constexpr std::size_t kDefaultCap = 64;

  // Breadth-first closure from the identity, multiplying by generators in
  // the given order. Throws InputError for singular generators and
  // BudgetError when the group outgrows `cap`.
  static MatrixGroup close(const GroupContext& ctx, const std::vector<Matrix>& generators,
                           std::size_t cap = kDefaultCap);

  const GroupContext& context() const { return ctx_; }
  const FieldPtr& field() const { return ctx_.field; }
  std::size_t dim() const { return ctx_.d; }
  std::size_t order() const { return elements_.size(); }
  const Matrix& element(std::size_t i) const { return elements_[i]; }
  const std::vector<Matrix>& elements() const { return elements_; }
  const std::vector<std::size_t>& generator_indices() const { return generators_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a * order() + b]; }
  std::size_t inverse(std::size_t a) const { return inverses_[a]; }
  std::size_t element_order(std::size_t a) const;
  std::optional<std::size_t> index_of(const Matrix& m) const;

  // Images of x_0..x_{d-1} under element g.
  const std::vector<Polynomial>& variable_images(std::size_t g) const { return var_images_[g]; }
  // True when every element sends each variable to a scalar multiple of a variable.
  bool is_monomial() const { return monomial_; }

  // Closure of a set of element indices under multiplication.
  std::vector<std::size_t> generated_subgroup(const std::vector<std::size_t>& gens) const;
  bool is_subgroup(const std::vector<std::size_t>& subset) const;

 private:
  MatrixGroup(GroupContext ctx) : ctx_(std::move(ctx)) {}

  GroupContext ctx_;
  std::vector<Matrix> elements_;
  std::vector<std::size_t> generators_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> inverses_;
  std::vector<std::vector<Polynomial>> var_images_;
  bool monomial_ = true;
};

// g.f under the contragredient convention above.
Polynomial act_on_poly(const MatrixGroup& group, std::size_t g, const Polynomial& f);

// g.f for a bare invertible matrix g (no group needed).
Polynomial act_by_matrix(const Matrix& g, const Polynomial& f);

// Matrix of f -> g.f on R_n in the graded basis, as sparse columns.
SparseMatrix action_matrix(const MatrixGroup& group, std::size_t g, const GradedBasis& basis);

struct FixedSubspace {
  std::size_t dimension = 0;
  Matrix basis;  // d x dimension, columns span V^H
};

// V^H for the subgroup H given by element indices. Throws InputError when H
// is not closed under multiplication.
FixedSubspace fixed_subspace(const MatrixGroup& group, const std::vector<std::size_t>& subgroup);

// A Sylow p-subgroup (element indices, sorted), grown greedily from the
// identity by adjoining p-elements in index order.
std::vector<std::size_t> sylow_p(const MatrixGroup& group);

// Uniformly random invertible d x d matrix (rejection sampling).
template <class Rng>
Matrix random_invertible(const FieldPtr& field, std::size_t d, Rng& rng);

// Invertibility test through rank.
bool is_invertible(const Matrix& m);
Matrix matrix_inverse(const Matrix& m);

template <class Rng>
Matrix random_invertible(const FieldPtr& field, std::size_t d, Rng& rng) {
  std::uniform_int_distribution<unsigned> dist(0, field->q() - 1);
  while (true) {
    Matrix m(field, d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m.at(i, j) = Elem(dist(rng));
    if (is_invertible(m)) return m;
  }
}

}  // namespace modinv

#endif  // MODINV_GROUP_HPP
