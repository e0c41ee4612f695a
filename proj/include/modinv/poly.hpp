#ifndef MODINV_POLY_HPP
#define MODINV_POLY_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "modinv/field.hpp"
#include "modinv/sparse.hpp"

namespace modinv {

constexpr std::size_t kMaxVars = 8;

// Exponent vector x_0^{e_0} ... x_{d-1}^{e_{d-1}}; unused slots stay zero.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> exps{};

  static Monomial one() { return {}; }
  static Monomial var(std::size_t i, unsigned e = 1);

  unsigned degree() const;
  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  // o / this; requires divides(o).
  Monomial quotient_of(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  bool operator==(const Monomial&) const = default;
};

// Graded lexicographic order with x_0 > x_1 > ... ; fixed for the whole library.
bool grlex_less(const Monomial& a, const Monomial& b);

// Comparator putting larger monomials first, so maps iterate in descending order.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_less(b, a); }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const;
};

// Sparse polynomial in F_q[x_0, ..., x_{d-1}].
class Polynomial {
 public:
  using Terms = std::map<Monomial, Elem, GrlexGreater>;

  Polynomial() = default;
  Polynomial(FieldPtr field, std::size_t nvars);

  static Polynomial constant(FieldPtr field, std::size_t nvars, Elem c);
  static Polynomial variable(FieldPtr field, std::size_t nvars, std::size_t i);
  static Polynomial monomial(FieldPtr field, std::size_t nvars, const Monomial& m, Elem c = 1);
  // sum_i coeffs[i] x_i
  static Polynomial linear_form(FieldPtr field, std::span<const Elem> coeffs);

  const FieldPtr& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Elem coeff(const Monomial& m) const;

  // Adds c * m in place.
  void add_term(const Monomial& m, Elem c);

  // The common degree of all terms; nullopt for zero or inhomogeneous input.
  std::optional<unsigned> homogeneous_degree() const;
  bool is_homogeneous() const;
  // Largest total degree; 0 for the zero polynomial.
  unsigned degree() const;
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  Elem leading_coeff() const { return terms_.begin()->second; }

  Polynomial graded_component(unsigned n) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial scaled(Elem c) const;
  Polynomial times_monomial(const Monomial& m, Elem c = 1) const;
  Polynomial pow(unsigned e) const;

  bool operator==(const Polynomial& o) const;

 private:
  void check_compatible(const Polynomial& o) const;

  FieldPtr field_;
  std::size_t nvars_ = 0;
  Terms terms_;
};

// All degree-n monomials in d variables, in descending graded-lex order.
class GradedBasis {
 public:
  GradedBasis(std::size_t nvars, unsigned degree);

  std::size_t nvars() const { return nvars_; }
  unsigned degree() const { return degree_; }
  std::size_t size() const { return monomials_.size(); }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
  // Throws InputError for monomials of another degree.
  std::size_t index_of(const Monomial& m) const;

 private:
  std::size_t nvars_;
  unsigned degree_;
  std::vector<Monomial> monomials_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
};

// C(n + d - 1, d - 1)
std::size_t graded_dimension(std::size_t nvars, unsigned degree);

std::vector<Elem> coeff_vector(const Polynomial& f, const GradedBasis& basis);
SparseVec coeff_sparse(const Polynomial& f, const GradedBasis& basis);
Polynomial from_vector(FieldPtr field, std::span<const Elem> v, const GradedBasis& basis);
Polynomial from_sparse(FieldPtr field, const SparseVec& v, const GradedBasis& basis);

// Text form: terms `c*x0^a0*x1^a1...` joined by " + " in descending order.
// Coefficients are integers over prime fields and parenthesized polynomials
// in t otherwise; a coefficient 1 is omitted except on the constant term.
std::string to_string(const Polynomial& f);
Polynomial parse_polynomial(std::string_view text, FieldPtr field, std::size_t nvars);
// Parses a field element written as an integer or a polynomial in t.
Elem parse_scalar(std::string_view text, const Field& field);

// True iff F_q[x]/(gens) is finite dimensional, decided from a reduced
// Groebner basis (Buchberger, graded lex): every variable must have a pure
// power among the leading monomials.
bool is_zero_dimensional(const std::vector<Polynomial>& gens);

// Reduced Groebner basis in graded lex order. Every run re-checks that all
// S-polynomials reduce to zero and throws AuditError otherwise.
std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& gens);

// Remainder of f on division by the (Groebner) basis.
Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis);

}  // namespace modinv

#endif  // MODINV_POLY_HPP
