#ifndef MODINV_FIELD_HPP
#define MODINV_FIELD_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace modinv {

// Thrown for malformed user input (bad primes, singular generators, parse errors).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when a computation would exceed a configured size budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when an internal self-check fails. Always a bug, never a user error.
class AuditError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Canonical code of a field element: sum of c_k p^k over its coefficient
// vector (c_0, ..., c_{r-1}) in the basis 1, t, ..., t^{r-1}. Two elements
// are equal iff their codes are equal.
using Elem = std::uint16_t;

bool is_prime(std::uint64_t n);

// Binomial coefficient C(n, k) reduced mod the prime p (Lucas).
unsigned binomial_mod(std::uint64_t n, std::uint64_t k, unsigned p);

// The finite field F_q, q = p^r, realized as F_p[t]/(modulus).
// 
// Arithmetic is table driven: multiplication through discrete log tables,
// addition digitwise (XOR when p = 2). Instances are immutable and shared
// through FieldPtr; every Polynomial, Matrix and Scalar refers to one.
class Field {
 public:
  static constexpr unsigned kMaxOrder = 1u << 16;

  // Builds and validates F_{p^r}. When `modulus` is empty and r > 1 the
  // shipped table is consulted. `modulus` lists coefficients low to high and
  // must be monic of degree r.
  static std::shared_ptr<const Field> make(unsigned p, unsigned r = 1,
                                           std::vector<unsigned> modulus = {});

  unsigned p() const { return p_; }
  unsigned r() const { return r_; }
  unsigned q() const { return q_; }
  const std::vector<unsigned>& modulus() const { return modulus_; }
  bool is_prime_field() const { return r_ == 1; }

  static constexpr Elem zero() { return 0; }
  static constexpr Elem one() { return 1; }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return static_cast<Elem>(a ^ b);
    if (r_ == 1) {
      unsigned s = unsigned(a) + b;
      return static_cast<Elem>(s >= p_ ? s - p_ : s);
    }
    if (!add_table_.empty()) return add_table_[std::size_t(a) * q_ + b];
    return add_digits(a, b);
  }
  Elem neg(Elem a) const {
    if (p_ == 2 || a == 0) return a;
    if (r_ == 1) return static_cast<Elem>(p_ - a);
    return neg_table_[a];
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (r_ == 1) return static_cast<Elem>((unsigned(a) * b) % p_);
    unsigned s = log_[a] + log_[b];
    return exp_[s];  // exp_ has length 2(q-1)
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem frobenius(Elem a) const { return pow(a, p_); }

  // Image of an integer under Z -> F_p -> F_q.
  Elem from_int(long long n) const;
  // Coefficient vector (length r) of a code.
  std::vector<unsigned> coeffs(Elem a) const;
  Elem from_coeffs(std::span<const unsigned> c) const;

  // Text form: an integer for prime fields, a polynomial in t otherwise.
  std::string to_string(Elem a) const;

  bool operator==(const Field& o) const {
    return p_ == o.p_ && r_ == o.r_ && modulus_ == o.modulus_;
  }

 private:
  Field(unsigned p, unsigned r, std::vector<unsigned> modulus);
  Elem add_digits(Elem a, Elem b) const;
  Elem mul_slow(Elem a, Elem b) const;

  unsigned p_;
  unsigned r_;
  unsigned q_;
  std::vector<unsigned> modulus_;
  std::vector<Elem> add_table_;
  std::vector<Elem> neg_table_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;
};

using FieldPtr = std::shared_ptr<const Field>;

// True when both pointers denote the same field (pointer or structural equality).
inline bool same_field(const FieldPtr& a, const FieldPtr& b) {
  return a == b || (a && b && *a == *b);
}

// Checked field element carrying its field. Used at API boundaries; bulk
// routines work on raw Elem codes.
class Scalar {
 public:
  Scalar(FieldPtr field, Elem code);
  static Scalar from_int(FieldPtr field, long long n) {
    Elem c = field->from_int(n);
    return Scalar(std::move(field), c);
  }

  const FieldPtr& field() const { return field_; }
  Elem code() const { return code_; }
  std::vector<unsigned> coeffs() const { return field_->coeffs(code_); }
  bool is_zero() const { return code_ == 0; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const { return *this * o.inv(); }
  Scalar operator-() const { return Scalar(field_, field_->neg(code_)); }
  Scalar inv() const;
  Scalar pow(std::uint64_t e) const { return Scalar(field_, field_->pow(code_, e)); }
  Scalar frobenius() const { return Scalar(field_, field_->frobenius(code_)); }

  bool operator==(const Scalar& o) const {
    return same_field(field_, o.field_) && code_ == o.code_;
  }

 private:
  void check_same(const Scalar& o) const;
  FieldPtr field_;
  Elem code_;
};

}  // namespace modinv

#endif  // MODINV_FIELD_HPP
