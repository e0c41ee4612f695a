#include "modinv/field.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

namespace modinv {

namespace {

// Monic irreducible moduli, low-to-high coefficients, keyed by (p, r).
const std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>>& shipped_moduli() {
  static const std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>> table = {
      {{2, 2}, {1, 1, 1}},          {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}},    {{3, 2}, {2, 2, 1}},
      {{3, 3}, {1, 2, 0, 1}},       {{3, 4}, {2, 0, 0, 2, 1}},
      {{5, 2}, {2, 4, 1}},          {{5, 3}, {3, 3, 0, 1}},
      {{5, 4}, {2, 4, 4, 0, 1}},    {{7, 2}, {3, 6, 1}},
      {{7, 3}, {4, 0, 6, 1}},       {{7, 4}, {3, 4, 5, 0, 1}},
      {{11, 2}, {2, 7, 1}},         {{11, 3}, {9, 2, 0, 1}},
      {{11, 4}, {2, 10, 8, 0, 1}},  {{13, 2}, {2, 12, 1}},
      {{13, 3}, {11, 2, 0, 1}},     {{13, 4}, {2, 12, 3, 0, 1}},
  };
  return table;
}

// Remainder of a modulo the monic polynomial b over F_p (coefficients low to high).
std::vector<unsigned> poly_rem(std::vector<unsigned> a, const std::vector<unsigned>& b, unsigned p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    unsigned lead = a.back();
    if (lead != 0) {
      std::size_t shift = a.size() - 1 - db;
      for (std::size_t k = 0; k <= db; ++k) {
        a[shift + k] = (a[shift + k] + (p - lead) * b[k]) % p;
      }
    }
    a.pop_back();
  }
  return a;
}

bool has_factor_of_degree(const std::vector<unsigned>& f, unsigned p, unsigned deg) {
  // Enumerate monic g of the given degree; g = t^deg + sum c_k t^k.
  std::uint64_t count = 1;
  for (unsigned k = 0; k < deg; ++k) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<unsigned> g(deg + 1);
    std::uint64_t c = code;
    for (unsigned k = 0; k < deg; ++k) {
      g[k] = unsigned(c % p);
      c /= p;
    }
    g[deg] = 1;
    auto rem = poly_rem(f, g, p);
    if (std::all_of(rem.begin(), rem.end(), [](unsigned x) { return x == 0; })) return true;
  }
  return false;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

unsigned binomial_mod(std::uint64_t n, std::uint64_t k, unsigned p) {
  if (k > n) return 0;
  unsigned result = 1;
  while (n > 0 || k > 0) {
    unsigned ni = unsigned(n % p), ki = unsigned(k % p);
    if (ki > ni) return 0;
    // C(ni, ki) mod p with ni < p via multiplicative formula and Fermat inverse.
    std::uint64_t num = 1, den = 1;
    for (unsigned j = 0; j < ki; ++j) {
      num = num * (ni - j) % p;
      den = den * (j + 1) % p;
    }
    std::uint64_t inv = 1, base = den, e = p - 2;
    while (e) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    result = unsigned(result * num % p * inv % p);
    n /= p;
    k /= p;
  }
  return result;
}

std::shared_ptr<const Field> Field::make(unsigned p, unsigned r, std::vector<unsigned> modulus) {
  if (!is_prime(p)) throw InputError("field characteristic " + std::to_string(p) + " is not prime");
  if (r < 1) throw InputError("extension degree must be at least 1");
  std::uint64_t q = 1;
  for (unsigned k = 0; k < r; ++k) {
    q *= p;
    if (q > kMaxOrder) throw InputError("field order p^r exceeds 2^16");
  }
  if (r == 1) {
    return std::shared_ptr<const Field>(new Field(p, 1, {0, 1}));
  }
  if (modulus.empty()) {
    auto it = shipped_moduli().find({p, r});
    if (it == shipped_moduli().end()) {
      throw InputError("no shipped modulus for p=" + std::to_string(p) + ", r=" + std::to_string(r) +
                       "; supply one explicitly");
    }
    modulus = it->second;
  }
  for (auto& c : modulus) {
    if (c >= p) throw InputError("modulus coefficient out of range [0, p)");
  }
  if (modulus.size() != r + 1 || modulus.back() != 1) {
    throw InputError("modulus must be monic of degree " + std::to_string(r));
  }
  for (unsigned deg = 1; deg <= r / 2; ++deg) {
    if (has_factor_of_degree(modulus, p, deg)) throw InputError("modulus is reducible over F_p");
  }
  return std::shared_ptr<const Field>(new Field(p, r, std::move(modulus)));
}

Field::Field(unsigned p, unsigned r, std::vector<unsigned> modulus)
    : p_(p), r_(r), q_(1), modulus_(std::move(modulus)) {
  for (unsigned k = 0; k < r_; ++k) q_ *= p_;
  if (r_ == 1) return;

  neg_table_.resize(q_);
  for (unsigned a = 0; a < q_; ++a) {
    auto c = coeffs(Elem(a));
    for (auto& x : c) x = (p_ - x) % p_;
    neg_table_[a] = from_coeffs(c);
  }
  if (p_ != 2 && q_ <= 1024) {
    add_table_.resize(std::size_t(q_) * q_);
    for (unsigned a = 0; a < q_; ++a)
      for (unsigned b = 0; b < q_; ++b) add_table_[std::size_t(a) * q_ + b] = add_digits(Elem(a), Elem(b));
  }

  // Smallest code generating the multiplicative group.
  log_.assign(q_, 0);
  exp_.assign(2 * (q_ - 1), 0);
  for (unsigned g = 2; g < q_ + 1; ++g) {
    if (g >= q_) throw AuditError("no primitive element found");
    Elem x = 1;
    unsigned order = 0;
    do {
      x = mul_slow(x, Elem(g));
      ++order;
    } while (x != 1 && order < q_);
    if (order != q_ - 1) continue;
    x = 1;
    for (unsigned k = 0; k < q_ - 1; ++k) {
      exp_[k] = x;
      exp_[k + q_ - 1] = x;
      log_[x] = k;
      x = mul_slow(x, Elem(g));
    }
    break;
  }
}

Elem Field::add_digits(Elem a, Elem b) const {
  unsigned result = 0, scale = 1;
  unsigned x = a, y = b;
  for (unsigned k = 0; k < r_; ++k) {
    result += ((x % p_ + y % p_) % p_) * scale;
    x /= p_;
    y /= p_;
    scale *= p_;
  }
  return Elem(result);
}

Elem Field::mul_slow(Elem a, Elem b) const {
  auto ca = coeffs(a), cb = coeffs(b);
  std::vector<unsigned> prod(2 * r_ - 1, 0);
  for (unsigned i = 0; i < r_; ++i)
    for (unsigned j = 0; j < r_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
  auto rem = poly_rem(std::move(prod), modulus_, p_);
  rem.resize(r_, 0);
  return from_coeffs(rem);
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inversion of zero");
  if (r_ == 1) return pow(a, p_ - 2);
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem result = 1, base = a;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Elem Field::from_int(long long n) const {
  long long m = n % static_cast<long long>(p_);
  if (m < 0) m += p_;
  return Elem(m);
}

std::vector<unsigned> Field::coeffs(Elem a) const {
  std::vector<unsigned> c(r_);
  unsigned x = a;
  for (unsigned k = 0; k < r_; ++k) {
    c[k] = x % p_;
    x /= p_;
  }
  return c;
}

Elem Field::from_coeffs(std::span<const unsigned> c) const {
  unsigned code = 0, scale = 1;
  for (unsigned k = 0; k < r_; ++k) {
    unsigned v = k < c.size() ? c[k] % p_ : 0;
    code += v * scale;
    scale *= p_;
  }
  return Elem(code);
}

std::string Field::to_string(Elem a) const {
  if (r_ == 1) return std::to_string(a);
  auto c = coeffs(a);
  std::ostringstream os;
  bool first = true;
  for (int k = int(r_) - 1; k >= 0; --k) {
    if (c[k] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (k == 0) {
      os << c[k];
    } else {
      if (c[k] != 1) os << c[k] << '*';
      os << 't';
      if (k > 1) os << '^' << k;
    }
  }
  if (first) os << '0';
  return os.str();
}

Scalar::Scalar(FieldPtr field, Elem code) : field_(std::move(field)), code_(code) {
  if (!field_) throw InputError("scalar without field");
  if (code_ >= field_->q()) throw InputError("scalar code outside field");
}

void Scalar::check_same(const Scalar& o) const {
  if (!same_field(field_, o.field_)) throw InputError("mixed-field scalar operands");
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  return Scalar(field_, field_->add(code_, o.code_));
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same(o);
  return Scalar(field_, field_->sub(code_, o.code_));
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  return Scalar(field_, field_->mul(code_, o.code_));
}

Scalar Scalar::inv() const { return Scalar(field_, field_->inv(code_)); }

}  // namespace modinv
