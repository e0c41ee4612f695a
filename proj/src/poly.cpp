#include "modinv/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace modinv {

Monomial Monomial::var(std::size_t i, unsigned e) {
  if (i >= kMaxVars) throw InputError("variable index exceeds the supported number of variables");
  Monomial m;
  m.exps[i] = static_cast<std::uint16_t>(e);
  return m;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (auto e : exps) d += e;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVars; ++i) m.exps[i] = static_cast<std::uint16_t>(exps[i] + o.exps[i]);
  return m;
}

bool Monomial::divides(const Monomial& o) const {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (exps[i] > o.exps[i]) return false;
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVars; ++i) m.exps[i] = static_cast<std::uint16_t>(o.exps[i] - exps[i]);
  return m;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVars; ++i) m.exps[i] = std::max(exps[i], o.exps[i]);
  return m;
}

bool grlex_less(const Monomial& a, const Monomial& b) {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return a.exps < b.exps;
}

std::size_t MonomialHash::operator()(const Monomial& m) const {
  std::uint64_t h = 1469598103934665603ull;
  for (auto e : m.exps) {
    h ^= e;
    h *= 1099511628211ull;
  }
  return std::size_t(h);
}

Polynomial::Polynomial(FieldPtr field, std::size_t nvars) : field_(std::move(field)), nvars_(nvars) {
  if (!field_) throw InputError("polynomial without field");
  if (nvars_ > kMaxVars) throw InputError("too many variables");
}

Polynomial Polynomial::constant(FieldPtr field, std::size_t nvars, Elem c) {
  Polynomial f(std::move(field), nvars);
  f.add_term(Monomial::one(), c);
  return f;
}

Polynomial Polynomial::variable(FieldPtr field, std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw InputError("variable index out of range");
  Polynomial f(std::move(field), nvars);
  f.add_term(Monomial::var(i), 1);
  return f;
}

Polynomial Polynomial::monomial(FieldPtr field, std::size_t nvars, const Monomial& m, Elem c) {
  Polynomial f(std::move(field), nvars);
  f.add_term(m, c);
  return f;
}

Polynomial Polynomial::linear_form(FieldPtr field, std::span<const Elem> coeffs) {
  Polynomial f(std::move(field), coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) f.add_term(Monomial::var(i), coeffs[i]);
  return f;
}

Elem Polynomial::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Elem(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, Elem c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second = field_->add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

std::optional<unsigned> Polynomial::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  unsigned d = terms_.begin()->first.degree();
  if (terms_.rbegin()->first.degree() != d) return std::nullopt;
  return d;
}

bool Polynomial::is_homogeneous() const { return terms_.empty() || homogeneous_degree().has_value(); }

unsigned Polynomial::degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }

Polynomial Polynomial::graded_component(unsigned n) const {
  Polynomial g(field_, nvars_);
  for (auto& [m, c] : terms_)
    if (m.degree() == n) g.terms_.emplace_hint(g.terms_.end(), m, c);
  return g;
}

void Polynomial::check_compatible(const Polynomial& o) const {
  if (nvars_ != o.nvars_) throw InputError("polynomials over different numbers of variables");
  if (!same_field(field_, o.field_)) throw InputError("polynomials over different fields");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  r += o;
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  r -= o;
  return r;
}

Polynomial Polynomial::operator-() const { return scaled(field_->neg(1)); }

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_compatible(o);
  for (auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_compatible(o);
  for (auto& [m, c] : o.terms_) add_term(m, field_->neg(c));
  return *this;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_compatible(o);
  const Field& f = *field_;
  Polynomial r(field_, nvars_);
  if (terms_.empty() || o.terms_.empty()) return r;
  if (terms_.size() == 1 || o.terms_.size() == 1) {
    const Polynomial& big = terms_.size() == 1 ? o : *this;
    const auto& [m, c] = *(terms_.size() == 1 ? terms_.begin() : o.terms_.begin());
    return big.times_monomial(m, c);
  }
  std::unordered_map<Monomial, Elem, MonomialHash> acc;
  acc.reserve(terms_.size() * o.terms_.size() / 2 + 1);
  for (auto& [m1, c1] : terms_) {
    for (auto& [m2, c2] : o.terms_) {
      Elem& slot = acc[m1 * m2];
      slot = f.add(slot, f.mul(c1, c2));
    }
  }
  for (auto& [m, c] : acc)
    if (c != 0) r.terms_.emplace(m, c);
  return r;
}

Polynomial Polynomial::scaled(Elem c) const {
  Polynomial r(field_, nvars_);
  if (c == 0) return r;
  for (auto& [m, a] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, field_->mul(c, a));
  return r;
}

Polynomial Polynomial::times_monomial(const Monomial& m, Elem c) const {
  Polynomial r(field_, nvars_);
  if (c == 0) return r;
  // Multiplying by a monomial preserves the term order.
  for (auto& [mm, a] : terms_) r.terms_.emplace_hint(r.terms_.end(), mm * m, field_->mul(c, a));
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(field_, nvars_, 1);
  Polynomial base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool Polynomial::operator==(const Polynomial& o) const {
  return nvars_ == o.nvars_ && terms_ == o.terms_ && (terms_.empty() || same_field(field_, o.field_));
}

std::size_t graded_dimension(std::size_t nvars, unsigned degree) {
  if (nvars == 0) return degree == 0 ? 1 : 0;
  // C(degree + nvars - 1, nvars - 1)
  std::size_t k = nvars - 1, n = degree + k;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {

void enumerate(std::size_t nvars, std::size_t pos, unsigned remaining, Monomial& cur, std::vector<Monomial>& out) {
  if (pos + 1 == nvars) {
    cur.exps[pos] = static_cast<std::uint16_t>(remaining);
    out.push_back(cur);
    cur.exps[pos] = 0;
    return;
  }
  for (int e = int(remaining); e >= 0; --e) {
    cur.exps[pos] = static_cast<std::uint16_t>(e);
    enumerate(nvars, pos + 1, remaining - unsigned(e), cur, out);
  }
  cur.exps[pos] = 0;
}

}  // namespace

GradedBasis::GradedBasis(std::size_t nvars, unsigned degree) : nvars_(nvars), degree_(degree) {
  if (nvars > kMaxVars) throw InputError("too many variables");
  if (nvars == 0) {
    if (degree == 0) monomials_.push_back(Monomial::one());
  } else {
    Monomial cur;
    monomials_.reserve(graded_dimension(nvars, degree));
    enumerate(nvars, 0, degree, cur, monomials_);
  }
  index_.reserve(monomials_.size());
  for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
}

std::size_t GradedBasis::index_of(const Monomial& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) throw InputError("monomial not in graded basis of degree " + std::to_string(degree_));
  return it->second;
}

std::vector<Elem> coeff_vector(const Polynomial& f, const GradedBasis& basis) {
  if (!f.is_zero() && f.homogeneous_degree() != basis.degree())
    throw InputError("polynomial is not homogeneous of degree " + std::to_string(basis.degree()));
  std::vector<Elem> v(basis.size(), 0);
  for (auto& [m, c] : f.terms()) v[basis.index_of(m)] = c;
  return v;
}

SparseVec coeff_sparse(const Polynomial& f, const GradedBasis& basis) {
  if (!f.is_zero() && f.homogeneous_degree() != basis.degree())
    throw InputError("polynomial is not homogeneous of degree " + std::to_string(basis.degree()));
  SparseVec v;
  v.reserve(f.size());
  // Terms iterate in descending order, matching increasing basis index.
  for (auto& [m, c] : f.terms()) v.push_back({std::uint32_t(basis.index_of(m)), c});
  return v;
}

Polynomial from_vector(FieldPtr field, std::span<const Elem> v, const GradedBasis& basis) {
  if (v.size() != basis.size()) throw InputError("coefficient vector length does not match basis");
  Polynomial f(std::move(field), basis.nvars());
  for (std::size_t i = 0; i < v.size(); ++i) f.add_term(basis[i], v[i]);
  return f;
}

Polynomial from_sparse(FieldPtr field, const SparseVec& v, const GradedBasis& basis) {
  Polynomial f(std::move(field), basis.nvars());
  for (auto& e : v) f.add_term(basis[e.index], e.value);
  return f;
}

std::string to_string(const Polynomial& f) {
  if (f.is_zero()) return "0";
  const Field& field = *f.field();
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : f.terms()) {
    if (!first) os << " + ";
    first = false;
    bool constant = m.degree() == 0;
    bool wrote = false;
    if (c != 1 || constant) {
      if (field.is_prime_field()) {
        os << unsigned(c);
      } else {
        os << '(' << field.to_string(c) << ')';
      }
      wrote = true;
    }
    for (std::size_t i = 0; i < f.nvars(); ++i) {
      if (m.exps[i] == 0) continue;
      if (wrote) os << '*';
      os << 'x' << i;
      if (m.exps[i] > 1) os << '^' << m.exps[i];
      wrote = true;
    }
  }
  return os.str();
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Field& field) : field_(field) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s_.push_back(ch);
  }

  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }
  bool accept(char ch) {
    if (peek() == ch) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("parse error at position " + std::to_string(pos_) + ": " + what + " in \"" + s_ + "\"");
  }
  unsigned long long number() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
    unsigned long long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + unsigned(s_[pos_++] - '0');
      if (v > (1ull << 40)) fail("number too large");
    }
    return v;
  }

  // Polynomial in t with integer coefficients, reduced into the field.
  Elem tpoly() {
    std::vector<unsigned> acc(field_.r(), 0);
    bool negate = accept('-');
    if (!negate) accept('+');
    while (true) {
      unsigned long long coef = 1;
      unsigned power = 0;
      bool any = false;
      do {
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
          coef = coef * (number() % field_.p()) % field_.p();
          any = true;
        } else if (field_.r() > 1 && accept('t')) {
          unsigned e = accept('^') ? unsigned(number()) : 1u;
          power += e;
          any = true;
        } else {
          fail("expected a coefficient term");
        }
      } while (accept('*'));
      if (!any) fail("empty coefficient term");
      // Reduce t^power via the modulus by repeated multiplication by t.
      std::vector<unsigned> term(field_.r(), 0);
      term[0] = unsigned(coef % field_.p());
      Elem t_code = field_.r() > 1 ? Elem(field_.p()) : Elem(1);
      Elem val = field_.mul(field_.from_coeffs(term), field_.pow(t_code, power));
      auto c = field_.coeffs(negate ? field_.neg(val) : val);
      for (unsigned k = 0; k < field_.r(); ++k) acc[k] = (acc[k] + c[k]) % field_.p();
      if (accept('+')) {
        negate = false;
      } else if (accept('-')) {
        negate = true;
      } else {
        break;
      }
    }
    return field_.from_coeffs(acc);
  }

  Polynomial poly(const FieldPtr& fp, std::size_t nvars) {
    Polynomial out(fp, nvars);
    if (done()) fail("empty polynomial");
    bool negate = accept('-');
    if (!negate) accept('+');
    while (true) {
      Elem coef = 1;
      Monomial m;
      do {
        char ch = peek();
        if (std::isdigit(static_cast<unsigned char>(ch))) {
          coef = field_.mul(coef, field_.from_int(static_cast<long long>(number() % field_.p())));
        } else if (ch == '(') {
          ++pos_;
          coef = field_.mul(coef, tpoly());
          if (!accept(')')) fail("expected ')'");
        } else if (ch == 't' && field_.r() > 1) {
          ++pos_;
          unsigned e = accept('^') ? unsigned(number()) : 1u;
          coef = field_.mul(coef, field_.pow(Elem(field_.p()), e));
        } else if (ch == 'x') {
          ++pos_;
          auto idx = number();
          if (idx >= nvars) fail("variable x" + std::to_string(idx) + " out of range");
          unsigned long long e = accept('^') ? number() : 1ull;
          if (m.exps[idx] + e > 65535) fail("exponent too large");
          m.exps[idx] = static_cast<std::uint16_t>(m.exps[idx] + e);
        } else {
          fail("unexpected character");
        }
      } while (accept('*'));
      out.add_term(m, negate ? field_.neg(coef) : coef);
      if (accept('+')) {
        negate = false;
      } else if (accept('-')) {
        negate = true;
      } else {
        break;
      }
    }
    if (!done()) fail("trailing input");
    return out;
  }

 private:
  const Field& field_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, FieldPtr field, std::size_t nvars) {
  Parser parser(text, *field);
  return parser.poly(field, nvars);
}

Elem parse_scalar(std::string_view text, const Field& field) {
  Parser parser(text, field);
  bool paren = parser.accept('(');
  Elem e = parser.tpoly();
  if (paren && !parser.accept(')')) parser.fail("expected ')'");
  if (!parser.done()) parser.fail("trailing input");
  return e;
}

}  // namespace modinv
