#include "modinv/localcoh.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace modinv {

HsopAlgebra::HsopAlgebra(FieldPtr field, std::vector<unsigned> weights) : field_(std::move(field)), weights_(std::move(weights)) {
  if (weights_.empty() || weights_.size() > kMaxVars) throw InputError("hsop algebra needs 1.." + std::to_string(kMaxVars) + " generators");
  for (auto w : weights_)
    if (w == 0) throw InputError("hsop degrees must be positive");
}

unsigned HsopAlgebra::weighted_degree(const Monomial& m) const {
  unsigned d = 0;
  for (std::size_t k = 0; k < nvars(); ++k) d += m.exps[k] * weights_[k];
  return d;
}

std::optional<unsigned> HsopAlgebra::degree(const Polynomial& a) const {
  if (a.is_zero()) return std::nullopt;
  std::optional<unsigned> d;
  for (auto& [m, c] : a.terms()) {
    unsigned w = weighted_degree(m);
    if (d && *d != w) return std::nullopt;
    d = w;
  }
  return d;
}

const HsopAlgebra::Slice& HsopAlgebra::slice(int n) {
  auto it = slices_.find(n);
  if (it != slices_.end()) return it->second;
  Slice s;
  if (n >= 0) {
    Monomial cur;
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t k, unsigned left) {
      if (k + 1 == nvars()) {
        if (left % weights_[k] == 0) {
          cur.exps[k] = std::uint16_t(left / weights_[k]);
          s.monos.push_back(cur);
        }
        return;
      }
      for (unsigned e = left / weights_[k] + 1; e-- > 0;) {
        cur.exps[k] = std::uint16_t(e);
        rec(k + 1, left - e * weights_[k]);
      }
      cur.exps[k] = 0;
    };
    rec(0, unsigned(n));
    for (std::size_t j = 0; j < s.monos.size(); ++j) s.index.emplace(s.monos[j], j);
  }
  return slices_.emplace(n, std::move(s)).first->second;
}

const std::vector<Monomial>& HsopAlgebra::basis(int n) { return slice(n).monos; }

std::size_t HsopAlgebra::index_of(int n, const Monomial& m) {
  const auto& s = slice(n);
  auto it = s.index.find(m);
  if (it == s.index.end()) throw InputError("monomial has the wrong weighted degree");
  return it->second;
}

std::vector<std::size_t> free_offsets(HsopAlgebra& a, const std::vector<int>& twists, int n) {
  std::vector<std::size_t> off{0};
  for (int t : twists) off.push_back(off.back() + a.dim(n - t));
  return off;
}

namespace {

// Coefficients of an A-vector (one entry per generator) in degree n.
std::vector<Elem> column_vector(HsopAlgebra& a, const std::vector<int>& twists, int n, const std::vector<Polynomial>& col) {
  auto off = free_offsets(a, twists, n);
  std::vector<Elem> v(off.back(), 0);
  for (std::size_t k = 0; k < twists.size(); ++k)
    for (auto& [m, c] : col[k].terms()) v[off[k] + a.index_of(n - twists[k], m)] = c;
  return v;
}

std::vector<Polynomial> vector_column(HsopAlgebra& a, const std::vector<int>& twists, int n, const std::vector<Elem>& v) {
  auto off = free_offsets(a, twists, n);
  std::vector<Polynomial> col;
  for (std::size_t k = 0; k < twists.size(); ++k) {
    Polynomial p(a.field(), a.nvars());
    const auto& b = a.basis(n - twists[k]);
    for (std::size_t j = 0; j < b.size(); ++j)
      if (v[off[k] + j]) p.add_term(b[j], v[off[k] + j]);
    col.push_back(std::move(p));
  }
  return col;
}

std::vector<std::vector<Elem>> kernel_columns(const Matrix& m) {
  std::vector<std::vector<Elem>> out;
  if (m.cols() == 0) return out;
  Matrix k = m.rows() == 0 ? Matrix::identity(m.field(), m.cols()) : reduce(m).kernel;
  for (std::size_t j = 0; j < k.cols(); ++j) out.push_back(k.column(j));
  return out;
}

std::size_t rank_of(const Matrix& m) { return m.empty() ? 0 : reduce(m).rank; }

// Minimal homogeneous generators, degree by degree, of the graded submodule
// of F whose degree-n piece has basis kernel_at(n).
FreeMap minimal_generators(HsopAlgebra& a, const std::vector<int>& twists, int lo, int hi,
                           const std::function<std::vector<std::vector<Elem>>(int)>& kernel_at) {
  FreeMap gens;
  gens.target = twists;
  for (int n = lo; n <= hi; ++n) {
    auto ker = kernel_at(n);
    if (ker.empty()) continue;
    SparseEchelon ech(a.field(), free_offsets(a, twists, n).back());
    Matrix im = map_slice(a, gens, n);
    for (std::size_t j = 0; j < im.cols(); ++j) ech.insert(to_sparse(im.column(j)));
    if (ech.rank() > ker.size()) throw AuditError("submodule generators leave the kernel");
    for (auto& v : ker)
      if (ech.insert(to_sparse(v))) {
        gens.source.push_back(n);
        gens.columns.push_back(vector_column(a, twists, n, v));
      }
    if (ech.rank() != ker.size()) throw AuditError("submodule generators leave the kernel");
  }
  return gens;
}

Polynomial zero_in(const HsopAlgebra& a) { return Polynomial(a.field(), a.nvars()); }

// sum_j r_j * col_j with r drawn from rng.
std::vector<Elem> random_combination(const Matrix& m, std::mt19937_64& rng) {
  const Field& f = *m.field();
  std::uniform_int_distribution<unsigned> dist(0, f.q() - 1);
  std::vector<Elem> out(m.rows(), 0);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Elem r = Elem(dist(rng));
    if (!r) continue;
    for (std::size_t i = 0; i < m.rows(); ++i) out[i] = f.add(out[i], f.mul(r, m.at(i, j)));
  }
  return out;
}

}  // namespace

Matrix map_slice(HsopAlgebra& a, const FreeMap& f, int n) {
  auto src = free_offsets(a, f.source, n), dst = free_offsets(a, f.target, n);
  const Field& fld = *a.field();
  Matrix out(a.field(), dst.back(), src.back());
  for (std::size_t k = 0; k < f.source.size(); ++k) {
    const auto& alphas = a.basis(n - f.source[k]);
    for (std::size_t kk = 0; kk < f.target.size(); ++kk) {
      const Polynomial& p = f.columns[k][kk];
      if (p.is_zero()) continue;
      for (std::size_t j = 0; j < alphas.size(); ++j)
        for (auto& [m, c] : p.terms()) {
          std::size_t row = dst[kk] + a.index_of(n - f.target[kk], alphas[j] * m);
          out.at(row, src[k] + j) = fld.add(out.at(row, src[k] + j), c);
        }
    }
  }
  return out;
}

Matrix dual_slice(HsopAlgebra& a, const FreeMap& f, int n) {
  std::vector<int> ns, nt;
  for (int t : f.source) ns.push_back(-t);
  for (int t : f.target) nt.push_back(-t);
  auto src = free_offsets(a, nt, n), dst = free_offsets(a, ns, n);
  const Field& fld = *a.field();
  Matrix out(a.field(), dst.back(), src.back());
  for (std::size_t kk = 0; kk < f.target.size(); ++kk) {
    const auto& alphas = a.basis(n + f.target[kk]);
    for (std::size_t k = 0; k < f.source.size(); ++k) {
      const Polynomial& p = f.columns[k][kk];
      if (p.is_zero()) continue;
      for (std::size_t j = 0; j < alphas.size(); ++j)
        for (auto& [m, c] : p.terms()) {
          std::size_t row = dst[k] + a.index_of(n + f.source[k], alphas[j] * m);
          out.at(row, src[kk] + j) = fld.add(out.at(row, src[kk] + j), c);
        }
    }
  }
  return out;
}

FreeMap compose(const FreeMap& g, const FreeMap& f) {
  FreeMap out;
  out.source = f.source;
  out.target = g.target;
  for (auto& fc : f.columns) {
    std::vector<Polynomial> col;
    for (std::size_t kk = 0; kk < g.target.size(); ++kk) {
      Polynomial acc;
      bool first = true;
      for (std::size_t k = 0; k < fc.size(); ++k) {
        Polynomial term = fc[k] * g.columns[k][kk];
        if (first) {
          acc = term;
          first = false;
        } else {
          acc += term;
        }
      }
      col.push_back(acc);
    }
    out.columns.push_back(std::move(col));
  }
  return out;
}

int GradedResolution::max_twist() const {
  int m = 0;
  for (auto& level : twists)
    for (int t : level) m = std::max(m, t);
  return m;
}

namespace {

// theta^alpha as an element of R, cached.
class ThetaPowers {
 public:
  explicit ThetaPowers(const std::vector<Polynomial>& theta) : theta_(theta) {}
  const Polynomial& operator()(const Monomial& alpha) {
    auto it = cache_.find(alpha);
    if (it != cache_.end()) return it->second;
    Polynomial p = Polynomial::constant(theta_[0].field(), theta_[0].nvars(), 1);
    for (std::size_t k = 0; k < theta_.size(); ++k)
      if (alpha.exps[k]) p = p * theta_[k].pow(alpha.exps[k]);
    return cache_.emplace(alpha, std::move(p)).first->second;
  }

 private:
  const std::vector<Polynomial>& theta_;
  std::unordered_map<Monomial, Polynomial, MonomialHash> cache_;
};

std::vector<Elem> s_coords(const Polynomial& f, unsigned n, const std::vector<std::uint32_t>& leads, std::size_t nvars) {
  GradedBasis b(nvars, n);
  auto v = coeff_vector(f, b);
  std::vector<Elem> c;
  for (auto l : leads) c.push_back(v[l]);
  return c;
}

// Evaluation F_0 -> S in degree n, in S-coordinates.
Matrix evaluation(HsopAlgebra& a, const ModulePresentation& p, ThetaPowers& tp, int n) {
  auto off = free_offsets(a, p.generator_degrees, n);
  Matrix out(a.field(), p.s_dims[n], off.back());
  const std::size_t d = p.generators[0].nvars();
  for (std::size_t k = 0; k < p.generators.size(); ++k) {
    const auto& alphas = a.basis(n - p.generator_degrees[k]);
    for (std::size_t j = 0; j < alphas.size(); ++j) {
      auto c = s_coords(tp(alphas[j]) * p.generators[k], unsigned(n), p.s_leads[n], d);
      for (std::size_t r = 0; r < c.size(); ++r) out.at(r, off[k] + j) = c[r];
    }
  }
  return out;
}

}  // namespace

ModulePresentation present_over_hsop(const MatrixGroup& group, const std::vector<Polynomial>& theta, unsigned W) {
  if (!validate_hsop(group, theta)) throw InputError("theta is not a homogeneous system of parameters");
  std::vector<unsigned> weights;
  for (auto& t : theta) weights.push_back(*t.homogeneous_degree());
  if (W < *std::max_element(weights.begin(), weights.end())) throw InputError("window smaller than the largest hsop degree");
  ModulePresentation p;
  p.algebra = std::make_shared<HsopAlgebra>(group.field(), weights);
  HsopAlgebra& a = *p.algebra;
  p.window = W;
  p.theta = theta;
  ThetaPowers tp(p.theta);
  std::vector<InvariantBasis> slices;
  for (unsigned n = 0; n <= W; ++n) {
    slices.push_back(invariant_space(group, n));
    p.s_dims.push_back(slices.back().dim());
    p.s_leads.push_back(slices.back().lead);
  }
  // Generators: complements of (A_+ S)_n in S_n.
  for (unsigned n = 0; n <= W; ++n) {
    if (p.s_dims[n] == 0) continue;
    SparseEchelon ech(group.field(), p.s_dims[n]);
    if (!p.generators.empty()) {
      Matrix ev = evaluation(a, p, tp, int(n));
      for (std::size_t j = 0; j < ev.cols(); ++j) ech.insert(to_sparse(ev.column(j)));
    }
    for (std::size_t j = 0; j < p.s_dims[n]; ++j) {
      std::vector<Elem> e(p.s_dims[n], 0);
      e[j] = 1;
      if (ech.insert(to_sparse(e))) {
        p.generators.push_back(slices[n].basis[j]);
        p.generator_degrees.push_back(int(n));
      }
    }
  }
  if (p.generators.empty()) throw AuditError("S has no generators in the window");
  p.relations = minimal_generators(a, p.generator_degrees, 0, int(W),
                                   [&](int n) { return kernel_columns(evaluation(a, p, tp, n)); });
  // Independent recount: coker of the relations has the dimensions of S.
  for (unsigned n = 0; n <= W; ++n) {
    std::size_t f0 = free_offsets(a, p.generator_degrees, int(n)).back();
    if (f0 - rank_of(map_slice(a, p.relations, int(n))) != p.s_dims[n])
      throw AuditError("presentation dimension audit fails in degree " + std::to_string(n));
  }
  return p;
}

ModulePresentation presentation_from_relations(std::shared_ptr<HsopAlgebra> a, std::vector<int> generator_degrees,
                                               FreeMap relations, unsigned W) {
  relations.target = generator_degrees;
  for (std::size_t k = 0; k < relations.columns.size(); ++k) {
    if (relations.columns[k].size() != generator_degrees.size()) throw InputError("relation has the wrong length");
    for (std::size_t kk = 0; kk < generator_degrees.size(); ++kk) {
      const auto& e = relations.columns[k][kk];
      if (e.nvars() != a->nvars()) throw InputError("relation entry outside A");
      if (!e.is_zero() && a->degree(e) != unsigned(relations.source[k] - generator_degrees[kk]))
        throw InputError("relation entry has the wrong degree");
    }
  }
  ModulePresentation p;
  p.algebra = std::move(a);
  p.window = W;
  p.generator_degrees = std::move(generator_degrees);
  p.relations = std::move(relations);
  return p;
}

GradedResolution free_resolution(const ModulePresentation& pres, unsigned max_length) {
  HsopAlgebra& a = *pres.algebra;
  GradedResolution res;
  res.algebra = pres.algebra;
  res.window = pres.window;
  const int W = int(pres.window);
  res.twists.push_back(pres.generator_degrees);
  if (!pres.relations.source.empty()) {
    res.twists.push_back(pres.relations.source);
    res.maps.push_back(pres.relations);
  }
  while (!res.maps.empty()) {
    const FreeMap& last = res.maps.back();
    FreeMap syz = minimal_generators(a, last.source, 0, W, [&](int n) { return kernel_columns(map_slice(a, last, n)); });
    if (syz.source.empty()) break;
    if (res.maps.size() >= max_length)
      throw BudgetError("syzygies remain past length " + std::to_string(max_length));
    res.twists.push_back(syz.source);
    res.maps.push_back(std::move(syz));
  }
  // Exactness by rank counts.
  for (int n = 0; n <= W; ++n) {
    std::vector<std::size_t> ranks;
    for (auto& m : res.maps) ranks.push_back(rank_of(map_slice(a, m, n)));
    ranks.push_back(0);
    for (std::size_t i = 1; i <= res.maps.size(); ++i) {
      std::size_t fi = free_offsets(a, res.twists[i], n).back();
      if (ranks[i - 1] + ranks[i] != fi) throw AuditError("resolution not exact at level " + std::to_string(i) + ", degree " + std::to_string(n));
    }
    if (pres.is_ring()) {
      std::size_t f0 = free_offsets(a, res.twists[0], n).back();
      if (f0 - (res.maps.empty() ? 0 : ranks[0]) != pres.s_dims[n]) throw AuditError("resolution does not resolve S in degree " + std::to_string(n));
    }
  }
  return res;
}

ChainLift lift_action(const ModulePresentation& pres, const GradedResolution& res, const Polynomial& s,
                      std::uint64_t seed) {
  HsopAlgebra& a = *res.algebra;
  ChainLift lift;
  lift.s = s;
  std::optional<unsigned> e = pres.is_ring() ? s.homogeneous_degree() : a.degree(s);
  if (!e) throw InputError("s must be nonzero and homogeneous");
  lift.degree = *e;
  const int W = int(res.window);
  for (auto& level : res.twists)
    for (int t : level)
      if (t + int(*e) > W)
        throw InputError("insufficient headroom: window " + std::to_string(W) + " < " + std::to_string(t + int(*e)));
  std::mt19937_64 rng(seed);
  auto shift = [&](std::size_t level, int n, std::vector<Elem>& x) {
    // ker of the level map = image of the next one, in degree n <= W
    if (!seed || level >= res.maps.size()) return;
    auto r = random_combination(map_slice(a, res.maps[level], n), rng);
    const Field& f = *a.field();
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = f.add(x[i], r[i]);
  };
  auto shifted = [&](const std::vector<int>& t) {
    std::vector<int> out;
    for (int v : t) out.push_back(v + int(*e));
    return out;
  };

  // Level 0.
  FreeMap phi0;
  phi0.source = shifted(res.twists[0]);
  phi0.target = res.twists[0];
  if (pres.is_ring()) {
    ThetaPowers tp(pres.theta);
    for (std::size_t k = 0; k < res.twists[0].size(); ++k) {
      int n = res.twists[0][k] + int(*e);
      Polynomial f = s * pres.generators[k];
      Matrix ev = evaluation(a, pres, tp, n);
      std::vector<Elem> x;
      if (!solve(ev, s_coords(f, unsigned(n), pres.s_leads[n], f.nvars()), x)) throw InputError("s is not invariant");
      shift(0, n, x);
      auto col = vector_column(a, res.twists[0], n, x);
      Polynomial back(f.field(), f.nvars());
      for (std::size_t kk = 0; kk < col.size(); ++kk)
        for (auto& [m, c] : col[kk].terms()) back += (tp(m) * pres.generators[kk]).scaled(c);
      if (back != f) throw InputError("s is not invariant");
      phi0.columns.push_back(std::move(col));
    }
  } else {
    if (s.nvars() != a.nvars()) throw InputError("s must be an element of A for an abstract module");
    for (std::size_t k = 0; k < res.twists[0].size(); ++k) {
      std::vector<Polynomial> col(res.twists[0].size(), zero_in(a));
      col[k] = s;
      if (seed) {
        int n = res.twists[0][k] + int(*e);
        auto x = column_vector(a, res.twists[0], n, col);
        shift(0, n, x);
        col = vector_column(a, res.twists[0], n, x);
      }
      phi0.columns.push_back(std::move(col));
    }
  }
  lift.levels.push_back(std::move(phi0));

  for (std::size_t i = 1; i <= res.maps.size(); ++i) {
    const FreeMap& d = res.maps[i - 1];
    FreeMap target = compose(lift.levels[i - 1], d);  // phi_{i-1} o d_i
    FreeMap phi;
    phi.source = shifted(res.twists[i]);
    phi.target = res.twists[i];
    for (std::size_t u = 0; u < res.twists[i].size(); ++u) {
      int n = res.twists[i][u] + int(*e);
      auto w = column_vector(a, res.twists[i - 1], n, target.columns[u]);
      std::vector<Elem> x;
      if (!solve(map_slice(a, d, n), w, x)) throw AuditError("chain lift fails at level " + std::to_string(i));
      shift(i, n, x);
      phi.columns.push_back(vector_column(a, res.twists[i], n, x));
    }
    lift.levels.push_back(std::move(phi));
  }
  return lift;
}

ChainLift scalar_lift(const GradedResolution& res, const Polynomial& a) {
  auto e = res.algebra->degree(a);
  if (!e) throw InputError("scalar must be a nonzero homogeneous element of A");
  ChainLift lift;
  lift.s = a;
  lift.degree = *e;
  for (auto& level : res.twists) {
    FreeMap phi;
    phi.target = level;
    for (int t : level) phi.source.push_back(t + int(*e));
    for (std::size_t k = 0; k < level.size(); ++k) {
      std::vector<Polynomial> col(level.size(), zero_in(*res.algebra));
      col[k] = a;
      phi.columns.push_back(std::move(col));
    }
    lift.levels.push_back(std::move(phi));
  }
  return lift;
}

ExtModule::ExtModule(const GradedResolution& res, unsigned i) : res_(res), i_(i) {}

ExtModule::Slice& ExtModule::slice(int n) {
  auto it = slices_.find(n);
  if (it != slices_.end()) return it->second;
  HsopAlgebra& a = *res_.algebra;
  Slice s;
  const std::size_t L = res_.length();
  if (i_ <= L) {
    std::vector<int> neg;
    for (int t : res_.twists[i_]) neg.push_back(-t);
    s.cochain_dim = free_offsets(a, neg, n).back();
    Matrix out = i_ < L ? dual_slice(a, res_.maps[i_], n) : Matrix(a.field(), 0, s.cochain_dim);
    auto z = kernel_columns(out);
    s.cocycles = std::make_unique<SparseEchelon>(a.field(), s.cochain_dim, true);
    if (i_ >= 1) {
      Matrix in = dual_slice(a, res_.maps[i_ - 1], n);
      for (std::size_t j = 0; j < in.cols(); ++j) s.cocycles->insert(to_sparse(in.column(j)));
    }
    for (auto& v : z) {
      auto sv = to_sparse(v);
      if (s.cocycles->insert(sv)) {
        s.reps.push_back(sv);
        s.slots.push_back(std::uint32_t(s.cocycles->inserted() - 1));
      }
    }
    if (s.cocycles->rank() != z.size()) throw AuditError("dual complex does not square to zero");
  }
  return slices_.emplace(n, std::move(s)).first->second;
}

std::optional<std::vector<Elem>> ExtModule::project(int n, const SparseVec& v) {
  Slice& s = slice(n);
  std::vector<Elem> c(s.reps.size(), 0);
  if (v.empty()) return c;
  if (!s.cocycles) return std::nullopt;
  auto sol = s.cocycles->solve(v);
  if (!sol) return std::nullopt;
  for (auto& e : *sol) {
    auto it = std::find(s.slots.begin(), s.slots.end(), e.index);
    if (it != s.slots.end()) c[it - s.slots.begin()] = e.value;
  }
  return c;
}

Matrix ExtModule::action(const ChainLift& lift, int n) {
  HsopAlgebra& a = *res_.algebra;
  const int e = int(lift.degree);
  const auto& src = slice(n).reps;
  std::size_t tdim = dim(n + e);
  Matrix out(a.field(), tdim, src.size());
  if (src.empty() || tdim == 0) return out;
  Matrix d = dual_slice(a, lift.levels.at(i_), n);
  for (std::size_t j = 0; j < src.size(); ++j) {
    auto img = d.apply(to_dense(src[j], d.cols()));
    auto c = project(n + e, to_sparse(img));
    if (!c) throw AuditError("lifted action does not preserve cocycles");
    for (std::size_t r = 0; r < tdim; ++r) out.at(r, j) = (*c)[r];
  }
  return out;
}

std::vector<std::size_t> ExtModule::dims(int lo, int hi) {
  std::vector<std::size_t> out;
  for (int n = lo; n <= hi; ++n) out.push_back(dim(n));
  return out;
}

ExtNilpotency ext_nilpotency(ExtModule& ext, const ChainLift& lift, int lo, int hi, unsigned max_power) {
  ExtNilpotency out;
  out.found = true;
  unsigned worst = 1;
  const int e = int(lift.degree);
  for (int n = lo; n <= hi; ++n) {
    std::size_t dn = ext.dim(n);
    if (dn == 0) continue;
    std::optional<unsigned> exp;
    Matrix cur = ext.action(lift, n);
    for (unsigned a = 1; a <= max_power; ++a) {
      if (cur.is_zero()) {
        exp = a;
        break;
      }
      if (a < max_power) cur = ext.action(lift, n + int(a) * e) * cur;
    }
    out.exponents.push_back({n, exp});
    if (!exp) out.found = false;
    else worst = std::max(worst, *exp);
  }
  if (out.found) out.a = worst;
  out.zero_window = out.exponents.empty();
  return out;
}

std::optional<std::string> cm_by_theory(const MatrixGroup& group) {
  if (group.order() % group.field()->p() != 0) return "p does not divide |G|";
  if (group.dim() <= 3) return "d <= 3 and dim V^P >= 1 force depth S = d";
  return std::nullopt;
}

}  // namespace modinv
