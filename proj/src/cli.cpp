#include "modinv/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>

#include "modinv/annihilators.hpp"
#include "modinv/cohomology.hpp"
#include "modinv/homology.hpp"
#include "modinv/invariants.hpp"
#include "modinv/localcoh.hpp"
#include "modinv/steenrod.hpp"

namespace modinv::cli {

namespace {

using Clock = std::chrono::steady_clock;

Json read_json_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw InputError(std::string("cannot open ") + what + " file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string(what) + " file '" + path + "': " + e.what());
  }
}

unsigned get_unsigned(const Json& j, const char* key, bool required, unsigned fallback = 0) {
  if (!j.contains(key)) {
    if (required) throw InputError(std::string("problem: missing field '") + key + "'");
    return fallback;
  }
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw InputError(std::string("problem.") + key + ": expected a non-negative integer");
  return v.get<unsigned>();
}

Elem parse_entry(const Json& e, const Field& f, const std::string& where) {
  if (e.is_number_integer()) return f.from_int(e.get<long long>());
  if (e.is_array()) {
    if (e.size() > f.r()) throw InputError(where + ": coefficient list longer than r = " + std::to_string(f.r()));
    std::vector<unsigned> c(f.r(), 0);
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (!e[k].is_number_integer() || e[k].get<long long>() < 0 || e[k].get<long long>() >= static_cast<long long>(f.p()))
        throw InputError(where + ": coefficients must be integers in [0, p)");
      c[k] = e[k].get<unsigned>();
    }
    return f.from_coeffs(c);
  }
  throw InputError(where + ": entries are integers or coefficient lists");
}

Json entry_json(const Field& f, Elem a) {
  if (f.is_prime_field()) return a;
  Json c = Json::array();
  for (unsigned v : f.coeffs(a)) c.push_back(v);
  return c;
}

Json poly_list(const std::vector<Polynomial>& ps) {
  Json out = Json::array();
  for (auto& p : ps) out.push_back(to_string(p));
  return out;
}

Json sparse_json(const SparseVec& v) {
  Json out = Json::array();
  for (auto& e : v) out.push_back(Json::array({e.index, e.value}));
  return out;
}

Json header(const std::string& command, const ProblemSpec& spec, Json options) {
  Json r;
  r["schema_version"] = kSchemaVersion;
  r["command"] = command;
  r["version"] = kVersion;
  r["monomial_order"] = kMonomialOrder;
  r["inputs"] = {{"problem", spec.echo}, {"options", std::move(options)}};
  return r;
}

void add_timing(Json& r, const Options& opt, Clock::time_point t0) {
  if (opt.timings) r["timings"] = {{"seconds", std::chrono::duration<double>(Clock::now() - t0).count()}};
}

std::vector<std::string> strings_of(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected a list of polynomial strings");
  std::vector<std::string> out;
  for (auto& e : j) {
    if (!e.is_string()) throw InputError(where + ": expected a list of polynomial strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::optional<unsigned> as_exponent(const Json& v, std::size_t j) {
  if (v.is_null()) return std::nullopt;
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw InputError("ledger.a[" + std::to_string(j) + "]: expected a non-negative integer or null");
  return v.get<unsigned>();
}

}  // namespace

ProblemSpec parse_problem(const Json& j) {
  if (!j.is_object()) throw InputError("problem: expected a JSON object");
  ProblemSpec s;
  s.p = get_unsigned(j, "p", true);
  s.r = get_unsigned(j, "r", false, 1);
  if (j.contains("modulus")) {
    if (!j["modulus"].is_array()) throw InputError("problem.modulus: expected a coefficient list");
    for (auto& c : j["modulus"]) {
      if (!c.is_number_integer() || c.get<long long>() < 0) throw InputError("problem.modulus: expected non-negative integers");
      s.modulus.push_back(c.get<unsigned>());
    }
  }
  s.d = get_unsigned(j, "d", true);
  if (s.d == 0) throw InputError("problem.d: must be at least 1");
  FieldPtr f;
  try {
    f = Field::make(s.p, s.r, s.modulus);
  } catch (const InputError& e) {
    throw InputError(std::string("problem field: ") + e.what());
  }
  if (!j.contains("generators") || !j["generators"].is_array())
    throw InputError("problem: missing field 'generators' (list of d x d matrices)");
  Json gens_echo = Json::array();
  std::size_t k = 0;
  for (auto& g : j["generators"]) {
    const std::string where = "problem.generators[" + std::to_string(k) + "]";
    if (!g.is_array()) throw InputError(where + ": expected a matrix");
    // Row lists [[..], ..] or one flat row-major list; coefficient lists sit
    // one level further down, so d = 1 is the only ambiguous shape.
    std::vector<const Json*> flat;
    bool nested = g.size() == s.d && std::all_of(g.begin(), g.end(), [&](const Json& row) {
      return row.is_array() && row.size() == s.d && (s.d > 1 || row[0].is_number_integer());
    });
    if (nested) {
      for (auto& row : g)
        for (auto& e : row) flat.push_back(&e);
    } else {
      for (auto& e : g) flat.push_back(&e);
    }
    if (flat.size() != s.d * s.d)
      throw InputError(where + ": expected " + std::to_string(s.d * s.d) + " entries, got " + std::to_string(flat.size()));
    Matrix m(f, s.d, s.d);
    Json rows = Json::array();
    for (std::size_t a = 0; a < s.d; ++a) {
      Json row = Json::array();
      for (std::size_t b = 0; b < s.d; ++b) {
        m.at(a, b) = parse_entry(*flat[a * s.d + b], *f, where + "[" + std::to_string(a) + "][" + std::to_string(b) + "]");
        row.push_back(entry_json(*f, m.at(a, b)));
      }
      rows.push_back(std::move(row));
    }
    s.generators.push_back(std::move(m));
    gens_echo.push_back(std::move(rows));
    ++k;
  }
  if (j.contains("hsop")) {
    s.hsop = strings_of(j["hsop"], "problem.hsop");
    for (std::size_t i = 0; i < s.hsop.size(); ++i) {
      try {
        parse_polynomial(s.hsop[i], f, s.d);
      } catch (const InputError& e) {
        throw InputError("problem.hsop[" + std::to_string(i) + "]: " + e.what());
      }
    }
  }
  if (j.contains("budgets")) {
    const Json& b = j["budgets"];
    if (!b.is_object()) throw InputError("problem.budgets: expected an object");
    s.group_cap = get_unsigned(b, "group_order", false, unsigned(s.group_cap));
    if (b.contains("bar")) {
      if (!b["bar"].is_number_integer() || b["bar"].get<long long>() <= 0) throw InputError("problem.budgets.bar: expected a positive integer");
      s.bar_budget = b["bar"].get<std::size_t>();
    }
  }
  Json mod = Json::array();
  for (unsigned c : f->modulus()) mod.push_back(c);
  s.echo["p"] = s.p;
  s.echo["r"] = s.r;
  s.echo["modulus"] = mod;
  s.echo["d"] = s.d;
  s.echo["generators"] = gens_echo;
  if (!s.hsop.empty()) s.echo["hsop"] = s.hsop;
  s.echo["budgets"] = {{"group_order", s.group_cap}, {"bar", s.bar_budget}};
  return s;
}

ProblemSpec load_problem(const std::string& path) { return parse_problem(read_json_file(path, "problem")); }

MatrixGroup build_group(const ProblemSpec& spec) {
  auto f = Field::make(spec.p, spec.r, spec.modulus);
  return MatrixGroup::close(GroupContext(f, spec.d), spec.generators, spec.group_cap);
}

std::vector<Polynomial> resolve_hsop(const ProblemSpec& spec, const MatrixGroup& g, const std::vector<std::string>& texts) {
  const auto& src = texts.empty() ? spec.hsop : texts;
  if (src.empty()) return dickson_family(g.context()).elements;
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < src.size(); ++i) {
    try {
      out.push_back(parse_polynomial(src[i], g.field(), g.dim()));
    } catch (const InputError& e) {
      throw InputError("hsop[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return out;
}

std::vector<std::string> load_hsop_file(const std::string& path) {
  Json j = read_json_file(path, "hsop");
  if (j.is_object() && j.contains("hsop")) return strings_of(j["hsop"], "hsop file");
  return strings_of(j, "hsop file");
}

Outcome cmd_invariants(const ProblemSpec& spec, unsigned max_degree, const Options& opt) {
  auto t0 = Clock::now();
  auto g = build_group(spec);
  Outcome o;
  o.report = header("invariants", spec, {{"max_degree", max_degree}});
  o.report["group_order"] = g.order();
  InvariantRing s(g);
  Json table = Json::array();
  for (unsigned n = 0; n <= max_degree; ++n) {
    const auto& b = s.slice(n);
    table.push_back({{"n", n}, {"dim", b.dim()}, {"basis", poly_list(b.basis)}});
  }
  o.report["slices"] = std::move(table);
  o.report["status"] = "ok";
  add_timing(o.report, opt, t0);
  return o;
}

Outcome cmd_dickson(const ProblemSpec& spec, const Options& opt) {
  auto t0 = Clock::now();
  auto g = build_group(spec);
  Outcome o;
  o.report = header("dickson", spec, Json::object());
  auto top = dickson_top(g.context());
  auto fam = dickson_family(g.context());
  o.report["top"] = {{"degree", top.degree}, {"poly", to_string(top.poly)}, {"invariant", is_invariant(g, top.poly)}};
  Json cls = Json::array();
  for (std::size_t i = 0; i < fam.elements.size(); ++i)
    cls.push_back({{"i", i}, {"degree", fam.degrees[i]}, {"poly", to_string(fam.elements[i])}});
  o.report["family"] = std::move(cls);
  bool hsop = validate_hsop(g, fam.elements);
  o.report["family_is_hsop"] = hsop;
  o.report["status"] = hsop ? "ok" : "audit failure";
  if (!hsop || !is_invariant(g, top.poly)) o.exit_code = kAuditFailure;
  add_timing(o.report, opt, t0);
  return o;
}

Outcome cmd_steenrod(const ProblemSpec& spec, const std::string& text, const Options& opt) {
  auto t0 = Clock::now();
  auto g = build_group(spec);
  auto f = parse_polynomial(text, g.field(), g.dim());
  Outcome o;
  o.report = header("steenrod", spec, {{"poly", text}});
  o.report["poly"] = to_string(f);
  const bool inv = !f.is_zero() && is_invariant(g, f);
  o.report["invariant"] = inv;
  Json pw = Json::array();
  auto tp = total_power(f);
  for (std::size_t i = 0; i < tp.coeffs.size(); ++i) {
    Json e = {{"i", i}, {"value", to_string(tp.coeffs[i])}};
    if (inv) e["invariant"] = is_invariant(g, check_invariant_closure(g, f, unsigned(i)));
    pw.push_back(std::move(e));
  }
  o.report["powers"] = std::move(pw);
  o.report["status"] = "ok";
  add_timing(o.report, opt, t0);
  return o;
}

Outcome cmd_cohomology(const ProblemSpec& spec, unsigned i, unsigned max_degree, const Options& opt) {
  auto t0 = Clock::now();
  auto g = build_group(spec);
  Outcome o;
  o.report = header("cohomology", spec, {{"i", i}, {"max_degree", max_degree}});
  // a single generator makes G cyclic; its periodic resolution gives a second path
  const bool cyclic = g.generator_indices().size() == 1;
  Json table = Json::array();
  bool agree = true;
  for (unsigned m = 0; m <= max_degree; ++m) {
    auto sl = cohomology_slice(g, i, m, spec.bar_budget);
    Json e = {{"m", m}, {"dim", sl.dim()}};
    if (cyclic) {
      auto per = periodic_oracle(g, g.generator_indices()[0], i, m);
      e["periodic_dim"] = per.dim;
      agree = agree && per.dim == sl.dim();
    }
    if (opt.with_witnesses) {
      Json reps = Json::array();
      for (auto& c : sl.cocycle_reps(g)) reps.push_back(poly_list(c.values));
      e["cocycle_reps"] = std::move(reps);
    }
    table.push_back(std::move(e));
  }
  o.report["slices"] = std::move(table);
  if (cyclic) o.report["oracle_agrees"] = agree;
  o.report["status"] = agree ? "ok" : "audit failure: bar and periodic dimensions differ";
  if (!agree) o.exit_code = kAuditFailure;
  add_timing(o.report, opt, t0);
  return o;
}

Outcome cmd_verify_main(const ProblemSpec& spec, unsigned i, unsigned window, unsigned max_power, const Options& opt) {
  auto t0 = Clock::now();
  auto g = build_group(spec);
  Outcome o;
  o.report = header("verify-main", spec, {{"i", i}, {"window", window}, {"max_power", max_power}});
  auto s = dickson_top(g.context()).poly;
  auto cert = nilpotency_search(g, i, s, window, max_power, spec.bar_budget);
  Json c;
  c["multiplier"] = to_string(s);
  c["i"] = cert.i;
  c["window"] = cert.window;
  c["max_power"] = cert.max_power;
  c["found"] = cert.found;
  if (cert.found) c["a"] = cert.a;
  Json sl = Json::array();
  for (auto& e : cert.slices) {
    Json x = {{"m", e.m}, {"dim", e.dim}};
    x["exponent"] = e.exponent ? Json(*e.exponent) : Json(nullptr);
    sl.push_back(std::move(x));
  }
  c["slices"] = std::move(sl);
  if (cert.largest_surviving_degree) c["largest_surviving_degree"] = *cert.largest_surviving_degree;
  if (opt.with_witnesses) {
    Json w = Json::array();
    for (auto& x : cert.witnesses)
      w.push_back({{"m", x.m}, {"rep", x.rep}, {"cocycle", sparse_json(x.cocycle)}, {"preimage", sparse_json(x.preimage)}});
    c["witnesses"] = std::move(w);
  }
  o.report["certificate"] = std::move(c);
  if (!cert.found) {
    o.report["status"] = "exhausted: no exponent <= " + std::to_string(max_power) + " kills H^" + std::to_string(i) +
                         " in degree " + std::to_string(cert.largest_surviving_degree.value_or(0));
    o.exit_code = kExhausted;
  } else {
    std::string why;
    bool ok = recheck_certificate(g, cert, &why, spec.bar_budget);
    o.report["recheck"] = ok ? "passed" : "failed: " + why;
    o.report["status"] = ok ? "certificate" : "audit failure";
    if (!ok) o.exit_code = kAuditFailure;
  }
  add_timing(o.report, opt, t0);
  return o;
}

std::vector<std::optional<unsigned>> load_ledger(const std::string& path, const ProblemSpec& spec) {
  Json j = read_json_file(path, "ledger");
  if (!j.is_object() || !j.contains("a") || !j["a"].is_array()) throw InputError("ledger '" + path + "': missing list 'a'");
  if (j.value("d", 0u) != spec.d || j.value("p", 0u) != spec.p || j.value("r", 0u) != spec.r)
    throw InputError("ledger '" + path + "' was written for a different p, r or d");
  std::vector<std::optional<unsigned>> a;
  for (std::size_t k = 0; k < j["a"].size(); ++k) a.push_back(as_exponent(j["a"][k], k));
  return a;
}

void store_ledger(const std::string& path, const ProblemSpec& spec, unsigned j, unsigned a) {
  std::vector<std::optional<unsigned>> cur(spec.d);
  if (std::filesystem::exists(path)) {
    cur = load_ledger(path, spec);
    cur.resize(spec.d);
  }
  cur.at(j) = a;
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["p"] = spec.p;
  out["r"] = spec.r;
  out["d"] = spec.d;
  Json arr = Json::array();
  for (auto& v : cur) arr.push_back(v ? Json(*v) : Json(nullptr));
  out["a"] = std::move(arr);
  std::ofstream f(path);
  if (!f) throw InputError("cannot write ledger '" + path + "'");
  f << out.dump(2) << "\n";
}

Outcome cmd_verify_loc(const ProblemSpec& spec, const LocArgs& args, const Options& opt) {
  auto t0 = Clock::now();
  auto g = build_group(spec);
  Outcome o;
  o.report = header("verify-loc", spec, {{"j", args.j}, {"hsop", args.hsop}, {"window", args.window}, {"max_power", args.max_power}});
  if (args.j >= spec.d) throw InputError("--j must lie in 0.." + std::to_string(spec.d - 1));
  std::optional<unsigned> a_j;
  if (auto why = cm_by_theory(g)) {
    o.report["status"] = "CM short-circuit: H^" + std::to_string(args.j) + " = 0";
    o.report["reason"] = *why;
    a_j = 0;
  } else {
    auto theta = resolve_hsop(spec, g, args.hsop);
    std::size_t work = 0;
    for (unsigned n = 0; n <= args.window; ++n) work += graded_dimension(spec.d, n);
    if (!opt.allow_slow)
      throw InputError("no Cohen-Macaulay shortcut applies; the Ext pipeline touches about " + std::to_string(work) +
                       " monomials of R (degrees <= " + std::to_string(args.window) + ") and typically takes seconds to "
                       "minutes; rerun with --allow-slow");
    auto s = dickson_top(g.context()).poly;
    auto pres = present_over_hsop(g, theta, args.window);
    auto res = free_resolution(pres, unsigned(spec.d));
    const unsigned i = unsigned(spec.d) - args.j;
    Json r;
    r["hsop"] = poly_list(theta);
    Json tw = Json::array();
    for (auto& t : res.twists) tw.push_back(t);
    r["resolution_twists"] = std::move(tw);
    r["ext_index"] = i;
    if (i > res.length()) {
      r["vacuous"] = "projective dimension " + std::to_string(res.length()) + " < " + std::to_string(i) + ": Ext^" +
                     std::to_string(i) + " = 0";
      a_j = 0;
      o.report["status"] = "certificate";
    } else {
      const int top = res.max_twist();
      const unsigned need = unsigned(top) + *s.homogeneous_degree();
      if (args.window < need) {
        r["required_window"] = need;
        o.report["result"] = std::move(r);
        o.report["status"] = "exhausted: lifting d_{d,0} needs window >= " + std::to_string(need);
        o.exit_code = kExhausted;
        add_timing(o.report, opt, t0);
        return o;
      }
      ExtModule ext(res, i);
      int lo = -top, hi = int(args.window) - top;
      auto lift = lift_action(pres, res, s);
      auto lift2 = lift_action(pres, res, s, 0x5eed);
      Json dims = Json::array();
      for (int n = lo; n <= hi; ++n) {
        dims.push_back({{"n", n}, {"dim", ext.dim(n)}});
        if (ext.dim(n) && ext.action(lift, n) != ext.action(lift2, n))
          throw AuditError("two chain lifts of d_{d,0} induce different maps on Ext^" + std::to_string(i) + "_" +
                           std::to_string(n));
      }
      r["ext_window"] = {lo, hi};
      r["ext_dims"] = std::move(dims);
      auto nil = ext_nilpotency(ext, lift, lo, hi, args.max_power);
      Json ex = Json::array();
      for (auto& [n, e] : nil.exponents) ex.push_back({{"n", n}, {"exponent", e ? Json(*e) : Json(nullptr)}});
      r["exponents"] = std::move(ex);
      r["zero_window"] = nil.zero_window;
      if (nil.found) {
        a_j = nil.zero_window ? 0u : nil.a;
        o.report["status"] = "certificate";
      } else {
        o.report["status"] = "exhausted: no exponent <= " + std::to_string(args.max_power) + " kills Ext^" + std::to_string(i);
        o.exit_code = kExhausted;
      }
    }
    o.report["result"] = std::move(r);
  }
  if (a_j) {
    o.report["a_j"] = *a_j;
    if (args.ledger_out) store_ledger(*args.ledger_out, spec, args.j, *a_j);
  }
  add_timing(o.report, opt, t0);
  return o;
}

Outcome cmd_verify_corollaries(const ProblemSpec& spec, const std::vector<std::string>& hsop,
                               const std::vector<std::optional<unsigned>>& ledger, unsigned window, const Options& opt) {
  auto t0 = Clock::now();
  auto g = build_group(spec);
  Outcome o;
  Json la = Json::array();
  for (auto& v : ledger) la.push_back(v ? Json(*v) : Json(nullptr));
  o.report = header("verify-corollaries", spec, {{"hsop", hsop}, {"ledger", la}, {"window", window}});
  auto x = resolve_hsop(spec, g, hsop);
  if (!validate_hsop(g, x)) throw InputError("hsop is not validated: R/(x) is not finite dimensional");
  const std::size_t d = spec.d;
  if (ledger.size() < d) throw InputError("ledger lacks a_j for j = " + std::to_string(ledger.size()) + ".." + std::to_string(d - 1));
  std::vector<std::optional<unsigned>> a(ledger.begin(), ledger.begin() + d);
  auto led = exponent_ledger(dickson_top(g.context()).poly, a);
  Json q = Json::array();
  for (std::size_t k = 0; k < d; ++k) q.push_back({{"j", k}, {"a", led.a[k]}, {"degree", led.degrees[k]}});
  o.report["ledger"] = std::move(q);
  o.report["hsop"] = poly_list(x);
  if (window < led.degrees[d - 1]) {
    o.report["status"] = "exhausted: window must be at least deg q_{d-1} = " + std::to_string(led.degrees[d - 1]);
    o.exit_code = kExhausted;
    add_timing(o.report, opt, t0);
    return o;
  }
  auto table = [&](const AnnihilationReport& r) {
    Json e = Json::array();
    for (auto& v : r.entries) e.push_back({{"n", v.n}, {"dim", v.dim}, {"passed", v.passed}});
    return e;
  };
  InvariantRing ring(g);
  bool all = true;
  Json colon = Json::array();
  for (unsigned t = 1; t <= d; ++t) {
    auto r = annihilation_check_colon(ring, x, led.q[d - 1], t, window);
    all = all && r.passed;
    colon.push_back({{"t", t}, {"q", "q_" + std::to_string(d - 1)}, {"passed", r.passed}, {"slices", table(r)}});
  }
  o.report["colon_quotients"] = std::move(colon);
  KoszulComplex k(ring, x);
  Json kos = Json::array();
  for (unsigned i = 1; i <= d; ++i) {
    const auto& qi = led.q[d - i];
    Json e = {{"i", i}, {"q", "q_" + std::to_string(d - i)}};
    if (led.degrees[d - i] > window) {
      e["passed"] = nullptr;
      e["skipped"] = "deg q exceeds window";
    } else {
      auto r = annihilation_check_koszul(k, qi, i, window);
      all = all && r.passed;
      e["method"] = r.method;
      e["passed"] = r.passed;
      e["slices"] = table(r);
    }
    kos.push_back(std::move(e));
  }
  o.report["koszul_homology"] = std::move(kos);
  o.report["status"] = all ? "pass" : "failure";
  if (!all) o.exit_code = kExhausted;
  add_timing(o.report, opt, t0);
  return o;
}

int run(const std::vector<std::string>& args, std::string& out, std::string& err) {
  CLI::App app{"modinv: windowed computations in modular invariant theory"};
  app.require_subcommand(1);
  std::string spec_path;
  Options opt;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--spec", spec_path, "problem JSON file")->required();
    sub->add_flag("--with-witnesses", opt.with_witnesses, "embed cocycle reps and preimages");
    sub->add_flag("--timings", opt.timings, "add wall-clock timings (reports stop being byte-stable)");
  };
  unsigned max_degree = 0, i = 1, window = 0, max_power = 4;
  std::string poly, hsop_path, ledger_path;
  LocArgs loc;

  auto* inv = app.add_subcommand("invariants", "dim S_n and bases for n <= N");
  common(inv);
  inv->add_option("--max-degree", max_degree)->required();
  auto* dick = app.add_subcommand("dickson", "Dickson classes of GL_d(F_q)");
  common(dick);
  auto* st = app.add_subcommand("steenrod", "P^i(f) for all i");
  common(st);
  st->add_option("--poly", poly)->required();
  auto* coh = app.add_subcommand("cohomology", "dim H^i(G, R_m) for m <= N");
  common(coh);
  coh->add_option("--i", i)->required();
  coh->add_option("--max-degree", max_degree)->required();
  auto* vm = app.add_subcommand("verify-main", "nilpotency of d_{d,0} on H^i(G, R)");
  common(vm);
  vm->add_option("--i", i)->required();
  vm->add_option("--window", window)->required();
  vm->add_option("--max-power", max_power);
  auto* vl = app.add_subcommand("verify-loc", "nilpotency of d_{d,0} on H^j of S via Ext over an hsop");
  common(vl);
  vl->add_option("--j", loc.j)->required();
  vl->add_option("--hsop", hsop_path, "JSON list of hsop polynomials");
  vl->add_option("--window", loc.window)->required();
  vl->add_option("--max-power", loc.max_power);
  vl->add_option("--ledger", ledger_path, "ledger file to create or update with a_j");
  vl->add_flag("--allow-slow", opt.allow_slow, "run pipelines without a Cohen-Macaulay shortcut");
  auto* vc = app.add_subcommand("verify-corollaries", "colon-quotient and Koszul annihilation tables");
  common(vc);
  vc->add_option("--hsop", hsop_path, "JSON list of hsop polynomials");
  vc->add_option("--ledger", ledger_path)->required();
  vc->add_option("--window", window)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out = app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err = std::string("error: ") + e.what() + "\n";
    return kInputError;
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    auto spec = load_problem(spec_path);
    Outcome o;
    if (command == "invariants") o = cmd_invariants(spec, max_degree, opt);
    else if (command == "dickson") o = cmd_dickson(spec, opt);
    else if (command == "steenrod") o = cmd_steenrod(spec, poly, opt);
    else if (command == "cohomology") o = cmd_cohomology(spec, i, max_degree, opt);
    else if (command == "verify-main") o = cmd_verify_main(spec, i, window, max_power, opt);
    else if (command == "verify-loc") {
      if (!hsop_path.empty()) loc.hsop = load_hsop_file(hsop_path);
      if (!ledger_path.empty()) loc.ledger_out = ledger_path;
      o = cmd_verify_loc(spec, loc, opt);
    } else {
      std::vector<std::string> h;
      if (!hsop_path.empty()) h = load_hsop_file(hsop_path);
      if (!std::filesystem::exists(ledger_path)) throw InputError("ledger file '" + ledger_path + "' not found");
      o = cmd_verify_corollaries(spec, h, load_ledger(ledger_path, spec), window, opt);
    }
    out = o.report.dump(2) + "\n";
    return o.exit_code;
  } catch (const InputError& e) {
    err = std::string("error: ") + e.what() + "\n";
    return kInputError;
  } catch (const BudgetError& e) {
    err = std::string("budget exceeded: ") + e.what() + "\n";
    return kExhausted;
  } catch (const AuditError& e) {
    err = std::string("internal audit failure: ") + e.what() + "\n";
    return kAuditFailure;
  }
}

}  // namespace modinv::cli
