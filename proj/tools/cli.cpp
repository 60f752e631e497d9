#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "superbos/errors.hpp"
#include "superbos/riesz.hpp"
#include "superbos/sbos.hpp"
#include "superbos/superexpr.hpp"
#include "superbos/superfourier.hpp"

namespace superbos::cli {

using json = nlohmann::json;

namespace {

// Quadrature and tolerance settings for one command run.
struct Settings {
  QuadSpec cone{QuadRule::GaussLaguerre, {8, 8}, 1, 0};
  std::optional<QuadSpec> unitary;
  int flat = 10;
  std::optional<double> tol;
  std::optional<long> mc_samples;
  std::optional<std::uint64_t> seed;
  bool timing = false;
};

// --- argument access: values may be strings (command line) or JSON scalars/arrays (config) ---

bool has(const json& a, const std::string& k) { return a.contains(k) && !a.at(k).is_null(); }

std::string as_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + as_text(v[i]);
    return s;
  }
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    std::ostringstream os;
    os.precision(17);
    os << v.get<double>();
    return os.str();
  }
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  throw DomainError("unsupported argument value " + v.dump());
}

std::string text(const json& a, const std::string& k) {
  if (!has(a, k)) throw DomainError("missing argument --" + k);
  return as_text(a.at(k));
}

std::string text_or(const json& a, const std::string& k, const std::string& d) { return has(a, k) ? text(a, k) : d; }

long to_long(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    throw DomainError("--" + what + " expects an integer, got '" + s + "'");
  }
  if (used != s.size()) throw DomainError("--" + what + " expects an integer, got '" + s + "'");
  return v;
}

double to_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw DomainError("--" + what + " expects a number, got '" + s + "'");
  }
  if (used != s.size()) throw DomainError("--" + what + " expects a number, got '" + s + "'");
  return v;
}

long int_arg(const json& a, const std::string& k) { return to_long(text(a, k), k); }
long int_or(const json& a, const std::string& k, long d) { return has(a, k) ? int_arg(a, k) : d; }

std::vector<double> list_arg(const json& a, const std::string& k) {
  std::vector<double> out;
  std::stringstream ss(text(a, k));
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(item, k));
  return out;
}

int dim_arg(const json& a, const std::string& k) {
  long v = int_arg(a, k);
  if (v < 0 || v > 8) throw DomainError("--" + k + " must be in 0..8");
  return static_cast<int>(v);
}

QuadSpec quadspec_from_json(const json& j, QuadSpec base) {
  if (!j.is_object()) throw DomainError("quadrature block must be an object");
  if (j.contains("rule")) base.rule = parse_rule(j.at("rule").get<std::string>());
  if (j.contains("orders")) base.orders = j.at("orders").get<std::vector<int>>();
  if (j.contains("mc_samples")) base.mc_samples = j.at("mc_samples").get<long>();
  if (j.contains("seed")) base.seed = j.at("seed").get<std::uint64_t>();
  base.validate();
  return base;
}

std::vector<int> int_list(const std::string& s, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(static_cast<int>(to_long(item, what)));
  return out;
}

// Per-run settings from arguments layered on a base (built-in or config defaults).
Settings settings_from(const json& a, Settings s) {
  if (has(a, "cone")) s.cone = quadspec_from_json(a.at("cone"), s.cone);
  if (has(a, "unitary")) s.unitary = quadspec_from_json(a.at("unitary"), s.unitary.value_or(QuadSpec{QuadRule::HaarMC, {1}, 100000, 0}));
  if (has(a, "flat")) {
    QuadSpec f = quadspec_from_json(a.at("flat"), QuadSpec{QuadRule::GaussHermite, {s.flat}, 1, 0});
    s.flat = f.order(0);
  }
  if (has(a, "cone-orders")) s.cone.orders = int_list(text(a, "cone-orders"), "cone-orders");
  if (has(a, "flat-order")) s.flat = static_cast<int>(int_arg(a, "flat-order"));
  if (has(a, "unitary-rule") || has(a, "nodes")) {
    QuadSpec u = s.unitary.value_or(QuadSpec{QuadRule::CircleTrapezoid, {32}, 100000, 0});
    if (has(a, "unitary-rule")) u.rule = parse_rule(text(a, "unitary-rule"));
    if (has(a, "nodes")) u.orders = {static_cast<int>(int_arg(a, "nodes"))};
    s.unitary = u;
  }
  if (has(a, "tol")) s.tol = to_double(text(a, "tol"), "tol");
  if (has(a, "mc-samples")) s.mc_samples = int_arg(a, "mc-samples");
  if (has(a, "seed")) s.seed = static_cast<std::uint64_t>(int_arg(a, "seed"));
  if (has(a, "timing")) s.timing = text(a, "timing") == "true";
  s.cone.validate();
  return s;
}

QuadSpec unitary_spec(int q, const Settings& s) {
  QuadSpec u;
  if (s.unitary)
    u = *s.unitary;
  else if (q == 1)
    u = QuadSpec{QuadRule::CircleTrapezoid, {32}, 1, 0};
  else
    u = QuadSpec{QuadRule::HaarMC, {1}, 100000, 0};
  if (s.mc_samples) u.mc_samples = *s.mc_samples;
  if (s.seed) u.seed = *s.seed;
  u.validate();
  return u;
}

OmegaSpec omega_spec(int p, int q, const Settings& s) {
  OmegaSpec o;
  o.p = p;
  o.q = q;
  o.cone = s.cone;
  if (q > 0) o.unitary = unitary_spec(q, s);
  o.validate();
  return o;
}

bool stochastic(const OmegaSpec& o) { return o.q > 0 && o.unitary.rule == QuadRule::HaarMC; }

double tol_for(const Settings& s, double deterministic, double mc, bool is_mc) {
  if (s.tol) return *s.tol;
  return is_mc ? mc : deterministic;
}

Check compare_estimate(std::string label, const Estimate& e, const GrassmannNumber& ref, double tol,
                       std::string oracle) {
  if (e.stochastic()) return compare_mc(std::move(label), e.value, e.stderr_, ref, tol, std::move(oracle));
  return compare(std::move(label), e.value, ref, tol, std::move(oracle));
}

AlgebraPtr external(const json& a) {
  long k = int_or(a, "odd-params", 0);
  if (k < 0 || k > 8) throw DomainError("--odd-params must be in 0..8");
  return GrassmannAlgebra::make(static_cast<int>(k), "θ");
}

// x from --x; with --odd-params and an x free of generators, the odd slots are
// filled B block first, then C, row-major, with θ1, θ2, ...
SuperMatrix x_arg(const json& a, int p, int q, const AlgebraPtr& ext) {
  SuperMatrix x = parse_matrix(text(a, "x"), {p, q}, {p, q}, ext);
  if (ext->size() > 0 && x.soul().is_zero()) {
    int g = 0;
    for (int i = 0; i < p && g < ext->size(); ++i)
      for (int j = 0; j < q && g < ext->size(); ++j) x(i, p + j) = GrassmannNumber::generator(ext, g++);
    for (int j = 0; j < q && g < ext->size(); ++j)
      for (int i = 0; i < p && g < ext->size(); ++i) x(p + j, i) = GrassmannNumber::generator(ext, g++);
  }
  x.require_even("--x");
  return x;
}

void echo_inputs(Report& r, const json& a) {
  for (auto it = a.begin(); it != a.end(); ++it) {
    if (it.key() == "command") continue;
    r.input(it.key(), it.value().is_object() ? it.value().dump() : as_text(it.value()));
  }
}

// --- commands ---

json cmd_gamma(const json& a) {
  int p = dim_arg(a, "p"), q = dim_arg(a, "q");
  MultiIndex m(p, list_arg(a, "m"));
  if (m.q() != q) throw DomainError("--m needs p+q entries");
  GammaValue g = gamma_closed(p, q, m);
  json j;
  j["command"] = "gamma";
  json in = json::object();
  for (auto it = a.begin(); it != a.end(); ++it)
    if (it.key() != "command") in[it.key()] = as_text(it.value());
  j["inputs"] = in;
  j["value"] = g.is_pole ? json(nullptr) : json(g.value);
  j["is_pole"] = g.is_pole;
  j["is_zero"] = g.is_zero;
  j["log_abs"] = (g.is_pole || g.is_zero) ? json(nullptr) : json(g.log_abs);
  j["sign"] = g.sign;
  return j;
}

Report cmd_verify_gamma(const json& a, const Settings& s) {
  int p = dim_arg(a, "p"), q = dim_arg(a, "q");
  MultiIndex m(p, list_arg(a, "m"));
  if (m.q() != q) throw DomainError("--m needs p+q entries");
  OmegaSpec o = omega_spec(p, q, s);
  Report r;
  r.command = "verify-gamma";
  echo_inputs(r, a);
  if (stochastic(o)) r.seed = o.unitary.seed;
  double tol = tol_for(s, 1e-6, 0.02, stochastic(o));
  GammaValue g = gamma_closed(p, q, m);
  if (g.is_pole) throw DomainError("Γ_Ω has a pole at this m");
  Estimate e = gamma_numeric(o, m);
  AlgebraPtr none = e.value.algebra();
  r.add(compare_estimate("Γ_Ω(m) numeric vs closed form", e, GrassmannNumber(none, g.value), tol, "closed-form product"));
  if (p > 0 && q > 0 && 2 * p * q <= 8) {
    r.add(compare("fermionic factor by Berezin expansion", GrassmannNumber(none, gamma_fermionic_exact(p, q, m)),
                  GrassmannNumber(none, gamma_fermionic_closed(p, q, m)), 1e-12, "∏ rising factorials"));
  }
  return r;
}

Report cmd_verify_sbos(const json& a, const Settings& s) {
  int p = dim_arg(a, "p"), q = dim_arg(a, "q");
  int n = static_cast<int>(int_arg(a, "n"));
  AlgebraPtr ext = external(a);
  SbosCase c;
  c.p = p;
  c.q = q;
  c.n = n;
  c.ext = ext;
  if (has(a, "x")) c.x = x_arg(a, p, q, ext);
  if (has(a, "f")) c.f = parse_expr(text(a, "f"), ext);
  OmegaSpec o = omega_spec(p, q, s);
  double tol = tol_for(s, 1e-6, 0.02, stochastic(o));
  Report r;
  r.command = "verify-sbos";
  echo_inputs(r, a);
  if (stochastic(o)) r.seed = o.unitary.seed;
  r.add(gaussian_norm_check(p, q, n, s.flat, s.tol.value_or(1e-10)));
  Report v = verify_identity(c, o, s.flat, tol);
  for (auto& ch : v.checks) r.add(std::move(ch));
  return r;
}

Report cmd_verify_laplace(const json& a, const Settings& s) {
  int p = dim_arg(a, "p"), q = dim_arg(a, "q");
  MultiIndex m(p, list_arg(a, "m"));
  if (m.q() != q) throw DomainError("--m needs p+q entries");
  AlgebraPtr ext = external(a);
  SuperMatrix x = x_arg(a, p, q, ext);
  OmegaSpec o = omega_spec(p, q, s);
  double tol = tol_for(s, 1e-8, 0.02, stochastic(o));
  Report r;
  r.command = "verify-laplace";
  echo_inputs(r, a);
  if (stochastic(o)) r.seed = o.unitary.seed;
  GammaValue g = gamma_closed(p, q, m);
  if (g.is_pole) throw DomainError("Γ_Ω has a pole at this m");
  Estimate e = laplace_conical(o, m, x);
  r.add(compare_estimate("L(Δ_m)(x⁻¹) vs Γ_Ω(m)Δ_m(x)", e, delta_m(x, m) * cplx{g.value}, tol,
                         "closed-form Γ_Ω(m) times Δ_m(x)"));
  return r;
}

Report cmd_verify_fourier(const json& a, const Settings& s) {
  int p = dim_arg(a, "p"), q = dim_arg(a, "q");
  Grid grid;
  grid.n = static_cast<int>(int_or(a, "grid-n", grid.n));
  if (has(a, "grid-h")) grid.h = to_double(text(a, "grid-h"), "grid-h");
  double tol = tol_for(s, p == 1 ? 1e-8 : 1e-12, 0.0, false);
  Report r;
  r.command = "verify-fourier";
  echo_inputs(r, a);
  for (auto& c : fourier_suite(p, q, tol, grid)) r.add(std::move(c));
  return r;
}

Report cmd_verify_invariance(const json& a, const Settings& s) {
  int p = dim_arg(a, "p"), q = dim_arg(a, "q");
  HFamily fam = parse_family(text_or(a, "family", "odd-lower"));
  long count = int_or(a, "count", 20);
  if (count < 1) throw DomainError("--count must be >= 1");
  AlgebraPtr ext = has(a, "odd-params") ? external(a) : GrassmannAlgebra::make(2, "θ");
  SuperExpr f = parse_expr(text_or(a, "f", "(mul (ber Y) (exp (neg (str Y))))"), ext);
  OmegaSpec o = omega_spec(p, q, s);
  double tol = tol_for(s, 1e-8, 0.02, stochastic(o));
  std::uint64_t seed = s.seed.value_or(0);
  Report r;
  r.command = "verify-invariance";
  echo_inputs(r, a);
  r.seed = seed;
  std::mt19937_64 rng(splitmix64(seed));
  ConeHint hint;
  hint.alpha.assign(static_cast<std::size_t>(p), 0.0);
  for (long k = 0; k < count; ++k) {
    HTransform h = random_transform(fam, p, q, ext, rng);
    Check c = invariance_check(o, h, f, ext, hint, tol);
    c.label += " #" + std::to_string(k + 1);
    r.add(std::move(c));
  }
  return r;
}

GrassmannNumber random_shift(const AlgebraPtr& ext, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 0.5);
  GrassmannNumber n(ext);
  for (int i = 0; i < ext->size(); ++i)
    for (int j = i + 1; j < ext->size(); ++j) {
      double re = nd(rng);
      n.set((Mask{1} << i) | (Mask{1} << j), cplx{re, nd(rng)});
    }
  double re = nd(rng);
  n.set((Mask{1} << ext->size()) - 1, cplx{re, nd(rng)});
  return n;
}

Report cmd_verify_shift(const json& a, const Settings& s) {
  std::string d = text_or(a, "domain", "unitary");
  ShiftDomain dom;
  if (d == "unitary")
    dom = ShiftDomain::Unitary;
  else if (d == "cone")
    dom = ShiftDomain::Cone;
  else
    throw DomainError("--domain must be unitary or cone");
  long count = int_or(a, "count", 10);
  if (count < 1) throw DomainError("--count must be >= 1");
  AlgebraPtr ext = GrassmannAlgebra::make(4, "θ");
  std::string fdef = dom == ShiftDomain::Unitary ? "(add (pow 2 w) (exp w))" : "(mul (pow 3 z) (exp (neg z)))";
  SuperExpr f = parse_expr(text_or(a, "f", fdef), ext);
  QuadSpec spec = dom == ShiftDomain::Unitary ? unitary_spec(1, s) : s.cone;
  if (dom == ShiftDomain::Unitary && spec.rule != QuadRule::CircleTrapezoid)
    throw DomainError("the U(1) shift check needs the circle-trapezoid rule");
  ConeHint hint;
  hint.alpha = {0.0};
  double tol = tol_for(s, 1e-10, 0.0, false);
  std::uint64_t seed = s.seed.value_or(0);
  Report r;
  r.command = "verify-shift";
  echo_inputs(r, a);
  r.seed = seed;
  std::mt19937_64 rng(splitmix64(seed));
  for (long k = 0; k < count; ++k) {
    Check c = shift_check(dom, f, random_shift(ext, rng), spec, hint, tol);
    c.label += " #" + std::to_string(k + 1);
    r.add(std::move(c));
  }
  return r;
}

Report dispatch(const std::string& cmd, const json& a, const Settings& s) {
  if (cmd == "verify-gamma") return cmd_verify_gamma(a, s);
  if (cmd == "verify-sbos") return cmd_verify_sbos(a, s);
  if (cmd == "verify-laplace") return cmd_verify_laplace(a, s);
  if (cmd == "verify-fourier") return cmd_verify_fourier(a, s);
  if (cmd == "verify-invariance") return cmd_verify_invariance(a, s);
  if (cmd == "verify-shift") return cmd_verify_shift(a, s);
  throw DomainError("unknown command '" + cmd + "'");
}

struct Outcome {
  json body;
  int code = kPass;
  std::string error;
};

Outcome run_one(const std::string& cmd, const json& a, const Settings& s) {
  Outcome o;
  try {
    auto t0 = std::chrono::steady_clock::now();
    if (cmd == "gamma") {
      o.body = cmd_gamma(a);
      return o;
    }
    Report r = dispatch(cmd, a, s);
    if (s.timing) r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.body = report_json(r);
    o.code = r.pass() ? kPass : kNumericFail;
  } catch (const DomainError& e) {
    o.code = kUsage;
    o.error = e.what();
  } catch (const NumericError& e) {
    o.code = kNumericFail;
    o.error = e.what();
  } catch (const json::exception& e) {
    o.code = kUsage;
    o.error = std::string("bad JSON value: ") + e.what();
  }
  return o;
}

// Global overrides from the suite command line win over everything in the config.
Settings apply_overrides(Settings s, const json& global) {
  if (has(global, "tol")) s.tol = to_double(text(global, "tol"), "tol");
  if (has(global, "mc-samples")) s.mc_samples = int_arg(global, "mc-samples");
  if (has(global, "seed")) s.seed = static_cast<std::uint64_t>(int_arg(global, "seed"));
  if (has(global, "timing")) s.timing = text(global, "timing") == "true";
  return s;
}

int run_suite(const json& a, std::ostream& out, std::ostream& err) {
  std::string path = text(a, "config");
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config '" + path + "'");
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed config: ") + e.what());
  }
  if (!cfg.is_object()) throw DomainError("config must be a JSON object");
  Settings defaults = settings_from(cfg.value("defaults", json::object()), Settings{});
  json cases = cfg.value("cases", json::array());
  if (!cases.is_array()) throw DomainError("config 'cases' must be an array");

  json summary = json::array(), reports = json::array();
  int worst = kPass;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const json& c = cases[i];
    json row;
    row["case"] = i;
    Outcome o;
    if (!c.is_object() || !c.contains("command") || !c.at("command").is_string()) {
      o.code = kUsage;
      o.error = "case needs a string 'command'";
    } else {
      std::string cmd = c.at("command").get<std::string>();
      row["command"] = cmd;
      try {
        Settings s = apply_overrides(settings_from(c, defaults), a);
        o = run_one(cmd, c, s);
      } catch (const DomainError& e) {
        o.code = kUsage;
        o.error = e.what();
      }
    }
    row["exit"] = o.code;
    row["pass"] = o.code == kPass;
    if (!o.error.empty()) {
      row["error"] = o.error;
      err << "case " << i << ": " << o.error << "\n";
    }
    summary.push_back(row);
    reports.push_back(o.body.is_null() ? json::object() : o.body);
    worst = std::max(worst, o.code);
  }
  json j;
  j["command"] = "suite";
  j["config"] = path;
  j["pass"] = worst == kPass;
  j["summary"] = summary;
  j["cases"] = reports;
  out << j.dump(2) << "\n";
  return worst;
}

}  // namespace

json grassmann_json(const GrassmannNumber& g) {
  json arr = json::array();
  if (!g.valid()) return arr;
  const auto& c = g.coefficients();
  for (Mask m = 0; m < c.size(); ++m)
    arr.push_back({{"subset", g.algebra()->monomial_name(m)}, {"re", c[m].real()}, {"im", c[m].imag()}});
  return arr;
}

json report_json(const Report& r) {
  json j;
  j["command"] = r.command;
  json in = json::object();
  for (const auto& [k, v] : r.inputs) in[k] = v;
  j["inputs"] = in;
  if (r.seed) j["seed"] = *r.seed;
  j["pass"] = r.pass();
  json checks = json::array();
  for (const auto& c : r.checks) {
    json cj;
    cj["label"] = c.label;
    cj["oracle"] = c.oracle;
    cj["tol"] = c.tol;
    cj["pass"] = c.pass;
    cj["computed"] = grassmann_json(c.computed);
    cj["reference"] = grassmann_json(c.reference);
    cj["abs_err"] = c.abs_err;
    cj["rel_err"] = c.rel_err;
    if (!c.stderr_.empty()) cj["stderr"] = c.stderr_;
    if (!c.note.empty()) cj["note"] = c.note;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  if (r.seconds) j["seconds"] = *r.seconds;
  return j;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"superbos: numerical checks for superbosonisation and Riesz superdistributions", "superbos"};
  app.require_subcommand(1);
  std::map<std::string, std::string> vals;
  bool timing = false;

  auto add = [&](CLI::App* sub, const std::string& name, const std::string& desc) {
    sub->add_option("--" + name, vals[name], desc);
  };
  auto common = [&](CLI::App* sub) {
    add(sub, "tol", "tolerance (overrides the per-command default)");
    add(sub, "seed", "master seed for Monte Carlo and random draws");
    add(sub, "mc-samples", "Monte Carlo sample count for U(q), q >= 2");
    add(sub, "cone-orders", "Gauss–Laguerre and Gauss–Hermite orders for Herm⁺(p), e.g. 8,8");
    add(sub, "nodes", "circle-trapezoid nodes for U(1)");
    add(sub, "unitary-rule", "circle-trapezoid or haar-mc");
    add(sub, "flat-order", "Gauss–Hermite order for the flat integral over V");
    sub->add_flag("--timing", timing, "add wall-clock seconds to the report");
  };

  CLI::App* g = app.add_subcommand("gamma", "closed-form Γ_Ω(m) with pole/zero flags");
  for (const char* k : {"p", "q", "m"}) add(g, k, k);
  CLI::App* vg = app.add_subcommand("verify-gamma", "numeric Γ_Ω(m) against the closed form");
  for (const char* k : {"p", "q", "m"}) add(vg, k, k);
  common(vg);
  CLI::App* vs = app.add_subcommand("verify-sbos", "superbosonisation identity LHS vs RHS");
  for (const char* k : {"p", "q", "n", "x", "odd-params", "f"}) add(vs, k, k);
  common(vs);
  CLI::App* vl = app.add_subcommand("verify-laplace", "Laplace transform of Δ_m");
  for (const char* k : {"p", "q", "m", "x", "odd-params"}) add(vl, k, k);
  common(vl);
  CLI::App* vf = app.add_subcommand("verify-fourier", "Fourier inversion, derivative rules, convolution, Parseval");
  for (const char* k : {"p", "q", "grid-n", "grid-h"}) add(vf, k, k);
  common(vf);
  CLI::App* vi = app.add_subcommand("verify-invariance", "invariance of the Berezinian density under h");
  for (const char* k : {"p", "q", "family", "count", "f", "odd-params"}) add(vi, k, k);
  common(vi);
  CLI::App* vh = app.add_subcommand("verify-shift", "nilpotent shift lemmas on U(1) and Herm⁺(1)");
  for (const char* k : {"domain", "f", "count"}) add(vh, k, k);
  common(vh);
  CLI::App* su = app.add_subcommand("suite", "run a JSON case list");
  add(su, "config", "config file");
  su->add_option("config_file", vals["config"], "config file (positional)");
  for (const char* k : {"tol", "seed", "mc-samples"}) add(su, k, k);
  su->add_flag("--timing", timing, "add wall-clock seconds to each report");

  std::vector<std::string> argv_s{"superbos"};
  argv_s.insert(argv_s.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_s) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  json a = json::object();
  for (const auto& [k, v] : vals)
    if (!v.empty()) a[k] = v;
  if (timing) a["timing"] = "true";

  try {
    if (sub->get_name() == "suite") return run_suite(a, out, err);
    Settings s = settings_from(a, Settings{});
    Outcome o = run_one(sub->get_name(), a, s);
    if (!o.error.empty()) {
      err << "error: " << o.error << "\n";
      return o.code;
    }
    out << o.body.dump(2) << "\n";
    return o.code;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace superbos::cli
