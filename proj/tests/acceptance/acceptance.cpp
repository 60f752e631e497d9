// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "random_super.hpp"
#include "superbos/errors.hpp"
#include "superbos/riesz.hpp"
#include "superbos/sbos.hpp"
#include "superbos/superfourier.hpp"

using namespace superbos;
using superbos::testing::rand_even;
using superbos::testing::rand_grassmann;

namespace {

struct Tally {
  int checks = 0, failed = 0;
  double worst = 0.0;
  std::string first_failure;
  std::string extra;

  void add(const Check& c) {
    ++checks;
    for (double e : c.rel_err) worst = std::max(worst, e);
    if (!c.pass) {
      ++failed;
      if (first_failure.empty()) first_failure = c.label + (c.note.empty() ? "" : " (" + c.note + ")");
    }
  }
  void add(const Report& r) {
    for (const auto& c : r.checks) add(c);
  }
  bool pass() const { return failed == 0 && checks > 0; }
};

AlgebraPtr none() { return GrassmannAlgebra::make(0); }
GrassmannNumber scalar(double v) { return GrassmannNumber(none(), v); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

OmegaSpec omega(int p, int q) {
  OmegaSpec s;
  s.p = p;
  s.q = q;
  return s;
}

// 1 / ∏ hooks of the q×n rectangle, the Haar integral of e^{tr w} det(w)^{-n}.
double inverse_hook_product(int q, int n) {
  double h = 1.0;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < n; ++j) h *= double((n - 1 - j) + (q - 1 - i) + 1);
  return 1.0 / h;
}

GrassmannNumber random_shift(const AlgebraPtr& ext, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 0.5);
  GrassmannNumber n(ext);
  for (Mask m = 1; m < ext->dim(); ++m)
    if (std::popcount(m) % 2 == 0) {
      double re = nd(rng);
      n.set(m, cplx{re, nd(rng)});
    }
  return n;
}

// ---------------------------------------------------------------------------

Tally c1_gamma_grid() {
  Tally t;
  auto t0 = std::chrono::steady_clock::now();
  struct PQ {
    int p, q;
  };
  for (PQ pq : {PQ{1, 0}, PQ{2, 0}, PQ{0, 1}, PQ{1, 1}, PQ{2, 1}}) {
    std::vector<std::vector<double>> ms{{}};
    for (int j = 0; j < pq.p + pq.q; ++j) {
      std::vector<std::vector<double>> next;
      for (const auto& m : ms) {
        std::vector<int> range;
        if (j < pq.p)
          for (int v = pq.p + 1; v <= pq.p + 3; ++v) range.push_back(v);
        else
          for (int v = -3; v <= 3; ++v) range.push_back(v);
        for (int v : range) {
          auto mm = m;
          mm.push_back(v);
          next.push_back(mm);
        }
      }
      ms = next;
    }
    for (const auto& mv : ms) {
      MultiIndex m(pq.p, mv);
      GammaValue g = gamma_closed(pq.p, pq.q, m);
      // order 4 is exact for these cone integrands; 32 circle nodes keep the
      // Laurent aliasing of e^{w} below 1e-10 at m = -3
      OmegaSpec s = omega(pq.p, pq.q);
      s.cone = QuadSpec{QuadRule::GaussLaguerre, {4, 4}, 1, 0};
      if (pq.q == 1) s.unitary = QuadSpec{QuadRule::CircleTrapezoid, {32}, 1, 0};
      Estimate e = gamma_numeric(s, m);
      t.add(compare("Γ_Ω", e.value, scalar(g.value), 1e-6, "closed form"));
    }
  }
  double secs = seconds_since(t0);
  if (secs >= 60.0) {
    ++t.failed;
    t.first_failure = "runtime " + std::to_string(secs) + " s";
  }
  t.extra = "runtime " + std::to_string(secs).substr(0, 5) + " s";
  return t;
}

Tally c2_gamma_mc() {
  Tally t;
  for (int n : {2, 3}) {
    OmegaSpec s = omega(1, 2);
    // the cone integrand at fixed w is t^{n-1}e^{-t}·(polynomial of degree ≤ 1)
    s.cone = QuadSpec{QuadRule::GaussLaguerre, {2, 1}, 1, 0};
    s.unitary = QuadSpec{QuadRule::HaarMC, {1}, 1000000, 20261016u + static_cast<unsigned>(n)};
    MultiIndex m(1, {double(n), double(n), double(n)});
    Estimate e = gamma_numeric(s, m);
    Check c = compare_mc("Γ_Ω(n,n,n)", e.value, e.stderr_, scalar(gamma_closed(1, 2, m).value), 0.02, "closed form");
    t.add(c);
    t.extra += "n=" + std::to_string(n) + ": " + std::to_string(e.value.body().real()) + "±" +
               std::to_string(e.stderr_[0]) + " vs " + std::to_string(c.reference.body().real()) + "; ";
  }
  return t;
}

Tally c3_sbos() {
  Tally t;
  auto t0 = std::chrono::steady_clock::now();
  auto plain = GrassmannAlgebra::make(0);
  auto odd2 = GrassmannAlgebra::make(2);
  std::vector<SuperMatrix> xs{parse_matrix("diag:1,1", {1, 1}, {1, 1}, plain),
                              parse_matrix("diag:2,1", {1, 1}, {1, 1}, plain),
                              parse_matrix("diag:1,1@pi/4", {1, 1}, {1, 1}, plain),
                              parse_matrix("2,θ1;θ2,1", {1, 1}, {1, 1}, odd2)};
  for (int n : {1, 2})
    for (const auto& x : xs) {
      SbosCase c;
      c.p = 1;
      c.q = 1;
      c.n = n;
      c.x = x;
      c.ext = x.algebra();
      t.add(verify_identity(c, omega(1, 1), 10, 1e-6));
    }
  double secs = seconds_since(t0);
  if (secs >= 120.0) {
    ++t.failed;
    t.first_failure = "runtime " + std::to_string(secs) + " s";
  }
  t.extra = "runtime " + std::to_string(secs).substr(0, 5) + " s";
  return t;
}

Tally c4_bosonisation() {
  Tally t;
  auto ext = GrassmannAlgebra::make(0);
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k <= 5; ++k) {
      SuperExpr f = parse_expr("(pow " + std::to_string(k) + " w)", ext);
      // Cauchy: (1/2πi)∮ w^{k-n} dw/w = δ_kn, times the constant n!
      double cauchy = k == n ? std::tgamma(n + 1.0) : 0.0;
      GrassmannNumber lhs = lhs_integral(0, 1, n, f, ext, Eigen::MatrixXcd(), 4);
      t.add(compare("LHS vs Cauchy", lhs, scalar(cauchy), 1e-12, "n! δ_kn"));
      Estimate tn = riesz_T(omega(0, 1), n, f, ext, ConeHint{});
      t.add(compare("T_n vs Cauchy", tn.value, scalar(k == n ? 1.0 : 0.0), 1e-12, "δ_kn"));
      SbosCase c;
      c.p = 0;
      c.q = 1;
      c.n = n;
      c.f = f;
      c.ext = ext;
      t.add(verify_identity(c, omega(0, 1), 4, 1e-12));
    }
  return t;
}

Tally c5_ingham_siegel() {
  Tally t;
  auto alg = GrassmannAlgebra::make(0);
  std::vector<std::pair<int, std::string>> xs{{1, "diag:1"},
                                              {1, "diag:2.5"},
                                              {2, "diag:1,3"},
                                              {2, "1.5,0.5+0.5i;0.5-0.5i,2"}};
  for (const auto& [p, text] : xs) {
    SuperMatrix x = parse_matrix(text, {p, 0}, {p, 0}, alg);
    for (int n : {p, p + 1, p + 2}) {
      ConeHint hint;
      hint.decay = x.body();
      for (int j = 1; j <= p; ++j) hint.alpha.push_back(n - j);
      Estimate e = riesz_T(omega(p, 0), n, laplace_kernel(x), alg, hint);
      GrassmannNumber want =
          gpow(berezinian(x), -n) * cplx{gamma_closed(p, 0, MultiIndex::constant(p, 0, n)).value};
      t.add(compare("T_n(kernel)", e.value, want, 1e-6, "Γ_Ω(n𝟙)Ber(x)^{-n}"));
    }
  }
  return t;
}

Tally c6_gaussian() {
  Tally t;
  for (int n : {1, 2})
    for (int q : {0, 1}) t.add(gaussian_norm_check(1, q, n, 10, 1e-10));
  for (int n : {1, 2}) {
    Check c = gaussian_norm_check(0, 1, n, 10, 1e-12);
    t.add(compare("odd Gaussian", c.computed, scalar(1.0), 1e-12, "+1"));
  }
  Estimate e = gamma_numeric(omega(1, 1), MultiIndex(1, {1, 1}));
  t.add(compare("Γ_Ω(1,1)", e.value, scalar(1.0), 1e-12, "+1"));
  return t;
}

Tally c7_laplace() {
  Tally t;
  auto ext = GrassmannAlgebra::make(2);
  struct Case {
    int q;
    std::vector<std::vector<double>> ms;
    std::vector<std::string> xs;
  };
  std::vector<Case> cases{{0, {{1.5}, {2}, {3.5}}, {"diag:1", "diag:0.7", "diag:2+θ1θ2"}},
                          {1, {{2, 1}, {3, -1}, {2.5, 2}}, {"diag:2,1", "diag:1.5,1@pi/4", "2,θ1;θ2,1"}}};
  for (const auto& c : cases)
    for (const auto& mv : c.ms)
      for (const auto& xt : c.xs) {
        MultiIndex m(1, mv);
        SuperMatrix x = parse_matrix(xt, {1, c.q}, {1, c.q}, ext);
        Estimate e = laplace_conical(omega(1, c.q), m, x);
        t.add(compare("L(Δ_m)", e.value, delta_m(x, m) * cplx{gamma_closed(1, c.q, m).value}, 1e-8,
                      "Γ_Ω(m)Δ_m(x)"));
      }
  return t;
}

Tally c8_fermionic() {
  Tally t;
  for (int p = 0; p <= 2; ++p)
    for (int q = 1; q <= 2; ++q) {
      std::vector<std::vector<double>> fs;
      for (int a = -3; a <= 3; ++a)
        if (q == 1)
          fs.push_back({double(a)});
        else
          for (int b = -3; b <= 3; ++b) fs.push_back({double(a), double(b)});
      for (const auto& f : fs) {
        std::vector<double> mv;
        for (int j = 0; j < p; ++j) mv.push_back(p + 1.0);
        mv.insert(mv.end(), f.begin(), f.end());
        MultiIndex m(p, mv);
        // ∏_k m_{p+k}^{(p)} rising factorial, computed here independently
        double want = 1.0;
        for (int k = 1; k <= q; ++k)
          for (int i = 0; i < p; ++i) want *= f[k - 1] - p + k + i;
        t.add(compare("ψ(1)", scalar(gamma_fermionic_exact(p, q, m)), scalar(want), 1e-12, "rising factorial"));
        t.add(compare("closed product", scalar(gamma_fermionic_closed(p, q, m)), scalar(want), 1e-12,
                      "rising factorial"));
      }
    }
  return t;
}

Tally c9_unitary() {
  Tally t;
  QuadSpec circle{QuadRule::CircleTrapezoid, {32}, 1, 0};
  for (long n = -2; n <= 4; ++n) {
    Estimate e = unitary_sector_integral(1, {n}, circle);
    t.add(compare("U(1)", e.value, scalar(n < 0 ? 0.0 : 1.0 / std::tgamma(n + 1.0)), 1e-12, "1/n!"));
  }
  for (int n : {1, 2}) {
    QuadSpec mc{QuadRule::HaarMC, {1}, 1000000, 777u + static_cast<unsigned>(n)};
    Estimate e = unitary_sector_integral(2, {n, n}, mc);
    Check c = compare_mc("U(2)", e.value, e.stderr_, scalar(inverse_hook_product(2, n)), 0.02, "1/∏ hooks");
    t.add(c);
    t.extra += "n=" + std::to_string(n) + ": " + std::to_string(e.value.body().real()) + "±" +
               std::to_string(e.stderr_[0]) + " vs " + std::to_string(c.reference.body().real()) + "; ";
  }
  return t;
}

Tally c10_invariance() {
  Tally t;
  auto ext = GrassmannAlgebra::make(2);
  SuperExpr f = parse_expr("(mul (ber Y) (exp (neg (str Y))))", ext);
  ConeHint hint;
  hint.alpha = {0.0};
  std::mt19937_64 rng(1010);
  for (HFamily fam : {HFamily::OddLower, HFamily::OddUpper, HFamily::Block})
    for (int i = 0; i < 20; ++i) t.add(invariance_check(omega(1, 1), random_transform(fam, 1, 1, ext, rng), f, ext, hint, 1e-8));
  return t;
}

Tally c11_vrho() {
  Tally t;
  auto alg = GrassmannAlgebra::make(4);
  std::mt19937_64 rng(1111);
  std::vector<Format> fs{{1, 1}, {2, 1}, {1, 2}, {2, 2}, {0, 1}, {1, 0}, {0, 2}, {2, 0}};
  for (int i = 0; i < 100; ++i) {
    SuperMatrix x = rand_even(alg, fs[i % fs.size()], rng);
    t.add(compare("ϱ", vrho(x), vrho_via_ber(x), 1e-12, "Ber^{q-p} det z^p det w^q"));
  }
  return t;
}

Tally c12_shift() {
  Tally t;
  auto ext = GrassmannAlgebra::make(4);
  std::mt19937_64 rng(1212);
  ConeHint hint;
  hint.alpha = {0.0};
  SuperExpr fu = parse_expr("(add (pow 2 w) (exp w))", ext);
  SuperExpr fc = parse_expr("(mul (pow 3 z) (exp (neg z)))", ext);
  for (int i = 0; i < 10; ++i) {
    GrassmannNumber n = random_shift(ext, rng);
    t.add(shift_check(ShiftDomain::Unitary, fu, n, QuadSpec{QuadRule::CircleTrapezoid, {32}, 1, 0}, hint, 1e-10));
    t.add(shift_check(ShiftDomain::Cone, fc, n, QuadSpec{QuadRule::GaussLaguerre, {8, 8}, 1, 0}, hint, 1e-10));
  }
  return t;
}

Tally c13_fourier() {
  Tally t;
  for (auto [p, q] : {std::pair{1, 0}, {0, 1}, {1, 1}, {0, 2}})
    for (const Check& c : fourier_suite(p, q, p == 1 ? 1e-8 : 1e-12)) t.add(c);
  return t;
}

Tally c14_fuzz() {
  Tally t;
  auto alg = GrassmannAlgebra::make(4);
  std::mt19937_64 rng(1414);
  std::vector<Format> fs{{1, 1}, {2, 1}, {1, 2}, {2, 2}};
  for (int i = 0; i < 1000; ++i) {
    Format f = fs[i % fs.size()];
    // graded commutativity
    int pa = i % 2, pb = (i / 2) % 2;
    GrassmannNumber a = rand_grassmann(alg, rng, pa), b = rand_grassmann(alg, rng, pb);
    GrassmannNumber ba = b * a;
    if (pa * pb) ba *= -1.0;
    t.add(compare("ab = ±ba", a * b, ba, 1e-12, "sign rule"));
    // Berezinian multiplicativity and supertrace cyclicity
    SuperMatrix x = rand_even(alg, f, rng), y = rand_even(alg, f, rng);
    t.add(compare("Ber(xy)", berezinian(x * y), berezinian(x) * berezinian(y), 1e-12, "Ber(x)Ber(y)"));
    t.add(compare("str(xy)", supertrace(x * y), supertrace(y * x), 1e-12, "str(yx)"));
    // conicality: A lower, D upper triangular
    SuperMatrix lo = rand_even(alg, f, rng, 1.5), up = rand_even(alg, f, rng, 1.5);
    for (int r = 0; r < f.size(); ++r)
      for (int c = 0; c < f.size(); ++c) {
        if (c > r) lo(r, c) = GrassmannNumber(alg);
        if (c < r) up(r, c) = GrassmannNumber(alg);
      }
    std::vector<double> mv;
    for (int j = 0; j < f.even; ++j) mv.push_back(3.0 - j + 0.5 * (i % 3));
    for (int j = 0; j < f.odd; ++j) mv.push_back(double(i % 5) - 2.0 - j);
    MultiIndex m(f.even, mv);
    GroupElement g = GroupElement::block_diagonal(lo, up);
    t.add(compare("Δ_m(g.z)", delta_m(act(g, x), m), chi_m(g, m) * delta_m(x, m), 1e-12, "χ_m(g)Δ_m(z)"));
    // LDU
    LDU d = ldu(x);
    SuperMatrix back = d.l * d.d * d.u;
    for (int r = 0; r < f.size(); ++r)
      for (int c = 0; c < f.size(); ++c) t.add(compare("LDU", back(r, c), x(r, c), 1e-12, "input entry"));
  }
  return t;
}

}  // namespace

int main() {
  struct Item {
    int id;
    const char* what;
    std::function<Tally()> run;
  };
  std::vector<Item> items{{1, "Γ_Ω closed vs numeric, grid", c1_gamma_grid},
                          {2, "(1|2) Monte Carlo Γ_Ω at 10⁶ samples", c2_gamma_mc},
                          {3, "superbosonisation identity, p=q=1", c3_sbos},
                          {4, "bosonisation p=0, q=1 vs Cauchy", c4_bosonisation},
                          {5, "classical Riesz case q=0", c5_ingham_siegel},
                          {6, "Gaussian normalisation and sign calibration", c6_gaussian},
                          {7, "Laplace transform of Δ_m", c7_laplace},
                          {8, "Berezin factor of Γ_Ω", c8_fermionic},
                          {9, "unitary sector", c9_unitary},
                          {10, "invariance under h, 20 per family", c10_invariance},
                          {11, "ϱ via Berezinian, 100 matrices", c11_vrho},
                          {12, "nilpotent shift lemmas", c12_shift},
                          {13, "Fourier suite", c13_fourier},
                          {14, "property fuzz, 1000 instances", c14_fuzz}};
  int failures = 0;
  for (const auto& it : items) {
    auto t0 = std::chrono::steady_clock::now();
    Tally t;
    std::string error;
    try {
      t = it.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    bool ok = error.empty() && t.pass();
    if (!ok) ++failures;
    std::printf("criterion %2d: %s  %s  [%d checks, %d failed, worst rel err %.2e, %.1f s]%s%s%s%s\n", it.id,
                ok ? "PASS" : "FAIL", it.what, t.checks, t.failed, t.worst, seconds_since(t0),
                t.extra.empty() ? "" : "  ", t.extra.c_str(),
                t.first_failure.empty() && error.empty() ? "" : "  first failure: ",
                error.empty() ? t.first_failure.c_str() : error.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(items.size()) - failures, items.size());
  return failures ? 1 : 0;
}
