#include "superbos/sbos.hpp"

#include <cmath>
#include <numbers>

#include "superbos/errors.hpp"

namespace superbos {

namespace {

std::string idx(int i, int j) { return std::to_string(i + 1) + std::to_string(j + 1); }

void check_dims(int p, int q, int n) {
  if (p < 0 || q < 0 || n < 1) throw DomainError("V needs p, q >= 0 and n >= 1");
  if (p + q < 1) throw DomainError("V needs p+q >= 1");
}

// boson-block decay of f, as a form on vec(a0) (column-major): tr(d a a*) = Σ_j a_j* d a_j
Eigen::MatrixXcd flat_form(int p, int n, const Eigen::MatrixXcd& decay) {
  Eigen::MatrixXcd d = decay.size() > 0 ? decay : Eigen::MatrixXcd::Identity(p, p);
  if (d.rows() != p || d.cols() != p) throw DomainError("decay has wrong size");
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(p * n, p * n);
  for (int j = 0; j < n; ++j) h.block(j * p, j * p, p, p) = d;
  return h;
}

Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, int p, int n) {
  Eigen::MatrixXcd a0(p, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < p; ++i) a0(i, j) = v(j * p + i);
  return a0;
}

// ∫ over V of g(a0), then Berezin over (ξ,η), landing in ext.
GrassmannNumber v_integrate(const VAlgebra& va, const std::function<GrassmannNumber(const Eigen::MatrixXcd&)>& g,
                            const Eigen::MatrixXcd& decay, int order) {
  if (order < 1) throw DomainError("hermite order must be >= 1");
  const int d = va.p * va.n;
  GrassmannNumber acc = gauss_flat_integrate(
      d, [&](const Eigen::VectorXcd& v) { return g(unvec(v, va.p, va.n)); }, flat_form(va.p, va.n, decay), order,
      va.full);
  acc *= flat_scale(va.p, va.n);
  return embed(berezin(acc, va.berezin_order), va.ext);
}

}  // namespace

SuperMatrix VAlgebra::a(const Eigen::MatrixXcd& a0) const {
  SuperMatrix m(full, {p, q}, {n, 0});
  const int off = ext->size();
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = GrassmannNumber(full, a0(i, j));
  for (int k = 0; k < q; ++k)
    for (int j = 0; j < n; ++j) m(p + k, j) = GrassmannNumber::generator(full, off + k * n + j);
  return m;
}

SuperMatrix VAlgebra::aprime(const Eigen::MatrixXcd& a0) const {
  SuperMatrix m(full, {n, 0}, {p, q});
  const int off = ext->size() + q * n;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < p; ++i) m(j, i) = GrassmannNumber(full, std::conj(a0(i, j)));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < q; ++k) m(j, p + k) = GrassmannNumber::generator(full, off + j * q + k);
  return m;
}

VAlgebra v_algebra(int p, int q, int n, const AlgebraPtr& ext) {
  check_dims(p, q, n);
  VAlgebra va;
  va.p = p;
  va.q = q;
  va.n = n;
  va.ext = ext ? ext : GrassmannAlgebra::make(std::vector<std::string>{});
  std::vector<std::string> labels = va.ext->labels();
  for (int k = 0; k < q; ++k)
    for (int j = 0; j < n; ++j) labels.push_back("ξ" + idx(k, j));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < q; ++k) labels.push_back("η" + idx(j, k));
  va.full = GrassmannAlgebra::make(labels);
  const int off = va.ext->size();
  for (int k = 0; k < q; ++k)
    for (int j = 0; j < n; ++j) {
      va.berezin_order.push_back(off + k * n + j);              // ξ_kj
      va.berezin_order.push_back(off + q * n + j * q + k);      // η_jk
    }
  return va;
}

SuperMatrix q_map(const SuperMatrix& a, const SuperMatrix& aprime) {
  if (a.cols() != aprime.rows() || a.rows() != aprime.cols() || a.cols().odd != 0)
    throw DomainError("q_map: a must be (p|q)×(n|0) and a' its transpose shape");
  return a * aprime;
}

double flat_scale(int p, int n) { return std::pow(std::numbers::pi, -0.5 * n * p); }

GrassmannNumber lhs_integral(int p, int q, int n, const SuperExpr& f, const AlgebraPtr& ext,
                             const Eigen::MatrixXcd& decay, int hermite_order) {
  VAlgebra va = v_algebra(p, q, n, ext);
  return v_integrate(
      va,
      [&](const Eigen::MatrixXcd& a0) {
        Bindings b{va.full, {{"Y", q_map(va.a(a0), va.aprime(a0))}}};
        return f.eval_scalar(b);
      },
      decay, hermite_order);
}

GrassmannNumber lhs_laplace(int p, int q, int n, const SuperMatrix& x, int hermite_order) {
  if (x.rows() != Format{p, q} || x.cols() != Format{p, q}) throw DomainError("x must be a square (p|q) supermatrix");
  x.require_even("lhs_laplace");
  Eigen::MatrixXcd decay = x.body().topLeftCorner(p, p);
  return lhs_integral(p, q, n, laplace_kernel(x), x.algebra(), decay, hermite_order);
}

GrassmannNumber lhs_closed(int p, int q, int n, const SuperMatrix& x) {
  if (x.rows() != Format{p, q} || x.cols() != Format{p, q}) throw DomainError("x must be a square (p|q) supermatrix");
  check_dims(p, q, n);
  return gpow(berezinian(x), -n) * std::pow(std::numbers::pi, 0.5 * n * p);
}

Check gaussian_norm_check(int p, int q, int n, int hermite_order, double tol) {
  VAlgebra va = v_algebra(p, q, n, nullptr);
  GrassmannNumber value = v_integrate(
      va,
      [&](const Eigen::MatrixXcd& a0) {
        SuperMatrix a = va.a(a0), ap = va.aprime(a0);
        SuperMatrix v(va.full, {n + p, q}, {n + p, q});
        // slots 0..n-1 belong to a', slot n+k to row k of a
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < p + q; ++k) v(j, n + k) = ap(j, k);
        for (int k = 0; k < p + q; ++k)
          for (int j = 0; j < n; ++j) v(n + k, j) = a(k, j);
        return gexp(supertrace(v * v) * cplx{-0.5});
      },
      Eigen::MatrixXcd(), hermite_order);
  GrassmannNumber ref(va.ext, std::pow(std::numbers::pi, 0.5 * n * p));
  return compare("gaussian normalisation", value, ref, tol, "√π^{np}");
}

GammaValue sbos_constant(int p, int q, int n) {
  if (n < p) throw DomainError("the identity needs n >= p");
  GammaValue g = gamma_closed(p, q, MultiIndex::constant(p, q, n));
  if (g.is_pole || g.is_zero) throw NumericError("Γ_Ω(n𝟙) is singular");
  GammaValue c;
  c.log_abs = 0.5 * n * p * std::log(std::numbers::pi) - g.log_abs;
  c.sign = g.sign;
  c.value = c.sign * std::exp(c.log_abs);
  return c;
}

Report verify_identity(const SbosCase& c, const OmegaSpec& spec, int hermite_order, double tol) {
  if (spec.p != c.p || spec.q != c.q) throw DomainError("Ω spec and case disagree on (p|q)");
  if (!c.f && !c.x) throw DomainError("need x (Laplace kernel) or an explicit f");
  if (c.p > 0 && !c.x) throw DomainError("p > 0 needs x for the decay of f");
  AlgebraPtr ext = c.ext;
  if (c.x) ext = c.x->algebra();
  if (!ext) ext = GrassmannAlgebra::make(std::vector<std::string>{});
  SuperExpr f = c.f ? *c.f : laplace_kernel(*c.x);
  Eigen::MatrixXcd decay = c.x ? Eigen::MatrixXcd(c.x->body().topLeftCorner(c.p, c.p)) : Eigen::MatrixXcd();

  Report r;
  r.command = "verify-sbos";
  GammaValue k = sbos_constant(c.p, c.q, c.n);
  GrassmannNumber lhs = lhs_integral(c.p, c.q, c.n, f, ext, decay, hermite_order);
  if (!c.f) r.add(compare("LHS vs closed form", lhs, lhs_closed(c.p, c.q, c.n, *c.x), tol, "√π^{np}·Ber(x)^{-n}"));

  ConeHint hint;
  hint.decay = decay;
  for (int j = 1; j <= c.p; ++j) hint.alpha.push_back(c.n - j);
  Estimate t = riesz_T(spec, c.n, f, ext, hint);
  GrassmannNumber rhs = t.value * cplx{k.value};
  if (t.stochastic()) {
    std::vector<double> se = t.stderr_;
    for (auto& s : se) s *= std::abs(k.value);
    r.add(compare_mc("LHS vs RHS", lhs, se, rhs, tol, "(√π^{np}/Γ_Ω(n𝟙))·T_n(f)"));
  } else {
    r.add(compare("LHS vs RHS", lhs, rhs, tol, "(√π^{np}/Γ_Ω(n𝟙))·T_n(f)"));
  }
  return r;
}

}  // namespace superbos
