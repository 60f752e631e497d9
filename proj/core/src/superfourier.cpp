#include "superbos/superfourier.hpp"

#include <cmath>
#include <numbers>

#include "superbos/errors.hpp"

namespace superbos {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_shape(int p, int q) {
  if (p < 0 || p > 1 || q < 0 || q > 2) throw DomainError("Fourier module supports p <= 1 and q <= 2");
}

void require_compatible(const SchwartzSample& f, const SchwartzSample& g) {
  if (f.p != g.p || f.q != g.q) throw DomainError("superfunctions live on different spaces");
  if (f.p == 1 && (f.grid.n != g.grid.n || f.grid.h != g.grid.h)) throw DomainError("superfunctions use different grids");
}

// Odd-sector matrix of a transform: out_J = Σ_I M(J, I) in_I. Generators 0..q-1
// belong to the output space, q..2q-1 to the integration variable; the kernel is
// e^{sign·i Σ_a θ_a θ_{q+a}} with the output generator first.
Eigen::MatrixXcd odd_transform_matrix(int q, double sign) {
  std::vector<std::string> labels;
  for (int a = 0; a < 2 * q; ++a) labels.push_back("g" + std::to_string(a));
  AlgebraPtr alg = GrassmannAlgebra::make(labels);
  GrassmannNumber pairing(alg);
  for (int a = 0; a < q; ++a) pairing += GrassmannNumber::generator(alg, a) * GrassmannNumber::generator(alg, q + a);
  GrassmannNumber kernel = gexp(pairing * cplx{0.0, sign});
  std::vector<int> order;
  for (int a = 0; a < q; ++a) order.push_back(q + a);
  const Mask dim = Mask{1} << q;
  Eigen::MatrixXcd m(dim, dim);
  for (Mask i = 0; i < dim; ++i) {
    GrassmannNumber r = berezin(kernel * GrassmannNumber::monomial(alg, i << q), order);
    for (Mask j = 0; j < dim; ++j) m(j, i) = r.coeff(j);
  }
  return m;
}

// Classical transform on the grid: (2π)^{-1/2} h Σ_k e^{sign·i ξ_l x_k} φ_k.
Eigen::VectorXcd classical_ft(const Grid& g, const Eigen::VectorXcd& phi, double sign) {
  Eigen::VectorXcd out(g.n);
  const double c = g.h / std::sqrt(kTwoPi);
  for (int l = 0; l < g.n; ++l) {
    cplx s = 0.0;
    for (int k = 0; k < g.n; ++k) s += std::polar(1.0, sign * g.x(l) * g.x(k)) * phi(k);
    out(l) = c * s;
  }
  return out;
}

// The pairing is Σ ν_a ν^a in both directions, so the odd kernel (output generator
// first) is e^{-iΣ out·in} for both ft and ift; only the even sign differs.
// Integrating over V* brings the dual-basis sign (-1)^q.
SchwartzSample transform(const SchwartzSample& f, double sign, cplx prefactor, bool over_dual) {
  check_shape(f.p, f.q);
  check_aliasing(f);
  Eigen::MatrixXcd m = odd_transform_matrix(f.q, -1.0);
  if (over_dual && f.q % 2) prefactor = -prefactor;
  SchwartzSample even = f;
  if (f.p == 1)
    for (auto& c : even.comp) c = classical_ft(f.grid, c, sign);
  SchwartzSample out = SchwartzSample::zero(f.p, f.q, f.grid);
  const std::size_t dim = f.comp.size();
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i)
      if (m(j, i) != cplx{}) out.comp[j] += prefactor * m(j, i) * even.comp[i];
  return out;
}

// Convolution tensor: D[K][I][J] = coefficient of ξ^K in ∫Dν ν^I (ξ-ν)^J.
std::vector<std::vector<std::vector<cplx>>> conv_tensor(int q) {
  std::vector<std::string> labels;
  for (int a = 0; a < 2 * q; ++a) labels.push_back("g" + std::to_string(a));
  AlgebraPtr alg = GrassmannAlgebra::make(labels);
  std::vector<int> order;
  for (int a = 0; a < q; ++a) order.push_back(q + a);
  const Mask dim = Mask{1} << q;
  std::vector<std::vector<std::vector<cplx>>> d(dim, std::vector<std::vector<cplx>>(dim, std::vector<cplx>(dim)));
  for (Mask i = 0; i < dim; ++i)
    for (Mask j = 0; j < dim; ++j) {
      GrassmannNumber shifted(alg, 1.0);
      for (int a = 0; a < q; ++a)
        if (j & (Mask{1} << a))
          shifted = shifted * (GrassmannNumber::generator(alg, a) - GrassmannNumber::generator(alg, q + a));
      GrassmannNumber r = berezin(GrassmannNumber::monomial(alg, i << q) * shifted, order);
      for (Mask k = 0; k < dim; ++k) d[k][i][j] = r.coeff(k);
    }
  return d;
}

// h Σ_k φ(x_k) ψ(x_l - x_k) on the grid; values off the grid count as zero.
Eigen::VectorXcd classical_conv(const Grid& g, const Eigen::VectorXcd& phi, const Eigen::VectorXcd& psi) {
  const int c = (g.n - 1) / 2;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(g.n);
  for (int l = 0; l < g.n; ++l) {
    cplx s = 0.0;
    for (int k = 0; k < g.n; ++k) {
      int idx = l - k + c;
      if (idx >= 0 && idx < g.n) s += phi(k) * psi(idx);
    }
    out(l) = g.h * s;
  }
  return out;
}

}  // namespace

void Grid::validate() const {
  if (n < 3 || n % 2 == 0) throw DomainError("grid needs an odd number of points >= 3");
  if (!(h > 0.0)) throw DomainError("grid spacing must be positive");
}

SchwartzSample SchwartzSample::zero(int p, int q, const Grid& grid) {
  check_shape(p, q);
  grid.validate();
  SchwartzSample s;
  s.p = p;
  s.q = q;
  s.grid = grid;
  s.comp.assign(std::size_t{1} << q, Eigen::VectorXcd::Zero(p == 1 ? grid.n : 1));
  return s;
}

SchwartzSample SchwartzSample::from_functions(int p, int q, const std::vector<std::function<cplx(double)>>& fs,
                                              const Grid& grid) {
  SchwartzSample s = zero(p, q, grid);
  if (fs.size() > s.comp.size()) throw DomainError("more components than odd monomials");
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (!fs[i]) continue;
    for (int k = 0; k < s.samples(); ++k) s.comp[i](k) = fs[i](p == 1 ? grid.x(k) : 0.0);
  }
  return s;
}

int SchwartzSample::parity() const {
  bool even = false, odd = false;
  for (std::size_t i = 0; i < comp.size(); ++i) {
    if (comp[i].cwiseAbs().maxCoeff() == 0.0) continue;
    (std::popcount(static_cast<Mask>(i)) % 2 ? odd : even) = true;
  }
  if (even && odd) return -1;
  return odd ? 1 : 0;
}

bool SchwartzSample::is_zero() const { return max_abs() == 0.0; }

double SchwartzSample::max_abs() const {
  double m = 0.0;
  for (const auto& c : comp) m = std::max(m, c.cwiseAbs().maxCoeff());
  return m;
}

GrassmannNumber SchwartzSample::at(int k, const AlgebraPtr& alg) const {
  if (alg->size() != q) throw DomainError("algebra must have q generators");
  std::vector<cplx> c(comp.size());
  for (std::size_t i = 0; i < comp.size(); ++i) c[i] = comp[i](p == 1 ? k : 0);
  return GrassmannNumber::from_coefficients(alg, std::move(c));
}

void check_aliasing(const SchwartzSample& f, double rel) {
  if (f.p == 0) return;
  double scale = f.max_abs();
  if (scale == 0.0) return;
  int edge = std::max(1, f.grid.n / 20);
  for (const auto& c : f.comp)
    for (int k = 0; k < f.grid.n; ++k)
      if ((k < edge || k >= f.grid.n - edge) && std::abs(c(k)) > rel * scale)
        throw DomainError("function does not decay inside the grid (aliasing)");
}

SchwartzSample ft(const SchwartzSample& f) { return transform(f, -1.0, 1.0, false); }

cplx cotransform_prefactor(int q) {
  cplx c = std::pow(cplx{0.0, -1.0}, q);
  return (q * (q + 1) / 2) % 2 ? -c : c;
}

SchwartzSample ift(const SchwartzSample& g, cplx prefactor) { return transform(g, 1.0, prefactor, true); }
SchwartzSample ift(const SchwartzSample& g) { return ift(g, cotransform_prefactor(g.q)); }

SchwartzSample mul_generator(const SchwartzSample& f, int a) {
  if (a < 0 || a >= f.q) throw DomainError("generator index out of range");
  SchwartzSample out = SchwartzSample::zero(f.p, f.q, f.grid);
  const Mask bit = Mask{1} << a;
  for (Mask i = 0; i < f.comp.size(); ++i)
    if (!(i & bit)) out.comp[i | bit] += static_cast<double>(reorder_sign(bit, i)) * f.comp[i];
  return out;
}

SchwartzSample derivative(const SchwartzSample& f, int a) {
  if (a < 0 || a >= f.q) throw DomainError("generator index out of range");
  SchwartzSample out = SchwartzSample::zero(f.p, f.q, f.grid);
  const Mask bit = Mask{1} << a;
  for (Mask i = 0; i < f.comp.size(); ++i)
    if (i & bit) out.comp[i & ~bit] += static_cast<double>(reorder_sign(bit, i & ~bit)) * f.comp[i];
  return out;
}

SchwartzSample product(const SchwartzSample& f, const SchwartzSample& g) {
  require_compatible(f, g);
  SchwartzSample out = SchwartzSample::zero(f.p, f.q, f.grid);
  for (Mask i = 0; i < f.comp.size(); ++i)
    for (Mask j = 0; j < g.comp.size(); ++j) {
      int s = reorder_sign(i, j);
      if (s == 0) continue;
      out.comp[i | j] += static_cast<double>(s) * f.comp[i].cwiseProduct(g.comp[j]);
    }
  return out;
}

SchwartzSample reflect(const SchwartzSample& f) {
  SchwartzSample out = f;
  for (Mask i = 0; i < f.comp.size(); ++i) {
    if (f.p == 1) out.comp[i] = f.comp[i].reverse().eval();
    if (std::popcount(i) % 2) out.comp[i] *= -1.0;
  }
  return out;
}

SchwartzSample scaled(SchwartzSample f, cplx c) {
  for (auto& v : f.comp) v *= c;
  return f;
}

cplx integrate(const SchwartzSample& f) {
  const Eigen::VectorXcd& top = f.comp.back();
  return f.p == 1 ? f.grid.h * top.sum() : top(0);
}

cplx integrate_dual(const SchwartzSample& f) { return f.q % 2 ? -integrate(f) : integrate(f); }

SchwartzSample convolve(const SchwartzSample& f, const SchwartzSample& g) {
  require_compatible(f, g);
  check_aliasing(f);
  check_aliasing(g);
  auto d = conv_tensor(f.q);
  const double sign = f.q % 2 ? -1.0 : 1.0;
  SchwartzSample out = SchwartzSample::zero(f.p, f.q, f.grid);
  const std::size_t dim = f.comp.size();
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      bool used = false;
      for (std::size_t k = 0; k < dim; ++k) used = used || d[k][i][j] != cplx{};
      if (!used) continue;
      Eigen::VectorXcd c = f.p == 1 ? classical_conv(f.grid, f.comp[i], g.comp[j])
                                    : Eigen::VectorXcd(f.comp[i].cwiseProduct(g.comp[j]));
      for (std::size_t k = 0; k < dim; ++k)
        if (d[k][i][j] != cplx{}) out.comp[k] += sign * d[k][i][j] * c;
    }
  return out;
}

Check compare_samples(std::string label, const SchwartzSample& a, const SchwartzSample& b, double tol,
                      std::string oracle) {
  require_compatible(a, b);
  AlgebraPtr alg = GrassmannAlgebra::make(a.q, "ν");
  const int probe = a.p == 1 ? (a.grid.n - 1) / 2 + 5 : 0;
  Check c;
  c.label = std::move(label);
  c.oracle = std::move(oracle);
  c.computed = a.at(probe, alg);
  c.reference = b.at(probe, alg);
  c.tol = tol;
  c.pass = true;
  double scale = std::max(a.max_abs(), b.max_abs());
  for (std::size_t i = 0; i < a.comp.size(); ++i) {
    double e = (a.comp[i] - b.comp[i]).cwiseAbs().maxCoeff();
    double r = scale > 0.0 ? e / scale : e;
    c.abs_err.push_back(e);
    c.rel_err.push_back(r);
    if (!(r <= tol)) c.pass = false;
  }
  c.note = "errors are maxima over the grid relative to the largest sample; values shown at x = " +
           std::to_string(a.p == 1 ? a.grid.x(probe) : 0.0);
  return c;
}

std::vector<Check> inversion_checks(const SchwartzSample& f, double tol) {
  std::vector<Check> out;
  SchwartzSample g = ft(f);
  out.push_back(compare_samples("ift(ft(f)) = f", ift(g), f, tol, "input"));
  out.push_back(compare_samples("ft(ift(g)) = g", ft(ift(g)), g, tol, "input"));
  int par = f.parity();
  if (par >= 0 && !f.is_zero()) {
    int got = g.parity();
    Check c;
    c.label = "ft shifts parity by q";
    AlgebraPtr alg = GrassmannAlgebra::make(std::vector<std::string>{});
    c.computed = GrassmannNumber(alg, got);
    c.reference = GrassmannNumber(alg, (par + f.q) % 2);
    c.oracle = "parity of f plus q";
    c.tol = 0.0;
    c.pass = got == (par + f.q) % 2;
    c.abs_err = {c.pass ? 0.0 : 1.0};
    c.rel_err = c.abs_err;
    out.push_back(c);
  }
  return out;
}

std::vector<Check> deriv_rule_checks(const SchwartzSample& f, const SchwartzSample& g, int a, double tol) {
  const cplx s = cplx{0.0, f.q % 2 ? -1.0 : 1.0};  // (-1)^q i
  std::vector<Check> out;
  out.push_back(compare_samples("F(ν^a f) = (-1)^q i ∂F(f)/∂ν_a", ft(mul_generator(f, a)),
                                scaled(derivative(ft(f), a), s), tol, "odd-sector derivative of F(f)"));
  out.push_back(compare_samples("F̌(ν_a g) = (-1)^q i ∂F̌(g)/∂ν^a", ift(mul_generator(g, a)),
                                scaled(derivative(ift(g), a), s), tol, "odd-sector derivative of F̌(g)"));
  out.push_back(compare_samples("F(∂f/∂ν^a) = -(-1)^q i ν_a F(f)", ft(derivative(f, a)),
                                scaled(mul_generator(ft(f), a), -s), tol, "generator times F(f)"));
  out.push_back(compare_samples("F̌(∂g/∂ν_a) = -(-1)^q i ν^a F̌(g)", ift(derivative(g, a)),
                                scaled(mul_generator(ift(g), a), -s), tol, "generator times F̌(g)"));
  return out;
}

Check conv_theorem_check(const SchwartzSample& f, const SchwartzSample& g, double tol) {
  int par = f.parity();
  if (par < 0) throw DomainError("convolution theorem sign needs a homogeneous f");
  double sign = (f.q * par) % 2 ? -1.0 : 1.0;
  double pref = sign * std::pow(kTwoPi, 0.5 * f.p);
  return compare_samples("F(f∗g) = (-1)^{q|f|} (2π)^{p/2} F(f)F(g)", ft(convolve(f, g)),
                         scaled(product(ft(f), ft(g)), pref), tol, "product of transforms");
}

Check parseval_check(const SchwartzSample& f, const SchwartzSample& g, double tol) {
  require_compatible(f, g);
  int par = f.parity();
  if (par < 0) throw DomainError("Parseval sign needs a homogeneous f");
  const int q = f.q;
  cplx lhs = integrate_dual(product(ft(f), ft(g)));
  double sign = (q * par) % 2 ? -1.0 : 1.0;
  if ((q * (q - 1) / 2) % 2) sign = -sign;
  cplx ref = sign * std::pow(cplx{0.0, 1.0}, q) * integrate(product(f, reflect(g)));
  AlgebraPtr alg = GrassmannAlgebra::make(std::vector<std::string>{});
  return compare("Parseval: ∫F(f)F(g) = (-1)^{q|f|} i^q (-1)^{q(q-1)/2} ∫ f(v)g(-v)", GrassmannNumber(alg, lhs),
                 GrassmannNumber(alg, ref), tol, "prefactor times ∫ f(v) g(-v) on V");
}

FourierFamily fourier_family(int p, int q, const Grid& grid) {
  const std::size_t dim = std::size_t{1} << q;
  std::vector<std::function<cplx(double)>> fe(dim), fo(dim), gm(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const double k = static_cast<double>(i);
    const int w = std::popcount(static_cast<Mask>(i));
    gm[i] = [k, w](double x) {
      return (1.0 + 0.3 * w + cplx{0.5, 0.2} * x) * std::exp(-(0.6 + 0.1 * k) * x * x);
    };
    if (w % 2 == 0)
      fe[i] = [k](double x) { return (1.0 + 0.5 * k) * (1.0 + 0.4 * x - 0.2 * x * x) * std::exp(-0.8 * x * x); };
    else
      fo[i] = [k](double x) { return (cplx{0.7, -0.3} + k * 0.1 + x) * std::exp(-0.5 * x * x); };
  }
  return {SchwartzSample::from_functions(p, q, fe, grid), SchwartzSample::from_functions(p, q, fo, grid),
          SchwartzSample::from_functions(p, q, gm, grid)};
}

std::vector<Check> fourier_suite(int p, int q, double tol, const Grid& grid) {
  FourierFamily fam = fourier_family(p, q, grid);
  std::vector<Check> out;
  auto take = [&](std::vector<Check> v) {
    for (auto& c : v) out.push_back(std::move(c));
  };
  take(inversion_checks(fam.g, tol));
  for (int a = 0; a < q; ++a) take(deriv_rule_checks(fam.g, ft(fam.g), a, tol));
  out.push_back(conv_theorem_check(fam.f_even, fam.g, tol));
  out.push_back(parseval_check(fam.f_even, fam.g, tol));
  if (q > 0) {
    out.push_back(conv_theorem_check(fam.f_odd, fam.g, tol));
    out.push_back(parseval_check(fam.f_odd, fam.g, tol));
  }
  return out;
}

}  // namespace superbos
