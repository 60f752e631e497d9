#include "superbos/riesz.hpp"

#include <cmath>
#include <numbers>

#include "superbos/errors.hpp"
#include "superbos/special.hpp"

namespace superbos {

namespace {

AlgebraPtr empty_algebra() { return GrassmannAlgebra::make(std::vector<std::string>{}); }

std::string idx(int i, int j) { return std::to_string(i + 1) + std::to_string(j + 1); }

cplx gaussian_c(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  double re = n(rng);
  return {re, n(rng)};
}

// Random odd element: Σ c_g θ_g over all generators of ext.
GrassmannNumber random_odd(const AlgebraPtr& ext, std::mt19937_64& rng) {
  GrassmannNumber r(ext);
  for (int g = 0; g < ext->size(); ++g) r += GrassmannNumber::generator(ext, g, gaussian_c(rng));
  return r;
}

SuperMatrix to_alg(const SuperMatrix& a, const AlgebraPtr& alg) {
  if (a.algebra()->same_as(*alg)) return a;
  return embed(a, alg);
}

ConeHint gamma_hint(const MultiIndex& m, const Eigen::MatrixXcd& decay) {
  ConeHint h;
  h.decay = decay;
  for (int j = 0; j < m.p(); ++j) h.alpha.push_back(m[j] - (j + 1));
  return h;
}

}  // namespace

void OmegaSpec::validate() const {
  if (p < 0 || q < 0 || p + q < 1) throw DomainError("Ω needs p, q >= 0 and p+q >= 1");
  if (p > 0) {
    cone.validate();
    if (cone.rule != QuadRule::GaussLaguerre) throw DomainError("cone sector needs the gauss-laguerre rule");
  }
  if (q > 0) {
    unitary.validate();
    if (unitary.rule == QuadRule::CircleTrapezoid) {
      if (q != 1) throw DomainError("circle-trapezoid only covers U(1); use haar-mc for q >= 2");
    } else if (unitary.rule != QuadRule::HaarMC) {
      throw DomainError("unitary sector needs circle-trapezoid or haar-mc");
    }
  }
  if (2 * p * q > GrassmannAlgebra::kMaxGenerators) throw DomainError("too many odd coordinates for dense storage");
}

SuperMatrix OmegaAlgebra::point(const Eigen::MatrixXcd& z, const Eigen::MatrixXcd& w) const {
  SuperMatrix y(full, {p, q}, {p, q});
  const int off = ext->size();
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) y(i, j) = GrassmannNumber(full, z(i, j));
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) y(p + a, p + b) = GrassmannNumber(full, w(a, b));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) {
      y(i, p + j) = GrassmannNumber::generator(full, off + i * q + j);
      y(p + j, i) = GrassmannNumber::generator(full, off + p * q + j * p + i);
    }
  return y;
}

OmegaAlgebra omega_algebra(int p, int q, const AlgebraPtr& ext) {
  OmegaAlgebra oa;
  oa.p = p;
  oa.q = q;
  oa.ext = ext ? ext : empty_algebra();
  std::vector<std::string> labels = oa.ext->labels();
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) labels.push_back("ζ" + idx(i, j));
  for (int j = 0; j < q; ++j)
    for (int i = 0; i < p; ++i) labels.push_back("ω" + idx(j, i));
  oa.full = GrassmannAlgebra::make(labels);
  const int off = oa.ext->size();
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) {
      oa.berezin_order.push_back(off + p * q + j * p + i);  // ω_ji
      oa.berezin_order.push_back(off + i * q + j);          // ζ_ij
    }
  return oa;
}

Estimate omega_integrate(const OmegaSpec& spec, const OmegaAlgebra& oa, const OmegaIntegrand& f,
                         const ConeHint& hint) {
  spec.validate();
  if (spec.p != oa.p || spec.q != oa.q) throw DomainError("Ω spec and algebra disagree on (p|q)");
  auto inner = [&](const Eigen::MatrixXcd& w) {
    GrassmannNumber acc = cone_integrate(
        oa.p,
        [&](const Eigen::MatrixXcd& z) {
          SuperMatrix y = oa.point(z, w);
          return f(y) * vrho(y);
        },
        spec.cone, hint, oa.full);
    return embed(berezin(acc, oa.berezin_order), oa.ext);
  };
  Estimate e;
  if (oa.q == 0) {
    e.value = inner(Eigen::MatrixXcd(0, 0));
  } else if (spec.unitary.rule == QuadRule::CircleTrapezoid) {
    e.value = u1_integrate(
        [&](cplx w) { return inner(Eigen::MatrixXcd::Constant(1, 1, w)); }, spec.unitary.order(0), oa.ext);
  } else {
    e = uq_integrate_mc(oa.q, inner, spec.unitary, oa.ext);
  }
  return e;
}

GammaValue gamma_closed(int p, int q, const MultiIndex& m) {
  if (p < 0 || q < 0 || p + q < 1) throw DomainError("gamma needs p+q >= 1");
  if (m.p() != p || m.q() != q) throw DomainError("multi-index does not match (p|q)");
  GammaValue g;
  double log_abs = 0.5 * p * (p - 1) * std::log(2.0 * std::numbers::pi);
  int sign = 1;
  for (int j = 1; j <= p; ++j) {
    double a = m[j - 1] - j + 1;
    if (is_nonpositive_integer(a)) {
      g.is_pole = true;
      continue;
    }
    SignedLog s = lgamma_signed(a);
    log_abs += s.log_abs;
    sign *= s.sign;
  }
  if (g.is_pole) {
    g.value = std::numeric_limits<double>::quiet_NaN();
    g.log_abs = std::numeric_limits<double>::infinity();
    g.sign = 0;
    return g;
  }
  double ferm = 1.0;
  for (int k = 1; k <= q; ++k) {
    double mk = m[p + k - 1];
    ferm *= std::tgamma(q - k + 1.0) * rgamma(mk + q - k + 1) * pochhammer(mk - p + k, p);
  }
  if (ferm == 0.0) {
    g.is_zero = true;
    g.value = 0.0;
    g.log_abs = -std::numeric_limits<double>::infinity();
    g.sign = 0;
    return g;
  }
  log_abs += std::log(std::abs(ferm));
  if (ferm < 0) sign = -sign;
  g.log_abs = log_abs;
  g.sign = sign;
  g.value = sign * std::exp(log_abs);
  return g;
}

double fermionic_gamma_factor(int p, long m) {
  if (p < 0) throw DomainError("p must be >= 0");
  if (2 * p > GrassmannAlgebra::kMaxGenerators) throw DomainError("too many generators");
  std::vector<std::string> labels;
  for (int j = 0; j < p; ++j) labels.push_back("ζ" + std::to_string(j + 1));
  for (int j = 0; j < p; ++j) labels.push_back("ω" + std::to_string(j + 1));
  AlgebraPtr alg = GrassmannAlgebra::make(labels);
  GrassmannNumber s(alg, 1.0);
  std::vector<int> order;
  for (int j = 0; j < p; ++j) {
    s -= GrassmannNumber::generator(alg, p + j) * GrassmannNumber::generator(alg, j);
    order.push_back(p + j);
    order.push_back(j);
  }
  return berezin(gpow(s, -m), order).body().real();
}

double gamma_fermionic_exact(int p, int q, const MultiIndex& m) {
  if (m.p() != p || m.q() != q) throw DomainError("multi-index does not match (p|q)");
  if (p == 0 || q == 0) return 1.0;
  OmegaAlgebra oa = omega_algebra(p, q, nullptr);
  SuperMatrix y = oa.point(Eigen::MatrixXcd::Identity(p, p), Eigen::MatrixXcd::Identity(q, q));
  std::vector<double> shifted = m.values();
  for (int j = 0; j < p; ++j) shifted[j] += q;
  for (int k = 0; k < q; ++k) shifted[p + k] += q - p;
  return berezin(delta_m(y, MultiIndex(p, shifted)), oa.berezin_order).body().real();
}

double gamma_fermionic_closed(int p, int q, const MultiIndex& m) {
  if (m.p() != p || m.q() != q) throw DomainError("multi-index does not match (p|q)");
  double r = 1.0;
  for (int k = 1; k <= q; ++k) r *= pochhammer(m[p + k - 1] - p + k, p);
  return r;
}

void require_dominant(const std::vector<long>& n) {
  if (n.empty()) throw DomainError("weight must have q >= 1 entries");
  for (std::size_t k = 1; k < n.size(); ++k)
    if (n[k - 1] < n[k]) throw DomainError("weight is not dominant (needs n1 >= ... >= nq)");
}

double q_norm(const std::vector<long>& n) {
  const long q = static_cast<long>(n.size());
  double r = 1.0;
  for (long k = 1; k <= q; ++k) {
    double a = static_cast<double>(n[k - 1] + q - k + 1);
    if (is_nonpositive_integer(a)) throw DomainError("q_n has a pole at this weight");
    r *= std::tgamma(a) / std::tgamma(static_cast<double>(q - k + 1));
  }
  return r;
}

double inv_q_norm(const std::vector<long>& n) {
  const long q = static_cast<long>(n.size());
  double r = 1.0;
  for (long k = 1; k <= q; ++k) r *= std::tgamma(static_cast<double>(q - k + 1)) * rgamma(double(n[k - 1] + q - k + 1));
  return r;
}

long weyl_dim(const std::vector<long>& n) {
  require_dominant(n);
  const long q = static_cast<long>(n.size());
  // numerator and denominator stay exact in double for any reasonable weight
  double num = 1.0, den = 1.0;
  for (long i = 0; i < q; ++i)
    for (long j = i + 1; j < q; ++j) {
      num *= static_cast<double>(n[i] - n[j] + j - i);
      den *= static_cast<double>(j - i);
    }
  return std::lround(num / den);
}

cplx schur_char(const std::vector<long>& n, const std::vector<cplx>& x) {
  require_dominant(n);
  const int q = static_cast<int>(n.size());
  if (static_cast<int>(x.size()) != q) throw DomainError("need one eigenvalue per weight entry");
  const long shift = n.back();
  std::vector<long> lam(n.size());
  for (int i = 0; i < q; ++i) lam[i] = n[i] - shift;
  const long kmax = lam[0] + q;
  // complete homogeneous symmetric polynomials h_0..h_kmax
  std::vector<cplx> h(static_cast<std::size_t>(kmax + 1), 0.0);
  h[0] = 1.0;
  for (int r = 0; r < q; ++r)
    for (long k = 1; k <= kmax; ++k) h[k] += x[r] * h[k - 1];
  Eigen::MatrixXcd jt(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      long k = lam[i] - i + j;
      jt(i, j) = (k < 0 || k > kmax) ? cplx{} : h[k];
    }
  cplx det = 1.0;
  for (const auto& v : x) det *= v;
  return jt.determinant() * std::pow(det, static_cast<double>(shift));
}

Estimate unitary_sector_integral(int q, const std::vector<long>& m2, const QuadSpec& spec) {
  if (q < 1 || static_cast<int>(m2.size()) != q) throw DomainError("need q >= 1 exponents");
  for (int k = 1; k < q; ++k)
    if (m2[k] != m2[0])
      throw DomainError("q >= 2 needs equal exponents; unequal ones give infinite Monte Carlo variance");
  AlgebraPtr alg = empty_algebra();
  auto f = [&](const Eigen::MatrixXcd& w) {
    cplx v = std::exp(w.trace());
    for (int k = 1; k <= q; ++k) {
      long e = k < q ? m2[k - 1] - m2[k] : m2[q - 1];
      if (e != 0) v *= std::pow(w.topLeftCorner(k, k).determinant(), -static_cast<double>(e));
    }
    return GrassmannNumber(alg, v);
  };
  Estimate e;
  if (spec.rule == QuadRule::CircleTrapezoid) {
    if (q != 1) throw DomainError("circle-trapezoid only covers U(1)");
    e.value = u1_integrate([&](cplx w) { return f(Eigen::MatrixXcd::Constant(1, 1, w)); }, spec.order(0), alg);
  } else if (spec.rule == QuadRule::HaarMC) {
    e = uq_integrate_mc(q, f, spec, alg);
  } else {
    throw DomainError("unitary sector needs circle-trapezoid or haar-mc");
  }
  return e;
}

Estimate riesz_T(const OmegaSpec& spec, int n, const SuperExpr& f, const AlgebraPtr& ext, const ConeHint& hint) {
  if (n < spec.p) throw DomainError("T_n needs n >= p for convergence");
  OmegaAlgebra oa = omega_algebra(spec.p, spec.q, ext);
  return omega_integrate(
      spec, oa,
      [&](const SuperMatrix& y) {
        Bindings b{oa.full, {{"Y", y}}};
        return gpow(berezinian(y), n) * f.eval_scalar(b);
      },
      hint);
}

void require_gamma_domain(int p, int q, const MultiIndex& m, const OmegaSpec& spec) {
  if (m.p() != p || m.q() != q) throw DomainError("multi-index does not match (p|q)");
  for (int j = 1; j <= p; ++j)
    if (!(m[j - 1] > j - 1)) throw DomainError("integral diverges: needs m_j > j-1 for j <= p");
  if (q >= 2 && spec.unitary.rule == QuadRule::HaarMC)
    for (int k = 1; k < q; ++k)
      if (m[p + k] != m[p])
        throw DomainError("q >= 2 numeric checks need equal fermionic exponents (bounded Monte Carlo integrand)");
}

Estimate gamma_numeric(const OmegaSpec& spec, const MultiIndex& m) {
  require_gamma_domain(spec.p, spec.q, m, spec);
  OmegaAlgebra oa = omega_algebra(spec.p, spec.q, nullptr);
  return omega_integrate(
      spec, oa, [&](const SuperMatrix& y) { return gexp(-supertrace(y)) * delta_m(y, m); },
      gamma_hint(m, Eigen::MatrixXcd()));
}

Estimate laplace_conical(const OmegaSpec& spec, const MultiIndex& m, const SuperMatrix& x) {
  require_gamma_domain(spec.p, spec.q, m, spec);
  if (x.rows() != Format{spec.p, spec.q} || x.cols() != Format{spec.p, spec.q})
    throw DomainError("x must be a square (p|q) supermatrix");
  x.require_even("laplace_conical");
  SuperMatrix xinv = inverse(x);
  OmegaAlgebra oa = omega_algebra(spec.p, spec.q, x.algebra());
  SuperMatrix xe = embed(xinv, oa.full);
  Eigen::MatrixXcd decay = xinv.body().topLeftCorner(spec.p, spec.p);
  return omega_integrate(
      spec, oa, [&](const SuperMatrix& y) { return gexp(-supertrace(xe * y)) * delta_m(y, m); },
      gamma_hint(m, decay));
}

HFamily parse_family(const std::string& s) {
  if (s == "odd-lower") return HFamily::OddLower;
  if (s == "odd-upper") return HFamily::OddUpper;
  if (s == "block") return HFamily::Block;
  throw DomainError("unknown transformation family '" + s + "' (odd-lower, odd-upper, block)");
}

std::string family_name(HFamily f) {
  switch (f) {
    case HFamily::OddLower: return "odd-lower";
    case HFamily::OddUpper: return "odd-upper";
    case HFamily::Block: return "block";
  }
  return "?";
}

SuperMatrix HTransform::apply(const SuperMatrix& z) const {
  const AlgebraPtr& alg = z.algebra();
  return to_alg(a, alg) * z * to_alg(dm, alg);
}

HTransform random_transform(HFamily family, int p, int q, const AlgebraPtr& ext, std::mt19937_64& rng) {
  if (!ext) throw DomainError("transformations need an external algebra");
  HTransform h;
  h.family = family;
  Format f{p, q};
  h.a = SuperMatrix::identity(ext, f);
  h.dm = SuperMatrix::identity(ext, f);
  switch (family) {
    case HFamily::OddLower:
      if (ext->size() == 0) throw DomainError("odd families need external odd generators");
      for (int j = 0; j < q; ++j)
        for (int i = 0; i < p; ++i) {
          h.a(p + j, i) = random_odd(ext, rng);
          h.dm(i, p + j) = random_odd(ext, rng);
        }
      break;
    case HFamily::OddUpper:
      if (ext->size() == 0) throw DomainError("odd families need external odd generators");
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j) {
          h.a(i, p + j) = random_odd(ext, rng);
          h.dm(p + j, i) = random_odd(ext, rng);
        }
      break;
    case HFamily::Block: {
      std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
      Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(p, p);
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) g(i, j) += 0.3 * gaussian_c(rng);
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
          h.a(i, j) = GrassmannNumber(ext, g(i, j));
          h.dm(i, j) = GrassmannNumber(ext, std::conj(g(j, i)));
        }
      for (int k = 0; k < q; ++k) {
        h.a(p + k, p + k) = GrassmannNumber(ext, std::polar(1.0, phase(rng)));
        h.dm(p + k, p + k) = GrassmannNumber(ext, std::polar(1.0, phase(rng)));
      }
      break;
    }
  }
  return h;
}

Eigen::MatrixXcd transformed_decay(const HTransform& h, const Eigen::MatrixXcd& decay) {
  if (h.family != HFamily::Block) return decay;
  const int p = h.a.rows().even;
  Eigen::MatrixXcd g = h.a.body().topLeftCorner(p, p);
  Eigen::MatrixXcd d = decay.size() > 0 ? decay : Eigen::MatrixXcd::Identity(p, p);
  return g.adjoint() * d * g;
}

Check invariance_check(const OmegaSpec& spec, const HTransform& h, const SuperExpr& f, const AlgebraPtr& ext,
                       const ConeHint& hint, double tol) {
  OmegaAlgebra oa = omega_algebra(spec.p, spec.q, ext);
  auto side = [&](bool moved, const ConeHint& hh) {
    return omega_integrate(
        spec, oa,
        [&](const SuperMatrix& y) {
          Bindings b{oa.full, {{"Y", moved ? h.apply(y) : y}}};
          return f.eval_scalar(b);
        },
        hh);
  };
  ConeHint moved_hint = hint;
  moved_hint.decay = transformed_decay(h, hint.decay);
  Estimate lhs = side(true, moved_hint);
  Estimate rhs = side(false, hint);
  std::string label = "invariance " + family_name(h.family);
  if (lhs.stochastic()) {
    std::vector<double> se(lhs.stderr_.size());
    for (std::size_t k = 0; k < se.size(); ++k) se[k] = std::hypot(lhs.stderr_[k], rhs.stderr_[k]);
    return compare_mc(label, lhs.value, se, rhs.value, tol, "untransformed integral");
  }
  return compare(label, lhs.value, rhs.value, tol, "untransformed integral");
}

Check shift_check(ShiftDomain domain, const SuperExpr& f, const GrassmannNumber& n, const QuadSpec& spec,
                  const ConeHint& hint, double tol) {
  if (!n.valid()) throw DomainError("shift needs a Grassmann value");
  if (!n.is_even()) throw DomainError("shift must be even");
  if (std::abs(n.body()) != 0.0) throw DomainError("shift must be nilpotent (zero body)");
  const AlgebraPtr& alg = n.algebra();
  const char* var = domain == ShiftDomain::Unitary ? "w" : "z";
  auto fx = [&](const GrassmannNumber& x) {
    Bindings b{alg, {{var, x}}};
    return f.eval_scalar(b);
  };
  GrassmannNumber lhs, rhs;
  if (domain == ShiftDomain::Unitary) {
    if (spec.rule != QuadRule::CircleTrapezoid) throw DomainError("U(1) shift check uses circle-trapezoid");
    int nodes = spec.order(0);
    lhs = u1_integrate([&](cplx w) { return fx(GrassmannNumber(alg, w) + n); }, nodes, alg);
    rhs = u1_integrate(
        [&](cplx w) {
          GrassmannNumber x(alg, w);
          return fx(x) * x * ginv(x - n);
        },
        nodes, alg);
  } else {
    if (spec.rule != QuadRule::GaussLaguerre) throw DomainError("Herm⁺(1) shift check uses gauss-laguerre");
    lhs = cone_integrate(
        1, [&](const Eigen::MatrixXcd& z) { return fx(GrassmannNumber(alg, z(0, 0)) + n); }, spec, hint, alg);
    rhs = cone_integrate(
        1,
        [&](const Eigen::MatrixXcd& z) {
          GrassmannNumber x(alg, z(0, 0));
          return fx(x) * x * ginv(x - n);
        },
        spec, hint, alg);
  }
  std::string label = domain == ShiftDomain::Unitary ? "shift U(1)" : "shift Herm+(1)";
  return compare(label, lhs, rhs, tol, "Jacobian-weighted unshifted integral");
}

}  // namespace superbos
