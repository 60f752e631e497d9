#include "superbos/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <mutex>
#include <thread>

#include "superbos/errors.hpp"

namespace superbos {

std::string rule_name(QuadRule r) {
  switch (r) {
    case QuadRule::GaussLaguerre: return "gauss-laguerre";
    case QuadRule::GaussHermite: return "gauss-hermite";
    case QuadRule::CircleTrapezoid: return "circle-trapezoid";
    case QuadRule::HaarMC: return "haar-mc";
  }
  return "?";
}

QuadRule parse_rule(const std::string& name) {
  for (QuadRule r : {QuadRule::GaussLaguerre, QuadRule::GaussHermite, QuadRule::CircleTrapezoid, QuadRule::HaarMC})
    if (rule_name(r) == name) return r;
  throw DomainError("unknown quadrature rule '" + name + "'");
}

int QuadSpec::order(std::size_t i) const {
  if (orders.empty()) throw DomainError("quadrature spec without orders");
  return orders[std::min(i, orders.size() - 1)];
}

void QuadSpec::validate() const {
  for (int o : orders)
    if (o < 1) throw DomainError("quadrature orders must be >= 1");
  if (mc_samples < 1) throw DomainError("mc_samples must be >= 1");
}

double Estimate::max_stderr() const {
  double m = 0.0;
  for (double s : stderr_) m = std::max(m, s);
  return m;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

namespace {

// Three-term recurrence of the orthonormal polynomials: diag[k], offdiag[k] =
// sqrt(β_k) for k ≥ 1 (offdiag[0] unused), mu0 = total mass.
struct Jacobi {
  std::vector<double> diag, off;
  double mu0;
};

// Returns p̃_n(x) and its derivative; fills the sum of p̃_k² for k < n.
void eval_orthonormal(const Jacobi& j, int n, double x, double& pn, double& dpn, double& sumsq) {
  double pm1 = 0.0, p0 = 1.0 / std::sqrt(j.mu0);
  double dm1 = 0.0, d0 = 0.0;
  sumsq = p0 * p0;
  for (int k = 0; k < n; ++k) {
    double bk = k > 0 ? j.off[static_cast<std::size_t>(k)] : 0.0;
    double bk1 = j.off[static_cast<std::size_t>(k + 1)];
    double p1 = ((x - j.diag[static_cast<std::size_t>(k)]) * p0 - bk * pm1) / bk1;
    double d1 = ((x - j.diag[static_cast<std::size_t>(k)]) * d0 + p0 - bk * dm1) / bk1;
    pm1 = p0;
    p0 = p1;
    dm1 = d0;
    d0 = d1;
    if (k + 1 < n) sumsq += p0 * p0;
  }
  pn = p0;
  dpn = d0;
}

GaussRule golub_welsch(int n, const Jacobi& j) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    t(k, k) = j.diag[static_cast<std::size_t>(k)];
    if (k + 1 < n) t(k, k + 1) = t(k + 1, k) = j.off[static_cast<std::size_t>(k + 1)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  GaussRule r;
  for (int k = 0; k < n; ++k) {
    double x = es.eigenvalues()(k);
    // Newton polish on p̃_n, then Christoffel weights (better relative accuracy
    // for the small tail weights than the eigenvector formula)
    double pn, dpn, s;
    for (int it = 0; it < 3; ++it) {
      eval_orthonormal(j, n, x, pn, dpn, s);
      if (dpn == 0.0) break;
      double step = pn / dpn;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    eval_orthonormal(j, n, x, pn, dpn, s);
    r.nodes.push_back(x);
    r.weights.push_back(1.0 / s);
  }
  return r;
}

}  // namespace

GaussRule gauss_laguerre(int n, double alpha) {
  if (n < 1) throw DomainError("Gauss-Laguerre order must be >= 1");
  if (!(alpha > -1.0)) throw DomainError("Gauss-Laguerre needs alpha > -1");
  Jacobi j;
  j.mu0 = std::tgamma(alpha + 1.0);
  for (int k = 0; k <= n; ++k) {
    j.diag.push_back(2.0 * k + alpha + 1.0);
    j.off.push_back(k > 0 ? std::sqrt(k * (k + alpha)) : 0.0);
  }
  return golub_welsch(n, j);
}

GaussRule gauss_hermite(int n) {
  if (n < 1) throw DomainError("Gauss-Hermite order must be >= 1");
  Jacobi j;
  j.mu0 = std::sqrt(std::numbers::pi);
  for (int k = 0; k <= n; ++k) {
    j.diag.push_back(0.0);
    j.off.push_back(k > 0 ? std::sqrt(k / 2.0) : 0.0);
  }
  return golub_welsch(n, j);
}

Eigen::MatrixXcd herm_param(const Eigen::MatrixXcd& u) {
  int p = static_cast<int>(u.rows());
  if (u.cols() != p) throw DomainError("herm_param: u must be square");
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(p, p);
  for (int j = 0; j < p; ++j) {
    if (!(u(j, j).real() > 0.0) || u(j, j).imag() != 0.0) throw DomainError("herm_param: u_j must be positive");
    for (int k = j; k < p; ++k) r(j, k) = u(j, k);
  }
  return r.adjoint() * r;
}

Eigen::MatrixXcd herm_unparam(const Eigen::MatrixXcd& z) {
  Eigen::LLT<Eigen::MatrixXcd> llt(z);
  if (llt.info() != Eigen::Success) throw DomainError("herm_unparam: z is not positive definite");
  Eigen::MatrixXcd r = llt.matrixU();
  Eigen::MatrixXcd u = r;
  for (int j = 0; j < u.rows(); ++j)
    for (int k = 0; k < j; ++k) u(j, k) = std::conj(r(k, j));
  return u;
}

double herm_weight(int p, const Eigen::MatrixXcd& u) {
  if (u.rows() != p || u.cols() != p) throw DomainError("herm_weight: dimension mismatch");
  double w = std::pow(2.0, p);
  for (int j = 1; j <= p; ++j) {
    double uj = u(j - 1, j - 1).real();
    if (!(uj > 0.0)) throw DomainError("herm_weight: u_j must be positive");
    w *= std::pow(uj, -2 * j + 1);
  }
  return w;
}

GrassmannNumber cone_integrate(int p, const ConeIntegrand& f, const QuadSpec& spec, const ConeHint& hint,
                               const AlgebraPtr& alg) {
  if (p < 0) throw DomainError("cone dimension must be >= 0");
  if (p == 0) return f(Eigen::MatrixXcd(0, 0));
  spec.validate();
  if (!hint.alpha.empty() && static_cast<int>(hint.alpha.size()) != p)
    throw DomainError("cone hint: alpha needs one entry per diagonal coordinate");

  Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(p, p);
  if (hint.decay.size() > 0) {
    if (hint.decay.rows() != p || hint.decay.cols() != p) throw DomainError("cone hint: decay has wrong size");
    Eigen::MatrixXcd h = 0.5 * (hint.decay + hint.decay.adjoint());
    // H = U*U with U lower triangular: Cholesky of the index-reversed matrix
    Eigen::MatrixXcd rev = h.colwise().reverse().rowwise().reverse();
    Eigen::LLT<Eigen::MatrixXcd> llt(rev);
    if (llt.info() != Eigen::Success) throw DomainError("cone decay is not positive definite (tube condition)");
    Eigen::MatrixXcd l = llt.matrixL();
    Eigen::MatrixXcd v = l.colwise().reverse().rowwise().reverse();  // upper, H = V V*
    Eigen::MatrixXcd u = v.adjoint();                                // lower, H = U* U
    g = u.triangularView<Eigen::Lower>().solve(Eigen::MatrixXcd::Identity(p, p));
  }

  std::vector<GaussRule> lag;
  for (int j = 0; j < p; ++j) {
    double a = hint.alpha.empty() ? 0.0 : hint.alpha[static_cast<std::size_t>(j)];
    lag.push_back(gauss_laguerre(spec.order(0), a));
  }
  int n_off = p * (p - 1);  // real dimensions of the strict upper triangle
  GaussRule her = gauss_hermite(spec.order(1));
  const double off_scale = std::pow(2.0, p * (p - 1) / 2);

  int dims = p + n_off;
  std::vector<int> idx(static_cast<std::size_t>(dims), 0);
  std::vector<int> size(static_cast<std::size_t>(dims));
  for (int d = 0; d < dims; ++d) size[static_cast<std::size_t>(d)] = d < p ? spec.order(0) : spec.order(1);

  GrassmannNumber total(alg);
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(p, p);
  for (;;) {
    double w = off_scale;
    for (int j = 0; j < p; ++j) {
      const GaussRule& gr = lag[static_cast<std::size_t>(j)];
      double t = gr.nodes[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
      double a = hint.alpha.empty() ? 0.0 : hint.alpha[static_cast<std::size_t>(j)];
      w *= gr.weights[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])] * std::pow(t, -(j + 1) - a) *
           std::exp(t);
      r(j, j) = std::sqrt(t);
    }
    int d = p;
    for (int j = 0; j < p; ++j)
      for (int k = j + 1; k < p; ++k) {
        double x = her.nodes[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])];
        double y = her.nodes[static_cast<std::size_t>(idx[static_cast<std::size_t>(d + 1)])];
        w *= her.weights[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])] *
             her.weights[static_cast<std::size_t>(idx[static_cast<std::size_t>(d + 1)])] * std::exp(x * x + y * y);
        r(j, k) = cplx(x, y);
        d += 2;
      }
    Eigen::MatrixXcd z = g * (r.adjoint() * r) * g.adjoint();
    z = 0.5 * (z + z.adjoint());
    GrassmannNumber v = f(z);
    v *= w;
    total += v;

    int pos = dims - 1;
    while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == size[static_cast<std::size_t>(pos)]) {
      idx[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return total;
}

std::vector<cplx> circle_nodes(int n) {
  if (n < 1) throw DomainError("circle rule needs at least one node");
  std::vector<cplx> out;
  for (int k = 0; k < n; ++k) out.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / n));
  return out;
}

GrassmannNumber u1_integrate(const std::function<GrassmannNumber(cplx w)>& f, int n_nodes, const AlgebraPtr& alg) {
  GrassmannNumber total(alg);
  for (cplx w : circle_nodes(n_nodes)) total += f(w);
  total *= 1.0 / n_nodes;
  return total;
}

Eigen::MatrixXcd haar_sample(int q, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, std::numbers::sqrt2 / 2.0);
  Eigen::MatrixXcd g(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      double re = nd(rng);
      double im = nd(rng);
      g(i, j) = cplx(re, im);
    }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd qm = qr.householderQ();
  Eigen::MatrixXcd rm = qr.matrixQR();
  for (int j = 0; j < q; ++j) {
    cplx d = rm(j, j);
    double a = std::abs(d);
    qm.col(j) *= (a > 0.0 ? d / a : cplx(1.0));
  }
  return qm;
}

namespace {

constexpr long kChunk = 4096;

// Per-coefficient running mean and sum of squared deviations.
struct Moments {
  long n = 0;
  std::vector<cplx> mean;
  std::vector<double> m2;
};

Moments merge(const Moments& a, const Moments& b) {
  if (a.n == 0) return b;
  if (b.n == 0) return a;
  Moments r;
  r.n = a.n + b.n;
  r.mean.resize(a.mean.size());
  r.m2.resize(a.m2.size());
  double fb = static_cast<double>(b.n) / static_cast<double>(r.n);
  double cross = static_cast<double>(a.n) * static_cast<double>(b.n) / static_cast<double>(r.n);
  for (std::size_t k = 0; k < a.mean.size(); ++k) {
    cplx delta = b.mean[k] - a.mean[k];
    r.mean[k] = a.mean[k] + delta * fb;
    r.m2[k] = a.m2[k] + b.m2[k] + std::norm(delta) * cross;
  }
  return r;
}

Moments pairwise(std::vector<Moments>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return v[lo];
  std::size_t mid = lo + (hi - lo) / 2;
  return merge(pairwise(v, lo, mid), pairwise(v, mid, hi));
}

}  // namespace

Estimate mc_integrate(const SampleFn& f, long samples, std::uint64_t seed, const AlgebraPtr& alg, unsigned workers) {
  if (samples < 1) throw DomainError("mc_samples must be >= 1");
  const std::size_t dim = alg->dim();
  const long n_chunks = (samples + kChunk - 1) / kChunk;
  std::vector<Moments> chunks(static_cast<std::size_t>(n_chunks));

  auto run_chunk = [&](long c) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(c) + 1)));
    long begin = c * kChunk, end = std::min(samples, begin + kChunk);
    Moments m;
    m.mean.assign(dim, cplx{});
    m.m2.assign(dim, 0.0);
    for (long s = begin; s < end; ++s) {
      GrassmannNumber x = f(rng);
      const auto& xc = x.coefficients();
      ++m.n;
      for (std::size_t k = 0; k < dim; ++k) {
        cplx d = xc[k] - m.mean[k];
        m.mean[k] += d / static_cast<double>(m.n);
        m.m2[k] += std::real(std::conj(d) * (xc[k] - m.mean[k]));
      }
    }
    chunks[static_cast<std::size_t>(c)] = std::move(m);
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<long>(workers, n_chunks));
  if (workers <= 1) {
    for (long c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        try {
          for (long c; (c = next.fetch_add(1)) < n_chunks;) run_chunk(c);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
          next = n_chunks;
        }
      });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
  }

  Moments all = pairwise(chunks, 0, chunks.size());
  Estimate e;
  e.value = GrassmannNumber::from_coefficients(alg, all.mean);
  e.stderr_.resize(dim);
  for (std::size_t k = 0; k < dim; ++k)
    e.stderr_[k] = all.n > 1 ? std::sqrt(all.m2[k] / static_cast<double>(all.n - 1) / static_cast<double>(all.n))
                             : std::numeric_limits<double>::infinity();
  return e;
}

Estimate uq_integrate_mc(int q, const std::function<GrassmannNumber(const Eigen::MatrixXcd& w)>& f,
                         const QuadSpec& spec, const AlgebraPtr& alg) {
  if (q < 1) throw DomainError("U(q) needs q >= 1");
  spec.validate();
  return mc_integrate([&](std::mt19937_64& rng) { return f(haar_sample(q, rng)); }, spec.mc_samples, spec.seed,
                      alg);
}

GrassmannNumber gauss_flat_integrate(int d, const std::function<GrassmannNumber(const Eigen::VectorXcd& a)>& f,
                                     const Eigen::MatrixXcd& h, int order, const AlgebraPtr& alg) {
  if (d < 0) throw DomainError("flat dimension must be >= 0");
  if (d == 0) return f(Eigen::VectorXcd(0));
  if (h.rows() != d || h.cols() != d) throw DomainError("flat quadratic form has wrong size");
  Eigen::MatrixXcd hh = 0.5 * (h + h.adjoint());
  Eigen::LLT<Eigen::MatrixXcd> llt(hh);
  if (llt.info() != Eigen::Success) throw DomainError("quadratic form is not positive definite");
  Eigen::MatrixXcd r = llt.matrixU();
  Eigen::MatrixXcd rinv = r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXcd::Identity(d, d));
  double jac = 1.0 / std::norm(r.diagonal().prod());

  GaussRule gh = gauss_hermite(order);
  int dims = 2 * d;
  std::vector<int> idx(static_cast<std::size_t>(dims), 0);
  GrassmannNumber total(alg);
  Eigen::VectorXcd b(d);
  for (;;) {
    double w = jac;
    for (int i = 0; i < d; ++i) {
      double x = gh.nodes[static_cast<std::size_t>(idx[static_cast<std::size_t>(2 * i)])];
      double y = gh.nodes[static_cast<std::size_t>(idx[static_cast<std::size_t>(2 * i + 1)])];
      w *= gh.weights[static_cast<std::size_t>(idx[static_cast<std::size_t>(2 * i)])] *
           gh.weights[static_cast<std::size_t>(idx[static_cast<std::size_t>(2 * i + 1)])] * std::exp(x * x + y * y);
      b(i) = cplx(x, y);
    }
    GrassmannNumber v = f(rinv * b);
    v *= w;
    total += v;
    int pos = dims - 1;
    while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == order) {
      idx[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return total;
}

}  // namespace superbos
