#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "superbos/grassmann.hpp"

namespace superbos {

enum class QuadRule { GaussLaguerre, GaussHermite, CircleTrapezoid, HaarMC };

std::string rule_name(QuadRule r);
QuadRule parse_rule(const std::string& name);

struct QuadSpec {
  QuadRule rule = QuadRule::GaussLaguerre;
  std::vector<int> orders;
  long mc_samples = 1;
  std::uint64_t seed = 0;

  // orders[i], or the last entry when fewer are given.
  int order(std::size_t i) const;
  void validate() const;
};

struct GaussRule {
  std::vector<double> nodes, weights;
};

// Weight t^alpha e^{-t} on (0, ∞), alpha > -1.
GaussRule gauss_laguerre(int n, double alpha);
// Weight e^{-x²} on ℝ.
GaussRule gauss_hermite(int n);

// Value with a per-coefficient standard error; the error vector is empty for
// deterministic rules.
struct Estimate {
  GrassmannNumber value;
  std::vector<double> stderr_;
  bool stochastic() const { return !stderr_.empty(); }
  double max_stderr() const;
};

// z = R*R where R is the upper triangle of the Hermitian parameter matrix u
// (diagonal u_j > 0).
Eigen::MatrixXcd herm_param(const Eigen::MatrixXcd& u);
// Inverse of herm_param (Cholesky).
Eigen::MatrixXcd herm_unparam(const Eigen::MatrixXcd& z);
// Pullback of |det z|^{-p}|dz| in Lebesgue coordinates: 2^p ∏ u_j^{-2j+1}.
double herm_weight(int p, const Eigen::MatrixXcd& u);

// What the rule factors out of a cone integrand. z is first moved by z = G z' G*
// with G lower triangular and G*·herm(decay)·G = 1, then z' = R*R as in
// herm_param and t_j = u_j². The Laguerre weight in t_j is t_j^{alpha_j} e^{-t_j};
// for F = e^{-tr(decay z)} Δ_m(z) × polynomial the choice alpha_j = m_j - j is
// exact.
struct ConeHint {
  Eigen::MatrixXcd decay;      // empty means identity
  std::vector<double> alpha;   // per j; empty means all zero
};

// ∫_{Herm⁺(p)} F(z) |dz| / det(z)^p, where |dz| is the Euclidean density for
// the form tr(xy) (2^{p(p-1)/2} times coordinate Lebesgue measure).
// spec.orders = {laguerre, hermite}.
using ConeIntegrand = std::function<GrassmannNumber(const Eigen::MatrixXcd& z)>;
GrassmannNumber cone_integrate(int p, const ConeIntegrand& f, const QuadSpec& spec, const ConeHint& hint,
                               const AlgebraPtr& alg);

// Nodes e^{2πik/n} with weight 1/n.
std::vector<cplx> circle_nodes(int n);
GrassmannNumber u1_integrate(const std::function<GrassmannNumber(cplx w)>& f, int n_nodes, const AlgebraPtr& alg);

// Haar-distributed q×q unitary (QR of a complex Ginibre matrix, phases fixed so
// that R has a positive diagonal).
Eigen::MatrixXcd haar_sample(int q, std::mt19937_64& rng);

// Deterministic Monte Carlo driver: samples are grouped in fixed chunks, each
// chunk owns an RNG stream derived from (seed, chunk index), and chunk sums are
// combined pairwise in index order. The result does not depend on the number of
// worker threads.
using SampleFn = std::function<GrassmannNumber(std::mt19937_64& rng)>;
Estimate mc_integrate(const SampleFn& f, long samples, std::uint64_t seed, const AlgebraPtr& alg,
                      unsigned workers = 0);

// ∫_{U(q)} f(w) dw with normalised Haar measure.
Estimate uq_integrate_mc(int q, const std::function<GrassmannNumber(const Eigen::MatrixXcd& w)>& f,
                         const QuadSpec& spec, const AlgebraPtr& alg);

// ∫_{ℂ^d} F(a) ∏ dRe a_i dIm a_i for F ≈ e^{-a* H a} × (polynomial), H with a
// positive-definite Hermitian part. Gauss–Hermite after a ↦ R⁻¹b, H_herm = R*R.
GrassmannNumber gauss_flat_integrate(int d, const std::function<GrassmannNumber(const Eigen::VectorXcd& a)>& f,
                                     const Eigen::MatrixXcd& h, int order, const AlgebraPtr& alg);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace superbos
