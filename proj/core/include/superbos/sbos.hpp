#pragma once

#include <optional>

#include "superbos/report.hpp"
#include "superbos/riesz.hpp"

namespace superbos {

// Points of V = ℂ^{p|q×n} ⊕ ℂ^{n×p|q}. The algebra holds the external generators,
// then ξ_kj (q×n), then η_jk (n×q). The Berezin integral runs over pairs
// (ξ_kj, η_jk) with ∂/∂ξ_kj applied first.
struct VAlgebra {
  int p = 0, q = 0, n = 0;
  AlgebraPtr ext, full;
  std::vector<int> berezin_order;
  // a: rows (p|q), cols (n|0); the boson block is a0, the odd rows are ξ.
  SuperMatrix a(const Eigen::MatrixXcd& a0) const;
  // a': rows (n|0), cols (p|q); the boson block is a0*, the odd columns are η.
  SuperMatrix aprime(const Eigen::MatrixXcd& a0) const;
};
VAlgebra v_algebra(int p, int q, int n, const AlgebraPtr& ext);

// Q(v) = a a', a (p|q)×(p|q) supermatrix.
SuperMatrix q_map(const SuperMatrix& a, const SuperMatrix& aprime);

// Flat measure factor that turns coordinate Lebesgue measure ∏ dRe dIm into |dv₀|.
double flat_scale(int p, int n);

// ∫_V |Dv| f(Q(v)). f is evaluated with Y bound to Q(v); decay is the p×p matrix
// with f ≈ e^{-tr(decay·aa*)}×polynomial (empty means identity).
GrassmannNumber lhs_integral(int p, int q, int n, const SuperExpr& f, const AlgebraPtr& ext,
                             const Eigen::MatrixXcd& decay, int hermite_order);
// f = e^{-str(x·)}; x may carry external generators.
GrassmannNumber lhs_laplace(int p, int q, int n, const SuperMatrix& x, int hermite_order);
// √π^{np} Ber(x)^{-n}.
GrassmannNumber lhs_closed(int p, int q, int n, const SuperMatrix& x);

// ∫ |Dv| e^{-½ str(v²)} with v = [[0, a'], [a, 0]] of format (n+p|q), against √π^{np}.
Check gaussian_norm_check(int p, int q, int n, int hermite_order, double tol);

// √π^{np}/Γ_Ω(n𝟙); needs n >= p.
GammaValue sbos_constant(int p, int q, int n);

// Test function for the identity. Without f the Laplace kernel of x is used and
// the LHS is also checked against its closed form. x doubles as the decay hint.
struct SbosCase {
  int p = 0, q = 0, n = 0;
  std::optional<SuperMatrix> x;
  std::optional<SuperExpr> f;
  AlgebraPtr ext;
};
Report verify_identity(const SbosCase& c, const OmegaSpec& spec, int hermite_order, double tol);

}  // namespace superbos
