#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "superbos/grassmann.hpp"
#include "superbos/report.hpp"

namespace superbos {

// Uniform grid x_k = (k - (n-1)/2)·h, symmetric about 0 (n odd).
struct Grid {
  int n = 241;
  double h = 0.1;
  double x(int k) const { return (k - (n - 1) / 2) * h; }
  void validate() const;
};

// Superfunction on a cs space of dimension (p|q), p ≤ 1, q ≤ 2. comp[I] is the
// coefficient of the odd monomial ν^I (ascending order), sampled on the grid when
// p = 1 and a single value when p = 0. The same container serves V and V*; on V*
// the monomials are in the dual generators ν_a.
struct SchwartzSample {
  int p = 0, q = 0;
  Grid grid;
  std::vector<Eigen::VectorXcd> comp;

  static SchwartzSample zero(int p, int q, const Grid& grid = {});
  // comp[I](x) = fs[I](x); missing entries are zero. For p = 0 the functions are
  // evaluated at 0.
  static SchwartzSample from_functions(int p, int q, const std::vector<std::function<cplx(double)>>& fs,
                                       const Grid& grid = {});

  int samples() const { return p == 1 ? grid.n : 1; }
  // 0 or 1 for homogeneous functions, -1 when mixed; zero counts as even.
  int parity() const;
  bool is_zero() const;
  // Largest |value| over the whole grid and all components.
  double max_abs() const;
  // Grassmann number in q generators with the components at grid index k.
  GrassmannNumber at(int k, const AlgebraPtr& alg) const;
};

// Component samples with |value| > rel·max in the outer 5% of the grid mean the
// function does not fit the grid.
void check_aliasing(const SchwartzSample& f, double rel = 1e-10);

// F(f) = (2π)^{-p/2} ∫ |Dv| e^{-i⟨·,v⟩} f(v), with ⟨v*, v⟩ = ξx + Σ_a ν_a ν^a and
// ∫|Dv| = |dx| ∂/∂ν^q ⋯ ∂/∂ν^1.
SchwartzSample ft(const SchwartzSample& f);
// Cotransform with prefactor c·(2π)^{-p/2}, integrand e^{+i⟨v*,·⟩}, integrated
// with ∫|Dv*| = (-1)^q |dξ| ∂/∂ν_q ⋯ ∂/∂ν_1 (the sign comes from the dual basis,
// u_a(u^b) = (-1)^{|u_a|}δ_ab). With that measure c = (-i)^q (-1)^{q(q+1)/2}
// inverts ft.
cplx cotransform_prefactor(int q);
SchwartzSample ift(const SchwartzSample& g, cplx prefactor);
SchwartzSample ift(const SchwartzSample& g);

// Left multiplication by the generator a (0-based) and left derivative ∂/∂ν_a.
SchwartzSample mul_generator(const SchwartzSample& f, int a);
SchwartzSample derivative(const SchwartzSample& f, int a);
// Pointwise (Grassmann) product.
SchwartzSample product(const SchwartzSample& f, const SchwartzSample& g);
// f(-v): x ↦ -x and ν ↦ -ν.
SchwartzSample reflect(const SchwartzSample& f);
SchwartzSample scaled(SchwartzSample f, cplx c);
// ∫ |Dv| f on V, and ∫ |Dv*| f for f on V*.
cplx integrate(const SchwartzSample& f);
cplx integrate_dual(const SchwartzSample& f);

// (f∗g)(x) = (-1)^q ∫ |Dv| f(v) g(x-v), the sign making ∫(f∗g)h agree with
// ∫∫ f(v₁)g(v₂)h(v₁+v₂).
SchwartzSample convolve(const SchwartzSample& f, const SchwartzSample& g);

// Max-over-grid comparison. Values shown in the check are taken at probe_index.
Check compare_samples(std::string label, const SchwartzSample& a, const SchwartzSample& b, double tol,
                      std::string oracle);

// Identity reports. tol applies to every component over the whole grid.
std::vector<Check> inversion_checks(const SchwartzSample& f, double tol);
std::vector<Check> deriv_rule_checks(const SchwartzSample& f, const SchwartzSample& g, int a, double tol);
Check conv_theorem_check(const SchwartzSample& f, const SchwartzSample& g, double tol);
// ∫|Dv*| F(f)F(g) against (-1)^{q|f|} i^q (-1)^{q(q-1)/2} ∫|Dv| f(v)g(-v).
Check parseval_check(const SchwartzSample& f, const SchwartzSample& g, double tol);

// Fixed Gaussian×polynomial test family: an even f, an odd f (q >= 1) and a mixed g.
struct FourierFamily {
  SchwartzSample f_even, f_odd, g;
};
FourierFamily fourier_family(int p, int q, const Grid& grid = {});
// All identities above on the test family.
std::vector<Check> fourier_suite(int p, int q, double tol, const Grid& grid = {});

}  // namespace superbos
