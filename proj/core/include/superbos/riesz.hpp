#pragma once

#include <functional>
#include <random>
#include <vector>

#include "superbos/quadrature.hpp"
#include "superbos/report.hpp"
#include "superbos/superexpr.hpp"
#include "superbos/supermatrix.hpp"

namespace superbos {

// Quadrature for Ω = Herm⁺(p) × U(q) plus odd directions. The cone spec uses
// orders {laguerre, hermite}; the unitary spec is circle-trapezoid (q = 1) or
// haar-mc.
struct OmegaSpec {
  int p = 0, q = 0;
  QuadSpec cone{QuadRule::GaussLaguerre, {8, 8}, 1, 0};
  QuadSpec unitary{QuadRule::CircleTrapezoid, {32}, 1, 0};
  void validate() const;
};

// Algebra for points of Ω: the caller's external generators, then ζ_ij (p×q),
// then ω_ji (q×p). D(ζ,ω) is the product over pairs (ζ_ij, ω_ji) with ∂/∂ω_ji
// applied before ∂/∂ζ_ij; this makes Γ_Ω(1,1) = +1.
struct OmegaAlgebra {
  int p = 0, q = 0;
  AlgebraPtr ext, full;
  std::vector<int> berezin_order;
  // Y = [[z, ζ], [ω, w]] in the full algebra.
  SuperMatrix point(const Eigen::MatrixXcd& z, const Eigen::MatrixXcd& w) const;
};
OmegaAlgebra omega_algebra(int p, int q, const AlgebraPtr& ext);

// ∫_Ω |Dy| F(y), with |Dy| = |dz||dw| |det z|^{-p} D(ζ,ω) ϱ(Z). F receives the
// point in the full algebra; the result lives in the external algebra.
using OmegaIntegrand = std::function<GrassmannNumber(const SuperMatrix& y)>;
Estimate omega_integrate(const OmegaSpec& spec, const OmegaAlgebra& oa, const OmegaIntegrand& f,
                         const ConeHint& hint);

struct GammaValue {
  double value = 0.0;  // NaN at a pole
  bool is_pole = false;
  bool is_zero = false;
  double log_abs = 0.0;  // log|value| when finite and nonzero
  int sign = 1;
};

// (2π)^{p(p-1)/2} ∏_j Γ(m_j-j+1) × ∏_k Γ(q-k+1)/Γ(m_{p+k}+q-k+1) · Γ(m_{p+k}+k)/Γ(m_{p+k}-p+k).
// A pole of a boson factor wins over a zero of a fermion factor.
GammaValue gamma_closed(int p, int q, const MultiIndex& m);

// ∫ D(ζ,ω) (1-ωζ)^{-m} over p×1 and 1×p odd matrices, by brute force.
double fermionic_gamma_factor(int p, long m);
// ψ(1) = ∫ D(ζ,ω) Δ_{m+q1'+(q-p)1''}([[1,ζ],[ω,1]]) over 2pq generators.
double gamma_fermionic_exact(int p, int q, const MultiIndex& m);
// ∏_k Γ(m_{p+k}+k)/Γ(m_{p+k}-p+k) as a rising factorial.
double gamma_fermionic_closed(int p, int q, const MultiIndex& m);

// q_n = ∏_k Γ(n_k+q-k+1)/Γ(q-k+1); inv_q_norm handles poles via 1/Γ.
double q_norm(const std::vector<long>& n);
double inv_q_norm(const std::vector<long>& n);
// Dimension of the U(q)-module of highest weight n (n non-increasing).
long weyl_dim(const std::vector<long>& n);
// Character of that module at the given eigenvalues (Jacobi–Trudi after shifting
// n by its last entry).
cplx schur_char(const std::vector<long>& n, const std::vector<cplx>& eigenvalues);
void require_dominant(const std::vector<long>& n);

// ∫_{U(q)} e^{tr w} Δ_{m''}(w)^{-1} dw. q ≥ 2 needs all entries equal.
Estimate unitary_sector_integral(int q, const std::vector<long>& m2, const QuadSpec& spec);

// ⟨T_n, f⟩ = ∫_Ω |Dy| Ber(y)^n f(y). Needs n ≥ p.
Estimate riesz_T(const OmegaSpec& spec, int n, const SuperExpr& f, const AlgebraPtr& ext, const ConeHint& hint);
// Γ_Ω(m) = ∫_Ω |Dy| e^{-str y} Δ_m(y).
Estimate gamma_numeric(const OmegaSpec& spec, const MultiIndex& m);
// L(Δ_m)(x⁻¹) = ∫_Ω |Dy| e^{-str(x⁻¹y)} Δ_m(y); x may carry external generators.
Estimate laplace_conical(const OmegaSpec& spec, const MultiIndex& m, const SuperMatrix& x);
void require_gamma_domain(int p, int q, const MultiIndex& m, const OmegaSpec& spec);

enum class HFamily { OddLower, OddUpper, Block };
HFamily parse_family(const std::string& s);
std::string family_name(HFamily f);

// h.Z = a Z dm.
struct HTransform {
  HFamily family = HFamily::Block;
  SuperMatrix a, dm;
  SuperMatrix apply(const SuperMatrix& z) const;
};
// Odd families draw α, δ as random combinations of the external generators;
// the block family uses a ∈ GL(p,ℂ) and two random diagonal unitaries.
HTransform random_transform(HFamily family, int p, int q, const AlgebraPtr& ext, std::mt19937_64& rng);
// Decay of f∘h given the decay of f (only the block family moves it).
Eigen::MatrixXcd transformed_decay(const HTransform& h, const Eigen::MatrixXcd& decay);

// ∫Dμ f(h.Z) against ∫Dμ f(Z).
Check invariance_check(const OmegaSpec& spec, const HTransform& h, const SuperExpr& f, const AlgebraPtr& ext,
                       const ConeHint& hint, double tol);

enum class ShiftDomain { Unitary, Cone };
// U(1): ∫ f(w+n) dw against ∫ f(w) w/(w-n) dw.
// Herm⁺(1): ∫ f(z+n) dz/z against ∫ f(z) z/(z-n) dz/z.
// f is an expression in the slot "w" or "z"; n must be even and nilpotent.
Check shift_check(ShiftDomain domain, const SuperExpr& f, const GrassmannNumber& n, const QuadSpec& spec,
                  const ConeHint& hint, double tol);

}  // namespace superbos
