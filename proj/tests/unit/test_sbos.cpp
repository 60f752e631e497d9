#include <cmath>
#include <numbers>

#include "doctest.h"
#include "superbos/errors.hpp"
#include "superbos/sbos.hpp"

using namespace superbos;

namespace {
const double kSqrtPi = std::sqrt(std::numbers::pi);
}

TEST_CASE("flat normalisation") {
  CHECK(flat_scale(1, 1) == doctest::Approx(1.0 / kSqrtPi).epsilon(1e-15));
  CHECK(flat_scale(2, 3) == doctest::Approx(std::pow(std::numbers::pi, -3.0)).epsilon(1e-15));
  for (int q : {0, 1})
    for (int n : {1, 2}) {
      Check c = gaussian_norm_check(1, q, n, 10, 1e-10);
      CHECK(c.pass);
      CHECK(std::abs(c.reference.body() - std::pow(kSqrtPi, n)) < 1e-14);
    }
  // purely odd Gaussian integrates to +1
  CHECK(std::abs(gaussian_norm_check(0, 1, 2, 10, 1e-12).computed.body() - 1.0) < 1e-14);
}

TEST_CASE("Q map body is a a*") {
  VAlgebra va = v_algebra(1, 1, 2, GrassmannAlgebra::make(0));
  Eigen::MatrixXcd a0(1, 2);
  a0 << cplx(1, 2), cplx(0.5, -1);
  SuperMatrix q = q_map(va.a(a0), va.aprime(a0));
  CHECK(q.rows() == Format{1, 1});
  CHECK(std::abs(q(0, 0).body() - (a0 * a0.adjoint())(0, 0)) < 1e-14);
  // the odd-odd entry is a sum of ξη products, nilpotent
  CHECK(q(1, 1).body() == cplx{});
}

TEST_CASE("classical Gaussian: ∫_ℂ e^{-x|a|²} against √π/x") {
  auto alg = GrassmannAlgebra::make(0);
  for (double x : {1.0, 2.0, 3.5}) {
    SuperMatrix xm = SuperMatrix::from_complex(alg, {1, 0}, {1, 0}, Eigen::MatrixXcd::Constant(1, 1, x));
    CHECK(std::abs(lhs_laplace(1, 0, 1, xm, 8).body() - kSqrtPi / x) < 1e-13);
  }
}

TEST_CASE("LHS Laplace transform matches its closed form with odd entries") {
  auto ext = GrassmannAlgebra::make(2);
  SuperMatrix x = parse_matrix("2,θ1;θ2,1", {1, 1}, {1, 1}, ext);
  for (int n : {1, 2}) CHECK(approx_equal(lhs_laplace(1, 1, n, x, 10), lhs_closed(1, 1, n, x), 1e-12));
}

TEST_CASE("constant √π^{np}/Γ_Ω(n𝟙)") {
  CHECK(sbos_constant(1, 1, 1).value == doctest::Approx(kSqrtPi).epsilon(1e-14));
  CHECK(sbos_constant(1, 0, 2).value == doctest::Approx(std::numbers::pi / 1.0).epsilon(1e-14));
  // p = 0: 1/Γ_Ω = q_n
  CHECK(sbos_constant(0, 1, 3).value == doctest::Approx(6.0).epsilon(1e-14));
  CHECK_THROWS_AS(sbos_constant(2, 0, 1), DomainError);
}

TEST_CASE("identity holds for a diagonal x") {
  auto ext = GrassmannAlgebra::make(0);
  SbosCase c;
  c.p = 1;
  c.q = 1;
  c.n = 1;
  c.ext = ext;
  c.x = parse_matrix("diag:2,1", {1, 1}, {1, 1}, ext);
  OmegaSpec s;
  s.p = 1;
  s.q = 1;
  Report r = verify_identity(c, s, 10, 1e-6);
  CHECK(r.pass());
  CHECK(r.checks.size() == 2);
}

TEST_CASE("bosonisation p = 0: ∫ (Σ ξη)^k is n! δ_kn") {
  auto ext = GrassmannAlgebra::make(0);
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k <= 4; ++k) {
      SuperExpr f = parse_expr("(pow " + std::to_string(k) + " w)", ext);
      GrassmannNumber lhs = lhs_integral(0, 1, n, f, ext, Eigen::MatrixXcd(), 4);
      double want = k == n ? std::tgamma(n + 1.0) : 0.0;
      CHECK(std::abs(lhs.body() - want) < 1e-12);
    }
}
