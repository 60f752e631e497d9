#include <cmath>
#include <numbers>

#include "doctest.h"
#include "superbos/errors.hpp"
#include "superbos/superfourier.hpp"

using namespace superbos;

namespace {

std::function<cplx(double)> gauss(double a, cplx c = 1.0) {
  return [a, c](double x) { return c * std::exp(-a * x * x); };
}

double max_diff(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("Gaussian is self-dual") {
  auto f = SchwartzSample::from_functions(1, 0, {gauss(0.5)});
  auto g = ft(f);
  Eigen::VectorXcd want = f.comp[0];
  CHECK(max_diff(g.comp[0], want) < 1e-12);
}

TEST_CASE("one odd generator by hand: F(a + bν) = b + i a ν") {
  cplx a{0.7, -0.2}, b{1.3, 0.4};
  auto f = SchwartzSample::from_functions(0, 1, {[a](double) { return a; }, [b](double) { return b; }});
  auto g = ft(f);
  CHECK(std::abs(g.comp[0](0) - b) < 1e-15);
  CHECK(std::abs(g.comp[1](0) - cplx{0, 1} * a) < 1e-15);
}

TEST_CASE("cotransform prefactor") {
  CHECK(cotransform_prefactor(0) == cplx{1.0});
  CHECK(std::abs(cotransform_prefactor(1) - cplx{0, 1}) < 1e-15);
  CHECK(std::abs(cotransform_prefactor(2) - cplx{1.0}) < 1e-15);
}

TEST_CASE("round trip on (1 + ν¹) e^{-x²}") {
  auto f = SchwartzSample::from_functions(1, 1, {gauss(1.0), gauss(1.0)});
  CHECK(max_diff(ift(ft(f)).comp[0], f.comp[0]) < 1e-8);
  CHECK(max_diff(ift(ft(f)).comp[1], f.comp[1]) < 1e-8);
}

TEST_CASE("ft shifts parity by q") {
  auto odd = SchwartzSample::from_functions(0, 1, {nullptr, [](double) { return cplx{2.0}; }});
  CHECK(odd.parity() == 1);
  CHECK(ft(odd).parity() == 0);
  auto even2 = SchwartzSample::from_functions(0, 2, {[](double) { return cplx{1.0}; }});
  CHECK(ft(even2).parity() == 0);
}

TEST_CASE("classical convolution of Gaussians") {
  auto f = SchwartzSample::from_functions(1, 0, {gauss(0.5)});
  auto c = convolve(f, f);
  // e^{-x²/2} ∗ e^{-x²/2} = √π e^{-x²/4}
  auto want = SchwartzSample::from_functions(1, 0, {gauss(0.25, std::sqrt(std::numbers::pi))});
  CHECK(max_diff(c.comp[0], want.comp[0]) < 1e-10);
}

TEST_CASE("convolution theorem sign for an odd f") {
  auto f = SchwartzSample::from_functions(1, 1, {nullptr, gauss(1.0)});
  auto g = SchwartzSample::from_functions(1, 1, {gauss(1.0)});
  Check c = conv_theorem_check(f, g, 1e-8);
  CHECK(c.pass);
  CHECK_THROWS_AS(conv_theorem_check(SchwartzSample::from_functions(1, 1, {gauss(1.0), gauss(1.0)}), g, 1e-8),
                  DomainError);
}

TEST_CASE("Parseval for Gaussians matches the classical value") {
  auto f = SchwartzSample::from_functions(1, 0, {gauss(0.5)});
  Check c = parseval_check(f, f, 1e-8);
  CHECK(c.pass);
  CHECK(std::abs(c.reference.body() - std::sqrt(std::numbers::pi)) < 1e-10);
  auto zero = SchwartzSample::zero(1, 0);
  CHECK(std::abs(parseval_check(f, zero, 1e-8).computed.body()) < 1e-15);
}

TEST_CASE("the full identity suite passes") {
  for (auto [p, q] : {std::pair{1, 0}, {0, 1}, {1, 1}, {0, 2}, {1, 2}}) {
    double tol = p == 1 ? 1e-8 : 1e-12;
    for (const Check& c : fourier_suite(p, q, tol)) {
      INFO(c.label);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("aliasing is detected") {
  auto wide = SchwartzSample::from_functions(1, 0, {gauss(0.001)});
  CHECK_THROWS_AS(ft(wide), DomainError);
  CHECK_THROWS_AS(SchwartzSample::zero(2, 0), DomainError);
}
