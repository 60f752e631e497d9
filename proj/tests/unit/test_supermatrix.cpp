#include <random>

#include "doctest.h"
#include "random_super.hpp"
#include "superbos/errors.hpp"
#include "superbos/supermatrix.hpp"

using namespace superbos;
using superbos::testing::rand_c;
using superbos::testing::rand_even;
using superbos::testing::rand_grassmann;

namespace {

// Lower (upper) triangular even supermatrix with random diagonal near 1.5.
SuperMatrix rand_triangular(const AlgebraPtr& alg, Format f, std::mt19937_64& rng, bool lower) {
  SuperMatrix x = rand_even(alg, f, rng, 1.5);
  for (int i = 0; i < f.size(); ++i)
    for (int j = 0; j < f.size(); ++j)
      if ((lower && j > i) || (!lower && j < i)) x(i, j) = GrassmannNumber(alg);
  return x;
}

}  // namespace

TEST_CASE("Berezinian of a (1|1) matrix by hand") {
  auto alg = GrassmannAlgebra::make(2);
  auto t1 = GrassmannNumber::generator(alg, 0), t2 = GrassmannNumber::generator(alg, 1);
  SuperMatrix x(alg, {1, 1}, {1, 1});
  x(0, 0) = GrassmannNumber(alg, 3.0);
  x(0, 1) = t1;
  x(1, 0) = t2;
  x(1, 1) = GrassmannNumber(alg, 2.0);
  // (a - βγ/d)/d = 3/2 - θ1θ2/4
  GrassmannNumber want = GrassmannNumber(alg, 1.5) - 0.25 * t1 * t2;
  CHECK(approx_equal(berezinian(x), want, 1e-15));
  CHECK(approx_equal(berezinian_via_a(x), want, 1e-15));
  CHECK(approx_equal(supertrace(x), GrassmannNumber(alg, 1.0), 0.0));
}

TEST_CASE("Berezinian of block-diagonal matrices is det A / det D") {
  auto alg = GrassmannAlgebra::make(0);
  Eigen::MatrixXcd m(3, 3);
  m << 2, 1, 0, 0.5, 3, 0, 0, 0, 4;
  SuperMatrix x = SuperMatrix::from_complex(alg, {2, 1}, {2, 1}, m);
  CHECK(std::abs(berezinian(x).body() - cplx{5.5 / 4.0}) < 1e-15);
}

TEST_CASE("inverse, multiplicativity and cyclicity on random supermatrices") {
  std::mt19937_64 rng(10);
  auto alg = GrassmannAlgebra::make(4);
  for (Format f : {Format{1, 1}, Format{2, 1}, Format{1, 2}, Format{2, 2}, Format{0, 2}}) {
    for (int t = 0; t < 5; ++t) {
      SuperMatrix x = rand_even(alg, f, rng), y = rand_even(alg, f, rng);
      CHECK(approx_equal(x * inverse(x), SuperMatrix::identity(alg, f), 1e-12));
      CHECK(approx_equal(berezinian(x * y), berezinian(x) * berezinian(y), 1e-11));
      CHECK(approx_equal(supertrace(x * y), supertrace(y * x), 1e-12));
      if (f.even > 0) CHECK(approx_equal(berezinian(x), berezinian_via_a(x), 1e-11));
      CHECK(approx_equal(vrho(x), vrho_via_ber(x), 1e-11));
    }
  }
}

TEST_CASE("Δ_k is the Berezinian of the principal minor") {
  std::mt19937_64 rng(11);
  auto alg = GrassmannAlgebra::make(2);
  SuperMatrix x = rand_even(alg, {1, 2}, rng);
  CHECK(principal_minor(x, 2).rows() == Format{1, 1});
  CHECK(approx_equal(delta_k(x, 3), berezinian(x), 1e-13));
  CHECK(approx_equal(delta_k(x, 1), x(0, 0), 0.0));
  MultiIndex m(1, {3, 1, 1});
  // Δ_1² Δ_3
  CHECK(approx_equal(delta_m(x, m), x(0, 0) * x(0, 0) * berezinian(x), 1e-12));
}

TEST_CASE("Δ_m is conical under lower/upper triangular pairs") {
  std::mt19937_64 rng(12);
  auto alg = GrassmannAlgebra::make(3);
  for (Format f : {Format{1, 1}, Format{2, 1}, Format{1, 2}}) {
    std::vector<double> mv;
    for (int j = 0; j < f.even; ++j) mv.push_back(2.5 - 0.5 * j);
    for (int j = 0; j < f.odd; ++j) mv.push_back(-1.0 - j);
    MultiIndex m(f.even, mv);
    for (int t = 0; t < 5; ++t) {
      SuperMatrix a = rand_triangular(alg, f, rng, true), d = rand_triangular(alg, f, rng, false);
      SuperMatrix z = rand_even(alg, f, rng);
      GroupElement g = GroupElement::block_diagonal(a, d);
      SuperMatrix dinv = inverse(d);
      // Independent factor: the minors of A and D⁻¹ multiply through.
      GrassmannNumber factor(alg, 1.0);
      for (int k = 1; k <= f.size(); ++k) {
        double e = m.delta_exponent(k);
        GrassmannNumber s = delta_k(a, k) * delta_k(dinv, k);
        factor = factor * (k <= f.even ? gpow_real(s, e) : gpow(s, std::lround(e)));
      }
      CHECK(approx_equal(delta_m(act(g, z), m), factor * delta_m(z, m), 1e-11));
      CHECK(approx_equal(chi_m(g, m), factor, 1e-11));
    }
  }
}

TEST_CASE("LDU reconstructs big-cell matrices") {
  std::mt19937_64 rng(13);
  auto alg = GrassmannAlgebra::make(4);
  for (Format f : {Format{1, 1}, Format{2, 1}, Format{2, 2}}) {
    SuperMatrix z = rand_even(alg, f, rng);
    REQUIRE(in_big_cell(z));
    LDU r = ldu(z);
    CHECK(approx_equal(r.l * r.d * r.u, z, 1e-12));
  }
  Eigen::MatrixXcd m(2, 2);
  m << 0, 1, 1, 0;
  SuperMatrix swap = SuperMatrix::from_complex(GrassmannAlgebra::make(0), {2, 0}, {2, 0}, m);
  CHECK_FALSE(in_big_cell(swap));
  CHECK_THROWS_AS(ldu(swap), DomainError);
}

TEST_CASE("odd entries in even slots are rejected") {
  auto alg = GrassmannAlgebra::make(1);
  SuperMatrix x = SuperMatrix::identity(alg, {1, 1});
  x(0, 0) = x(0, 0) + GrassmannNumber::generator(alg, 0);
  CHECK_THROWS_AS(x.require_even("test"), DomainError);
  CHECK_THROWS_AS(berezinian(SuperMatrix(alg, {1, 1}, {1, 1})), DomainError);
}
