#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "superbos/errors.hpp"
#include "superbos/riesz.hpp"

using namespace superbos;

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

// Bialternant s_n(x) = det(x_i^{n_j+q-j}) / det(x_i^{q-j}) for distinct x.
cplx bialternant(const std::vector<long>& n, const std::vector<cplx>& x) {
  const int q = static_cast<int>(x.size());
  Eigen::MatrixXcd num(q, q), den(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      num(i, j) = std::pow(x[i], static_cast<double>(n[j] + q - 1 - j));
      den(i, j) = std::pow(x[i], static_cast<double>(q - 1 - j));
    }
  return num.determinant() / den.determinant();
}

}  // namespace

TEST_CASE("closed-form Γ_Ω against classical special cases") {
  for (double m : {1.0, 2.5, 4.0}) CHECK(std::abs(gamma_closed(1, 0, MultiIndex(1, {m})).value - std::tgamma(m)) < 1e-12);
  // Herm⁺(2): (2π) Γ(m1) Γ(m2-1)
  CHECK(std::abs(gamma_closed(2, 0, MultiIndex(2, {3, 2.5})).value -
                 2 * std::numbers::pi * std::tgamma(3) * std::tgamma(1.5)) < 1e-12);
  // U(1): 1/m! and zero for negative m
  for (int m = 0; m <= 4; ++m) CHECK(std::abs(gamma_closed(0, 1, MultiIndex(0, {double(m)})).value - 1 / factorial(m)) < 1e-15);
  GammaValue z = gamma_closed(0, 1, MultiIndex(0, {-2}));
  CHECK(z.is_zero);
  CHECK(z.value == 0.0);
  CHECK(gamma_closed(1, 1, MultiIndex(1, {3, 2})).value == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("poles win over zeros") {
  GammaValue g = gamma_closed(1, 1, MultiIndex(1, {0, -3}));
  CHECK(g.is_pole);
  CHECK_FALSE(g.is_zero);
  CHECK(g.sign == 0);
  CHECK(std::isnan(g.value));
}

TEST_CASE("sign calibration: Γ_Ω(1,1) = +1 numerically") {
  OmegaSpec s;
  s.p = 1;
  s.q = 1;
  Estimate e = gamma_numeric(s, MultiIndex(1, {1, 1}));
  CHECK(std::abs(e.value.body() - 1.0) < 1e-12);
}

TEST_CASE("numeric Γ_Ω follows the closed form at sample points") {
  struct C {
    int p, q;
    std::vector<double> m;
  };
  for (const C& c : {C{1, 0, {3.5}}, C{2, 0, {3, 4}}, C{0, 1, {2}}, C{1, 1, {2.5, -1}}, C{2, 1, {4, 3, 1}}}) {
    OmegaSpec s;
    s.p = c.p;
    s.q = c.q;
    MultiIndex m(c.p, c.m);
    double want = gamma_closed(c.p, c.q, m).value;
    double got = gamma_numeric(s, m).value.body().real();
    CHECK(std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("Berezin factor is the rising factorial") {
  for (int p = 0; p <= 3; ++p)
    for (long m = -3; m <= 3; ++m) {
      double want = 1.0;
      for (int k = 0; k < p; ++k) want *= double(m + k);
      CHECK(fermionic_gamma_factor(p, m) == doctest::Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("Schur characters and Weyl dimensions") {
  CHECK(weyl_dim({3, 1}) == 3);
  CHECK(std::abs(schur_char({3, 1}, {1.0, 1.0}) - cplx{3.0}) < 1e-12);
  std::mt19937_64 rng(30);
  std::normal_distribution<double> nd;
  for (std::vector<long> n : {std::vector<long>{2, 0}, {3, 1}, {2, 2}, {4, 1, 0}, {1, 1, -2}, {3, 3, 3}}) {
    std::vector<cplx> x;
    for (std::size_t i = 0; i < n.size(); ++i) x.push_back(std::polar(1.0, nd(rng)));
    cplx want = bialternant(n, x);
    CHECK(std::abs(schur_char(n, x) - want) < 1e-10 * std::max(1.0, std::abs(want)));
    // Weyl product formula
    double dim = 1.0;
    for (std::size_t i = 0; i < n.size(); ++i)
      for (std::size_t j = i + 1; j < n.size(); ++j) dim *= double(n[i] - n[j] + long(j) - long(i)) / double(j - i);
    CHECK(weyl_dim(n) == std::lround(dim));
  }
  CHECK_THROWS_AS(require_dominant({1, 2}), DomainError);
}

TEST_CASE("unitary sector on U(1) is 1/n!") {
  QuadSpec s{QuadRule::CircleTrapezoid, {32}, 1, 0};
  for (long n = -2; n <= 4; ++n) {
    double want = n < 0 ? 0.0 : 1.0 / factorial(int(n));
    CHECK(std::abs(unitary_sector_integral(1, {n}, s).value.body() - want) < 1e-14);
  }
  CHECK(q_norm({3}) == doctest::Approx(6.0));
  CHECK(inv_q_norm({2, 2}) == doctest::Approx(1.0 / 12.0));
}

TEST_CASE("domain errors") {
  OmegaSpec s;
  s.p = 2;
  s.q = 0;
  CHECK_THROWS_AS(gamma_numeric(s, MultiIndex(2, {3, 1})), DomainError);
  OmegaSpec u;
  u.p = 0;
  u.q = 2;
  u.unitary = QuadSpec{QuadRule::HaarMC, {1}, 100, 1};
  CHECK_THROWS_AS(gamma_numeric(u, MultiIndex(0, {2, 1})), DomainError);
  CHECK_THROWS_AS(gamma_closed(1, 1, MultiIndex(1, {1})), DomainError);
}

TEST_CASE("invariance holds for each transformation family") {
  auto ext = GrassmannAlgebra::make(2);
  OmegaSpec s;
  s.p = 1;
  s.q = 1;
  SuperExpr f = parse_expr("(mul (ber Y) (exp (neg (str Y))))", ext);
  ConeHint hint;
  hint.alpha = {0.0};
  std::mt19937_64 rng(31);
  for (HFamily fam : {HFamily::OddLower, HFamily::OddUpper, HFamily::Block}) {
    HTransform h = random_transform(fam, 1, 1, ext, rng);
    CHECK(invariance_check(s, h, f, ext, hint, 1e-8).pass);
    CHECK(parse_family(family_name(fam)) == fam);
  }
}

TEST_CASE("nilpotent shift on U(1) and Herm⁺(1)") {
  auto ext = GrassmannAlgebra::make(2);
  GrassmannNumber n = 0.7 * GrassmannNumber::generator(ext, 0) * GrassmannNumber::generator(ext, 1);
  ConeHint hint;
  hint.alpha = {0.0};
  Check u = shift_check(ShiftDomain::Unitary, parse_expr("(add (pow 2 w) (exp w))", ext), n,
                        QuadSpec{QuadRule::CircleTrapezoid, {32}, 1, 0}, hint, 1e-10);
  CHECK(u.pass);
  // the nilpotent part is really exercised
  CHECK(std::abs(u.reference.coeff(0b11)) > 0.1);
  Check c = shift_check(ShiftDomain::Cone, parse_expr("(mul (pow 3 z) (exp (neg z)))", ext), n,
                        QuadSpec{QuadRule::GaussLaguerre, {8, 8}, 1, 0}, hint, 1e-10);
  CHECK(c.pass);
}
