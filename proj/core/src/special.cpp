#include "superbos/special.hpp"

#include <cmath>

#include "superbos/errors.hpp"

namespace superbos {

bool is_nonpositive_integer(double x, double tol) {
  double r = std::round(x);
  return r <= 0.0 && std::abs(x - r) <= tol;
}

SignedLog lgamma_signed(double x) {
  if (is_nonpositive_integer(x, 0.0)) throw DomainError("Γ has a pole at " + std::to_string(x));
  SignedLog s;
  s.log_abs = std::lgamma(x);
  // Γ is negative on (-1,0), (-3,-2), ...
  if (x < 0.0 && (static_cast<long>(std::floor(x)) % 2 != 0)) s.sign = -1;
  return s;
}

double rgamma(double x) {
  if (is_nonpositive_integer(x, 0.0)) return 0.0;
  SignedLog s = lgamma_signed(x);
  return s.sign * std::exp(-s.log_abs);
}

double pochhammer(double a, int n) {
  if (n < 0) throw DomainError("pochhammer needs n >= 0");
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= a + i;
  return r;
}

}  // namespace superbos
