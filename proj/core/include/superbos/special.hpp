#pragma once

#include <complex>
#include <vector>

namespace superbos {

// x is within tol of 0, -1, -2, ...
bool is_nonpositive_integer(double x, double tol = 1e-9);

// log|Γ(x)| and the sign of Γ(x); x must not be a pole.
struct SignedLog {
  double log_abs = 0.0;
  int sign = 1;
};
SignedLog lgamma_signed(double x);

// 1/Γ(x), entire; exactly zero at the poles of Γ.
double rgamma(double x);

// Rising factorial a(a+1)⋯(a+n-1).
double pochhammer(double a, int n);

}  // namespace superbos
