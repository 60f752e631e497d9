#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "superbos/grassmann.hpp"

namespace superbos {

// One computed-vs-reference comparison, coefficient by coefficient.
struct Check {
  std::string label;
  GrassmannNumber computed, reference;
  std::string oracle;            // where the reference comes from
  std::vector<double> stderr_;   // Monte Carlo standard errors, per coefficient
  std::vector<double> abs_err, rel_err;
  double tol = 0.0;
  bool pass = false;
  std::string note;
};

// Relative error of one coefficient: |a-b|/|b| when |b| is not negligible
// against the largest reference coefficient, |a-b|/max|b| otherwise. Absolute
// |a-b| when max|b| < 1e-13 (a zero reached through round-off).
double coefficient_error(cplx a, cplx b, double ref_scale);

// Deterministic comparison: pass iff every coefficient error is <= tol.
Check compare(std::string label, const GrassmannNumber& computed, const GrassmannNumber& reference, double tol,
              std::string oracle);

// Stochastic comparison: coefficient k passes if |a-b| <= max(tol·|b|, 4·stderr_k)
// (with |b| replaced by max|b| for negligible b), and the estimate itself must be
// precise: max stderr <= precision·max|b|, i.e. 4σ resolves the reference.
Check compare_mc(std::string label, const GrassmannNumber& computed, const std::vector<double>& stderr_,
                 const GrassmannNumber& reference, double tol, std::string oracle, double precision = 0.25);

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<Check> checks;
  std::optional<std::uint64_t> seed;
  std::optional<double> seconds;
  bool pass() const;
  void add(Check c) { checks.push_back(std::move(c)); }
  void input(std::string k, std::string v) { inputs.emplace_back(std::move(k), std::move(v)); }
};

}  // namespace superbos
