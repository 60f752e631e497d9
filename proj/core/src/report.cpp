#include "superbos/report.hpp"

#include <algorithm>
#include <cmath>

#include "superbos/errors.hpp"

namespace superbos {

namespace {

constexpr double kZeroFloor = 1e-13;

double max_abs_coeff(const GrassmannNumber& b) {
  double m = 0.0;
  for (const auto& c : b.coefficients()) m = std::max(m, std::abs(c));
  return m;
}

void check_same(const GrassmannNumber& a, const GrassmannNumber& b) {
  if (!a.valid() || !b.valid()) throw DomainError("comparison of empty values");
  if (a.coefficients().size() != b.coefficients().size()) throw DomainError("comparison across algebras");
}

}  // namespace

double coefficient_error(cplx a, cplx b, double ref_scale) {
  double d = std::abs(a - b);
  // a reference at round-off level is an exact zero computed the long way
  if (ref_scale < kZeroFloor) return d;
  if (std::abs(b) >= 1e-12 * ref_scale) return d / std::abs(b);
  return d / ref_scale;
}

Check compare(std::string label, const GrassmannNumber& computed, const GrassmannNumber& reference, double tol,
              std::string oracle) {
  check_same(computed, reference);
  Check c;
  c.label = std::move(label);
  c.computed = computed;
  c.reference = reference;
  c.oracle = std::move(oracle);
  c.tol = tol;
  double scale = max_abs_coeff(reference);
  c.pass = true;
  const auto& a = computed.coefficients();
  const auto& b = reference.coefficients();
  for (std::size_t k = 0; k < a.size(); ++k) {
    c.abs_err.push_back(std::abs(a[k] - b[k]));
    double e = coefficient_error(a[k], b[k], scale);
    c.rel_err.push_back(e);
    if (!(e <= tol)) c.pass = false;
  }
  return c;
}

Check compare_mc(std::string label, const GrassmannNumber& computed, const std::vector<double>& stderr_,
                 const GrassmannNumber& reference, double tol, std::string oracle, double precision) {
  Check c = compare(std::move(label), computed, reference, tol, std::move(oracle));
  if (stderr_.size() != computed.coefficients().size()) throw DomainError("stderr vector has wrong size");
  c.stderr_ = stderr_;
  double scale = max_abs_coeff(reference);
  const auto& a = computed.coefficients();
  const auto& b = reference.coefficients();
  c.pass = true;
  double worst_se = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double ref = std::abs(b[k]) >= 1e-12 * scale ? std::abs(b[k]) : scale;
    double allowed = std::max(tol * ref, 4.0 * stderr_[k]);
    if (!(std::abs(a[k] - b[k]) <= allowed)) c.pass = false;
    worst_se = std::max(worst_se, stderr_[k]);
  }
  double target = precision * (scale > 0.0 ? scale : 1.0);
  if (!(worst_se <= target)) {
    c.pass = false;
    c.note = "Monte Carlo estimate too imprecise: stderr " + std::to_string(worst_se) + " > " +
             std::to_string(target);
  }
  return c;
}

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

}  // namespace superbos
