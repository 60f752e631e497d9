#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace superbos {

using cplx = std::complex<double>;
using Mask = std::uint32_t;

// Finite Grassmann algebra on an ordered list of named generators. A monomial is
// a bitmask; bit i set means generator i is present, and the stored monomial is
// always the product in ascending generator order.
class GrassmannAlgebra {
public:
  static constexpr int kMaxGenerators = 24;

  explicit GrassmannAlgebra(std::vector<std::string> labels);

  static std::shared_ptr<const GrassmannAlgebra> make(std::vector<std::string> labels);
  // Generators named prefix1..prefixN.
  static std::shared_ptr<const GrassmannAlgebra> make(int n, const std::string& prefix = "θ");

  int size() const { return static_cast<int>(labels_.size()); }
  std::size_t dim() const { return std::size_t{1} << labels_.size(); }
  const std::string& label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& labels() const { return labels_; }
  int index_of(const std::string& label) const;
  // "1" for the empty set, otherwise concatenated labels, e.g. "θ1θ2".
  std::string monomial_name(Mask m) const;

  bool same_as(const GrassmannAlgebra& other) const;

private:
  std::vector<std::string> labels_;
};

using AlgebraPtr = std::shared_ptr<const GrassmannAlgebra>;

enum class Parity { Zero, Even, Odd, Mixed };

// Sign of θ_I θ_J reordered into ascending order; zero when I and J overlap.
int reorder_sign(Mask i, Mask j);

class GrassmannNumber {
public:
  GrassmannNumber() = default;
  explicit GrassmannNumber(AlgebraPtr alg, cplx body = 0.0);

  static GrassmannNumber generator(AlgebraPtr alg, int i, cplx c = 1.0);
  static GrassmannNumber monomial(AlgebraPtr alg, Mask m, cplx c = 1.0);
  // Takes a full coefficient table of size alg->dim().
  static GrassmannNumber from_coefficients(AlgebraPtr alg, std::vector<cplx> coeffs);

  const AlgebraPtr& algebra() const { return alg_; }
  bool valid() const { return static_cast<bool>(alg_); }

  cplx body() const { return c_.empty() ? cplx{} : c_[0]; }
  cplx coeff(Mask m) const;
  void set(Mask m, cplx v);
  void add_to(Mask m, cplx v);
  const std::vector<cplx>& coefficients() const { return c_; }

  GrassmannNumber soul() const;
  Parity parity() const;
  bool is_zero() const;
  bool is_even() const;  // includes zero
  bool is_odd() const;   // includes zero
  double max_abs() const;

  GrassmannNumber& operator+=(const GrassmannNumber& o);
  GrassmannNumber& operator-=(const GrassmannNumber& o);
  GrassmannNumber& operator*=(cplx s);
  GrassmannNumber& operator+=(cplx s) { add_to(0, s); return *this; }
  GrassmannNumber& operator-=(cplx s) { add_to(0, -s); return *this; }

  // Left derivative ∂/∂θ_i.
  GrassmannNumber derivative(int i) const;

private:
  AlgebraPtr alg_;
  std::vector<cplx> c_;
};

GrassmannNumber operator+(GrassmannNumber a, const GrassmannNumber& b);
GrassmannNumber operator-(GrassmannNumber a, const GrassmannNumber& b);
GrassmannNumber operator-(const GrassmannNumber& a);
GrassmannNumber operator*(const GrassmannNumber& a, const GrassmannNumber& b);
GrassmannNumber operator*(GrassmannNumber a, cplx s);
GrassmannNumber operator*(cplx s, GrassmannNumber a);
GrassmannNumber operator+(GrassmannNumber a, cplx s);
GrassmannNumber operator-(GrassmannNumber a, cplx s);

// Coefficient table equality within an absolute tolerance.
bool approx_equal(const GrassmannNumber& a, const GrassmannNumber& b, double tol);

// ∂/∂θ_{order[k-1]} ⋯ ∂/∂θ_{order[0]} a: the first listed generator is
// differentiated first.
GrassmannNumber berezin(const GrassmannNumber& a, const std::vector<int>& order);

// Re-express a number in another algebra, matching generators by label. Every
// generator occurring in `a` must exist in `target`; reordering signs are applied.
GrassmannNumber embed(const GrassmannNumber& a, const AlgebraPtr& target);

// f(body + soul) = Σ_k f^(k)(body) soul^k / k!. `derivs(body, kmax)` returns
// f(body), f'(body), …, f^(kmax)(body).
using DerivativeTable = std::function<std::vector<cplx>(cplx body, int kmax)>;
GrassmannNumber apply_analytic(const GrassmannNumber& a, const DerivativeTable& derivs);

GrassmannNumber gexp(const GrassmannNumber& a);
GrassmannNumber glog(const GrassmannNumber& a);
GrassmannNumber ginv(const GrassmannNumber& a);
// Integer powers by repeated multiplication (any nonzero body for n < 0).
GrassmannNumber gpow(const GrassmannNumber& a, long n);
// Real powers, principal branch; integer-valued exponents take the exact path.
GrassmannNumber gpow_real(const GrassmannNumber& a, double alpha);

}  // namespace superbos
