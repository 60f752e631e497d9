#include "superbos/grassmann.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "superbos/errors.hpp"

namespace superbos {

GrassmannAlgebra::GrassmannAlgebra(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.size() > static_cast<std::size_t>(kMaxGenerators))
    throw DomainError("Grassmann algebra limited to " + std::to_string(kMaxGenerators) + " generators");
  for (std::size_t i = 0; i < labels_.size(); ++i)
    for (std::size_t j = i + 1; j < labels_.size(); ++j)
      if (labels_[i] == labels_[j]) throw DomainError("duplicate generator label '" + labels_[i] + "'");
}

AlgebraPtr GrassmannAlgebra::make(std::vector<std::string> labels) {
  return std::make_shared<const GrassmannAlgebra>(std::move(labels));
}

AlgebraPtr GrassmannAlgebra::make(int n, const std::string& prefix) {
  std::vector<std::string> l;
  for (int i = 1; i <= n; ++i) l.push_back(prefix + std::to_string(i));
  return make(std::move(l));
}

int GrassmannAlgebra::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  return -1;
}

std::string GrassmannAlgebra::monomial_name(Mask m) const {
  if (m == 0) return "1";
  std::string s;
  for (int i = 0; i < size(); ++i)
    if (m & (Mask{1} << i)) s += labels_[static_cast<std::size_t>(i)];
  return s;
}

bool GrassmannAlgebra::same_as(const GrassmannAlgebra& other) const {
  return this == &other || labels_ == other.labels_;
}

int reorder_sign(Mask i, Mask j) {
  if (i & j) return 0;
  int count = 0;
  for (Mask rest = j; rest; rest &= rest - 1) {
    int b = std::countr_zero(rest);
    count += std::popcount(i >> (b + 1));
  }
  return (count & 1) ? -1 : 1;
}

namespace {

void require_same(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (!a || !b) throw DomainError("Grassmann number without algebra");
  if (a != b && !a->same_as(*b)) throw DomainError("Grassmann algebra mismatch");
}

}  // namespace

GrassmannNumber::GrassmannNumber(AlgebraPtr alg, cplx body) : alg_(std::move(alg)) {
  if (!alg_) throw DomainError("null Grassmann algebra");
  c_.assign(alg_->dim(), cplx{});
  c_[0] = body;
}

GrassmannNumber GrassmannNumber::generator(AlgebraPtr alg, int i, cplx c) {
  if (i < 0 || i >= alg->size()) throw DomainError("generator index out of range");
  return monomial(std::move(alg), Mask{1} << i, c);
}

GrassmannNumber GrassmannNumber::monomial(AlgebraPtr alg, Mask m, cplx c) {
  GrassmannNumber g(std::move(alg));
  g.set(m, c);
  return g;
}

GrassmannNumber GrassmannNumber::from_coefficients(AlgebraPtr alg, std::vector<cplx> coeffs) {
  if (!alg || coeffs.size() != alg->dim()) throw DomainError("coefficient table size does not match algebra");
  GrassmannNumber g;
  g.alg_ = std::move(alg);
  g.c_ = std::move(coeffs);
  return g;
}

cplx GrassmannNumber::coeff(Mask m) const {
  if (m >= c_.size()) throw DomainError("monomial mask out of range");
  return c_[m];
}

void GrassmannNumber::set(Mask m, cplx v) {
  if (m >= c_.size()) throw DomainError("monomial mask out of range");
  c_[m] = v;
}

void GrassmannNumber::add_to(Mask m, cplx v) {
  if (m >= c_.size()) throw DomainError("monomial mask out of range");
  c_[m] += v;
}

GrassmannNumber GrassmannNumber::soul() const {
  GrassmannNumber s = *this;
  s.c_[0] = 0.0;
  return s;
}

Parity GrassmannNumber::parity() const {
  bool even = false, odd = false;
  for (std::size_t m = 0; m < c_.size(); ++m) {
    if (c_[m] == cplx{}) continue;
    (std::popcount(static_cast<Mask>(m)) & 1 ? odd : even) = true;
  }
  if (even && odd) return Parity::Mixed;
  if (odd) return Parity::Odd;
  if (even) return Parity::Even;
  return Parity::Zero;
}

bool GrassmannNumber::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](cplx v) { return v == cplx{}; });
}

bool GrassmannNumber::is_even() const {
  auto p = parity();
  return p == Parity::Even || p == Parity::Zero;
}

bool GrassmannNumber::is_odd() const {
  auto p = parity();
  return p == Parity::Odd || p == Parity::Zero;
}

double GrassmannNumber::max_abs() const {
  double m = 0;
  for (auto v : c_) m = std::max(m, std::abs(v));
  return m;
}

GrassmannNumber& GrassmannNumber::operator+=(const GrassmannNumber& o) {
  require_same(alg_, o.alg_);
  for (std::size_t m = 0; m < c_.size(); ++m) c_[m] += o.c_[m];
  return *this;
}

GrassmannNumber& GrassmannNumber::operator-=(const GrassmannNumber& o) {
  require_same(alg_, o.alg_);
  for (std::size_t m = 0; m < c_.size(); ++m) c_[m] -= o.c_[m];
  return *this;
}

GrassmannNumber& GrassmannNumber::operator*=(cplx s) {
  for (auto& v : c_) v *= s;
  return *this;
}

GrassmannNumber GrassmannNumber::derivative(int i) const {
  if (!alg_ || i < 0 || i >= alg_->size()) throw DomainError("generator index out of range");
  GrassmannNumber r(alg_);
  const Mask bit = Mask{1} << i;
  const Mask below = bit - 1;
  for (std::size_t m = 0; m < c_.size(); ++m) {
    if (!(m & bit) || c_[m] == cplx{}) continue;
    double s = (std::popcount(static_cast<Mask>(m) & below) & 1) ? -1.0 : 1.0;
    r.c_[m & ~bit] += s * c_[m];
  }
  return r;
}

GrassmannNumber operator+(GrassmannNumber a, const GrassmannNumber& b) { return a += b; }
GrassmannNumber operator-(GrassmannNumber a, const GrassmannNumber& b) { return a -= b; }
GrassmannNumber operator-(const GrassmannNumber& a) { return a * cplx{-1.0}; }
GrassmannNumber operator*(GrassmannNumber a, cplx s) { return a *= s; }
GrassmannNumber operator*(cplx s, GrassmannNumber a) { return a *= s; }
GrassmannNumber operator+(GrassmannNumber a, cplx s) { return a += s; }
GrassmannNumber operator-(GrassmannNumber a, cplx s) { return a -= s; }

GrassmannNumber operator*(const GrassmannNumber& a, const GrassmannNumber& b) {
  require_same(a.algebra(), b.algebra());
  const auto& ca = a.coefficients();
  const auto& cb = b.coefficients();
  // Sparse walk: integrands are typically half empty by parity.
  Mask ia[1 << 12], ib[1 << 12];
  std::vector<Mask> big_a, big_b;
  Mask* pa = ia;
  Mask* pb = ib;
  if (ca.size() > (1u << 12)) {
    big_a.resize(ca.size());
    big_b.resize(cb.size());
    pa = big_a.data();
    pb = big_b.data();
  }
  std::size_t na = 0, nb = 0;
  for (std::size_t m = 0; m < ca.size(); ++m)
    if (ca[m] != cplx{}) pa[na++] = static_cast<Mask>(m);
  for (std::size_t m = 0; m < cb.size(); ++m)
    if (cb[m] != cplx{}) pb[nb++] = static_cast<Mask>(m);
  std::vector<cplx> out(ca.size());
  for (std::size_t x = 0; x < na; ++x) {
    const Mask i = pa[x];
    const cplx vi = ca[i];
    for (std::size_t y = 0; y < nb; ++y) {
      const Mask j = pb[y];
      if (i & j) continue;
      const int s = reorder_sign(i, j);
      const cplx t = vi * cb[j];
      out[i | j] += s > 0 ? t : -t;
    }
  }
  return GrassmannNumber::from_coefficients(a.algebra(), std::move(out));
}

bool approx_equal(const GrassmannNumber& a, const GrassmannNumber& b, double tol) {
  require_same(a.algebra(), b.algebra());
  for (std::size_t m = 0; m < a.coefficients().size(); ++m)
    if (std::abs(a.coefficients()[m] - b.coefficients()[m]) > tol) return false;
  return true;
}

GrassmannNumber berezin(const GrassmannNumber& a, const std::vector<int>& order) {
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (order[i] == order[j]) throw DomainError("Berezin order lists a generator twice");
  GrassmannNumber r = a;
  for (int g : order) r = r.derivative(g);
  return r;
}

GrassmannNumber embed(const GrassmannNumber& a, const AlgebraPtr& target) {
  const auto& src = a.algebra();
  if (src == target) return a;
  std::vector<int> map(static_cast<std::size_t>(src->size()));
  for (int i = 0; i < src->size(); ++i) map[static_cast<std::size_t>(i)] = target->index_of(src->label(i));
  GrassmannNumber r(target);
  const auto& c = a.coefficients();
  for (std::size_t m = 0; m < c.size(); ++m) {
    if (c[m] == cplx{}) continue;
    std::vector<int> seq;
    for (int i = 0; i < src->size(); ++i) {
      if (!(m & (std::size_t{1} << i))) continue;
      int t = map[static_cast<std::size_t>(i)];
      if (t < 0) throw DomainError("generator '" + src->label(i) + "' missing from target algebra");
      seq.push_back(t);
    }
    int inv = 0;
    Mask tm = 0;
    for (std::size_t x = 0; x < seq.size(); ++x) {
      tm |= Mask{1} << seq[x];
      for (std::size_t y = x + 1; y < seq.size(); ++y)
        if (seq[x] > seq[y]) ++inv;
    }
    r.add_to(tm, (inv & 1) ? -c[m] : c[m]);
  }
  return r;
}

GrassmannNumber apply_analytic(const GrassmannNumber& a, const DerivativeTable& derivs) {
  const GrassmannNumber s = a.soul();
  std::vector<GrassmannNumber> powers;
  GrassmannNumber p(a.algebra(), 1.0);
  while (true) {
    powers.push_back(p);
    if (static_cast<int>(powers.size()) > a.algebra()->size()) break;
    p = p * s;
    if (p.is_zero()) break;
  }
  const int kmax = static_cast<int>(powers.size()) - 1;
  const std::vector<cplx> d = derivs(a.body(), kmax);
  if (static_cast<int>(d.size()) < kmax + 1) throw NumericError("derivative table too short");
  GrassmannNumber r(a.algebra());
  double fact = 1.0;
  for (int k = 0; k <= kmax; ++k) {
    if (k > 0) fact *= k;
    r += powers[static_cast<std::size_t>(k)] * (d[static_cast<std::size_t>(k)] / fact);
  }
  return r;
}

GrassmannNumber gexp(const GrassmannNumber& a) {
  return apply_analytic(a, [](cplx b, int kmax) { return std::vector<cplx>(static_cast<std::size_t>(kmax) + 1, std::exp(b)); });
}

GrassmannNumber glog(const GrassmannNumber& a) {
  if (a.body() == cplx{}) throw DomainError("log of a Grassmann number with zero body");
  return apply_analytic(a, [](cplx b, int kmax) {
    std::vector<cplx> d{std::log(b)};
    // d^k/db^k log b = (-1)^{k-1} (k-1)! / b^k
    double f = 1.0;
    for (int k = 1; k <= kmax; ++k) {
      if (k > 1) f *= (k - 1);
      d.push_back(((k - 1) % 2 ? -f : f) / std::pow(b, k));
    }
    return d;
  });
}

GrassmannNumber ginv(const GrassmannNumber& a) {
  if (a.body() == cplx{}) throw DomainError("inverse of a Grassmann number with zero body");
  return apply_analytic(a, [](cplx b, int kmax) {
    std::vector<cplx> d;
    cplx t = 1.0 / b;
    double f = 1.0;
    for (int k = 0; k <= kmax; ++k) {
      if (k > 0) f *= k;
      d.push_back((k % 2 ? -f : f) * t);
      t /= b;
    }
    return d;
  });
}

GrassmannNumber gpow(const GrassmannNumber& a, long n) {
  if (n == 0) return GrassmannNumber(a.algebra(), 1.0);
  GrassmannNumber base = n > 0 ? a : ginv(a);
  unsigned long e = static_cast<unsigned long>(n > 0 ? n : -n);
  GrassmannNumber r(a.algebra(), 1.0);
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

GrassmannNumber gpow_real(const GrassmannNumber& a, double alpha) {
  if (std::abs(alpha - std::round(alpha)) < 1e-12 && std::abs(alpha) < 1e9)
    return gpow(a, static_cast<long>(std::llround(alpha)));
  const cplx b = a.body();
  if (b == cplx{}) throw DomainError("non-integer power of a Grassmann number with zero body");
  if (b.imag() == 0.0 && b.real() < 0.0)
    throw DomainError("non-integer power on the principal branch cut");
  return apply_analytic(a, [alpha](cplx body, int kmax) {
    std::vector<cplx> d;
    double c = 1.0;
    for (int k = 0; k <= kmax; ++k) {
      d.push_back(c * std::pow(body, alpha - k));
      c *= (alpha - k);
    }
    return d;
  });
}

}  // namespace superbos
