#include "superbos/supermatrix.hpp"

#include <algorithm>
#include <cmath>

#include "superbos/errors.hpp"

namespace superbos {

namespace {

void require_alg(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (!a || !b) throw DomainError("supermatrix without algebra");
  if (a != b && !a->same_as(*b)) throw DomainError("supermatrix algebra mismatch");
}

Format sub_format(Format f, int start, int n) {
  int lo = std::max(start, 0), hi = std::min(start + n, f.even);
  int ev = std::max(0, hi - lo);
  return {ev, n - ev};
}

}  // namespace

SuperMatrix::SuperMatrix(AlgebraPtr alg, Format rows, Format cols) : alg_(std::move(alg)), rows_(rows), cols_(cols) {
  if (!alg_) throw DomainError("null Grassmann algebra");
  if (rows.even < 0 || rows.odd < 0 || cols.even < 0 || cols.odd < 0) throw DomainError("negative format");
  e_.assign(static_cast<std::size_t>(rows.size() * cols.size()), GrassmannNumber(alg_));
}

std::size_t SuperMatrix::index(int i, int j) const {
  if (i < 0 || j < 0 || i >= nrows() || j >= ncols()) throw DomainError("supermatrix index out of range");
  return static_cast<std::size_t>(i * ncols() + j);
}

SuperMatrix SuperMatrix::identity(AlgebraPtr alg, Format f) {
  SuperMatrix m(std::move(alg), f, f);
  for (int i = 0; i < f.size(); ++i) m(i, i) += 1.0;
  return m;
}

SuperMatrix SuperMatrix::from_complex(AlgebraPtr alg, Format rows, Format cols, const Eigen::MatrixXcd& m) {
  SuperMatrix r(std::move(alg), rows, cols);
  if (m.rows() != r.nrows() || m.cols() != r.ncols()) throw DomainError("matrix shape does not match format");
  for (int i = 0; i < r.nrows(); ++i)
    for (int j = 0; j < r.ncols(); ++j) r(i, j).set(0, m(i, j));
  return r;
}

SuperMatrix SuperMatrix::from_blocks(const SuperMatrix& z, const SuperMatrix& zeta, const SuperMatrix& omega,
                                     const SuperMatrix& w) {
  int p = z.nrows(), q = w.nrows();
  if (z.ncols() != p || w.ncols() != q || zeta.nrows() != p || zeta.ncols() != q || omega.nrows() != q ||
      omega.ncols() != p)
    throw DomainError("block shapes do not fit a square supermatrix");
  SuperMatrix r(z.algebra(), {p, q}, {p, q});
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) r(i, j) = z(i, j);
    for (int j = 0; j < q; ++j) r(i, p + j) = zeta(i, j);
  }
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < p; ++j) r(p + i, j) = omega(i, j);
    for (int j = 0; j < q; ++j) r(p + i, p + j) = w(i, j);
  }
  return r;
}

bool SuperMatrix::is_even() const {
  for (int i = 0; i < nrows(); ++i)
    for (int j = 0; j < ncols(); ++j) {
      const auto& x = (*this)(i, j);
      if (even_slot(i, j) ? !x.is_even() : !x.is_odd()) return false;
    }
  return true;
}

void SuperMatrix::require_even(const char* what) const {
  if (!is_even()) throw DomainError(std::string(what) + ": supermatrix is not even");
}

bool SuperMatrix::all_entries_even() const {
  return std::all_of(e_.begin(), e_.end(), [](const GrassmannNumber& x) { return x.is_even(); });
}

bool SuperMatrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const GrassmannNumber& x) { return x.is_zero(); });
}

Eigen::MatrixXcd SuperMatrix::body() const {
  Eigen::MatrixXcd b(nrows(), ncols());
  for (int i = 0; i < nrows(); ++i)
    for (int j = 0; j < ncols(); ++j) b(i, j) = (*this)(i, j).body();
  return b;
}

SuperMatrix SuperMatrix::soul() const {
  SuperMatrix s = *this;
  for (auto& x : s.e_) x.set(0, 0.0);
  return s;
}

SuperMatrix SuperMatrix::block(int r0, int nr, int c0, int nc) const {
  if (r0 < 0 || c0 < 0 || nr < 0 || nc < 0 || r0 + nr > nrows() || c0 + nc > ncols())
    throw DomainError("block out of range");
  SuperMatrix b(alg_, sub_format(rows_, r0, nr), sub_format(cols_, c0, nc));
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

SuperMatrix& SuperMatrix::operator+=(const SuperMatrix& o) {
  require_alg(alg_, o.alg_);
  if (nrows() != o.nrows() || ncols() != o.ncols()) throw DomainError("supermatrix shape mismatch in sum");
  for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
  return *this;
}

SuperMatrix& SuperMatrix::operator-=(const SuperMatrix& o) {
  require_alg(alg_, o.alg_);
  if (nrows() != o.nrows() || ncols() != o.ncols()) throw DomainError("supermatrix shape mismatch in difference");
  for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
  return *this;
}

SuperMatrix& SuperMatrix::operator*=(cplx s) {
  for (auto& x : e_) x *= s;
  return *this;
}

SuperMatrix operator+(SuperMatrix a, const SuperMatrix& b) { return a += b; }
SuperMatrix operator-(SuperMatrix a, const SuperMatrix& b) { return a -= b; }
SuperMatrix operator*(SuperMatrix a, cplx s) { return a *= s; }

SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b) {
  require_alg(a.algebra(), b.algebra());
  if (a.ncols() != b.nrows()) throw DomainError("supermatrix shape mismatch in product");
  if (a.cols().even != b.rows().even) throw DomainError("supermatrix format mismatch in product");
  SuperMatrix r(a.algebra(), a.rows(), b.cols());
  for (int i = 0; i < a.nrows(); ++i)
    for (int k = 0; k < a.ncols(); ++k) {
      const auto& x = a(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < b.ncols(); ++j) {
        const auto& y = b(k, j);
        if (y.is_zero()) continue;
        r(i, j) += x * y;
      }
    }
  return r;
}

SuperMatrix operator*(const GrassmannNumber& s, const SuperMatrix& a) {
  SuperMatrix r = a;
  for (int i = 0; i < a.nrows(); ++i)
    for (int j = 0; j < a.ncols(); ++j) r(i, j) = s * a(i, j);
  return r;
}

SuperMatrix operator*(const SuperMatrix& a, const GrassmannNumber& s) {
  SuperMatrix r = a;
  for (int i = 0; i < a.nrows(); ++i)
    for (int j = 0; j < a.ncols(); ++j) r(i, j) = a(i, j) * s;
  return r;
}

bool approx_equal(const SuperMatrix& a, const SuperMatrix& b, double tol) {
  if (a.nrows() != b.nrows() || a.ncols() != b.ncols()) return false;
  for (int i = 0; i < a.nrows(); ++i)
    for (int j = 0; j < a.ncols(); ++j)
      if (!approx_equal(a(i, j), b(i, j), tol)) return false;
  return true;
}

SuperMatrix embed(const SuperMatrix& a, const AlgebraPtr& target) {
  SuperMatrix r(target, a.rows(), a.cols());
  for (int i = 0; i < a.nrows(); ++i)
    for (int j = 0; j < a.ncols(); ++j) r(i, j) = embed(a(i, j), target);
  return r;
}

SuperMatrix inverse(const SuperMatrix& x) {
  int n = x.nrows();
  if (x.ncols() != n) throw DomainError("inverse of a non-square supermatrix");
  Eigen::MatrixXcd b = x.body();
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(b);
  double scale = n ? b.cwiseAbs().maxCoeff() : 1.0;
  if (n && (!lu.isInvertible() || scale == 0.0 ||
            std::abs(lu.determinant()) <= 1e-14 * std::pow(scale, n)))
    throw DomainError("supermatrix body is singular");
  Eigen::MatrixXcd binv = n ? Eigen::MatrixXcd(lu.inverse()) : Eigen::MatrixXcd(0, 0);
  // rows and columns swap roles under inversion
  SuperMatrix x0inv = SuperMatrix::from_complex(x.algebra(), x.cols(), x.rows(), binv);
  SuperMatrix soul = x.soul();
  if (soul.is_zero()) return x0inv;
  SuperMatrix step = x0inv * soul * cplx{-1.0};
  SuperMatrix term = x0inv, sum = x0inv;
  for (int k = 0; k <= x.algebra()->size(); ++k) {
    term = step * term;
    if (term.is_zero()) break;
    sum += term;
  }
  return sum;
}

GrassmannNumber supertrace(const SuperMatrix& x) {
  if (x.rows() != x.cols()) throw DomainError("supertrace needs a square format");
  GrassmannNumber s(x.algebra());
  for (int i = 0; i < x.nrows(); ++i) {
    if (i < x.rows().even)
      s += x(i, i);
    else
      s -= x(i, i);
  }
  return s;
}

GrassmannNumber det_even(const SuperMatrix& x) {
  int n = x.nrows();
  if (x.ncols() != n) throw DomainError("determinant of a non-square matrix");
  if (!x.all_entries_even()) throw DomainError("determinant needs commuting (even) entries");
  std::vector<GrassmannNumber> w;
  w.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w.push_back(x(i, j));
  auto at = [&](int i, int j) -> GrassmannNumber& { return w[static_cast<std::size_t>(i * n + j)]; };
  GrassmannNumber det(x.algebra(), 1.0);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(at(i, k).body()) > std::abs(at(piv, k).body())) piv = i;
    if (std::abs(at(piv, k).body()) == 0.0) throw DomainError("determinant: singular body");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
      det *= -1.0;
    }
    GrassmannNumber pinv = ginv(at(k, k));
    det = det * at(k, k);
    for (int i = k + 1; i < n; ++i) {
      if (at(i, k).is_zero()) continue;
      GrassmannNumber f = at(i, k) * pinv;
      for (int j = k + 1; j < n; ++j)
        if (!at(k, j).is_zero()) at(i, j) -= f * at(k, j);
    }
  }
  return det;
}

GrassmannNumber berezinian(const SuperMatrix& x) {
  if (x.rows() != x.cols()) throw DomainError("Berezinian needs a square format");
  x.require_even("Berezinian");
  int p = x.rows().even, q = x.rows().odd;
  if (q == 0) return det_even(x);
  SuperMatrix d = x.block_d();
  if (p == 0) return ginv(det_even(d));
  SuperMatrix dinv = inverse(d);
  SuperMatrix s = x.block_a() - x.block_b() * dinv * x.block_c();
  return det_even(s) * ginv(det_even(d));
}

GrassmannNumber berezinian_via_a(const SuperMatrix& x) {
  if (x.rows() != x.cols()) throw DomainError("Berezinian needs a square format");
  x.require_even("Berezinian");
  int p = x.rows().even, q = x.rows().odd;
  if (q == 0) return det_even(x);
  if (p == 0) return ginv(det_even(x.block_d()));
  SuperMatrix a = x.block_a();
  SuperMatrix s = x.block_d() - x.block_c() * inverse(a) * x.block_b();
  return det_even(a) * ginv(det_even(s));
}

SuperMatrix principal_minor(const SuperMatrix& z, int k) {
  if (k < 1 || k > z.nrows() || k > z.ncols()) throw DomainError("principal minor index out of range");
  return z.block(0, k, 0, k);
}

GrassmannNumber delta_k(const SuperMatrix& z, int k) { return berezinian(principal_minor(z, k)); }

MultiIndex::MultiIndex(int p, std::vector<double> m) : p_(p), m_(std::move(m)) {
  if (p < 0 || p > static_cast<int>(m_.size())) throw DomainError("multi-index shorter than its boson part");
  for (std::size_t i = static_cast<std::size_t>(p); i < m_.size(); ++i)
    if (m_[i] != std::round(m_[i])) throw DomainError("fermion entries of a multi-index must be integers");
}

MultiIndex MultiIndex::constant(int p, int q, double v) {
  return MultiIndex(p, std::vector<double>(static_cast<std::size_t>(p + q), v));
}

double MultiIndex::delta_exponent(int k) const {
  if (k < 1 || k > size()) throw DomainError("multi-index position out of range");
  if (k == size()) return m_.back();
  return m_[static_cast<std::size_t>(k - 1)] - m_[static_cast<std::size_t>(k)];
}

GrassmannNumber delta_m(const SuperMatrix& z, const MultiIndex& m) {
  if (z.rows() != z.cols() || z.rows().even != m.p() || z.rows().odd != m.q())
    throw DomainError("multi-index does not match supermatrix format");
  GrassmannNumber r(z.algebra(), 1.0);
  for (int k = 1; k <= m.size(); ++k) {
    double e = m.delta_exponent(k);
    if (e == 0.0) continue;
    GrassmannNumber d = delta_k(z, k);
    r = r * (k <= m.p() ? gpow_real(d, e) : gpow(d, std::lround(e)));
  }
  return r;
}

GroupElement GroupElement::block_diagonal(SuperMatrix a, SuperMatrix d) {
  if (a.rows() != a.cols() || d.rows() != d.cols()) throw DomainError("group element blocks must be square");
  return {std::move(a), std::move(d), std::nullopt, std::nullopt};
}

GroupElement GroupElement::full(SuperMatrix a, SuperMatrix b, SuperMatrix c, SuperMatrix d) {
  return {std::move(a), std::move(d), std::move(b), std::move(c)};
}

SuperMatrix act(const GroupElement& g, const SuperMatrix& z) {
  if (g.is_block_diagonal()) return g.a * z * inverse(g.d);
  return (g.a * z + *g.b) * inverse(*g.c * z + g.d);
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
  if (g.is_block_diagonal() && h.is_block_diagonal()) return GroupElement::block_diagonal(g.a * h.a, g.d * h.d);
  auto zero_like = [](const SuperMatrix& a) { return SuperMatrix(a.algebra(), a.rows(), a.cols()); };
  SuperMatrix gb = g.b ? *g.b : zero_like(g.a), gc = g.c ? *g.c : zero_like(g.a);
  SuperMatrix hb = h.b ? *h.b : zero_like(h.a), hc = h.c ? *h.c : zero_like(h.a);
  return GroupElement::full(g.a * h.a + gb * hc, g.a * hb + gb * h.d, gc * h.a + g.d * hc, gc * hb + g.d * h.d);
}

GrassmannNumber chi_m(const GroupElement& t, const MultiIndex& m) {
  int n = m.size();
  if (t.a.nrows() != n || t.d.nrows() != n) throw DomainError("character: format mismatch");
  GrassmannNumber r(t.a.algebra(), 1.0);
  for (int j = 0; j < n; ++j) {
    if (m[j] == 0.0) continue;
    GrassmannNumber ratio = ginv(t.a(j, j)) * t.d(j, j);
    if (j < m.p())
      r = r * gpow_real(ginv(ratio), m[j]);
    else
      r = r * gpow(ratio, std::lround(m[j]));
  }
  return r;
}

bool in_big_cell(const SuperMatrix& z, double rel_tol) {
  int n = z.nrows();
  if (z.ncols() != n) return false;
  Eigen::MatrixXcd b = z.body();
  double scale = n ? b.cwiseAbs().maxCoeff() : 0.0;
  if (scale == 0.0) return n == 0;
  for (int k = 0; k < n; ++k) {
    if (std::abs(b(k, k)) <= rel_tol * scale) return false;
    for (int i = k + 1; i < n; ++i) {
      cplx f = b(i, k) / b(k, k);
      for (int j = k + 1; j < n; ++j) b(i, j) -= f * b(k, j);
    }
  }
  return true;
}

LDU ldu(const SuperMatrix& z) {
  if (z.rows() != z.cols()) throw DomainError("LDU needs a square format");
  if (!in_big_cell(z)) throw DomainError("LDU: point is outside the big cell");
  int n = z.nrows();
  SuperMatrix w = z;
  SuperMatrix l = SuperMatrix::identity(z.algebra(), z.rows());
  SuperMatrix u = SuperMatrix::identity(z.algebra(), z.rows());
  SuperMatrix d(z.algebra(), z.rows(), z.cols());
  for (int k = 0; k < n; ++k) {
    GrassmannNumber piv = w(k, k);
    GrassmannNumber pinv = ginv(piv);
    d(k, k) = piv;
    for (int i = k + 1; i < n; ++i) l(i, k) = w(i, k) * pinv;
    for (int j = k + 1; j < n; ++j) u(k, j) = pinv * w(k, j);
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) w(i, j) -= w(i, k) * pinv * w(k, j);
  }
  return {l, d, u};
}

GrassmannNumber vrho(const SuperMatrix& zm) {
  if (zm.rows() != zm.cols()) throw DomainError("ϱ needs a square format");
  zm.require_even("ϱ");
  int p = zm.rows().even, q = zm.rows().odd;
  GrassmannNumber r(zm.algebra(), 1.0);
  if (p == 0 || q == 0) return r;
  SuperMatrix z = zm.block_a(), zeta = zm.block_b(), omega = zm.block_c(), w = zm.block_d();
  GrassmannNumber t1 = det_even(z - zeta * inverse(w) * omega);
  GrassmannNumber t2 = det_even(w - omega * inverse(z) * zeta);
  return gpow(t1, q) * gpow(t2, p);
}

GrassmannNumber vrho_via_ber(const SuperMatrix& zm) {
  if (zm.rows() != zm.cols()) throw DomainError("ϱ needs a square format");
  int p = zm.rows().even, q = zm.rows().odd;
  GrassmannNumber r = gpow(berezinian(zm), q - p);
  if (p > 0) r = r * gpow(det_even(zm.block_a()), p);
  if (q > 0) r = r * gpow(det_even(zm.block_d()), q);
  return r;
}

}  // namespace superbos
