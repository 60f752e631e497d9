#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "superbos/grassmann.hpp"

namespace superbos {

// Row or column format (even|odd).
struct Format {
  int even = 0;
  int odd = 0;
  int size() const { return even + odd; }
  bool operator==(const Format&) const = default;
};

// Block matrix with Grassmann entries. Index k < format.even is an even
// (bosonic) row/column, the rest are odd.
class SuperMatrix {
public:
  SuperMatrix() = default;
  SuperMatrix(AlgebraPtr alg, Format rows, Format cols);

  static SuperMatrix identity(AlgebraPtr alg, Format f);
  static SuperMatrix from_complex(AlgebraPtr alg, Format rows, Format cols, const Eigen::MatrixXcd& m);
  // Square (p|q) matrix [[z, zeta], [omega, w]].
  static SuperMatrix from_blocks(const SuperMatrix& z, const SuperMatrix& zeta, const SuperMatrix& omega,
                                 const SuperMatrix& w);

  const AlgebraPtr& algebra() const { return alg_; }
  Format rows() const { return rows_; }
  Format cols() const { return cols_; }
  int nrows() const { return rows_.size(); }
  int ncols() const { return cols_.size(); }

  GrassmannNumber& operator()(int i, int j) { return e_[index(i, j)]; }
  const GrassmannNumber& operator()(int i, int j) const { return e_[index(i, j)]; }

  // True when the entry at (i, j) must be even in an even supermatrix.
  bool even_slot(int i, int j) const { return (i < rows_.even) == (j < cols_.even); }
  bool is_even() const;
  void require_even(const char* what) const;
  bool all_entries_even() const;
  bool is_zero() const;

  Eigen::MatrixXcd body() const;
  SuperMatrix soul() const;

  // Contiguous sub-block; the formats of the result are inherited.
  SuperMatrix block(int r0, int nr, int c0, int nc) const;
  SuperMatrix block_a() const { return block(0, rows_.even, 0, cols_.even); }
  SuperMatrix block_b() const { return block(0, rows_.even, cols_.even, cols_.odd); }
  SuperMatrix block_c() const { return block(rows_.even, rows_.odd, 0, cols_.even); }
  SuperMatrix block_d() const { return block(rows_.even, rows_.odd, cols_.even, cols_.odd); }

  SuperMatrix& operator+=(const SuperMatrix& o);
  SuperMatrix& operator-=(const SuperMatrix& o);
  SuperMatrix& operator*=(cplx s);

private:
  std::size_t index(int i, int j) const;

  AlgebraPtr alg_;
  Format rows_, cols_;
  std::vector<GrassmannNumber> e_;
};

SuperMatrix operator+(SuperMatrix a, const SuperMatrix& b);
SuperMatrix operator-(SuperMatrix a, const SuperMatrix& b);
SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b);
SuperMatrix operator*(SuperMatrix a, cplx s);
SuperMatrix operator*(const GrassmannNumber& s, const SuperMatrix& a);
SuperMatrix operator*(const SuperMatrix& a, const GrassmannNumber& s);

bool approx_equal(const SuperMatrix& a, const SuperMatrix& b, double tol);
SuperMatrix embed(const SuperMatrix& a, const AlgebraPtr& target);

// Inverse of any square matrix whose body is invertible (Neumann series in the
// nilpotent soul, which terminates).
SuperMatrix inverse(const SuperMatrix& x);
GrassmannNumber supertrace(const SuperMatrix& x);
// Determinant of a square matrix with pairwise commuting (even) entries.
GrassmannNumber det_even(const SuperMatrix& x);
// det(A - B D^-1 C) / det(D).
GrassmannNumber berezinian(const SuperMatrix& x);
// det(A) / det(D - C A^-1 B); needs A invertible as well. Used as a cross-check.
GrassmannNumber berezinian_via_a(const SuperMatrix& x);

// Top-left k×k block, of format (min(k,p) | max(0,k-p)).
SuperMatrix principal_minor(const SuperMatrix& z, int k);
// Δ_k(Z) = Ber([Z]_k); k is 1-based.
GrassmannNumber delta_k(const SuperMatrix& z, int k);

// m = (m_1..m_{p+q}); the first p entries are real, the last q integers.
class MultiIndex {
public:
  MultiIndex() = default;
  MultiIndex(int p, std::vector<double> m);
  static MultiIndex constant(int p, int q, double v);

  int p() const { return p_; }
  int q() const { return static_cast<int>(m_.size()) - p_; }
  int size() const { return static_cast<int>(m_.size()); }
  double operator[](int i) const { return m_.at(static_cast<std::size_t>(i)); }
  const std::vector<double>& values() const { return m_; }
  // Exponent of Δ_k (1-based k) in Δ_m: m_k - m_{k+1}, and m_{p+q} for the last.
  double delta_exponent(int k) const;

private:
  int p_ = 0;
  std::vector<double> m_;
};

// Δ_m = Δ_1^{m_1-m_2} ⋯ Δ_{p+q}^{m_{p+q}}. Factors with exponent zero are skipped,
// so only the minors that actually occur need invertible bodies.
GrassmannNumber delta_m(const SuperMatrix& z, const MultiIndex& m);

// Element of GL(p|q)×GL(p|q), or a full block matrix (A,B;C,D) acting by
// fractional linear transformations.
struct GroupElement {
  SuperMatrix a, d;
  std::optional<SuperMatrix> b, c;

  static GroupElement block_diagonal(SuperMatrix a, SuperMatrix d);
  static GroupElement full(SuperMatrix a, SuperMatrix b, SuperMatrix c, SuperMatrix d);
  bool is_block_diagonal() const { return !b.has_value(); }
};

// g.Z = (AZ+B)(CZ+D)^-1; AZD^-1 for block-diagonal g.
SuperMatrix act(const GroupElement& g, const SuperMatrix& z);
GroupElement compose(const GroupElement& g, const GroupElement& h);

// χ_m(t) = ∏_{j≤p} (a_j d_j^-1)^{m_j} ∏_{j≤q} (a_{p+j}^-1 d_{p+j})^{m_{p+j}}, read off
// the diagonals of A and D. For A lower and D upper triangular,
// Δ_m(A Z D^-1) = χ_m Δ_m(Z).
GrassmannNumber chi_m(const GroupElement& t, const MultiIndex& m);

struct LDU {
  SuperMatrix l, d, u;
};
// All principal minors have invertible bodies.
bool in_big_cell(const SuperMatrix& z, double rel_tol = 1e-12);
LDU ldu(const SuperMatrix& z);

// ϱ(Z) = det(z - ζ w^-1 ω)^q det(w - ω z^-1 ζ)^p.
GrassmannNumber vrho(const SuperMatrix& z);
// Ber(Z)^{q-p} det(z)^p det(w)^q.
GrassmannNumber vrho_via_ber(const SuperMatrix& z);

}  // namespace superbos
