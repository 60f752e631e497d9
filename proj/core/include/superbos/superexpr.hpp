#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "superbos/supermatrix.hpp"

namespace superbos {

using Value = std::variant<GrassmannNumber, SuperMatrix>;

enum class NodeKind { ConstMatrix, ConstScalar, Slot, MatMul, Inv, Minor, Det, Ber, Str, Exp, Pow, Mul, Add, Neg };

// Slot names understood by evaluation: "Y" (full point), its blocks "z", "zeta",
// "omega", "w" (derived from Y when not bound), plus anything bound by the caller.
// An unbound name that is a generator label of the binding algebra evaluates to
// that generator.
struct Bindings {
  AlgebraPtr algebra;
  std::map<std::string, Value> slots;
};

class SuperExpr {
public:
  SuperExpr() = default;

  static SuperExpr constant(SuperMatrix m);
  static SuperExpr constant(GrassmannNumber s);
  static SuperExpr constant(cplx s);
  static SuperExpr slot(std::string name);
  static SuperExpr matmul(SuperExpr a, SuperExpr b);
  static SuperExpr inv(SuperExpr a);
  static SuperExpr minor(int k, SuperExpr a);
  static SuperExpr det(SuperExpr a);
  static SuperExpr ber(SuperExpr a);
  static SuperExpr str(SuperExpr a);
  static SuperExpr exp(SuperExpr a);
  static SuperExpr pow(double alpha, SuperExpr a);
  static SuperExpr mul(SuperExpr a, SuperExpr b);
  static SuperExpr add(SuperExpr a, SuperExpr b);
  static SuperExpr neg(SuperExpr a);

  bool valid() const { return static_cast<bool>(node_); }
  NodeKind kind() const;

  Value eval(const Bindings& b) const;
  // Evaluates and insists on a scalar result.
  GrassmannNumber eval_scalar(const Bindings& b) const;

  // Prefix form, parseable by parse_expr.
  std::string to_string() const;

private:
  struct Node;
  explicit SuperExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// e^{-str(x Y)}.
SuperExpr laplace_kernel(const SuperMatrix& x);
// Ber(Y)^n.
SuperExpr ber_power(int n);
// Δ_m(Y) assembled from minors, Berezinians and powers.
SuperExpr delta_m_expr(const MultiIndex& m);

// Complex literal: "2", "-1.5", "3i", "-i", "1.5+2i", "r@phase" with phase a
// number or a multiple of pi such as "pi/4", "-2pi/3", "0.5*pi".
cplx parse_complex(const std::string& text);

// Matrix text: "diag:a,b,..." or row-major "a,b;c,d". Entries are sums of
// terms, each term a product of a complex literal and generator labels, e.g.
// "2+θ1θ2" or "0.5*θ1". Labels may also be written t1, t2, … for θ1, θ2, ….
SuperMatrix parse_matrix(const std::string& text, Format rows, Format cols, const AlgebraPtr& alg);
GrassmannNumber parse_entry(const std::string& text, const AlgebraPtr& alg);

// Prefix grammar, see README. Matrix literals inside expressions are resolved
// against `alg` (generator labels) and need an explicit format:
//   (mat p q "diag:2,1")
SuperExpr parse_expr(const std::string& text, const AlgebraPtr& alg);

}  // namespace superbos
