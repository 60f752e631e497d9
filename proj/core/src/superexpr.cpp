#include "superbos/superexpr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "superbos/errors.hpp"

namespace superbos {

struct SuperExpr::Node {
  NodeKind kind;
  std::string name;
  int k = 0;
  double alpha = 0.0;
  std::optional<SuperMatrix> matrix;
  std::optional<GrassmannNumber> scalar;
  std::vector<SuperExpr> kids;
};

namespace {

const char* kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::ConstMatrix: return "mat";
    case NodeKind::ConstScalar: return "const";
    case NodeKind::Slot: return "slot";
    case NodeKind::MatMul: return "matmul";
    case NodeKind::Inv: return "inv";
    case NodeKind::Minor: return "minor";
    case NodeKind::Det: return "det";
    case NodeKind::Ber: return "ber";
    case NodeKind::Str: return "str";
    case NodeKind::Exp: return "exp";
    case NodeKind::Pow: return "pow";
    case NodeKind::Mul: return "mul";
    case NodeKind::Add: return "add";
    case NodeKind::Neg: return "neg";
  }
  return "?";
}

const SuperMatrix& as_matrix(const Value& v, NodeKind k) {
  if (auto* m = std::get_if<SuperMatrix>(&v)) return *m;
  throw DomainError(std::string(kind_name(k)) + ": expected a matrix operand");
}

// 1×1 blocks such as z or w for p = 1 or q = 1 double as scalars
bool is_unit_block(const SuperMatrix& m) { return m.nrows() == 1 && m.ncols() == 1 && m.even_slot(0, 0); }

GrassmannNumber as_scalar(const Value& v, NodeKind k) {
  if (auto* s = std::get_if<GrassmannNumber>(&v)) return *s;
  if (auto* m = std::get_if<SuperMatrix>(&v); m && is_unit_block(*m)) return (*m)(0, 0);
  throw DomainError(std::string(kind_name(k)) + ": expected a scalar operand");
}

GrassmannNumber to_alg(const GrassmannNumber& x, const AlgebraPtr& alg) {
  if (x.algebra() == alg || x.algebra()->same_as(*alg)) return x;
  return embed(x, alg);
}

SuperMatrix to_alg(const SuperMatrix& x, const AlgebraPtr& alg) {
  if (x.algebra() == alg || x.algebra()->same_as(*alg)) return x;
  return embed(x, alg);
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_complex(cplx c) {
  if (c.imag() == 0.0) return fmt_double(c.real());
  if (c.real() == 0.0) return fmt_double(c.imag()) + "i";
  std::string im = fmt_double(c.imag());
  return fmt_double(c.real()) + (im[0] == '-' ? "" : "+") + im + "i";
}

std::string fmt_entry(const GrassmannNumber& x) {
  std::string s;
  const auto& c = x.coefficients();
  for (Mask m = 0; m < c.size(); ++m) {
    if (c[m] == cplx{}) continue;
    if (!s.empty()) s += "+";
    if (m == 0)
      s += "(" + fmt_complex(c[m]) + ")";
    else
      s += "(" + fmt_complex(c[m]) + ")*" + x.algebra()->monomial_name(m);
  }
  return s.empty() ? "0" : s;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\n\r"), b = s.find_last_not_of(" \t\n\r");
  return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

double parse_real(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) throw DomainError("empty number");
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw DomainError("not a number: '" + t + "'");
  }
  if (used != t.size()) throw DomainError("not a number: '" + t + "'");
  return v;
}

double parse_phase(const std::string& text) {
  std::string t = trim(text);
  auto pos = t.find("pi");
  if (pos == std::string::npos) return parse_real(t);
  std::string coef = trim(t.substr(0, pos)), rest = trim(t.substr(pos + 2));
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  double c = 1.0;
  if (coef == "-")
    c = -1.0;
  else if (coef == "+")
    c = 1.0;
  else if (!coef.empty())
    c = parse_real(coef);
  double d = 1.0;
  if (!rest.empty()) {
    if (rest[0] != '/') throw DomainError("bad phase '" + t + "'");
    d = parse_real(rest.substr(1));
  }
  return c * std::numbers::pi / d;
}

// Split at top-level '+'/'-' that start a new term. The sign stays with the term.
std::vector<std::string> split_terms(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    bool sign = (ch == '+' || ch == '-') && depth == 0;
    if (sign && !cur.empty()) {
      std::string t = trim(cur);
      char prev = t.empty() ? '\0' : t.back();
      bool exponent = (prev == 'e' || prev == 'E') && t.size() >= 2 &&
                      (std::isdigit(static_cast<unsigned char>(t[t.size() - 2])) || t[t.size() - 2] == '.');
      if (!t.empty() && prev != '@' && prev != '*' && prev != '/' && !exponent) {
        out.push_back(t);
        cur.clear();
      }
    }
    cur += ch;
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

cplx parse_complex_term(const std::string& term) {
  std::string t = trim(term);
  if (t.empty()) throw DomainError("empty complex literal");
  auto at = t.find('@');
  if (at != std::string::npos) return std::polar(parse_real(t.substr(0, at)), parse_phase(t.substr(at + 1)));
  if (t.back() == 'i') {
    std::string c = trim(t.substr(0, t.size() - 1));
    if (!c.empty() && c.back() == '*') c.pop_back();
    if (c.empty() || c == "+") return {0.0, 1.0};
    if (c == "-") return {0.0, -1.0};
    return {0.0, parse_real(c)};
  }
  return parse_real(t);
}

int find_generator(const std::string& label, const AlgebraPtr& alg) {
  if (!alg) return -1;
  int i = alg->index_of(label);
  if (i >= 0) return i;
  if (label.size() > 1 && label[0] == 't') return alg->index_of("θ" + label.substr(1));
  return -1;
}

// Greedy longest-prefix split of juxtaposed labels, e.g. "θ1θ2".
std::vector<int> split_labels(const std::string& s, const AlgebraPtr& alg) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int best = -1;
    std::size_t best_len = 0;
    for (std::size_t len = s.size() - pos; len > 0; --len) {
      int g = find_generator(s.substr(pos, len), alg);
      if (g >= 0) {
        best = g;
        best_len = len;
        break;
      }
    }
    if (best < 0) throw DomainError("unknown generator in '" + s + "'");
    out.push_back(best);
    pos += best_len;
  }
  return out;
}

bool looks_numeric(const std::string& f) {
  if (f.empty()) return false;
  char c = f[0];
  return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+' || c == '(' || f == "i" ||
         (c == 'i' && f.size() == 1);
}

// --- s-expression reader ---------------------------------------------------

struct Sexp {
  bool list = false;
  bool quoted = false;
  std::string atom;
  std::vector<Sexp> items;
};

class Reader {
public:
  explicit Reader(const std::string& s) : s_(s) {}

  Sexp read() {
    skip();
    if (pos_ >= s_.size()) throw DomainError("unexpected end of expression");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Sexp l;
      l.list = true;
      for (;;) {
        skip();
        if (pos_ >= s_.size()) throw DomainError("unbalanced '(' in expression");
        if (s_[pos_] == ')') {
          ++pos_;
          return l;
        }
        l.items.push_back(read());
      }
    }
    if (c == ')') throw DomainError("unexpected ')' in expression");
    Sexp a;
    if (c == '"') {
      auto end = s_.find('"', pos_ + 1);
      if (end == std::string::npos) throw DomainError("unterminated string in expression");
      a.atom = s_.substr(pos_ + 1, end - pos_ - 1);
      a.quoted = true;
      pos_ = end + 1;
      return a;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '(' &&
           s_[pos_] != ')')
      ++pos_;
    a.atom = s_.substr(start, pos_ - start);
    return a;
  }

  void finish() {
    skip();
    if (pos_ != s_.size()) throw DomainError("trailing input after expression");
  }

private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  const std::string& s_;
  std::size_t pos_ = 0;
};

int as_int(const Sexp& s) {
  if (s.list) throw DomainError("expected an integer");
  double v = parse_real(s.atom);
  if (v != std::round(v)) throw DomainError("expected an integer, got '" + s.atom + "'");
  return static_cast<int>(v);
}

SuperExpr build(const Sexp& s, const AlgebraPtr& alg);

SuperExpr fold(NodeKind k, const Sexp& s, const AlgebraPtr& alg) {
  if (s.items.size() < 3) throw DomainError("form needs at least two operands");
  SuperExpr acc = build(s.items[1], alg);
  for (std::size_t i = 2; i < s.items.size(); ++i) {
    SuperExpr rhs = build(s.items[i], alg);
    if (k == NodeKind::MatMul)
      acc = SuperExpr::matmul(acc, rhs);
    else if (k == NodeKind::Mul)
      acc = SuperExpr::mul(acc, rhs);
    else
      acc = SuperExpr::add(acc, rhs);
  }
  return acc;
}

SuperMatrix literal_matrix(const Sexp& s, std::size_t first, const AlgebraPtr& alg) {
  if (s.items.size() != first + 3) throw DomainError("matrix literal is (mat p q \"text\")");
  int p = as_int(s.items[first]), q = as_int(s.items[first + 1]);
  return parse_matrix(s.items[first + 2].atom, {p, q}, {p, q}, alg ? alg : GrassmannAlgebra::make(0));
}

SuperExpr build(const Sexp& s, const AlgebraPtr& alg) {
  if (!s.list) {
    if (s.quoted) throw DomainError("stray string literal in expression");
    if (looks_numeric(s.atom)) return SuperExpr::constant(parse_complex(s.atom));
    return SuperExpr::slot(s.atom);
  }
  if (s.items.empty() || s.items[0].list) throw DomainError("empty or malformed form");
  const std::string& op = s.items[0].atom;
  auto unary = [&]() {
    if (s.items.size() != 2) throw DomainError("'" + op + "' takes one operand");
    return build(s.items[1], alg);
  };
  if (op == "matmul") return fold(NodeKind::MatMul, s, alg);
  if (op == "mul") return fold(NodeKind::Mul, s, alg);
  if (op == "add") return fold(NodeKind::Add, s, alg);
  if (op == "sub") {
    if (s.items.size() != 3) throw DomainError("'sub' takes two operands");
    return SuperExpr::add(build(s.items[1], alg), SuperExpr::neg(build(s.items[2], alg)));
  }
  if (op == "inv") return SuperExpr::inv(unary());
  if (op == "det") return SuperExpr::det(unary());
  if (op == "ber") return SuperExpr::ber(unary());
  if (op == "str") return SuperExpr::str(unary());
  if (op == "exp") return SuperExpr::exp(unary());
  if (op == "neg") return SuperExpr::neg(unary());
  if (op == "minor") {
    if (s.items.size() != 3) throw DomainError("'minor' is (minor k A)");
    return SuperExpr::minor(as_int(s.items[1]), build(s.items[2], alg));
  }
  if (op == "pow") {
    if (s.items.size() != 3 || s.items[1].list) throw DomainError("'pow' is (pow alpha s)");
    return SuperExpr::pow(parse_real(s.items[1].atom), build(s.items[2], alg));
  }
  if (op == "mat") return SuperExpr::constant(literal_matrix(s, 1, alg));
  if (op == "kernel") {
    if (s.items.size() == 2 && s.items[1].list && !s.items[1].items.empty() && s.items[1].items[0].atom == "mat")
      return laplace_kernel(literal_matrix(s.items[1], 1, alg));
    return laplace_kernel(literal_matrix(s, 1, alg));
  }
  if (op == "delta") {
    if (s.items.size() != 3) throw DomainError("'delta' is (delta p \"m1,m2,...\")");
    int p = as_int(s.items[1]);
    std::vector<double> m;
    std::stringstream ss(s.items[2].atom);
    std::string part;
    while (std::getline(ss, part, ',')) m.push_back(parse_real(part));
    return delta_m_expr(MultiIndex(p, m));
  }
  throw DomainError("unknown form '" + op + "'");
}

}  // namespace

SuperExpr SuperExpr::constant(SuperMatrix m) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::ConstMatrix;
  n->matrix = std::move(m);
  return SuperExpr(n);
}

SuperExpr SuperExpr::constant(GrassmannNumber s) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::ConstScalar;
  n->scalar = std::move(s);
  return SuperExpr(n);
}

SuperExpr SuperExpr::constant(cplx s) { return constant(GrassmannNumber(GrassmannAlgebra::make(0), s)); }

SuperExpr SuperExpr::slot(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Slot;
  n->name = std::move(name);
  return SuperExpr(n);
}

#define SUPERBOS_NODE(KIND, ...)          \
  auto n = std::make_shared<Node>();      \
  n->kind = NodeKind::KIND;               \
  n->kids = {__VA_ARGS__};                \
  for (const auto& kid : n->kids)         \
    if (!kid.valid()) throw DomainError("empty subexpression"); \
  return SuperExpr(n)

SuperExpr SuperExpr::matmul(SuperExpr a, SuperExpr b) { SUPERBOS_NODE(MatMul, std::move(a), std::move(b)); }
SuperExpr SuperExpr::inv(SuperExpr a) { SUPERBOS_NODE(Inv, std::move(a)); }
SuperExpr SuperExpr::det(SuperExpr a) { SUPERBOS_NODE(Det, std::move(a)); }
SuperExpr SuperExpr::ber(SuperExpr a) { SUPERBOS_NODE(Ber, std::move(a)); }
SuperExpr SuperExpr::str(SuperExpr a) { SUPERBOS_NODE(Str, std::move(a)); }
SuperExpr SuperExpr::exp(SuperExpr a) { SUPERBOS_NODE(Exp, std::move(a)); }
SuperExpr SuperExpr::mul(SuperExpr a, SuperExpr b) { SUPERBOS_NODE(Mul, std::move(a), std::move(b)); }
SuperExpr SuperExpr::add(SuperExpr a, SuperExpr b) { SUPERBOS_NODE(Add, std::move(a), std::move(b)); }
SuperExpr SuperExpr::neg(SuperExpr a) { SUPERBOS_NODE(Neg, std::move(a)); }

#undef SUPERBOS_NODE

SuperExpr SuperExpr::minor(int k, SuperExpr a) {
  if (k < 1) throw DomainError("minor index must be positive");
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Minor;
  n->k = k;
  n->kids = {std::move(a)};
  return SuperExpr(n);
}

SuperExpr SuperExpr::pow(double alpha, SuperExpr a) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Pow;
  n->alpha = alpha;
  n->kids = {std::move(a)};
  return SuperExpr(n);
}

NodeKind SuperExpr::kind() const {
  if (!node_) throw DomainError("empty expression");
  return node_->kind;
}

Value SuperExpr::eval(const Bindings& b) const {
  if (!node_) throw DomainError("empty expression");
  if (!b.algebra) throw DomainError("bindings without algebra");
  const Node& n = *node_;
  const NodeKind k = n.kind;
  switch (k) {
    case NodeKind::ConstMatrix: return to_alg(*n.matrix, b.algebra);
    case NodeKind::ConstScalar: return to_alg(*n.scalar, b.algebra);
    case NodeKind::Slot: {
      auto it = b.slots.find(n.name);
      if (it != b.slots.end()) return it->second;
      static const std::map<std::string, int> blocks = {{"z", 0}, {"zeta", 1}, {"omega", 2}, {"w", 3}};
      auto bl = blocks.find(n.name);
      auto y = b.slots.find("Y");
      if (bl != blocks.end() && y != b.slots.end()) {
        const SuperMatrix& ym = as_matrix(y->second, k);
        switch (bl->second) {
          case 0: return ym.block_a();
          case 1: return ym.block_b();
          case 2: return ym.block_c();
          default: return ym.block_d();
        }
      }
      int g = b.algebra->index_of(n.name);
      if (g >= 0) return GrassmannNumber::generator(b.algebra, g);
      throw DomainError("unbound slot '" + n.name + "'");
    }
    case NodeKind::MatMul:
      return as_matrix(n.kids[0].eval(b), k) * as_matrix(n.kids[1].eval(b), k);
    case NodeKind::Inv: {
      Value v = n.kids[0].eval(b);
      if (auto* s = std::get_if<GrassmannNumber>(&v)) return ginv(*s);
      return inverse(std::get<SuperMatrix>(v));
    }
    case NodeKind::Minor: return principal_minor(as_matrix(n.kids[0].eval(b), k), n.k);
    case NodeKind::Det: return det_even(as_matrix(n.kids[0].eval(b), k));
    case NodeKind::Ber: return berezinian(as_matrix(n.kids[0].eval(b), k));
    case NodeKind::Str: return supertrace(as_matrix(n.kids[0].eval(b), k));
    case NodeKind::Exp: return gexp(as_scalar(n.kids[0].eval(b), k));
    case NodeKind::Pow: return gpow_real(as_scalar(n.kids[0].eval(b), k), n.alpha);
    case NodeKind::Mul: {
      Value x = n.kids[0].eval(b), y = n.kids[1].eval(b);
      auto* xs = std::get_if<GrassmannNumber>(&x);
      auto* ys = std::get_if<GrassmannNumber>(&y);
      if (xs && ys) return *xs * *ys;
      if (xs) return *xs * std::get<SuperMatrix>(y);
      if (ys) return std::get<SuperMatrix>(x) * *ys;
      return std::get<SuperMatrix>(x) * std::get<SuperMatrix>(y);
    }
    case NodeKind::Add: {
      Value x = n.kids[0].eval(b), y = n.kids[1].eval(b);
      if (x.index() != y.index()) return as_scalar(x, k) + as_scalar(y, k);
      if (auto* xs = std::get_if<GrassmannNumber>(&x)) return *xs + std::get<GrassmannNumber>(y);
      return std::get<SuperMatrix>(x) + std::get<SuperMatrix>(y);
    }
    case NodeKind::Neg: {
      Value x = n.kids[0].eval(b);
      if (auto* xs = std::get_if<GrassmannNumber>(&x)) return -*xs;
      return std::get<SuperMatrix>(x) * cplx{-1.0};
    }
  }
  throw DomainError("corrupt expression");
}

GrassmannNumber SuperExpr::eval_scalar(const Bindings& b) const {
  Value v = eval(b);
  if (auto* s = std::get_if<GrassmannNumber>(&v)) return *s;
  return as_scalar(v, node_->kind);
}

std::string SuperExpr::to_string() const {
  if (!node_) return "()";
  const Node& n = *node_;
  switch (n.kind) {
    case NodeKind::ConstScalar: {
      // generator labels read back as slots, which resolve to generators
      const auto& s = *n.scalar;
      if (s.soul().is_zero()) return fmt_complex(s.body());
      std::string out = "(add 0";
      const auto& c = s.coefficients();
      for (Mask m = 0; m < c.size(); ++m) {
        if (c[m] == cplx{}) continue;
        out += " (mul " + fmt_complex(c[m]);
        for (int g = 0; g < s.algebra()->size(); ++g)
          if (m & (Mask{1} << g)) out += " " + s.algebra()->label(g);
        out += ")";
      }
      return out + ")";
    }
    case NodeKind::ConstMatrix: {
      const auto& m = *n.matrix;
      std::string t;
      for (int i = 0; i < m.nrows(); ++i) {
        if (i) t += ";";
        for (int j = 0; j < m.ncols(); ++j) t += (j ? "," : "") + fmt_entry(m(i, j));
      }
      return "(mat " + std::to_string(m.rows().even) + " " + std::to_string(m.rows().odd) + " \"" + t + "\")";
    }
    case NodeKind::Slot: return n.name;
    case NodeKind::Minor: return "(minor " + std::to_string(n.k) + " " + n.kids[0].to_string() + ")";
    case NodeKind::Pow: return "(pow " + fmt_double(n.alpha) + " " + n.kids[0].to_string() + ")";
    default: {
      std::string s = std::string("(") + kind_name(n.kind);
      for (const auto& kid : n.kids) s += " " + kid.to_string();
      return s + ")";
    }
  }
}

SuperExpr laplace_kernel(const SuperMatrix& x) {
  return SuperExpr::exp(SuperExpr::neg(SuperExpr::str(SuperExpr::matmul(SuperExpr::constant(x), SuperExpr::slot("Y")))));
}

SuperExpr ber_power(int n) { return SuperExpr::pow(n, SuperExpr::ber(SuperExpr::slot("Y"))); }

SuperExpr delta_m_expr(const MultiIndex& m) {
  SuperExpr acc;
  for (int k = 1; k <= m.size(); ++k) {
    double e = m.delta_exponent(k);
    if (e == 0.0) continue;
    SuperExpr f = SuperExpr::pow(e, SuperExpr::ber(SuperExpr::minor(k, SuperExpr::slot("Y"))));
    acc = acc.valid() ? SuperExpr::mul(acc, f) : f;
  }
  return acc.valid() ? acc : SuperExpr::constant(cplx{1.0});
}

cplx parse_complex(const std::string& text) {
  std::string t = trim(text);
  if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
  auto terms = split_terms(t);
  if (terms.empty()) throw DomainError("empty complex literal");
  cplx sum = 0.0;
  for (const auto& term : terms) sum += parse_complex_term(term);
  return sum;
}

GrassmannNumber parse_entry(const std::string& text, const AlgebraPtr& alg) {
  GrassmannNumber out(alg);
  std::string t = trim(text);
  if (t.empty()) throw DomainError("empty matrix entry");
  for (std::string term : split_terms(t)) {
    cplx coef = 1.0;
    if (term[0] == '+' || term[0] == '-') {
      if (term[0] == '-') coef = -1.0;
      term = trim(term.substr(1));
    }
    GrassmannNumber mono(alg, 1.0);
    std::vector<std::string> factors;
    int depth = 0;
    std::string cur;
    for (std::size_t k = 0; k < term.size(); ++k) {
      char ch = term[k];
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      // "r@0.5*pi" keeps its star
      bool phase = cur.find('@') != std::string::npos && term.compare(k + 1, 2, "pi") == 0;
      if (ch == '*' && depth == 0 && !phase) {
        factors.push_back(trim(cur));
        cur.clear();
      } else {
        cur += ch;
      }
    }
    factors.push_back(trim(cur));
    for (const auto& f : factors) {
      if (f.empty()) throw DomainError("empty factor in '" + text + "'");
      bool numeric = looks_numeric(f) || f.find('@') != std::string::npos;
      if (numeric) {
        // a literal may be glued to labels, e.g. "2θ1" or "0.5t1t2"
        std::size_t cut = f.size();
        if (f[0] != '(' && f.find('@') == std::string::npos) {
          std::size_t k = 0;
          while (k < f.size() && (std::isdigit(static_cast<unsigned char>(f[k])) || f[k] == '.' || f[k] == '-' ||
                                  f[k] == '+' || f[k] == 'e' || f[k] == 'E'))
            ++k;
          if (k < f.size() && f[k] == 'i') ++k;
          cut = k;
        }
        coef *= parse_complex(f.substr(0, cut));
        if (cut < f.size())
          for (int g : split_labels(f.substr(cut), alg)) mono = mono * GrassmannNumber::generator(alg, g);
      } else {
        for (int g : split_labels(f, alg)) mono = mono * GrassmannNumber::generator(alg, g);
      }
    }
    out += mono * coef;
  }
  return out;
}

SuperMatrix parse_matrix(const std::string& text, Format rows, Format cols, const AlgebraPtr& alg) {
  std::string t = trim(text);
  SuperMatrix m(alg, rows, cols);
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (ch == sep && depth == 0) {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    parts.push_back(cur);
    return parts;
  };
  if (t.rfind("diag:", 0) == 0) {
    auto parts = split(t.substr(5), ',');
    if (static_cast<int>(parts.size()) != m.nrows() || m.nrows() != m.ncols())
      throw DomainError("diag: needs " + std::to_string(m.nrows()) + " entries");
    for (int i = 0; i < m.nrows(); ++i) m(i, i) = parse_entry(parts[static_cast<std::size_t>(i)], alg);
    return m;
  }
  if (m.nrows() == 0 && m.ncols() == 0 && t.empty()) return m;
  auto rws = split(t, ';');
  if (static_cast<int>(rws.size()) != m.nrows()) throw DomainError("matrix literal has wrong number of rows");
  for (int i = 0; i < m.nrows(); ++i) {
    auto ent = split(rws[static_cast<std::size_t>(i)], ',');
    if (static_cast<int>(ent.size()) != m.ncols()) throw DomainError("matrix literal has wrong number of columns");
    for (int j = 0; j < m.ncols(); ++j) m(i, j) = parse_entry(ent[static_cast<std::size_t>(j)], alg);
  }
  return m;
}

SuperExpr parse_expr(const std::string& text, const AlgebraPtr& alg) {
  Reader r(text);
  Sexp s = r.read();
  r.finish();
  return build(s, alg);
}

}  // namespace superbos
