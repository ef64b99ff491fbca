#ifndef EXLAB_EXPR_HPP
#define EXLAB_EXPR_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace exlab {

// Canonical-form node kinds. Negation and division exist in the input grammar
// but canonicalize away: -e becomes (-1)*e and a/b becomes a*b^-1, so trees
// that are equal after flatten/sort/fold compare equal structurally.
enum class NodeKind { Constant, Variable, Func, Power, Product, Sum };

// `Sign` is internal: it only appears as the derivative of abs.
enum class FuncKind { Exp, Log, Sin, Cos, Sqrt, Abs, Sign };

const char* func_name(FuncKind f);

using Bindings = std::unordered_map<std::string, double>;

// Immutable symbolic expression over named scalar variables. Every Expr is in
// canonical form by construction: sums and products are flattened with
// like terms collected, constants folded, and children of commutative nodes
// sorted by a total structural order. The simplifier is deliberately weak
// (no factoring, no trig identities); identity-to-zero questions that the
// canonical form cannot settle go through zero_verdict() below.
class Expr {
 public:
  Expr();  // the constant 0

  static Expr constant(double v);
  static Expr variable(std::string name);
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr power(Expr base, Expr exponent);
  static Expr negate(Expr e);
  static Expr quotient(Expr numerator, Expr denominator);
  static Expr call(FuncKind f, Expr argument);

  NodeKind kind() const;
  double constant_value() const;
  const std::string& var_name() const;
  FuncKind func() const;
  const std::vector<Expr>& children() const;
  const Expr& base() const;
  const Expr& exponent() const;
  const Expr& argument() const;

  bool is_constant() const { return kind() == NodeKind::Constant; }
  bool is_zero() const;
  bool is_one() const;
  bool is_constant(double v) const;

  friend bool operator==(const Expr& a, const Expr& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Expr& a, const Expr& b) { return compare(a, b) != 0; }

  // Total structural order used for canonical sorting.
  static int compare(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Expr make(Node n);
  std::shared_ptr<const Node> node_;
};

std::set<std::string> free_vars(const Expr& e);
bool depends_on(const Expr& e, const std::string& var);

// Exact partial derivative; variables other than `var` are constants.
// d|x|/dx is sign(x) with sign(0) = 0 by convention.
Expr differentiate(const Expr& e, const std::string& var);

// Simultaneous substitution followed by canonicalization.
Expr substitute(const Expr& e, const std::map<std::string, Expr>& assignments);

// Throws UnboundVariableError / EvalDomainError with the offending name or
// subexpression in the message.
double evaluate(const Expr& e, const Bindings& b);

// Canonical text form; re-parsing yields a structurally equal tree.
std::string render(const Expr& e);

// expr := term (('+'|'-') term)*; term := factor (('*'|'/') factor)*;
// factor := atom ('^' atom)?; atom := number | ident | func '(' expr ')'
//         | '(' expr ')' | '-' atom.
// Throws InputError with column information on malformed input.
Expr parse(const std::string& text);

// Operator sugar for building trees in code.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

// Two-tier zero test. SymbolicZero: the canonical form is the constant 0.
// NumericZero: not syntactically zero, but |value| < 1e-9 at 20 random
// points. NonZero: carries the worst witness found.
enum class ZeroMode { SymbolicZero, NumericZero, NonZero };

struct ZeroCheck {
  ZeroMode mode = ZeroMode::SymbolicZero;
  Bindings witness;
  double witness_value = 0.0;
  bool is_zero() const { return mode != ZeroMode::NonZero; }
};

ZeroCheck zero_verdict(const Expr& e, std::uint64_t seed = 0);

const char* zero_mode_name(ZeroMode m);

}  // namespace exlab

#endif
