#include "exlab/expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <utility>

#include "exlab/errors.hpp"
#include "exlab/rng.hpp"

namespace exlab {

struct Expr::Node {
  NodeKind kind = NodeKind::Constant;
  double value = 0.0;            // Constant
  std::string name;              // Variable
  FuncKind fn = FuncKind::Exp;   // Func
  std::vector<Expr> kids;        // Sum/Product children, Power [base, exp], Func [arg]
};

namespace {

bool is_integral(double v) {
  return std::isfinite(v) && std::floor(v) == v && std::fabs(v) < 9.0e15;
}

int kind_rank(NodeKind k) {
  switch (k) {
    case NodeKind::Constant: return 0;
    case NodeKind::Variable: return 1;
    case NodeKind::Func: return 2;
    case NodeKind::Power: return 3;
    case NodeKind::Product: return 4;
    case NodeKind::Sum: return 5;
  }
  return 6;
}

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return Expr::compare(a, b) < 0; }
};

}  // namespace

const char* func_name(FuncKind f) {
  switch (f) {
    case FuncKind::Exp: return "exp";
    case FuncKind::Log: return "log";
    case FuncKind::Sin: return "sin";
    case FuncKind::Cos: return "cos";
    case FuncKind::Sqrt: return "sqrt";
    case FuncKind::Abs: return "abs";
    case FuncKind::Sign: return "sign";
  }
  return "?";
}

Expr Expr::make(Node n) { return Expr(std::make_shared<const Node>(std::move(n))); }

Expr::Expr() : Expr(constant(0.0)) {}

NodeKind Expr::kind() const { return node_->kind; }
double Expr::constant_value() const { return node_->value; }
const std::string& Expr::var_name() const { return node_->name; }
FuncKind Expr::func() const { return node_->fn; }
const std::vector<Expr>& Expr::children() const { return node_->kids; }
const Expr& Expr::base() const { return node_->kids[0]; }
const Expr& Expr::exponent() const { return node_->kids[1]; }
const Expr& Expr::argument() const { return node_->kids[0]; }

bool Expr::is_zero() const { return is_constant() && node_->value == 0.0; }
bool Expr::is_one() const { return is_constant() && node_->value == 1.0; }
bool Expr::is_constant(double v) const { return is_constant() && node_->value == v; }

int Expr::compare(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return 0;
  int ra = kind_rank(a.kind());
  int rb = kind_rank(b.kind());
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (a.kind()) {
    case NodeKind::Constant: {
      double va = a.constant_value(), vb = b.constant_value();
      if (va < vb) return -1;
      if (va > vb) return 1;
      return 0;
    }
    case NodeKind::Variable:
      return a.var_name().compare(b.var_name());
    case NodeKind::Func: {
      if (a.func() != b.func())
        return static_cast<int>(a.func()) < static_cast<int>(b.func()) ? -1 : 1;
      return compare(a.argument(), b.argument());
    }
    default: {
      const auto& ka = a.children();
      const auto& kb = b.children();
      size_t n = std::min(ka.size(), kb.size());
      for (size_t i = 0; i < n; ++i) {
        int c = compare(ka[i], kb[i]);
        if (c != 0) return c;
      }
      if (ka.size() != kb.size()) return ka.size() < kb.size() ? -1 : 1;
      return 0;
    }
  }
}

Expr Expr::constant(double v) {
  Node n;
  n.kind = NodeKind::Constant;
  n.value = v == 0.0 ? 0.0 : v;  // normalize -0.0
  return make(std::move(n));
}

Expr Expr::variable(std::string name) {
  Node n;
  n.kind = NodeKind::Variable;
  n.name = std::move(name);
  return make(std::move(n));
}

namespace {

// (coefficient, key) decomposition of a canonical sum term. A null key means
// the term is a pure constant.
std::pair<double, Expr> split_term(const Expr& e, bool* is_const) {
  *is_const = false;
  if (e.is_constant()) {
    *is_const = true;
    return {e.constant_value(), e};
  }
  if (e.kind() == NodeKind::Product && e.children().front().is_constant()) {
    const auto& kids = e.children();
    double c = kids.front().constant_value();
    if (kids.size() == 2) return {c, kids[1]};
    std::vector<Expr> rest(kids.begin() + 1, kids.end());
    return {c, Expr::product(std::move(rest))};
  }
  return {1.0, e};
}

Expr attach_coefficient(double c, const Expr& key) {
  if (c == 1.0) return key;
  std::vector<Expr> kids;
  kids.push_back(Expr::constant(c));
  if (key.kind() == NodeKind::Product) {
    for (const auto& k : key.children()) kids.push_back(k);
  } else {
    kids.push_back(key);
  }
  return Expr::product(std::move(kids));
}

}  // namespace

Expr Expr::sum(std::vector<Expr> terms) {
  std::vector<Expr> flat;
  flat.reserve(terms.size());
  for (auto& t : terms) {
    if (t.kind() == NodeKind::Sum) {
      for (const auto& k : t.children()) flat.push_back(k);
    } else {
      flat.push_back(std::move(t));
    }
  }
  double const_total = 0.0;
  std::map<Expr, double, ExprLess> by_key;
  for (const auto& t : flat) {
    bool is_const = false;
    auto [c, key] = split_term(t, &is_const);
    if (is_const) {
      const_total += c;
    } else {
      by_key[key] += c;
    }
  }
  std::vector<Expr> out;
  if (const_total != 0.0) out.push_back(constant(const_total));
  for (const auto& [key, c] : by_key) {
    if (c == 0.0) continue;
    out.push_back(attach_coefficient(c, key));
  }
  if (out.empty()) return constant(0.0);
  if (out.size() == 1) return out.front();
  Node n;
  n.kind = NodeKind::Sum;
  n.kids = std::move(out);
  return make(std::move(n));
}

Expr Expr::product(std::vector<Expr> factors) {
  std::vector<Expr> flat;
  flat.reserve(factors.size());
  for (auto& f : factors) {
    if (f.kind() == NodeKind::Product) {
      for (const auto& k : f.children()) flat.push_back(k);
    } else {
      flat.push_back(std::move(f));
    }
  }
  double coeff = 1.0;
  // base -> accumulated constant exponent; non-constant exponents keep the
  // whole power node as an opaque base.
  std::map<Expr, double, ExprLess> by_base;
  for (const auto& f : flat) {
    if (f.is_constant()) {
      coeff *= f.constant_value();
    } else if (f.kind() == NodeKind::Power && f.exponent().is_constant()) {
      by_base[f.base()] += f.exponent().constant_value();
    } else {
      by_base[f] += 1.0;
    }
  }
  if (coeff == 0.0) return constant(0.0);
  std::vector<Expr> out;
  for (const auto& [b, e] : by_base) {
    if (e == 0.0) continue;
    Expr p = power(b, constant(e));
    if (p.is_constant()) {
      coeff *= p.constant_value();
    } else {
      out.push_back(p);
    }
  }
  if (coeff == 0.0) return constant(0.0);
  std::sort(out.begin(), out.end(), ExprLess{});
  if (out.empty()) return constant(coeff);
  if (coeff != 1.0) out.insert(out.begin(), constant(coeff));
  if (out.size() == 1) return out.front();
  Node n;
  n.kind = NodeKind::Product;
  n.kids = std::move(out);
  return make(std::move(n));
}

Expr Expr::power(Expr b, Expr e) {
  if (e.is_constant()) {
    double ev = e.constant_value();
    if (ev == 0.0) return constant(1.0);  // includes 0^0 -> 1 by convention
    if (ev == 1.0) return b;
    if (b.is_constant()) {
      double bv = b.constant_value();
      if (bv == 0.0 && ev < 0.0)
        throw InputError("invalid power: zero base with negative exponent");
      if (bv == 0.0) return constant(0.0);
      if (bv == 1.0) return constant(1.0);
      if (bv > 0.0 || is_integral(ev)) {
        double r = std::pow(bv, ev);
        if (std::isfinite(r)) return constant(r);
      }
      // negative base with fractional exponent stays symbolic; evaluate()
      // reports the domain error
    }
    if (b.kind() == NodeKind::Power && is_integral(ev)) {
      // (x^m)^k = x^(m*k) for integer k
      Expr inner_base = b.base();
      Expr inner_exp = b.exponent();
      return power(std::move(inner_base), product({std::move(inner_exp), e}));
    }
  } else if (b.is_one()) {
    return constant(1.0);
  }
  Node n;
  n.kind = NodeKind::Power;
  n.kids = {std::move(b), std::move(e)};
  return make(std::move(n));
}

Expr Expr::negate(Expr e) { return product({constant(-1.0), std::move(e)}); }

Expr Expr::quotient(Expr numerator, Expr denominator) {
  if (denominator.is_zero()) throw InputError("division by zero");
  return product({std::move(numerator), power(std::move(denominator), constant(-1.0))});
}

Expr Expr::call(FuncKind f, Expr argument) {
  if (argument.is_constant()) {
    double a = argument.constant_value();
    double r = 0.0;
    bool ok = true;
    switch (f) {
      case FuncKind::Exp: r = std::exp(a); break;
      case FuncKind::Log: ok = a > 0.0; r = ok ? std::log(a) : 0.0; break;
      case FuncKind::Sin: r = std::sin(a); break;
      case FuncKind::Cos: r = std::cos(a); break;
      case FuncKind::Sqrt: ok = a >= 0.0; r = ok ? std::sqrt(a) : 0.0; break;
      case FuncKind::Abs: r = std::fabs(a); break;
      case FuncKind::Sign: r = (a > 0.0) - (a < 0.0); break;
    }
    if (ok && std::isfinite(r)) return constant(r);
  }
  Node n;
  n.kind = NodeKind::Func;
  n.fn = f;
  n.kids = {std::move(argument)};
  return make(std::move(n));
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, Expr::negate(b)}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::quotient(a, b); }
Expr operator-(const Expr& a) { return Expr::negate(a); }

namespace {

void collect_vars(const Expr& e, std::set<std::string>& out) {
  switch (e.kind()) {
    case NodeKind::Constant: return;
    case NodeKind::Variable: out.insert(e.var_name()); return;
    default:
      for (const auto& k : e.children()) collect_vars(k, out);
  }
}

}  // namespace

std::set<std::string> free_vars(const Expr& e) {
  std::set<std::string> out;
  collect_vars(e, out);
  return out;
}

bool depends_on(const Expr& e, const std::string& var) {
  switch (e.kind()) {
    case NodeKind::Constant: return false;
    case NodeKind::Variable: return e.var_name() == var;
    default:
      for (const auto& k : e.children())
        if (depends_on(k, var)) return true;
      return false;
  }
}

Expr differentiate(const Expr& e, const std::string& var) {
  switch (e.kind()) {
    case NodeKind::Constant:
      return Expr::constant(0.0);
    case NodeKind::Variable:
      return Expr::constant(e.var_name() == var ? 1.0 : 0.0);
    case NodeKind::Sum: {
      std::vector<Expr> parts;
      for (const auto& k : e.children()) parts.push_back(differentiate(k, var));
      return Expr::sum(std::move(parts));
    }
    case NodeKind::Product: {
      const auto& kids = e.children();
      std::vector<Expr> terms;
      for (size_t i = 0; i < kids.size(); ++i) {
        if (!depends_on(kids[i], var)) continue;
        std::vector<Expr> factors;
        for (size_t j = 0; j < kids.size(); ++j)
          factors.push_back(j == i ? differentiate(kids[j], var) : kids[j]);
        terms.push_back(Expr::product(std::move(factors)));
      }
      return Expr::sum(std::move(terms));
    }
    case NodeKind::Power: {
      const Expr& b = e.base();
      const Expr& ex = e.exponent();
      Expr db = differentiate(b, var);
      if (ex.is_constant()) {
        double ev = ex.constant_value();
        return Expr::product(
            {ex, Expr::power(b, Expr::constant(ev - 1.0)), std::move(db)});
      }
      if (!depends_on(ex, var)) {
        return Expr::product(
            {ex, Expr::power(b, Expr::sum({ex, Expr::constant(-1.0)})), std::move(db)});
      }
      Expr dex = differentiate(ex, var);
      Expr left = Expr::product({std::move(dex), Expr::call(FuncKind::Log, b)});
      Expr right = Expr::product({ex, std::move(db), Expr::power(b, Expr::constant(-1.0))});
      return Expr::product({e, Expr::sum({std::move(left), std::move(right)})});
    }
    case NodeKind::Func: {
      const Expr& a = e.argument();
      Expr da = differentiate(a, var);
      switch (e.func()) {
        case FuncKind::Exp:
          return Expr::product({Expr::call(FuncKind::Exp, a), std::move(da)});
        case FuncKind::Log:
          return Expr::product({std::move(da), Expr::power(a, Expr::constant(-1.0))});
        case FuncKind::Sin:
          return Expr::product({Expr::call(FuncKind::Cos, a), std::move(da)});
        case FuncKind::Cos:
          return Expr::negate(Expr::product({Expr::call(FuncKind::Sin, a), std::move(da)}));
        case FuncKind::Sqrt:
          return Expr::product({Expr::constant(0.5), std::move(da),
                                Expr::power(Expr::call(FuncKind::Sqrt, a), Expr::constant(-1.0))});
        case FuncKind::Abs:
          // sign(x) with sign(0) = 0, the documented convention for |x|'
          return Expr::product({Expr::call(FuncKind::Sign, a), std::move(da)});
        case FuncKind::Sign:
          return Expr::constant(0.0);
      }
      return Expr::constant(0.0);
    }
  }
  return Expr::constant(0.0);
}

Expr substitute(const Expr& e, const std::map<std::string, Expr>& assignments) {
  switch (e.kind()) {
    case NodeKind::Constant:
      return e;
    case NodeKind::Variable: {
      auto it = assignments.find(e.var_name());
      return it == assignments.end() ? e : it->second;
    }
    case NodeKind::Sum: {
      std::vector<Expr> kids;
      for (const auto& k : e.children()) kids.push_back(substitute(k, assignments));
      return Expr::sum(std::move(kids));
    }
    case NodeKind::Product: {
      std::vector<Expr> kids;
      for (const auto& k : e.children()) kids.push_back(substitute(k, assignments));
      return Expr::product(std::move(kids));
    }
    case NodeKind::Power:
      return Expr::power(substitute(e.base(), assignments),
                         substitute(e.exponent(), assignments));
    case NodeKind::Func:
      return Expr::call(e.func(), substitute(e.argument(), assignments));
  }
  return e;
}

double evaluate(const Expr& e, const Bindings& b) {
  switch (e.kind()) {
    case NodeKind::Constant:
      return e.constant_value();
    case NodeKind::Variable: {
      auto it = b.find(e.var_name());
      if (it == b.end()) throw UnboundVariableError("unbound variable '" + e.var_name() + "'");
      return it->second;
    }
    case NodeKind::Sum: {
      double s = 0.0;
      for (const auto& k : e.children()) s += evaluate(k, b);
      return s;
    }
    case NodeKind::Product: {
      double p = 1.0;
      for (const auto& k : e.children()) p *= evaluate(k, b);
      return p;
    }
    case NodeKind::Power: {
      double base = evaluate(e.base(), b);
      double ex = evaluate(e.exponent(), b);
      if (base == 0.0 && ex < 0.0)
        throw EvalDomainError("domain error in " + render(e) + ": zero base, negative exponent");
      if (base < 0.0 && !is_integral(ex))
        throw EvalDomainError("domain error in " + render(e) +
                              ": negative base, non-integer exponent");
      return std::pow(base, ex);
    }
    case NodeKind::Func: {
      double a = evaluate(e.argument(), b);
      switch (e.func()) {
        case FuncKind::Exp: return std::exp(a);
        case FuncKind::Log:
          if (a <= 0.0)
            throw EvalDomainError("domain error in " + render(e) + ": log of non-positive value");
          return std::log(a);
        case FuncKind::Sin: return std::sin(a);
        case FuncKind::Cos: return std::cos(a);
        case FuncKind::Sqrt:
          if (a < 0.0)
            throw EvalDomainError("domain error in " + render(e) + ": sqrt of negative value");
          return std::sqrt(a);
        case FuncKind::Abs: return std::fabs(a);
        case FuncKind::Sign: return static_cast<double>((a > 0.0) - (a < 0.0));
      }
      return 0.0;
    }
  }
  return 0.0;
}

namespace {

std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void render_into(const Expr& e, std::string& out);

void render_child(const Expr& e, std::string& out, bool parens) {
  if (parens) {
    out += '(';
    render_into(e, out);
    out += ')';
  } else {
    render_into(e, out);
  }
}

bool is_atomic(const Expr& e) {
  return e.kind() == NodeKind::Variable || e.kind() == NodeKind::Func ||
         (e.kind() == NodeKind::Constant && e.constant_value() >= 0.0);
}

void render_into(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case NodeKind::Constant:
      out += format_double(e.constant_value());
      return;
    case NodeKind::Variable:
      out += e.var_name();
      return;
    case NodeKind::Func:
      out += func_name(e.func());
      out += '(';
      render_into(e.argument(), out);
      out += ')';
      return;
    case NodeKind::Power:
      render_child(e.base(), out, !is_atomic(e.base()));
      out += '^';
      render_child(e.exponent(), out, !is_atomic(e.exponent()));
      return;
    case NodeKind::Product: {
      const auto& kids = e.children();
      size_t start = 0;
      if (kids.front().is_constant(-1.0)) {
        out += '-';
        start = 1;
      }
      for (size_t i = start; i < kids.size(); ++i) {
        if (i > start) out += '*';
        render_child(kids[i], out, kids[i].kind() == NodeKind::Sum);
      }
      return;
    }
    case NodeKind::Sum: {
      const auto& kids = e.children();
      render_into(kids[0], out);
      for (size_t i = 1; i < kids.size(); ++i) {
        const Expr& t = kids[i];
        if (t.is_constant() && t.constant_value() < 0.0) {
          out += " - ";
          out += format_double(-t.constant_value());
        } else if (t.kind() == NodeKind::Product && t.children().front().is_constant() &&
                   t.children().front().constant_value() < 0.0) {
          out += " - ";
          render_into(Expr::negate(t), out);
        } else {
          out += " + ";
          render_into(t, out);
        }
      }
      return;
    }
  }
}

}  // namespace

std::string render(const Expr& e) {
  std::string out;
  render_into(e, out);
  return out;
}

ZeroCheck zero_verdict(const Expr& e, std::uint64_t seed) {
  ZeroCheck res;
  if (e.is_zero()) {
    res.mode = ZeroMode::SymbolicZero;
    return res;
  }
  auto vars = free_vars(e);
  Rng rng(seed ^ 0x5eed5eedULL);
  double worst = 0.0;
  Bindings worst_bindings;
  const int points = 20;
  for (int i = 0; i < points; ++i) {
    Bindings b;
    double v = 0.0;
    bool done = false;
    for (int attempt = 0; attempt < 50 && !done; ++attempt) {
      b.clear();
      // first try a symmetric box, then positive ranges for domain-limited
      // expressions (log, sqrt, negative powers)
      for (const auto& name : vars)
        b[name] = attempt == 0 ? rng.uniform(-2.0, 2.0) : rng.uniform(0.05, 2.05);
      try {
        v = evaluate(e, b);
        done = true;
      } catch (const EvalDomainError&) {
        if (attempt == 49) throw;
      }
    }
    if (std::fabs(v) > worst) {
      worst = std::fabs(v);
      worst_bindings = b;
    }
  }
  if (worst < 1e-9) {
    res.mode = ZeroMode::NumericZero;
  } else {
    res.mode = ZeroMode::NonZero;
    res.witness = std::move(worst_bindings);
    res.witness_value = worst;
  }
  return res;
}

const char* zero_mode_name(ZeroMode m) {
  switch (m) {
    case ZeroMode::SymbolicZero: return "symbolic-zero";
    case ZeroMode::NumericZero: return "numeric-zero";
    case ZeroMode::NonZero: return "violated";
  }
  return "?";
}

}  // namespace exlab
