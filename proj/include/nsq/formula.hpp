#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsq {

// First-order formulas over unary-and-up predicates with variable arguments
// only (no function symbols, no constants). Propositional variables are the
// 0-ary predicates. Negation is not primitive; `top` is parser sugar for
// `p0 -> p0` over the reserved nullary predicate p0.
enum class Conn { Atom, Bottom, Or, And, Imp, Exists, Forall };

class Formula;

struct FormulaNode {
  Conn kind;
  std::string name;               // Atom: predicate name; quantifiers: bound var
  std::vector<std::string> args;  // Atom only
  std::shared_ptr<const FormulaNode> lhs, rhs;  // binary: both; quantifier: lhs = body
};

// Immutable value type; shared structure, safe to copy across threads.
class Formula {
public:
  Formula() = default;

  static Formula atom(std::string pred, std::vector<std::string> args = {});
  static Formula bottom();
  static Formula top();  // sugar: p0 -> p0
  static Formula orf(const Formula& a, const Formula& b);
  static Formula andf(const Formula& a, const Formula& b);
  static Formula imp(const Formula& a, const Formula& b);
  static Formula exists(std::string var, const Formula& body);
  static Formula forall(std::string var, const Formula& body);

  bool empty() const { return !node_; }
  Conn kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const std::vector<std::string>& args() const { return node_->args; }
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }
  Formula body() const { return Formula(node_->lhs); }
  const std::string& bound_var() const { return node_->name; }

  bool is_atom() const { return node_ && node_->kind == Conn::Atom; }
  bool is_quantifier() const {
    return node_ && (node_->kind == Conn::Exists || node_->kind == Conn::Forall);
  }
  bool is_propositional() const;  // no quantifiers, all atoms 0-ary

  std::string str() const;  // ASCII grammar, minimal parentheses

  friend int compare(const Formula& a, const Formula& b);
  friend bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Formula& a, const Formula& b) { return compare(a, b) != 0; }
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

private:
  explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const FormulaNode> node_;
};

// |p| = |bot| = 0; |a * b| = |a| + |b| + 1; |Qx a| = |a| + 1.
int complexity(const Formula& f);

// Variables with a free occurrence.
std::set<std::string> free_vars(const Formula& f);

// Every variable occurring at all: free, bound, or as a binder.
std::set<std::string> all_vars(const Formula& f);

// f(y/x): replace free x by y, alpha-renaming binders into the reserved
// prime namespace when y would be captured.
Formula substitute(const Formula& f, const std::string& y, const std::string& x);

bool alpha_equal(const Formula& a, const Formula& b);

// Renames bound variables to canonical positional names. The result is for
// comparison only; its binder names are not parseable identifiers.
Formula alpha_normal(const Formula& f);

struct ParseError : std::runtime_error {
  size_t pos;
  ParseError(const std::string& msg, size_t p)
      : std::runtime_error(msg + " at position " + std::to_string(p)), pos(p) {}
};

// Arity bookkeeping shared across every formula of one problem instance.
class ArityTable {
public:
  // Records pred/n; throws ParseError at `pos` on conflict with an earlier use.
  void record(const std::string& pred, size_t n, size_t pos);
  int arity_of(const std::string& pred) const;  // -1 when unknown
private:
  std::map<std::string, size_t> table_;
};

Formula parse_formula(const std::string& text);
Formula parse_formula(const std::string& text, ArityTable& arities);

}  // namespace nsq
