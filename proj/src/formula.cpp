#include "nsq/formula.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

namespace nsq {

namespace {

std::shared_ptr<const FormulaNode> mk(FormulaNode n) {
  return std::make_shared<const FormulaNode>(std::move(n));
}

}  // namespace

Formula Formula::atom(std::string pred, std::vector<std::string> args) {
  return Formula(mk({Conn::Atom, std::move(pred), std::move(args), nullptr, nullptr}));
}
Formula Formula::bottom() { return Formula(mk({Conn::Bottom, "", {}, nullptr, nullptr})); }
Formula Formula::top() { return imp(atom("p0"), atom("p0")); }
Formula Formula::orf(const Formula& a, const Formula& b) {
  return Formula(mk({Conn::Or, "", {}, a.node_, b.node_}));
}
Formula Formula::andf(const Formula& a, const Formula& b) {
  return Formula(mk({Conn::And, "", {}, a.node_, b.node_}));
}
Formula Formula::imp(const Formula& a, const Formula& b) {
  return Formula(mk({Conn::Imp, "", {}, a.node_, b.node_}));
}
Formula Formula::exists(std::string var, const Formula& body) {
  return Formula(mk({Conn::Exists, std::move(var), {}, body.node_, nullptr}));
}
Formula Formula::forall(std::string var, const Formula& body) {
  return Formula(mk({Conn::Forall, std::move(var), {}, body.node_, nullptr}));
}

bool Formula::is_propositional() const {
  if (!node_) return true;
  switch (node_->kind) {
    case Conn::Atom: return node_->args.empty();
    case Conn::Bottom: return true;
    case Conn::Exists:
    case Conn::Forall: return false;
    default: return lhs().is_propositional() && rhs().is_propositional();
  }
}

int compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return 0;
  if (!a.node_) return b.node_ ? -1 : 0;
  if (!b.node_) return 1;
  if (a.node_->kind != b.node_->kind)
    return static_cast<int>(a.node_->kind) < static_cast<int>(b.node_->kind) ? -1 : 1;
  switch (a.node_->kind) {
    case Conn::Atom: {
      if (int c = a.node_->name.compare(b.node_->name)) return c < 0 ? -1 : 1;
      if (a.node_->args != b.node_->args) return a.node_->args < b.node_->args ? -1 : 1;
      return 0;
    }
    case Conn::Bottom: return 0;
    case Conn::Exists:
    case Conn::Forall: {
      if (int c = a.node_->name.compare(b.node_->name)) return c < 0 ? -1 : 1;
      return compare(a.body(), b.body());
    }
    default: {
      if (int c = compare(a.lhs(), b.lhs())) return c;
      return compare(a.rhs(), b.rhs());
    }
  }
}

int complexity(const Formula& f) {
  switch (f.kind()) {
    case Conn::Atom:
    case Conn::Bottom: return 0;
    case Conn::Exists:
    case Conn::Forall: return complexity(f.body()) + 1;
    default: return complexity(f.lhs()) + complexity(f.rhs()) + 1;
  }
}

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case Conn::Atom:
      for (const auto& x : f.args())
        if (!bound.count(x)) out.insert(x);
      return;
    case Conn::Bottom: return;
    case Conn::Exists:
    case Conn::Forall: {
      bool added = bound.insert(f.bound_var()).second;
      collect_free(f.body(), bound, out);
      if (added) bound.erase(f.bound_var());
      return;
    }
    default:
      collect_free(f.lhs(), bound, out);
      collect_free(f.rhs(), bound, out);
      return;
  }
}

void collect_all(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Conn::Atom:
      out.insert(f.args().begin(), f.args().end());
      return;
    case Conn::Bottom: return;
    case Conn::Exists:
    case Conn::Forall:
      out.insert(f.bound_var());
      collect_all(f.body(), out);
      return;
    default:
      collect_all(f.lhs(), out);
      collect_all(f.rhs(), out);
      return;
  }
}

// Fresh binder name in the reserved prime namespace, clash-free against `avoid`.
std::string primed(const std::string& base, const std::set<std::string>& avoid) {
  for (int k = 1;; ++k) {
    std::string cand = base + "'" + std::to_string(k);
    if (!avoid.count(cand)) return cand;
  }
}

Formula subst(const Formula& f, const std::string& y, const std::string& x) {
  switch (f.kind()) {
    case Conn::Atom: {
      std::vector<std::string> args = f.args();
      for (auto& a : args)
        if (a == x) a = y;
      return Formula::atom(f.name(), std::move(args));
    }
    case Conn::Bottom: return f;
    case Conn::Exists:
    case Conn::Forall: {
      const std::string& v = f.bound_var();
      auto q = f.kind() == Conn::Exists ? Formula::exists : Formula::forall;
      if (v == x) return f;  // x is bound here; no free occurrence below
      if (v == y && free_vars(f.body()).count(x)) {
        // y would be captured: alpha-rename the binder first
        std::set<std::string> avoid = all_vars(f.body());
        avoid.insert(x);
        avoid.insert(y);
        std::string v2 = primed(v, avoid);
        Formula renamed = subst(f.body(), v2, v);
        return q(v2, subst(renamed, y, x));
      }
      return q(v, subst(f.body(), y, x));
    }
    default: {
      auto c = f.kind() == Conn::Or    ? Formula::orf
               : f.kind() == Conn::And ? Formula::andf
                                       : Formula::imp;
      return c(subst(f.lhs(), y, x), subst(f.rhs(), y, x));
    }
  }
}

bool alpha_eq(const Formula& a, const Formula& b, std::map<std::string, std::string>& ab,
              std::map<std::string, std::string>& ba) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Conn::Atom: {
      if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
      for (size_t i = 0; i < a.args().size(); ++i) {
        const std::string& xa = a.args()[i];
        const std::string& xb = b.args()[i];
        auto ia = ab.find(xa);
        auto ib = ba.find(xb);
        if (ia == ab.end() && ib == ba.end()) {
          if (xa != xb) return false;  // both free
        } else if (ia == ab.end() || ib == ba.end() || ia->second != xb || ib->second != xa) {
          return false;
        }
      }
      return true;
    }
    case Conn::Bottom: return true;
    case Conn::Exists:
    case Conn::Forall: {
      auto save_a = ab.find(a.bound_var()) != ab.end()
                        ? std::optional<std::string>(ab[a.bound_var()])
                        : std::nullopt;
      auto save_b = ba.find(b.bound_var()) != ba.end()
                        ? std::optional<std::string>(ba[b.bound_var()])
                        : std::nullopt;
      ab[a.bound_var()] = b.bound_var();
      ba[b.bound_var()] = a.bound_var();
      bool r = alpha_eq(a.body(), b.body(), ab, ba);
      if (save_a) ab[a.bound_var()] = *save_a; else ab.erase(a.bound_var());
      if (save_b) ba[b.bound_var()] = *save_b; else ba.erase(b.bound_var());
      return r;
    }
    default: return alpha_eq(a.lhs(), b.lhs(), ab, ba) && alpha_eq(a.rhs(), b.rhs(), ab, ba);
  }
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> all_vars(const Formula& f) {
  std::set<std::string> out;
  collect_all(f, out);
  return out;
}

Formula substitute(const Formula& f, const std::string& y, const std::string& x) {
  if (x == y) return f;
  return subst(f, y, x);
}

bool alpha_equal(const Formula& a, const Formula& b) {
  std::map<std::string, std::string> ab, ba;
  return alpha_eq(a, b, ab, ba);
}

namespace {

Formula normalize(const Formula& f, std::map<std::string, std::string>& env, int& counter) {
  switch (f.kind()) {
    case Conn::Atom: {
      std::vector<std::string> args = f.args();
      for (auto& a : args) {
        auto it = env.find(a);
        if (it != env.end()) a = it->second;
      }
      return Formula::atom(f.name(), std::move(args));
    }
    case Conn::Bottom: return f;
    case Conn::Exists:
    case Conn::Forall: {
      std::string canon = "!" + std::to_string(counter++);
      auto saved = env.find(f.bound_var()) != env.end()
                       ? std::optional<std::string>(env[f.bound_var()])
                       : std::nullopt;
      env[f.bound_var()] = canon;
      Formula body = normalize(f.body(), env, counter);
      if (saved) env[f.bound_var()] = *saved; else env.erase(f.bound_var());
      return f.kind() == Conn::Exists ? Formula::exists(canon, body)
                                      : Formula::forall(canon, body);
    }
    default: {
      auto c = f.kind() == Conn::Or    ? Formula::orf
               : f.kind() == Conn::And ? Formula::andf
                                       : Formula::imp;
      Formula l = normalize(f.lhs(), env, counter);
      Formula r = normalize(f.rhs(), env, counter);
      return c(l, r);
    }
  }
}

}  // namespace

Formula alpha_normal(const Formula& f) {
  std::map<std::string, std::string> env;
  int counter = 0;
  return normalize(f, env, counter);
}

// ---------------------------------------------------------------------------
// Printing. Precedence: -> (1, right-assoc) < | (2) < & (3) < quantifier/atom.

namespace {

void print(const Formula& f, int parent_prec, std::ostream& os) {
  switch (f.kind()) {
    case Conn::Atom: {
      os << f.name();
      if (!f.args().empty()) {
        os << "(";
        for (size_t i = 0; i < f.args().size(); ++i) {
          if (i) os << ",";
          os << f.args()[i];
        }
        os << ")";
      }
      return;
    }
    case Conn::Bottom: os << "bot"; return;
    case Conn::Exists:
    case Conn::Forall: {
      // a quantifier binds tightest over its body, which sits at the unary
      // level of the grammar: connectives below need parentheses, the
      // quantifier itself never does
      os << (f.kind() == Conn::Exists ? "exists " : "forall ") << f.bound_var() << ". ";
      print(f.body(), 4, os);
      return;
    }
    case Conn::Imp: {
      bool paren = parent_prec > 1;
      if (paren) os << "(";
      print(f.lhs(), 2, os);
      os << " -> ";
      print(f.rhs(), 1, os);
      if (paren) os << ")";
      return;
    }
    case Conn::Or: {
      bool paren = parent_prec > 2;
      if (paren) os << "(";
      print(f.lhs(), 2, os);
      os << " | ";
      print(f.rhs(), 3, os);
      if (paren) os << ")";
      return;
    }
    case Conn::And: {
      bool paren = parent_prec > 3;
      if (paren) os << "(";
      print(f.lhs(), 3, os);
      os << " & ";
      print(f.rhs(), 4, os);
      if (paren) os << ")";
      return;
    }
  }
}

}  // namespace

std::string Formula::str() const {
  std::ostringstream os;
  print(*this, 0, os);
  return os.str();
}

// ---------------------------------------------------------------------------
// Parser. Grammar (ASCII):
//   formula := imp
//   imp     := or ( "->" imp )?
//   or      := and ( "|" and )*
//   and     := unary ( "&" unary )*
//   unary   := ("forall"|"exists") VAR "." unary | atom
//   atom    := "bot" | "top" | IDENT ( "(" VAR ("," VAR)* ")" )? | "(" formula ")"
// IDENT/VAR = [a-zA-Z][a-zA-Z0-9_]*. Internally identifiers may also carry
// primes after the first character so generated names round-trip.

void ArityTable::record(const std::string& pred, size_t n, size_t pos) {
  auto it = table_.find(pred);
  if (it == table_.end()) {
    table_[pred] = n;
  } else if (it->second != n) {
    throw ParseError("predicate '" + pred + "' used with arity " + std::to_string(n) +
                         " but earlier with arity " + std::to_string(it->second),
                     pos);
  }
}

int ArityTable::arity_of(const std::string& pred) const {
  auto it = table_.find(pred);
  return it == table_.end() ? -1 : static_cast<int>(it->second);
}

namespace {

class Parser {
public:
  Parser(const std::string& s, ArityTable& arities) : s_(s), ar_(arities) {}

  Formula parse() {
    Formula f = imp();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
    return f;
  }

private:
  const std::string& s_;
  ArityTable& ar_;
  size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(const std::string& tok) {
    skip_ws();
    if (s_.compare(pos_, tok.size(), tok) == 0) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  bool peek_ident_char(size_t i) const {
    if (i >= s_.size()) return false;
    char c = s_[i];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }
  std::string ident() {
    skip_ws();
    if (pos_ >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_])))
      throw ParseError("expected identifier", pos_);
    size_t start = pos_;
    ++pos_;
    while (peek_ident_char(pos_)) ++pos_;
    return s_.substr(start, pos_ - start);
  }
  bool at_keyword(const std::string& kw) {
    skip_ws();
    if (s_.compare(pos_, kw.size(), kw) != 0) return false;
    return !peek_ident_char(pos_ + kw.size());
  }

  Formula imp() {
    Formula left = orf();
    if (eat("->")) return Formula::imp(left, imp());
    return left;
  }
  Formula orf() {
    Formula f = andf();
    while (true) {
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '|') {
        ++pos_;
        f = Formula::orf(f, andf());
      } else {
        return f;
      }
    }
  }
  Formula andf() {
    Formula f = unary();
    while (eat("&")) f = Formula::andf(f, unary());
    return f;
  }
  Formula unary() {
    if (at_keyword("forall") || at_keyword("exists")) {
      bool uni = at_keyword("forall");
      eat(uni ? "forall" : "exists");
      std::string v = ident();
      skip_ws();
      if (!eat(".")) throw ParseError("expected '.' after quantified variable", pos_);
      Formula body = unary();
      return uni ? Formula::forall(v, body) : Formula::exists(v, body);
    }
    return atom();
  }
  Formula atom() {
    skip_ws();
    if (eat("(")) {
      Formula f = imp();
      if (!eat(")")) throw ParseError("expected ')'", pos_);
      return f;
    }
    size_t at = pos_;
    if (at_keyword("bot")) {
      eat("bot");
      return Formula::bottom();
    }
    if (at_keyword("top")) {
      eat("top");
      ar_.record("p0", 0, at);
      return Formula::top();
    }
    std::string name = ident();
    std::vector<std::string> args;
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      args.push_back(ident());
      while (eat(",")) args.push_back(ident());
      if (!eat(")")) throw ParseError("expected ')' in argument list", pos_);
    }
    ar_.record(name, args.size(), at);
    return Formula::atom(name, std::move(args));
  }
};

}  // namespace

Formula parse_formula(const std::string& text, ArityTable& arities) {
  return Parser(text, arities).parse();
}

Formula parse_formula(const std::string& text) {
  ArityTable t;
  return parse_formula(text, t);
}

}  // namespace nsq
