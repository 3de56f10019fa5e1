#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nsq/formula.hpp"

namespace nsq {

// Labels are opaque indices rendered "w<k>"; the root is always w0.
using Label = int;

std::string label_name(Label w);
Label parse_label(const std::string& s);  // "w3" -> 3

enum class Polarity { Input, Output };  // input = bullet, output = circle

struct Polarized {
  Formula formula;
  Polarity polarity;

  friend int compare(const Polarized& a, const Polarized& b) {
    if (a.polarity != b.polarity) return a.polarity == Polarity::Input ? -1 : 1;
    return compare(a.formula, b.formula);
  }
  friend bool operator==(const Polarized& a, const Polarized& b) { return compare(a, b) == 0; }
  friend bool operator<(const Polarized& a, const Polarized& b) { return compare(a, b) < 0; }
};

inline Polarized in(Formula f) { return {std::move(f), Polarity::Input}; }
inline Polarized out(Formula f) { return {std::move(f), Polarity::Output}; }

struct SequentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Canonical multiset: count map over a totally ordered key.
template <class T>
class Multiset {
public:
  void add(const T& x, int n = 1) {
    if (n == 0) return;
    int& c = m_[x];
    c += n;
    if (c <= 0) m_.erase(x);
  }
  // Removes one copy; throws if absent.
  void remove(const T& x) {
    auto it = m_.find(x);
    if (it == m_.end()) throw SequentError("multiset: removing absent element");
    if (--it->second == 0) m_.erase(it);
  }
  int count(const T& x) const {
    auto it = m_.find(x);
    return it == m_.end() ? 0 : it->second;
  }
  bool contains(const T& x) const { return count(x) > 0; }
  bool empty() const { return m_.empty(); }
  int total() const {
    int t = 0;
    for (auto& [k, c] : m_) t += c;
    return t;
  }
  auto begin() const { return m_.begin(); }
  auto end() const { return m_.end(); }
  friend bool operator==(const Multiset& a, const Multiset& b) { return a.m_ == b.m_; }
  friend bool operator<(const Multiset& a, const Multiset& b) { return a.m_ < b.m_; }

private:
  std::map<T, int> m_;
};

// One component of a nested sequent: label, signature (multiset of variables),
// multiset of polarized formulas, children. Children are kept sorted by label;
// labels are unique across the whole tree.
class Sequent {
public:
  Label label = 0;
  Multiset<std::string> sig;
  Multiset<Polarized> forms;
  std::vector<Sequent> kids;

  void add_kid(Sequent k);  // keeps label order, checks uniqueness

  friend bool operator==(const Sequent& a, const Sequent& b) {
    return a.label == b.label && a.sig == b.sig && a.forms == b.forms && a.kids == b.kids;
  }
  friend bool operator!=(const Sequent& a, const Sequent& b) { return !(a == b); }
};

std::vector<Label> labels_of(const Sequent& s);
bool has_label(const Sequent& s, Label w);
Label max_label(const Sequent& s);

// Tree nodes plus formula occurrences; used for the prover's size budget.
int sequent_size(const Sequent& s);

// All variables in signatures; all variables anywhere (signatures + formulas).
std::set<std::string> signature_vars(const Sequent& s);
std::set<std::string> all_sequent_vars(const Sequent& s);
std::set<std::string> predicates_of(const Sequent& s, std::map<std::string, int>& arities);

const Sequent* locate(const Sequent& s, Label w);  // subtree rooted at w, or null
const Sequent& locate_or_throw(const Sequent& s, Label w);

// Functional update of the component w (content and subtree both visible to fn).
Sequent update_at(const Sequent& s, Label w, const std::function<void(Sequent&)>& fn);
Sequent replace_at(const Sequent& s, Label w, const Sequent& node);

// w reaches u: u lies in the subtree rooted at w (inclusive).
bool reachable(const Sequent& s, Label w, Label u);
bool strictly_reachable(const Sequent& s, Label w, Label u);

// x occurs in the signature of some component u with u reaching w.
bool available(const Sequent& s, const std::string& x, Label w);

// The tree is a single path.
bool is_linear(const Sequent& s);

// Convenience builders (functional).
Sequent with_form(const Sequent& s, Label w, const Polarized& p);
Sequent without_form(const Sequent& s, Label w, const Polarized& p);
Sequent with_sig(const Sequent& s, Label w, const std::string& x, int n = 1);

// Tree surgery. All of these throw when the labels are not in the stated
// parent/child/sibling positions.
Sequent merge_child_into(const Sequent& s, Label parent, Label child);
Sequent nest_sibling(const Sequent& s, Label parent, Label target, Label mover);
Sequent merge_siblings(const Sequent& s, Label parent, Label kept, Label merged);
// Inserts a fresh empty component between parent and its child.
Sequent insert_between(const Sequent& s, Label parent, Label child, Label fresh);

// Propositional formula interpretation per the two recursive clauses;
// /\emptyset = top, \/emptyset = bot. Throws on first-order content.
Formula interpret_propositional(const Sequent& s);

// Textual syntax (bit-exact):
//   node := SIG ";" FORMS
//   SIG  := "-" | VAR ("," VAR)*
//   FORMS:= item ("," item)* | ""
//   item := formula "^i" | formula "^o" | "[" node "]" LABEL
// The root carries no label in the text and is w0.
std::string sequent_str(const Sequent& s);
Sequent parse_sequent(const std::string& text);
Sequent parse_sequent(const std::string& text, ArityTable& arities);

// Rename every occurrence of label `from` to `to` (which must be absent).
Sequent rename_label(const Sequent& s, Label from, Label to);

// Substitute variable y for x throughout (signatures and formulas).
Sequent substitute_sequent(const Sequent& s, const std::string& y, const std::string& x);

bool sequent_is_propositional(const Sequent& s);

// Equality with formulas compared up to renaming of bound variables.
bool sequent_alpha_equal(const Sequent& a, const Sequent& b);

}  // namespace nsq
