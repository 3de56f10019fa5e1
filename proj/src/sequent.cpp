#include "nsq/sequent.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace nsq {

std::string label_name(Label w) { return "w" + std::to_string(w); }

Label parse_label(const std::string& s) {
  if (s.size() < 2 || s[0] != 'w') throw SequentError("bad label '" + s + "'");
  for (size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw SequentError("bad label '" + s + "'");
  return std::stoi(s.substr(1));
}

void Sequent::add_kid(Sequent k) {
  auto pos = std::lower_bound(kids.begin(), kids.end(), k.label,
                              [](const Sequent& a, Label l) { return a.label < l; });
  if (pos != kids.end() && pos->label == k.label)
    throw SequentError("duplicate component label " + label_name(k.label));
  kids.insert(pos, std::move(k));
}

namespace {

void collect_labels(const Sequent& s, std::vector<Label>& out) {
  out.push_back(s.label);
  for (const auto& k : s.kids) collect_labels(k, out);
}

}  // namespace

std::vector<Label> labels_of(const Sequent& s) {
  std::vector<Label> out;
  collect_labels(s, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool has_label(const Sequent& s, Label w) { return locate(s, w) != nullptr; }

Label max_label(const Sequent& s) {
  Label m = s.label;
  for (const auto& k : s.kids) m = std::max(m, max_label(k));
  return m;
}

int sequent_size(const Sequent& s) {
  int n = 1 + s.forms.total() + s.sig.total();
  for (const auto& k : s.kids) n += sequent_size(k);
  return n;
}

std::set<std::string> signature_vars(const Sequent& s) {
  std::set<std::string> out;
  for (const auto& [x, c] : s.sig) out.insert(x);
  for (const auto& k : s.kids) {
    auto sub = signature_vars(k);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

std::set<std::string> all_sequent_vars(const Sequent& s) {
  std::set<std::string> out = signature_vars(s);
  std::function<void(const Sequent&)> walk = [&](const Sequent& n) {
    for (const auto& [p, c] : n.forms) {
      auto vs = all_vars(p.formula);
      out.insert(vs.begin(), vs.end());
    }
    for (const auto& k : n.kids) walk(k);
  };
  walk(s);
  return out;
}

std::set<std::string> predicates_of(const Sequent& s, std::map<std::string, int>& arities) {
  std::set<std::string> out;
  std::function<void(const Formula&)> walkf = [&](const Formula& f) {
    switch (f.kind()) {
      case Conn::Atom:
        out.insert(f.name());
        arities[f.name()] = static_cast<int>(f.args().size());
        return;
      case Conn::Bottom: return;
      case Conn::Exists:
      case Conn::Forall: walkf(f.body()); return;
      default: walkf(f.lhs()); walkf(f.rhs()); return;
    }
  };
  std::function<void(const Sequent&)> walk = [&](const Sequent& n) {
    for (const auto& [p, c] : n.forms) walkf(p.formula);
    for (const auto& k : n.kids) walk(k);
  };
  walk(s);
  return out;
}

const Sequent* locate(const Sequent& s, Label w) {
  if (s.label == w) return &s;
  for (const auto& k : s.kids)
    if (const Sequent* r = locate(k, w)) return r;
  return nullptr;
}

const Sequent& locate_or_throw(const Sequent& s, Label w) {
  const Sequent* p = locate(s, w);
  if (!p) throw SequentError("unknown label " + label_name(w));
  return *p;
}

namespace {

bool update_rec(Sequent& s, Label w, const std::function<void(Sequent&)>& fn) {
  if (s.label == w) {
    fn(s);
    return true;
  }
  for (auto& k : s.kids)
    if (update_rec(k, w, fn)) return true;
  return false;
}

}  // namespace

Sequent update_at(const Sequent& s, Label w, const std::function<void(Sequent&)>& fn) {
  Sequent t = s;
  if (!update_rec(t, w, fn)) throw SequentError("unknown label " + label_name(w));
  // fn may have reordered/added children
  std::function<void(Sequent&)> normalize = [&](Sequent& n) {
    std::sort(n.kids.begin(), n.kids.end(),
              [](const Sequent& a, const Sequent& b) { return a.label < b.label; });
    for (auto& k : n.kids) normalize(k);
  };
  normalize(t);
  return t;
}

Sequent replace_at(const Sequent& s, Label w, const Sequent& node) {
  return update_at(s, w, [&](Sequent& n) { n = node; });
}

bool reachable(const Sequent& s, Label w, Label u) {
  const Sequent* root = locate(s, w);
  if (!root) throw SequentError("unknown label " + label_name(w));
  if (!has_label(s, u)) throw SequentError("unknown label " + label_name(u));
  return has_label(*root, u);
}

bool strictly_reachable(const Sequent& s, Label w, Label u) {
  return w != u && reachable(s, w, u);
}

bool available(const Sequent& s, const std::string& x, Label w) {
  if (!has_label(s, w)) throw SequentError("unknown label " + label_name(w));
  // ancestors-or-self of w are exactly the u with reachable(u, w)
  std::function<bool(const Sequent&)> walk = [&](const Sequent& n) -> bool {
    if (!has_label(n, w)) return false;
    if (n.sig.contains(x)) return true;
    if (n.label == w) return false;
    for (const auto& k : n.kids)
      if (walk(k)) return true;
    return false;
  };
  return walk(s);
}

bool is_linear(const Sequent& s) {
  const Sequent* n = &s;
  while (true) {
    if (n->kids.size() > 1) return false;
    if (n->kids.empty()) return true;
    n = &n->kids[0];
  }
}

Sequent with_form(const Sequent& s, Label w, const Polarized& p) {
  return update_at(s, w, [&](Sequent& n) { n.forms.add(p); });
}

Sequent without_form(const Sequent& s, Label w, const Polarized& p) {
  return update_at(s, w, [&](Sequent& n) { n.forms.remove(p); });
}

Sequent with_sig(const Sequent& s, Label w, const std::string& x, int n) {
  return update_at(s, w, [&](Sequent& node) { node.sig.add(x, n); });
}

Sequent merge_child_into(const Sequent& s, Label parent, Label child) {
  return update_at(s, parent, [&](Sequent& p) {
    auto it = std::find_if(p.kids.begin(), p.kids.end(),
                           [&](const Sequent& k) { return k.label == child; });
    if (it == p.kids.end())
      throw SequentError(label_name(child) + " is not a child of " + label_name(parent));
    Sequent c = std::move(*it);
    p.kids.erase(it);
    for (const auto& [x, n] : c.sig) p.sig.add(x, n);
    for (const auto& [f, n] : c.forms) p.forms.add(f, n);
    for (auto& k : c.kids) p.add_kid(std::move(k));
  });
}

Sequent nest_sibling(const Sequent& s, Label parent, Label target, Label mover) {
  return update_at(s, parent, [&](Sequent& p) {
    auto im = std::find_if(p.kids.begin(), p.kids.end(),
                           [&](const Sequent& k) { return k.label == mover; });
    if (im == p.kids.end())
      throw SequentError(label_name(mover) + " is not a child of " + label_name(parent));
    Sequent moved = std::move(*im);
    p.kids.erase(im);
    auto it = std::find_if(p.kids.begin(), p.kids.end(),
                           [&](const Sequent& k) { return k.label == target; });
    if (it == p.kids.end())
      throw SequentError(label_name(target) + " is not a child of " + label_name(parent));
    it->add_kid(std::move(moved));
  });
}

Sequent merge_siblings(const Sequent& s, Label parent, Label kept, Label merged) {
  return update_at(s, parent, [&](Sequent& p) {
    auto ik = std::find_if(p.kids.begin(), p.kids.end(),
                           [&](const Sequent& k) { return k.label == merged; });
    if (ik == p.kids.end())
      throw SequentError(label_name(merged) + " is not a child of " + label_name(parent));
    Sequent moved = std::move(*ik);
    p.kids.erase(ik);
    auto it = std::find_if(p.kids.begin(), p.kids.end(),
                           [&](const Sequent& k) { return k.label == kept; });
    if (it == p.kids.end())
      throw SequentError(label_name(kept) + " is not a child of " + label_name(parent));
    for (const auto& [x, n] : moved.sig) it->sig.add(x, n);
    for (const auto& [f, n] : moved.forms) it->forms.add(f, n);
    for (auto& k : moved.kids) it->add_kid(std::move(k));
  });
}

Sequent insert_between(const Sequent& s, Label parent, Label child, Label fresh) {
  if (has_label(s, fresh))
    throw SequentError("label " + label_name(fresh) + " already present");
  return update_at(s, parent, [&](Sequent& p) {
    auto it = std::find_if(p.kids.begin(), p.kids.end(),
                           [&](const Sequent& k) { return k.label == child; });
    if (it == p.kids.end())
      throw SequentError(label_name(child) + " is not a child of " + label_name(parent));
    Sequent mid;
    mid.label = fresh;
    mid.add_kid(std::move(*it));
    p.kids.erase(it);
    p.add_kid(std::move(mid));
  });
}

bool sequent_is_propositional(const Sequent& s) {
  if (!s.sig.empty()) return false;
  for (const auto& [p, c] : s.forms)
    if (!p.formula.is_propositional()) return false;
  for (const auto& k : s.kids)
    if (!sequent_is_propositional(k)) return false;
  return true;
}

Formula interpret_propositional(const Sequent& s) {
  if (!sequent_is_propositional(s))
    throw SequentError("formula interpretation requires a propositional sequent");
  Formula conj, disj;
  bool have_conj = false, have_disj = false;
  for (const auto& [p, c] : s.forms) {
    for (int i = 0; i < c; ++i) {
      if (p.polarity == Polarity::Input) {
        conj = have_conj ? Formula::andf(conj, p.formula) : p.formula;
        have_conj = true;
      } else {
        disj = have_disj ? Formula::orf(disj, p.formula) : p.formula;
        have_disj = true;
      }
    }
  }
  if (!have_conj) conj = Formula::top();
  if (!have_disj) disj = Formula::bottom();
  for (const auto& k : s.kids) disj = Formula::orf(disj, interpret_propositional(k));
  return Formula::imp(conj, disj);
}

Sequent rename_label(const Sequent& s, Label from, Label to) {
  if (from == to) return s;
  if (has_label(s, to)) throw SequentError("label " + label_name(to) + " already present");
  std::function<void(Sequent&)> walk = [&](Sequent& n) {
    if (n.label == from) n.label = to;
    for (auto& k : n.kids) walk(k);
    std::sort(n.kids.begin(), n.kids.end(),
              [](const Sequent& a, const Sequent& b) { return a.label < b.label; });
  };
  Sequent t = s;
  walk(t);
  return t;
}

Sequent substitute_sequent(const Sequent& s, const std::string& y, const std::string& x) {
  Sequent t;
  t.label = s.label;
  for (const auto& [v, c] : s.sig) t.sig.add(v == x ? y : v, c);
  for (const auto& [p, c] : s.forms) t.forms.add({substitute(p.formula, y, x), p.polarity}, c);
  for (const auto& k : s.kids) t.add_kid(substitute_sequent(k, y, x));
  return t;
}

namespace {

Sequent alpha_normal_sequent(const Sequent& s) {
  Sequent t;
  t.label = s.label;
  t.sig = s.sig;
  for (const auto& [p, c] : s.forms) t.forms.add({alpha_normal(p.formula), p.polarity}, c);
  for (const auto& k : s.kids) t.add_kid(alpha_normal_sequent(k));
  return t;
}

}  // namespace

bool sequent_alpha_equal(const Sequent& a, const Sequent& b) {
  return alpha_normal_sequent(a) == alpha_normal_sequent(b);
}

// ---------------------------------------------------------------------------
// Text syntax

namespace {

void print_node(const Sequent& s, std::ostringstream& os) {
  if (s.sig.empty()) {
    os << "-";
  } else {
    bool first = true;
    for (const auto& [x, c] : s.sig)
      for (int i = 0; i < c; ++i) {
        if (!first) os << ",";
        os << x;
        first = false;
      }
  }
  os << " ; ";
  bool first = true;
  for (const auto& [p, c] : s.forms)
    for (int i = 0; i < c; ++i) {
      if (!first) os << ", ";
      os << p.formula.str() << (p.polarity == Polarity::Input ? "^i" : "^o");
      first = false;
    }
  for (const auto& k : s.kids) {
    if (!first) os << ", ";
    os << "[ ";
    print_node(k, os);
    os << " ]" << label_name(k.label);
    first = false;
  }
}

class SeqParser {
public:
  SeqParser(const std::string& s, ArityTable& ar) : s_(s), ar_(ar) {}

  Sequent parse() {
    Sequent root = node();
    root.label = 0;
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
    check_unique(root);
    return root;
  }

private:
  const std::string& s_;
  ArityTable& ar_;
  size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }
  std::string ident() {
    skip_ws();
    if (pos_ >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_])))
      throw ParseError("expected identifier", pos_);
    size_t start = pos_++;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
            s_[pos_] == '\''))
      ++pos_;
    return s_.substr(start, pos_ - start);
  }

  // A formula item runs until a top-level ',', ']' or end of input.
  std::string formula_text() {
    skip_ws();
    size_t start = pos_;
    int depth = 0;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (depth == 0 && (c == ',' || c == ']')) break;
      if (c == '^') break;
      ++pos_;
    }
    return s_.substr(start, pos_ - start);
  }

  Sequent node() {
    Sequent n;
    if (peek() == '-') {
      ++pos_;
    } else if (peek() != ';') {
      n.sig.add(ident());
      while (peek() == ',') {
        ++pos_;
        n.sig.add(ident());
      }
    }
    expect(';');
    while (true) {
      char c = peek();
      if (c == '\0' || c == ']') break;
      if (c == ',') ++pos_;
      c = peek();
      if (c == '[') {
        ++pos_;
        Sequent kid = node();
        expect(']');
        skip_ws();
        size_t at = pos_;
        std::string lbl = ident();
        Label l;
        try {
          l = parse_label(lbl);
        } catch (const SequentError&) {
          throw ParseError("bad label '" + lbl + "'", at);
        }
        kid.label = l;
        try {
          n.add_kid(std::move(kid));
        } catch (const SequentError&) {
          throw ParseError("duplicate label '" + lbl + "'", at);
        }
      } else if (c == '\0' || c == ']') {
        break;
      } else {
        size_t at = pos_;
        std::string ftext = formula_text();
        Formula f;
        try {
          f = parse_formula(ftext, ar_);
        } catch (const ParseError& e) {
          throw ParseError(std::string("in formula: ") + e.what(), at + e.pos);
        }
        expect('^');
        char pol = peek();
        ++pos_;
        if (pol == 'i')
          n.forms.add(in(f));
        else if (pol == 'o')
          n.forms.add(out(f));
        else
          throw ParseError("expected polarity 'i' or 'o'", pos_ - 1);
      }
    }
    return n;
  }

  void check_unique(const Sequent& root) {
    auto ls = labels_of(root);
    for (size_t i = 1; i < ls.size(); ++i)
      if (ls[i] == ls[i - 1])
        throw ParseError("duplicate label " + label_name(ls[i]), 0);
  }
};

}  // namespace

std::string sequent_str(const Sequent& s) {
  std::ostringstream os;
  print_node(s, os);
  return os.str();
}

Sequent parse_sequent(const std::string& text, ArityTable& arities) {
  return SeqParser(text, arities).parse();
}

Sequent parse_sequent(const std::string& text) {
  ArityTable t;
  return parse_sequent(text, t);
}

}  // namespace nsq
