#include "nsq/calculus.hpp"

#include <algorithm>
#include <cassert>

namespace nsq {

std::string logic_name(Logic l) {
  switch (l) {
    case Logic::I: return "I";
    case Logic::GD: return "GD";
    case Logic::ND: return "ND";
    case Logic::CD: return "CD";
    case Logic::GN: return "GN";
    case Logic::GC: return "GC";
  }
  return "?";
}

std::optional<Logic> logic_from_name(const std::string& s) {
  if (s == "I") return Logic::I;
  if (s == "GD") return Logic::GD;
  if (s == "ND") return Logic::ND;
  if (s == "CD") return Logic::CD;
  if (s == "GN") return Logic::GN;
  if (s == "GC") return Logic::GC;
  return std::nullopt;
}

std::string rule_name(RuleId r) {
  switch (r) {
    case RuleId::Id: return "id";
    case RuleId::BotL: return "bot_l";
    case RuleId::OrL: return "or_l";
    case RuleId::OrR: return "or_r";
    case RuleId::AndL: return "and_l";
    case RuleId::AndR: return "and_r";
    case RuleId::ImpL: return "imp_l";
    case RuleId::ImpR: return "imp_r";
    case RuleId::Lin: return "lin";
    case RuleId::IdQ: return "id_q";
    case RuleId::Ds: return "ds";
    case RuleId::ExL: return "ex_l";
    case RuleId::ExR1: return "ex_r1";
    case RuleId::ExR2: return "ex_r2";
    case RuleId::AllR: return "all_r";
    case RuleId::AllL1: return "all_l1";
    case RuleId::AllL2: return "all_l2";
    case RuleId::Cut: return "cut";
    case RuleId::Ext: return "ext";
  }
  return "?";
}

std::optional<RuleId> rule_from_name(const std::string& s) {
  static const std::vector<RuleId> all = {
      RuleId::Id,   RuleId::BotL, RuleId::OrL,  RuleId::OrR,   RuleId::AndL, RuleId::AndR,
      RuleId::ImpL, RuleId::ImpR, RuleId::Lin,  RuleId::IdQ,   RuleId::Ds,   RuleId::ExL,
      RuleId::ExR1, RuleId::ExR2, RuleId::AllR, RuleId::AllL1, RuleId::AllL2, RuleId::Cut,
      RuleId::Ext};
  for (RuleId r : all)
    if (rule_name(r) == s) return r;
  return std::nullopt;
}

ExtensionRule builtin_extension(const std::string& name) {
  if (name == "bd2") {
    // chain w1 <= w2 <= w3; disjuncts w2 <= w1, w3 <= w2
    return {"bd2", ExtensionRule::Kind::DLC, 3, {1, 2}, {}};
  }
  if (name == "sym") {
    // fan-out 1; disjunct w1 <= w
    return {"sym", ExtensionRule::Kind::DBC, 1, {}, {{DbcDisjunct::Kind::MergeRoot, 1, 0}}};
  }
  throw SequentError("unknown built-in extension rule '" + name + "'");
}

const ExtensionRule* Calculus::extension(const std::string& name) const {
  for (const auto& e : extensions)
    if (e.name == name) return &e;
  return nullptr;
}

Calculus Calculus::for_logic(Logic l, std::vector<ExtensionRule> exts) {
  Calculus c;
  c.logic = l;
  c.extensions = std::move(exts);
  const std::set<RuleId> prop = {RuleId::Id,   RuleId::BotL, RuleId::OrL, RuleId::OrR,
                                 RuleId::AndL, RuleId::AndR, RuleId::ImpL, RuleId::ImpR};
  const std::set<RuleId> fo = {RuleId::IdQ,  RuleId::BotL,  RuleId::Ds,   RuleId::OrL,
                               RuleId::OrR,  RuleId::AndL,  RuleId::AndR, RuleId::ImpL,
                               RuleId::ImpR, RuleId::ExL,   RuleId::ExR1, RuleId::ExR2,
                               RuleId::AllR, RuleId::AllL1, RuleId::AllL2};
  switch (l) {
    case Logic::I: c.rules = prop; c.regime = Regime::Propositional; break;
    case Logic::GD: c.rules = prop; c.rules.insert(RuleId::Lin); c.regime = Regime::Propositional; break;
    case Logic::ND: c.rules = fo; c.regime = Regime::ND; break;
    case Logic::CD: c.rules = fo; c.regime = Regime::CD; break;
    case Logic::GN: c.rules = fo; c.rules.insert(RuleId::Lin); c.regime = Regime::ND; break;
    case Logic::GC: c.rules = fo; c.rules.insert(RuleId::Lin); c.regime = Regime::CD; break;
  }
  return c;
}

void FreshGen::cover(const Sequent& s) {
  next_label = std::max(next_label, max_label(s) + 1);
  for (const auto& v : all_sequent_vars(s)) {
    auto q = v.rfind('\'');
    if (q == std::string::npos || q + 1 >= v.size()) continue;
    bool digits = true;
    for (size_t i = q + 1; i < v.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(v[i]))) digits = false;
    if (digits) next_var = std::max(next_var, std::stoll(v.substr(q + 1)) + 1);
  }
}

namespace {

struct Occurrence {
  Label w;
  Polarized p;
};

// Pre-order walk; kids are label-sorted, so this is deterministic.
void occurrences(const Sequent& s, std::vector<Occurrence>& out) {
  for (const auto& [p, c] : s.forms) out.push_back({s.label, p});
  for (const auto& k : s.kids) occurrences(k, out);
}

std::vector<Occurrence> occurrences(const Sequent& s) {
  std::vector<Occurrence> out;
  occurrences(s, out);
  return out;
}

bool occurs_var(const Sequent& s, const std::string& y) {
  return all_sequent_vars(s).count(y) > 0;
}

void need_labels(const RuleInstance& i, size_t n) {
  if (i.labels.size() != n)
    throw SequentError(rule_name(i.rule) + ": expected " + std::to_string(n) + " labels");
}

const Polarized& need_principal(const RuleInstance& i, Conn kind, Polarity pol) {
  if (!i.principal) throw SequentError(rule_name(i.rule) + ": missing principal formula");
  const Polarized& p = *i.principal;
  if (p.formula.kind() != kind || p.polarity != pol)
    throw SequentError(rule_name(i.rule) + ": principal formula has the wrong shape");
  return p;
}

void need_present(const Sequent& s, Label w, const Polarized& p, const std::string& who) {
  if (!locate_or_throw(s, w).forms.contains(p))
    throw SequentError(who + ": principal " + p.formula.str() + " not in " + label_name(w));
}

const std::string& need_var(const RuleInstance& i) {
  if (!i.var) throw SequentError(rule_name(i.rule) + ": missing variable");
  return *i.var;
}

void need_fresh_var(const Sequent& s, const std::string& y, const std::string& who) {
  if (occurs_var(s, y)) throw SequentError(who + ": variable " + y + " is not fresh");
}

void need_fresh_label(const Sequent& s, Label u, const std::string& who) {
  if (has_label(s, u)) throw SequentError(who + ": label " + label_name(u) + " is not fresh");
}

void need_reach(const Sequent& s, Label w, Label u, const std::string& who) {
  if (!reachable(s, w, u))
    throw SequentError(who + ": " + label_name(u) + " not reachable from " + label_name(w));
}

std::vector<Sequent> ext_premises(const RuleInstance& inst, const ExtensionRule& ext) {
  const Sequent& s = inst.conclusion;
  if (ext.kind == ExtensionRule::Kind::DLC) {
    if (static_cast<int>(inst.labels.size()) != ext.n)
      throw SequentError(ext.name + ": expected a chain of " + std::to_string(ext.n));
    for (int i = 0; i + 1 < ext.n; ++i) {
      const Sequent& parent = locate_or_throw(s, inst.labels[i]);
      bool child = std::any_of(parent.kids.begin(), parent.kids.end(), [&](const Sequent& k) {
        return k.label == inst.labels[i + 1];
      });
      if (!child) throw SequentError(ext.name + ": labels do not form a chain");
    }
    std::vector<Sequent> prem;
    for (int d : ext.dlc_disjuncts) {
      if (d < 1 || d >= ext.n) throw SequentError(ext.name + ": bad DLC disjunct");
      prem.push_back(merge_child_into(s, inst.labels[d - 1], inst.labels[d]));
    }
    return prem;
  }
  // DBC: labels = {w, c_1..c_n}
  if (static_cast<int>(inst.labels.size()) != ext.n + 1)
    throw SequentError(ext.name + ": expected root plus " + std::to_string(ext.n) + " children");
  Label w = inst.labels[0];
  const Sequent& root = locate_or_throw(s, w);
  for (int i = 1; i <= ext.n; ++i) {
    bool child = std::any_of(root.kids.begin(), root.kids.end(),
                             [&](const Sequent& k) { return k.label == inst.labels[i]; });
    if (!child) throw SequentError(ext.name + ": label is not a child of the root component");
  }
  std::vector<Sequent> prem;
  for (const auto& d : ext.dbc_disjuncts) {
    auto child_at = [&](int j) -> Label {
      if (j < 1 || j > ext.n) throw SequentError(ext.name + ": bad DBC child index");
      return inst.labels[j];
    };
    switch (d.kind) {
      case DbcDisjunct::Kind::MergeRoot:
        prem.push_back(merge_child_into(s, w, child_at(d.j)));
        break;
      case DbcDisjunct::Kind::Nest:
        prem.push_back(nest_sibling(s, w, child_at(d.j), child_at(d.k)));
        break;
      case DbcDisjunct::Kind::Eq:
        prem.push_back(merge_siblings(s, w, child_at(d.j), child_at(d.k)));
        break;
    }
  }
  return prem;
}

}  // namespace

std::vector<Sequent> instance_premises(const RuleInstance& inst, const Calculus& c) {
  const Sequent& s = inst.conclusion;
  const bool nd = c.regime == Regime::ND;
  switch (inst.rule) {
    case RuleId::Id:
    case RuleId::IdQ: {
      need_labels(inst, 2);
      const Polarized& p = need_principal(inst, Conn::Atom, Polarity::Input);
      if (inst.rule == RuleId::Id && !p.formula.args().empty())
        throw SequentError("id: predicate must be 0-ary");
      Label w = inst.labels[0], u = inst.labels[1];
      need_present(s, w, p, "id");
      need_present(s, u, out(p.formula), "id");
      need_reach(s, w, u, "id");
      return {};
    }
    case RuleId::BotL: {
      need_labels(inst, 1);
      need_present(s, inst.labels[0], in(Formula::bottom()), "bot_l");
      return {};
    }
    case RuleId::OrL: {
      need_labels(inst, 1);
      const Polarized& p = need_principal(inst, Conn::Or, Polarity::Input);
      Label w = inst.labels[0];
      need_present(s, w, p, "or_l");
      Sequent base = without_form(s, w, p);
      return {with_form(base, w, in(p.formula.lhs())), with_form(base, w, in(p.formula.rhs()))};
    }
    case RuleId::OrR: {
      need_labels(inst, 1);
      const Polarized& p = need_principal(inst, Conn::Or, Polarity::Output);
      Label w = inst.labels[0];
      need_present(s, w, p, "or_r");
      Sequent t = without_form(s, w, p);
      t = with_form(t, w, out(p.formula.lhs()));
      t = with_form(t, w, out(p.formula.rhs()));
      return {t};
    }
    case RuleId::AndL: {
      need_labels(inst, 1);
      const Polarized& p = need_principal(inst, Conn::And, Polarity::Input);
      Label w = inst.labels[0];
      need_present(s, w, p, "and_l");
      Sequent t = without_form(s, w, p);
      t = with_form(t, w, in(p.formula.lhs()));
      t = with_form(t, w, in(p.formula.rhs()));
      return {t};
    }
    case RuleId::AndR: {
      need_labels(inst, 1);
      const Polarized& p = need_principal(inst, Conn::And, Polarity::Output);
      Label w = inst.labels[0];
      need_present(s, w, p, "and_r");
      Sequent base = without_form(s, w, p);
      return {with_form(base, w, out(p.formula.lhs())), with_form(base, w, out(p.formula.rhs()))};
    }
    case RuleId::ImpL: {
      need_labels(inst, 2);
      const Polarized& p = need_principal(inst, Conn::Imp, Polarity::Input);
      Label w = inst.labels[0], u = inst.labels[1];
      need_present(s, w, p, "imp_l");
      need_reach(s, w, u, "imp_l");
      return {with_form(s, u, out(p.formula.lhs())), with_form(s, u, in(p.formula.rhs()))};
    }
    case RuleId::ImpR: {
      need_labels(inst, 2);
      const Polarized& p = need_principal(inst, Conn::Imp, Polarity::Output);
      Label w = inst.labels[0], u = inst.labels[1];
      need_present(s, w, p, "imp_r");
      need_fresh_label(s, u, "imp_r");
      Sequent kid;
      kid.label = u;
      kid.forms.add(in(p.formula.lhs()));
      kid.forms.add(out(p.formula.rhs()));
      Sequent t = without_form(s, w, p);
      return {update_at(t, w, [&](Sequent& n) { n.add_kid(kid); })};
    }
    case RuleId::Lin: {
      need_labels(inst, 3);
      Label w = inst.labels[0], v = inst.labels[1], u = inst.labels[2];
      if (v == u) throw SequentError("lin: components must differ");
      const Sequent& parent = locate_or_throw(s, w);
      auto is_child = [&](Label l) {
        return std::any_of(parent.kids.begin(), parent.kids.end(),
                           [&](const Sequent& k) { return k.label == l; });
      };
      if (!is_child(v) || !is_child(u))
        throw SequentError("lin: both components must be children of " + label_name(w));
      return {nest_sibling(s, w, v, u), nest_sibling(s, w, u, v)};
    }
    case RuleId::Ds: {
      need_labels(inst, 1);
      const Polarized& p = need_principal(inst, Conn::Atom, Polarity::Input);
      Label w = inst.labels[0];
      need_present(s, w, p, "ds");
      Sequent t = s;
      for (const auto& x : p.formula.args()) t = with_sig(t, w, x);
      return {t};
    }
    case RuleId::ExL: {
      need_labels(inst, 1);
      const Polarized& p = need_principal(inst, Conn::Exists, Polarity::Input);
      Label w = inst.labels[0];
      const std::string& y = need_var(inst);
      need_present(s, w, p, "ex_l");
      need_fresh_var(s, y, "ex_l");
      Sequent t = without_form(s, w, p);
      t = with_sig(t, w, y);
      return {with_form(t, w, in(substitute(p.formula.body(), y, p.formula.bound_var())))};
    }
    case RuleId::ExR1: {
      need_labels(inst, 1);
      const Polarized& p = need_principal(inst, Conn::Exists, Polarity::Output);
      Label w = inst.labels[0];
      const std::string& y = need_var(inst);
      need_present(s, w, p, "ex_r1");
      if (nd && !available(s, y, w))
        throw SequentError("ex_r1: " + y + " not available for " + label_name(w));
      return {with_form(s, w, out(substitute(p.formula.body(), y, p.formula.bound_var())))};
    }
    case RuleId::ExR2: {
      need_labels(inst, 2);
      const Polarized& p = need_principal(inst, Conn::Exists, Polarity::Output);
      Label w = inst.labels[0], u = inst.labels[1];
      const std::string& y = need_var(inst);
      need_present(s, u, p, "ex_r2");
      need_fresh_var(s, y, "ex_r2");
      if (nd) need_reach(s, w, u, "ex_r2");
      Sequent t = with_sig(s, w, y);
      return {with_form(t, u, out(substitute(p.formula.body(), y, p.formula.bound_var())))};
    }
    case RuleId::AllR: {
      need_labels(inst, 2);
      const Polarized& p = need_principal(inst, Conn::Forall, Polarity::Output);
      Label w = inst.labels[0], u = inst.labels[1];
      const std::string& y = need_var(inst);
      need_present(s, w, p, "all_r");
      need_fresh_var(s, y, "all_r");
      need_fresh_label(s, u, "all_r");
      Sequent kid;
      kid.label = u;
      kid.sig.add(y);
      kid.forms.add(out(substitute(p.formula.body(), y, p.formula.bound_var())));
      Sequent t = without_form(s, w, p);
      return {update_at(t, w, [&](Sequent& n) { n.add_kid(kid); })};
    }
    case RuleId::AllL1: {
      need_labels(inst, 2);
      const Polarized& p = need_principal(inst, Conn::Forall, Polarity::Input);
      Label w = inst.labels[0], u = inst.labels[1];
      const std::string& y = need_var(inst);
      need_present(s, w, p, "all_l1");
      need_reach(s, w, u, "all_l1");
      if (nd && !available(s, y, u))
        throw SequentError("all_l1: " + y + " not available for " + label_name(u));
      return {with_form(s, u, in(substitute(p.formula.body(), y, p.formula.bound_var())))};
    }
    case RuleId::AllL2: {
      need_labels(inst, 3);
      const Polarized& p = need_principal(inst, Conn::Forall, Polarity::Input);
      Label w = inst.labels[0], u = inst.labels[1], v = inst.labels[2];
      const std::string& y = need_var(inst);
      need_present(s, u, p, "all_l2");
      need_fresh_var(s, y, "all_l2");
      if (nd) need_reach(s, w, u, "all_l2");
      need_reach(s, u, v, "all_l2");
      Sequent t = with_sig(s, w, y);
      return {with_form(t, v, in(substitute(p.formula.body(), y, p.formula.bound_var())))};
    }
    case RuleId::Cut: {
      need_labels(inst, 1);
      if (!inst.principal) throw SequentError("cut: missing cut formula");
      Label w = inst.labels[0];
      locate_or_throw(s, w);
      const Formula& f = inst.principal->formula;
      return {with_form(s, w, out(f)), with_form(s, w, in(f))};
    }
    case RuleId::Ext: {
      const ExtensionRule* ext = c.extension(inst.ext_name);
      if (!ext) throw SequentError("extension rule '" + inst.ext_name + "' not in calculus");
      return ext_premises(inst, *ext);
    }
  }
  throw SequentError("unknown rule");
}

std::optional<std::string> check_instance(const RuleInstance& inst, const Calculus& c) {
  // Rule membership; (id) is the 0-ary case of (id_Q) and interchangeable.
  auto member = [&](RuleId r) -> bool {
    if (c.has(r)) return true;
    if (r == RuleId::Id && c.has(RuleId::IdQ)) return true;
    if (r == RuleId::IdQ && c.has(RuleId::Id) && inst.principal &&
        inst.principal->formula.is_atom() && inst.principal->formula.args().empty())
      return true;
    return false;
  };
  if (inst.rule == RuleId::Cut) {
    if (!c.allow_cut) return "cut is not admitted by this calculus";
  } else if (inst.rule == RuleId::Ext) {
    if (!c.extension(inst.ext_name))
      return "extension rule '" + inst.ext_name + "' not in calculus";
  } else if (!member(inst.rule)) {
    return "rule " + rule_name(inst.rule) + " not in calculus " + logic_name(c.logic);
  }
  std::vector<Sequent> expect;
  try {
    expect = instance_premises(inst, c);
  } catch (const SequentError& e) {
    return std::string(e.what());
  }
  if (expect.size() != inst.premises.size())
    return rule_name(inst.rule) + ": premise count mismatch";
  for (size_t i = 0; i < expect.size(); ++i)
    if (!sequent_alpha_equal(expect[i], inst.premises[i]))
      return rule_name(inst.rule) + ": premise " + std::to_string(i) +
             " does not match the schema";
  return std::nullopt;
}

namespace {

RuleInstance finish(RuleInstance inst, const Calculus& c) {
  inst.premises = instance_premises(inst, c);
  return inst;
}

}  // namespace

std::vector<RuleInstance> applicable_instances(const Sequent& s, const ExtensionRule& ext,
                                               const Calculus& c) {
  std::vector<RuleInstance> out;
  auto nodes = labels_of(s);
  if (ext.kind == ExtensionRule::Kind::DLC) {
    // enumerate chains of length ext.n
    std::function<void(const Sequent&, std::vector<Label>&)> grow =
        [&](const Sequent& node, std::vector<Label>& chain) {
          chain.push_back(node.label);
          if (static_cast<int>(chain.size()) == ext.n) {
            RuleInstance inst{RuleId::Ext, ext.name, s, chain, std::nullopt, std::nullopt, {}};
            out.push_back(finish(inst, c));
          } else {
            for (const auto& k : node.kids) grow(k, chain);
          }
          chain.pop_back();
        };
    // a chain may start at any node
    std::function<void(const Sequent&)> walk = [&](const Sequent& node) {
      std::vector<Label> chain;
      grow(node, chain);
      for (const auto& k : node.kids) walk(k);
    };
    walk(s);
    return out;
  }
  // DBC: every node with >= n children; choose n children in label order
  std::function<void(const Sequent&)> walk = [&](const Sequent& node) {
    int m = static_cast<int>(node.kids.size());
    if (m >= ext.n) {
      std::vector<int> idx(ext.n);
      std::function<void(int, int)> choose = [&](int start, int k) {
        if (k == ext.n) {
          std::vector<Label> labels = {node.label};
          for (int i : idx) labels.push_back(node.kids[i].label);
          RuleInstance inst{RuleId::Ext, ext.name, s, labels, std::nullopt, std::nullopt, {}};
          out.push_back(finish(inst, c));
          return;
        }
        for (int i = start; i < m; ++i) {
          idx[k] = i;
          choose(i + 1, k + 1);
        }
      };
      choose(0, 0);
    }
    for (const auto& k : node.kids) walk(k);
  };
  walk(s);
  return out;
}

std::vector<RuleInstance> applicable_instances(const Sequent& s, RuleId r, const Calculus& c,
                                               FreshGen& fresh) {
  if (r == RuleId::Ext) throw SequentError("pass the extension rule itself");
  if (!c.has(r) && !(r == RuleId::Id && c.has(RuleId::IdQ)) &&
      !(r == RuleId::IdQ && c.has(RuleId::Id)))
    throw SequentError("rule " + rule_name(r) + " not in calculus " + logic_name(c.logic));

  std::vector<RuleInstance> out;
  auto occs = occurrences(s);
  auto labels = labels_of(s);
  const bool nd = c.regime == Regime::ND;

  auto mk = [&](std::vector<Label> ls, std::optional<Polarized> p,
                std::optional<std::string> v) {
    RuleInstance inst{r, "", s, std::move(ls), std::move(p), std::move(v), {}};
    out.push_back(finish(inst, c));
  };

  // Candidate instantiation variables for ExR1/AllL1 at a target label.
  auto candidates = [&](Label at) {
    std::vector<std::string> ys;
    if (nd) {
      for (const auto& x : signature_vars(s))
        if (available(s, x, at)) ys.push_back(x);
    } else {
      for (const auto& x : signature_vars(s)) ys.push_back(x);
    }
    return ys;
  };

  switch (r) {
    case RuleId::Id:
    case RuleId::IdQ:
      for (const auto& o : occs) {
        if (o.p.polarity != Polarity::Input || !o.p.formula.is_atom()) continue;
        if (r == RuleId::Id && !o.p.formula.args().empty()) continue;
        for (const auto& o2 : occs) {
          if (o2.p.polarity != Polarity::Output || !(o2.p.formula == o.p.formula)) continue;
          if (reachable(s, o.w, o2.w)) mk({o.w, o2.w}, o.p, std::nullopt);
        }
      }
      break;
    case RuleId::BotL:
      for (const auto& o : occs)
        if (o.p.polarity == Polarity::Input && o.p.formula.kind() == Conn::Bottom)
          mk({o.w}, std::nullopt, std::nullopt);
      break;
    case RuleId::OrL:
      for (const auto& o : occs)
        if (o.p.polarity == Polarity::Input && o.p.formula.kind() == Conn::Or)
          mk({o.w}, o.p, std::nullopt);
      break;
    case RuleId::OrR:
      for (const auto& o : occs)
        if (o.p.polarity == Polarity::Output && o.p.formula.kind() == Conn::Or)
          mk({o.w}, o.p, std::nullopt);
      break;
    case RuleId::AndL:
      for (const auto& o : occs)
        if (o.p.polarity == Polarity::Input && o.p.formula.kind() == Conn::And)
          mk({o.w}, o.p, std::nullopt);
      break;
    case RuleId::AndR:
      for (const auto& o : occs)
        if (o.p.polarity == Polarity::Output && o.p.formula.kind() == Conn::And)
          mk({o.w}, o.p, std::nullopt);
      break;
    case RuleId::ImpL:
      for (const auto& o : occs) {
        if (o.p.polarity != Polarity::Input || o.p.formula.kind() != Conn::Imp) continue;
        for (Label u : labels)
          if (reachable(s, o.w, u)) mk({o.w, u}, o.p, std::nullopt);
      }
      break;
    case RuleId::ImpR:
      for (const auto& o : occs)
        if (o.p.polarity == Polarity::Output && o.p.formula.kind() == Conn::Imp)
          mk({o.w, fresh.fresh_label()}, o.p, std::nullopt);
      break;
    case RuleId::Lin: {
      std::function<void(const Sequent&)> walk = [&](const Sequent& node) {
        for (size_t i = 0; i < node.kids.size(); ++i)
          for (size_t j = i + 1; j < node.kids.size(); ++j)
            mk({node.label, node.kids[i].label, node.kids[j].label}, std::nullopt, std::nullopt);
        for (const auto& k : node.kids) walk(k);
      };
      walk(s);
      break;
    }
    case RuleId::Ds:
      for (const auto& o : occs) {
        if (o.p.polarity != Polarity::Input || !o.p.formula.is_atom()) continue;
        if (o.p.formula.args().empty()) continue;
        // generate only when some argument is missing from the component's
        // signature; repeated (ds) is idempotent for the counter-model
        const Sequent& node = locate_or_throw(s, o.w);
        bool missing = false;
        for (const auto& x : o.p.formula.args())
          if (!node.sig.contains(x)) missing = true;
        if (missing) mk({o.w}, o.p, std::nullopt);
      }
      break;
    case RuleId::ExL:
      for (const auto& o : occs)
        if (o.p.polarity == Polarity::Input && o.p.formula.kind() == Conn::Exists)
          mk({o.w}, o.p, fresh.fresh_var());
      break;
    case RuleId::ExR1:
      for (const auto& o : occs) {
        if (o.p.polarity != Polarity::Output || o.p.formula.kind() != Conn::Exists) continue;
        for (const auto& y : candidates(o.w)) mk({o.w}, o.p, y);
      }
      break;
    case RuleId::ExR2:
      for (const auto& o : occs) {
        if (o.p.polarity != Polarity::Output || o.p.formula.kind() != Conn::Exists) continue;
        for (Label w : labels)
          if (!nd || reachable(s, w, o.w)) mk({w, o.w}, o.p, fresh.fresh_var());
      }
      break;
    case RuleId::AllR:
      for (const auto& o : occs)
        if (o.p.polarity == Polarity::Output && o.p.formula.kind() == Conn::Forall)
          mk({o.w, fresh.fresh_label()}, o.p, fresh.fresh_var());
      break;
    case RuleId::AllL1:
      for (const auto& o : occs) {
        if (o.p.polarity != Polarity::Input || o.p.formula.kind() != Conn::Forall) continue;
        for (Label u : labels) {
          if (!reachable(s, o.w, u)) continue;
          for (const auto& y : candidates(u)) mk({o.w, u}, o.p, y);
        }
      }
      break;
    case RuleId::AllL2:
      for (const auto& o : occs) {
        if (o.p.polarity != Polarity::Input || o.p.formula.kind() != Conn::Forall) continue;
        for (Label w : labels) {
          if (nd && !reachable(s, w, o.w)) continue;
          for (Label v : labels)
            if (reachable(s, o.w, v)) mk({w, o.w, v}, o.p, fresh.fresh_var());
        }
      }
      break;
    default:
      throw SequentError("cannot enumerate instances of " + rule_name(r));
  }
  return out;
}

}  // namespace nsq
