#include "nsq/transform.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace nsq {

namespace {

bool fresh_var_rule(RuleId r) {
  return r == RuleId::ExL || r == RuleId::ExR2 || r == RuleId::AllR || r == RuleId::AllL2;
}

int fresh_label_slot(RuleId r) {
  return (r == RuleId::ImpR || r == RuleId::AllR) ? 1 : -1;
}

// Node the principal formula sits at, by rule convention.
Label principal_node(const RuleInstance& i) {
  switch (i.rule) {
    case RuleId::ExR2:
    case RuleId::AllL2: return i.labels[1];
    default: return i.labels[0];
  }
}

Derivation leaf_on(RuleInstance inst, Sequent concl) {
  inst.conclusion = std::move(concl);
  inst.premises.clear();
  return Derivation{std::move(inst), {}};
}

// Rebuilds a derivation node from a transformed instance and children; the
// premises are taken from the children so the tree stays internally exact.
Derivation rebuild(RuleInstance inst, std::vector<Derivation> kids) {
  inst.premises.clear();
  for (const auto& k : kids) inst.premises.push_back(k.conclusion());
  return Derivation{std::move(inst), std::move(kids)};
}

// Cut instances are tolerated by the plain structural rewrites (its premises
// are conclusion plus one formula, so every uniform map commutes); the
// occurrence-tracking transforms must not mistake the stored cut formula for
// a real occurrence.
void guard_rule(const Derivation& d) {
  if (d.inst.rule == RuleId::Ext)
    throw TransformError("proof rewrites across extension rules are not supported");
}

// Renames the fresh variable introduced by d's root instance to `z`.
Derivation rename_fresh_var(const Derivation& d, const std::string& z, const Calculus& c);
// Renames the fresh label introduced by d's root instance to `l`.
Derivation rename_fresh_label(const Derivation& d, Label l, const Calculus& c);

}  // namespace

// ---------------------------------------------------------------------------
// (ps): substitute variable y for x through a derivation

Derivation ps_deriv(const Derivation& d, const std::string& y, const std::string& x,
                    const Calculus& c) {
  if (x == y) return d;
  guard_rule(d);
  const RuleInstance& i0 = d.inst;
  if (fresh_var_rule(i0.rule) && i0.var && (*i0.var == x || *i0.var == y)) {
    FreshGen g;
    cover_derivation(g, d);
    Sequent tmp;
    tmp.sig.add(x);
    tmp.sig.add(y);
    g.cover(tmp);
    return ps_deriv(rename_fresh_var(d, g.fresh_var(), c), y, x, c);
  }
  RuleInstance ni = i0;
  ni.conclusion = substitute_sequent(i0.conclusion, y, x);
  if (ni.principal)
    ni.principal = Polarized{substitute(i0.principal->formula, y, x), i0.principal->polarity};
  if (ni.var && *ni.var == x) ni.var = y;
  std::vector<Derivation> kids;
  for (const auto& k : d.children) kids.push_back(ps_deriv(k, y, x, c));
  return rebuild(std::move(ni), std::move(kids));
}

// ---------------------------------------------------------------------------
// (ls): rename label `from` to the fresh label `to`

Derivation ls_deriv(const Derivation& d, Label to, Label from, const Calculus& c) {
  if (to == from) return d;
  guard_rule(d);
  const RuleInstance& i0 = d.inst;
  int slot = fresh_label_slot(i0.rule);
  if (slot >= 0 && i0.labels[slot] == to) {
    FreshGen g;
    cover_derivation(g, d);
    return ls_deriv(rename_fresh_label(d, g.fresh_label(), c), to, from, c);
  }
  RuleInstance ni = i0;
  ni.conclusion = rename_label(i0.conclusion, from, to);
  for (auto& l : ni.labels)
    if (l == from) l = to;
  std::vector<Derivation> kids;
  for (const auto& k : d.children) kids.push_back(ls_deriv(k, to, from, c));
  return rebuild(std::move(ni), std::move(kids));
}

namespace {

Derivation rename_fresh_var(const Derivation& d, const std::string& z, const Calculus& c) {
  RuleInstance ni = d.inst;
  const std::string old = *ni.var;
  ni.var = z;
  std::vector<Derivation> kids;
  for (const auto& k : d.children) kids.push_back(ps_deriv(k, z, old, c));
  return rebuild(std::move(ni), std::move(kids));
}

Derivation rename_fresh_label(const Derivation& d, Label l, const Calculus& c) {
  RuleInstance ni = d.inst;
  int slot = fresh_label_slot(ni.rule);
  Label old = ni.labels[slot];
  ni.labels[slot] = l;
  std::vector<Derivation> kids;
  for (const auto& k : d.children) kids.push_back(ls_deriv(k, l, old, c));
  return rebuild(std::move(ni), std::move(kids));
}

// Uniform sequent rewrite with fresh-name interaction handling. `map` must
// commute with every rule schema; `clash_vars`/`clash_labels` are the names
// the rewrite introduces.
Derivation map_deriv(const Derivation& d, const std::function<Sequent(const Sequent&)>& map,
                     const std::set<std::string>& clash_vars,
                     const std::set<Label>& clash_labels, const Calculus& c) {
  guard_rule(d);
  // renames are rare; copy the subderivation only when one actually fires
  std::optional<Derivation> renamed;
  for (;;) {
    const RuleInstance& i = renamed ? renamed->inst : d.inst;
    if (fresh_var_rule(i.rule) && i.var && clash_vars.count(*i.var)) {
      const Derivation& src = renamed ? *renamed : d;
      FreshGen g;
      cover_derivation(g, src);
      Sequent tmp;
      for (const auto& v : clash_vars) tmp.sig.add(v);
      g.cover(tmp);
      renamed = rename_fresh_var(src, g.fresh_var(), c);
      continue;
    }
    int slot = fresh_label_slot(i.rule);
    if (slot >= 0 && clash_labels.count(i.labels[slot])) {
      const Derivation& src = renamed ? *renamed : d;
      FreshGen g;
      cover_derivation(g, src);
      g.next_label = std::max(g.next_label, *clash_labels.rbegin() + 1);
      renamed = rename_fresh_label(src, g.fresh_label(), c);
      continue;
    }
    break;
  }
  const Derivation& src = renamed ? *renamed : d;
  RuleInstance ni = src.inst;
  ni.conclusion = map(ni.conclusion);
  std::vector<Derivation> kids;
  kids.reserve(src.children.size());
  for (const auto& k : src.children)
    kids.push_back(map_deriv(k, map, clash_vars, clash_labels, c));
  return rebuild(std::move(ni), std::move(kids));
}

}  // namespace

// ---------------------------------------------------------------------------
// Plain structural rewrites

Derivation wk_deriv(const Derivation& d, Label w, const std::vector<Polarized>& forms,
                    const std::vector<Sequent>& kids, const Calculus& c) {
  std::set<std::string> vars;
  std::set<Label> labels;
  for (const auto& p : forms) {
    auto vs = all_vars(p.formula);
    vars.insert(vs.begin(), vs.end());
  }
  for (const auto& k : kids) {
    auto vs = all_sequent_vars(k);
    vars.insert(vs.begin(), vs.end());
    for (Label l : labels_of(k)) labels.insert(l);
  }
  auto map = [&, w, forms, kids](const Sequent& s) {
    return update_at(s, w, [&](Sequent& n) {
      for (const auto& p : forms) n.forms.add(p);
      for (const auto& k : kids) n.add_kid(k);
    });
  };
  return map_deriv(d, map, vars, labels, c);
}

Derivation wv_deriv(const Derivation& d, Label w, const std::string& x, const Calculus& c) {
  auto map = [w, x](const Sequent& s) { return with_sig(s, w, x); };
  return map_deriv(d, map, {x}, {}, c);
}

Derivation cv_deriv(const Derivation& d, Label w, const std::string& x, const Calculus& c) {
  if (locate_or_throw(d.conclusion(), w).sig.count(x) < 2)
    throw TransformError("cv: needs two copies of " + x + " at " + label_name(w));
  auto map = [w, x](const Sequent& s) { return with_sig(s, w, x, -1); };
  return map_deriv(d, map, {}, {}, c);
}

Derivation botr_deriv(const Derivation& d, Label w, const Calculus& c) {
  if (!locate_or_throw(d.conclusion(), w).forms.contains(out(Formula::bottom())))
    throw TransformError("bot_r: no bot^o at " + label_name(w));
  auto map = [w](const Sequent& s) { return without_form(s, w, out(Formula::bottom())); };
  return map_deriv(d, map, {}, {}, c);
}

Derivation n_deriv(const Derivation& d, const Calculus& c) {
  FreshGen g;
  cover_derivation(g, d);
  Label u = g.fresh_label();
  Label old_root = d.conclusion().label;
  Derivation renamed = ls_deriv(d, u, old_root, c);
  auto map = [old_root](const Sequent& s) {
    Sequent root;
    root.label = old_root;
    root.add_kid(s);
    return root;
  };
  return map_deriv(renamed, map, {}, {old_root}, c);
}

namespace {

Derivation shift_sig(const Derivation& d, Label from, Label to,
                     const std::vector<std::string>& zs, const Calculus& c) {
  for (const auto& z : zs)
    if (!locate_or_throw(d.conclusion(), from).sig.contains(z))
      throw TransformError("signature shift: " + z + " not at " + label_name(from));
  auto map = [from, to, zs](const Sequent& s) {
    Sequent t = s;
    t = update_at(t, from, [&](Sequent& n) {
      for (const auto& z : zs) n.sig.add(z, -1);
    });
    return update_at(t, to, [&](Sequent& n) {
      for (const auto& z : zs) n.sig.add(z);
    });
  };
  return map_deriv(d, map, {}, {}, c);
}

}  // namespace

Derivation nd_deriv(const Derivation& d, Label w, Label u, const std::vector<std::string>& zs,
                    const Calculus& c) {
  if (!strictly_reachable(d.conclusion(), w, u))
    throw TransformError("nd: needs strict reachability " + label_name(w) + " to " +
                         label_name(u));
  return shift_sig(d, u, w, zs, c);
}

Derivation dd_deriv(const Derivation& d, Label w, Label u, const std::vector<std::string>& zs,
                    const Calculus& c) {
  if (c.regime != Regime::CD) throw TransformError("dd: admissible only under constant domains");
  if (!strictly_reachable(d.conclusion(), w, u))
    throw TransformError("dd: needs strict reachability " + label_name(w) + " to " +
                         label_name(u));
  return shift_sig(d, w, u, zs, c);
}

Derivation cd_deriv(const Derivation& d, Label w, const std::vector<std::string>& zs,
                    const Calculus& c) {
  if (c.regime != Regime::CD) throw TransformError("cd: admissible only under constant domains");
  for (const auto& z : zs)
    if (!locate_or_throw(d.conclusion(), w).sig.contains(z))
      throw TransformError("cd: " + z + " not at " + label_name(w));
  auto map = [w, zs](const Sequent& s) {
    return update_at(s, w, [&](Sequent& n) {
      for (const auto& z : zs) n.sig.add(z, -1);
    });
  };
  return map_deriv(d, map, {}, {}, c);
}

// ---------------------------------------------------------------------------
// (mrg): fuse child u into its parent w

Derivation mrg_deriv(const Derivation& d, Label parent, Label child, const Calculus& c) {
  guard_rule(d);
  const RuleInstance& i0 = d.inst;
  if (i0.rule == RuleId::Lin && i0.labels[0] == parent &&
      (i0.labels[1] == child || i0.labels[2] == child)) {
    // the lin premise that nests the merged component already proves the
    // merged sequent; keep only that side
    int idx = i0.labels[1] == child ? 0 : 1;
    return mrg_deriv(d.children[idx], parent, child, c);
  }
  RuleInstance ni = i0;
  ni.conclusion = merge_child_into(i0.conclusion, parent, child);
  for (auto& l : ni.labels)
    if (l == child) l = parent;
  std::vector<Derivation> kids;
  for (const auto& k : d.children) kids.push_back(mrg_deriv(k, parent, child, c));
  return rebuild(std::move(ni), std::move(kids));
}

// ---------------------------------------------------------------------------
// (ec): fuse sibling `merged` into sibling `kept` (intuitionistic calculi)

Derivation ec_deriv(const Derivation& d, Label parent, Label kept, Label merged,
                    const Calculus& c) {
  guard_rule(d);
  if (d.inst.rule == RuleId::Lin)
    throw TransformError("ec: height-preserving form is unavailable with (lin)");
  RuleInstance ni = d.inst;
  ni.conclusion = merge_siblings(d.conclusion(), parent, kept, merged);
  for (auto& l : ni.labels)
    if (l == merged) l = kept;
  std::vector<Derivation> kids;
  for (const auto& k : d.children) kids.push_back(ec_deriv(k, parent, kept, merged, c));
  return rebuild(std::move(ni), std::move(kids));
}

// ---------------------------------------------------------------------------
// (ex): push child v one level down under a fresh component

Derivation ex_deriv(const Derivation& d, Label parent, Label child, Label fresh_label,
                    const Calculus& c) {
  guard_rule(d);
  if (d.inst.rule == RuleId::Lin)
    throw TransformError("ex: height-preserving form is unavailable with (lin)");
  auto map = [parent, child, fresh_label](const Sequent& s) {
    return insert_between(s, parent, child, fresh_label);
  };
  return map_deriv(d, map, {}, {fresh_label}, c);
}

// ---------------------------------------------------------------------------
// hp-invertibility

namespace {

bool consumer_rule(RuleId r) {
  switch (r) {
    case RuleId::OrL:
    case RuleId::OrR:
    case RuleId::AndL:
    case RuleId::AndR:
    case RuleId::ImpR:
    case RuleId::AllR:
    case RuleId::ExL: return true;
    default: return false;
  }
}

Formula instantiated(const Polarized& principal, const std::string& y) {
  return substitute(principal.formula.body(), y, principal.formula.bound_var());
}

}  // namespace

std::vector<Derivation> invert_rule(const RuleInstance& shape, const Derivation& d,
                                    const Calculus& c) {
  switch (shape.rule) {
    // premise = conclusion + extra material: weakening closes the case
    case RuleId::ImpL: {
      const Formula& f = shape.principal->formula;
      Label u = shape.labels[1];
      return {wk_deriv(d, u, {out(f.lhs())}, {}, c), wk_deriv(d, u, {in(f.rhs())}, {}, c)};
    }
    case RuleId::ExR1:
      return {wk_deriv(d, shape.labels[0], {out(instantiated(*shape.principal, *shape.var))}, {},
                       c)};
    case RuleId::AllL1:
      return {wk_deriv(d, shape.labels[1], {in(instantiated(*shape.principal, *shape.var))}, {},
                       c)};
    case RuleId::ExR2: {
      Derivation t = wv_deriv(d, shape.labels[0], *shape.var, c);
      return {wk_deriv(t, shape.labels[1], {out(instantiated(*shape.principal, *shape.var))}, {},
                       c)};
    }
    case RuleId::AllL2: {
      Derivation t = wv_deriv(d, shape.labels[0], *shape.var, c);
      return {wk_deriv(t, shape.labels[2], {in(instantiated(*shape.principal, *shape.var))}, {},
                       c)};
    }
    case RuleId::Ds: {
      Derivation t = d;
      for (const auto& x : shape.principal->formula.args())
        t = wv_deriv(t, shape.labels[0], x, c);
      return {t};
    }
    default: break;
  }
  if (!consumer_rule(shape.rule)) throw TransformError("rule is not invertible here");

  guard_rule(d);
  const RuleInstance& i0 = d.inst;
  bool match = i0.rule == shape.rule && i0.labels[0] == shape.labels[0] && i0.principal &&
               shape.principal && i0.principal->polarity == shape.principal->polarity &&
               alpha_equal(i0.principal->formula, shape.principal->formula);
  if (match) {
    std::vector<Derivation> out;
    for (size_t j = 0; j < d.children.size(); ++j) {
      Derivation k = d.children[j];
      if (int slot = fresh_label_slot(i0.rule); slot >= 0 && i0.labels[slot] != shape.labels[slot])
        k = ls_deriv(k, shape.labels[slot], i0.labels[slot], c);
      if (fresh_var_rule(i0.rule) && *i0.var != *shape.var)
        k = ps_deriv(k, *shape.var, *i0.var, c);
      out.push_back(std::move(k));
    }
    return out;
  }

  // commute the inversion past the last rule
  size_t np = shape.premises.size();
  if (d.children.empty()) {
    std::vector<Derivation> out;
    for (size_t j = 0; j < np; ++j) out.push_back(leaf_on(d.inst, shape.premises[j]));
    return out;
  }
  std::vector<std::vector<Derivation>> per_child;
  for (size_t i = 0; i < d.children.size(); ++i) {
    RuleInstance lifted = shape;
    lifted.conclusion = d.inst.premises[i];
    lifted.premises = instance_premises(lifted, c);
    per_child.push_back(invert_rule(lifted, d.children[i], c));
  }
  std::vector<Derivation> out;
  for (size_t j = 0; j < np; ++j) {
    RuleInstance ni = d.inst;
    ni.conclusion = shape.premises[j];
    std::vector<Derivation> kids;
    for (auto& pc : per_child) kids.push_back(pc[j]);
    out.push_back(rebuild(std::move(ni), std::move(kids)));
  }
  return out;
}

std::vector<Derivation> invert(RuleId r, const Derivation& d, std::vector<Label> labels,
                               const Polarized& principal, std::optional<std::string> var,
                               const Calculus& c) {
  FreshGen g;
  cover_derivation(g, d);
  RuleInstance shape{r, "", d.conclusion(), std::move(labels), principal, std::move(var), {}};
  if (int slot = fresh_label_slot(r); slot >= 0) {
    while (static_cast<int>(shape.labels.size()) <= slot) shape.labels.push_back(0);
    shape.labels[slot] = g.fresh_label();
  }
  if (fresh_var_rule(r) && !shape.var) shape.var = g.fresh_var();
  shape.premises = instance_premises(shape, c);
  return invert_rule(shape, d, c);
}

// ---------------------------------------------------------------------------
// (ctr): contract duplicate polarized formulas

namespace {

// Relocates child v of `from` so it hangs under the strict descendant `to`,
// via (ex) x n then (ec) x n. Intuitionistic calculi only.
Derivation relocate_child(const Derivation& d, Label from, Label v, Label to,
                          const Calculus& c) {
  if (from == to) return d;
  // strict path from -> a1 -> ... -> an = to
  std::vector<Label> path;
  const Sequent* cur = &locate_or_throw(d.conclusion(), from);
  while (cur->label != to) {
    const Sequent* next = nullptr;
    for (const auto& k : cur->kids)
      if (has_label(k, to)) next = &k;
    if (!next) throw TransformError("relocate: target not reachable");
    path.push_back(next->label);
    cur = next;
  }
  size_t n = path.size();
  FreshGen g;
  cover_derivation(g, d);
  std::vector<Label> es;
  Derivation t = d;
  Label chain_child = v;
  for (size_t i = 0; i < n; ++i) {
    Label e = g.fresh_label();
    t = ex_deriv(t, from, chain_child, e, c);
    chain_child = e;
    es.push_back(e);
  }
  // es.back() is now the child of `from`; fuse the chain into the path
  Label parent = from;
  for (size_t i = 0; i < n; ++i) {
    t = ec_deriv(t, parent, path[i], es[n - 1 - i], c);
    parent = path[i];
  }
  return t;
}

RuleInstance shape_on(RuleId r, const Sequent& concl, std::vector<Label> labels,
                      std::optional<Polarized> principal, std::optional<std::string> var,
                      const Calculus& c) {
  RuleInstance s{r, "", concl, std::move(labels), std::move(principal), std::move(var), {}};
  s.premises = instance_premises(s, c);
  return s;
}

}  // namespace

Derivation ctr_deriv(const Derivation& d, Label w, const Polarized& p, const Calculus& c) {
  guard_rule(d);
  if (locate_or_throw(d.conclusion(), w).forms.count(p) < 2)
    throw TransformError("ctr: needs two copies of the formula at " + label_name(w));
  const RuleInstance& i0 = d.inst;
  const bool principal_here = i0.rule != RuleId::Cut && i0.principal &&
                              i0.principal->polarity == p.polarity &&
                              alpha_equal(i0.principal->formula, p.formula) &&
                              principal_node(i0) == w;
  Sequent target = without_form(d.conclusion(), w, p);

  auto uniform = [&]() {
    RuleInstance ni = i0;
    ni.conclusion = target;
    std::vector<Derivation> kids;
    for (const auto& k : d.children) kids.push_back(ctr_deriv(k, w, p, c));
    return rebuild(std::move(ni), std::move(kids));
  };
  if (!principal_here) return uniform();

  switch (i0.rule) {
    case RuleId::Id:
    case RuleId::IdQ:
    case RuleId::BotL:
    case RuleId::ImpL:
    case RuleId::AllL1:
    case RuleId::AllL2:
    case RuleId::ExR1:
    case RuleId::ExR2:
    case RuleId::Ds:
      return uniform();  // the second copy keeps the instance intact
    case RuleId::OrL:
    case RuleId::AndR: {
      // binary consumers: invert the surviving copy inside each premise proof
      std::vector<Derivation> kids;
      std::vector<Formula> parts = {p.formula.lhs(), p.formula.rhs()};
      for (int i = 0; i < 2; ++i) {
        const Derivation& a = d.children[i];
        auto shape = shape_on(i0.rule, a.conclusion(), {w}, p, std::nullopt, c);
        Derivation twice = invert_rule(shape, a, c)[i];
        kids.push_back(ctr_deriv(twice, w, {parts[i], p.polarity}, c));
      }
      RuleInstance ni = shape_on(i0.rule, target, {w}, p, std::nullopt, c);
      ni.premises.clear();
      for (const auto& k : kids) ni.premises.push_back(k.conclusion());
      return Derivation{std::move(ni), std::move(kids)};
    }
    case RuleId::AndL:
    case RuleId::OrR: {
      const Derivation& a = d.children[0];
      auto shape = shape_on(i0.rule, a.conclusion(), {w}, p, std::nullopt, c);
      Derivation twice = invert_rule(shape, a, c)[0];
      twice = ctr_deriv(twice, w, {p.formula.lhs(), p.polarity}, c);
      twice = ctr_deriv(twice, w, {p.formula.rhs(), p.polarity}, c);
      RuleInstance ni = shape_on(i0.rule, target, {w}, p, std::nullopt, c);
      return rebuild(std::move(ni), {std::move(twice)});
    }
    case RuleId::ImpR: {
      Label v = i0.labels[1];
      Derivation t = lwr_deriv(d.children[0], w, v, {p}, c);
      FreshGen g;
      cover_derivation(g, t);
      Label v2 = g.fresh_label();
      auto shape = shape_on(RuleId::ImpR, t.conclusion(), {v, v2}, p, std::nullopt, c);
      t = invert_rule(shape, t, c)[0];
      t = mrg_deriv(t, v, v2, c);
      t = ctr_deriv(t, v, in(p.formula.lhs()), c);
      t = ctr_deriv(t, v, out(p.formula.rhs()), c);
      RuleInstance ni = shape_on(RuleId::ImpR, target, {w, v}, p, std::nullopt, c);
      return rebuild(std::move(ni), {std::move(t)});
    }
    case RuleId::AllR: {
      Label v = i0.labels[1];
      const std::string y = *i0.var;
      Derivation t = lwr_deriv(d.children[0], w, v, {p}, c);
      FreshGen g;
      cover_derivation(g, t);
      Label v2 = g.fresh_label();
      std::string y2 = g.fresh_var();
      auto shape = shape_on(RuleId::AllR, t.conclusion(), {v, v2}, p, y2, c);
      t = invert_rule(shape, t, c)[0];
      t = mrg_deriv(t, v, v2, c);
      t = ps_deriv(t, y, y2, c);
      t = cv_deriv(t, v, y, c);
      t = ctr_deriv(t, v, out(instantiated(*i0.principal, y)), c);
      RuleInstance ni = shape_on(RuleId::AllR, target, {w, v}, p, y, c);
      return rebuild(std::move(ni), {std::move(t)});
    }
    case RuleId::ExL: {
      const std::string y = *i0.var;
      const Derivation& a = d.children[0];
      FreshGen g;
      cover_derivation(g, a);
      std::string y2 = g.fresh_var();
      auto shape = shape_on(RuleId::ExL, a.conclusion(), {w}, p, y2, c);
      Derivation t = invert_rule(shape, a, c)[0];
      t = ps_deriv(t, y, y2, c);
      t = cv_deriv(t, w, y, c);
      t = ctr_deriv(t, w, in(instantiated(*i0.principal, y)), c);
      RuleInstance ni = shape_on(RuleId::ExL, target, {w}, p, y, c);
      return rebuild(std::move(ni), {std::move(t)});
    }
    default: return uniform();
  }
}

// ---------------------------------------------------------------------------
// (lft): move input formulas up; (lwr): move output formulas down

namespace {

Multiset<Polarized> to_multiset(const std::vector<Polarized>& v) {
  Multiset<Polarized> m;
  for (const auto& p : v) m.add(p);
  return m;
}

Sequent move_forms(const Sequent& s, Label from, Label to, const Multiset<Polarized>& moved) {
  Sequent t = update_at(s, from, [&](Sequent& n) {
    for (const auto& [p, cnt] : moved) n.forms.add(p, -cnt);
  });
  return update_at(t, to, [&](Sequent& n) {
    for (const auto& [p, cnt] : moved) n.forms.add(p, cnt);
  });
}

Derivation lft_rec(const Derivation& d, Label to, Label from, const Multiset<Polarized>& moved,
                   const Calculus& c);

Derivation lwr_rec(const Derivation& d, Label from, Label to, const Multiset<Polarized>& moved,
                   const Calculus& c);

Derivation lft_rec(const Derivation& d, Label to, Label from, const Multiset<Polarized>& moved,
                   const Calculus& c) {
  if (moved.empty()) return d;
  guard_rule(d);
  const RuleInstance& i0 = d.inst;
  Sequent target = move_forms(d.conclusion(), from, to, moved);

  const bool hits = i0.rule != RuleId::Cut && i0.principal &&
                    i0.principal->polarity == Polarity::Input &&
                    principal_node(i0) == from && moved.contains(*i0.principal) &&
                    moved.count(*i0.principal) ==
                        locate_or_throw(d.conclusion(), from).forms.count(*i0.principal);
  if (!hits) {
    RuleInstance ni = i0;
    ni.conclusion = target;
    std::vector<Derivation> kids;
    for (const auto& k : d.children) kids.push_back(lft_rec(k, to, from, moved, c));
    return rebuild(std::move(ni), std::move(kids));
  }

  const Polarized p = *i0.principal;
  switch (i0.rule) {
    case RuleId::Id:
    case RuleId::IdQ: {
      RuleInstance ni = i0;
      ni.labels[0] = to;
      return leaf_on(std::move(ni), std::move(target));
    }
    case RuleId::ImpL:
    case RuleId::AllL1: {
      RuleInstance ni = i0;
      ni.conclusion = target;
      ni.labels[0] = to;
      std::vector<Derivation> kids;
      for (const auto& k : d.children) kids.push_back(lft_rec(k, to, from, moved, c));
      return rebuild(std::move(ni), std::move(kids));
    }
    case RuleId::AllL2: {
      RuleInstance ni = i0;
      ni.conclusion = target;
      ni.labels[1] = to;
      if (c.regime == Regime::ND && !reachable(target, ni.labels[0], to))
        throw TransformError("lft: unsupported shift across an all_l2 inference");
      std::vector<Derivation> kids;
      for (const auto& k : d.children) kids.push_back(lft_rec(k, to, from, moved, c));
      return rebuild(std::move(ni), std::move(kids));
    }
    case RuleId::OrL:
    case RuleId::AndL: {
      bool binary = i0.rule == RuleId::OrL;
      std::vector<Derivation> kids;
      if (binary) {
        std::vector<Formula> parts = {p.formula.lhs(), p.formula.rhs()};
        for (int i = 0; i < 2; ++i) {
          Multiset<Polarized> m2 = moved;
          m2.remove(p);
          m2.add(in(parts[i]));
          kids.push_back(lft_rec(d.children[i], to, from, m2, c));
        }
      } else {
        Multiset<Polarized> m2 = moved;
        m2.remove(p);
        m2.add(in(p.formula.lhs()));
        m2.add(in(p.formula.rhs()));
        kids.push_back(lft_rec(d.children[0], to, from, m2, c));
      }
      RuleInstance ni = shape_on(i0.rule, target, {to}, p, std::nullopt, c);
      ni.premises.clear();
      for (const auto& k : kids) ni.premises.push_back(k.conclusion());
      return Derivation{std::move(ni), std::move(kids)};
    }
    case RuleId::ExL: {
      const std::string& y = *i0.var;
      Derivation t = nd_deriv(d.children[0], to, from, {y}, c);
      Multiset<Polarized> m2 = moved;
      m2.remove(p);
      m2.add(in(instantiated(p, y)));
      t = lft_rec(t, to, from, m2, c);
      RuleInstance ni = shape_on(RuleId::ExL, target, {to}, p, y, c);
      return rebuild(std::move(ni), {std::move(t)});
    }
    case RuleId::Ds: {
      std::vector<std::string> args = p.formula.args();
      Derivation t = nd_deriv(d.children[0], to, from, args, c);
      t = lft_rec(t, to, from, moved, c);
      RuleInstance ni = shape_on(RuleId::Ds, target, {to}, p, std::nullopt, c);
      return rebuild(std::move(ni), {std::move(t)});
    }
    default: throw TransformError("lft: unexpected principal interaction");
  }
}

Derivation lwr_rec(const Derivation& d, Label from, Label to, const Multiset<Polarized>& moved,
                   const Calculus& c) {
  if (moved.empty()) return d;
  guard_rule(d);
  if (d.inst.rule == RuleId::Lin)
    throw TransformError("lwr: height-preserving form is unavailable with (lin)");
  const RuleInstance& i0 = d.inst;
  Sequent target = move_forms(d.conclusion(), from, to, moved);

  const bool hits = i0.rule != RuleId::Cut && i0.principal &&
                    i0.principal->polarity == Polarity::Output &&
                    principal_node(i0) == from && moved.contains(*i0.principal) &&
                    moved.count(*i0.principal) ==
                        locate_or_throw(d.conclusion(), from).forms.count(*i0.principal);
  // the id pair's output occurrence; the stored principal is the input atom
  const bool id_hits = (i0.rule == RuleId::Id || i0.rule == RuleId::IdQ) && i0.principal &&
                       i0.labels[1] == from && moved.contains(out(i0.principal->formula)) &&
                       moved.count(out(i0.principal->formula)) ==
                           locate_or_throw(d.conclusion(), from)
                               .forms.count(out(i0.principal->formula));
  if (!hits && !id_hits) {
    RuleInstance ni = i0;
    ni.conclusion = target;
    std::vector<Derivation> kids;
    for (const auto& k : d.children) kids.push_back(lwr_rec(k, from, to, moved, c));
    return rebuild(std::move(ni), std::move(kids));
  }

  const Polarized p = id_hits ? out(i0.principal->formula) : *i0.principal;
  switch (i0.rule) {
    case RuleId::Id:
    case RuleId::IdQ: {
      RuleInstance ni = i0;
      ni.labels[1] = to;
      return leaf_on(std::move(ni), std::move(target));
    }
    case RuleId::ExR1: {
      const std::string& y = *i0.var;
      Multiset<Polarized> m2 = moved;
      m2.add(out(instantiated(p, y)));
      Derivation t = lwr_rec(d.children[0], from, to, m2, c);
      RuleInstance ni = shape_on(RuleId::ExR1, target, {to}, p, y, c);
      return rebuild(std::move(ni), {std::move(t)});
    }
    case RuleId::ExR2: {
      const std::string& y = *i0.var;
      Multiset<Polarized> m2 = moved;
      m2.add(out(instantiated(p, y)));
      Derivation t = lwr_rec(d.children[0], from, to, m2, c);
      RuleInstance ni = shape_on(RuleId::ExR2, target, {i0.labels[0], to}, p, y, c);
      return rebuild(std::move(ni), {std::move(t)});
    }
    case RuleId::OrR: {
      Multiset<Polarized> m2 = moved;
      m2.remove(p);
      m2.add(out(p.formula.lhs()));
      m2.add(out(p.formula.rhs()));
      Derivation t = lwr_rec(d.children[0], from, to, m2, c);
      RuleInstance ni = shape_on(RuleId::OrR, target, {to}, p, std::nullopt, c);
      return rebuild(std::move(ni), {std::move(t)});
    }
    case RuleId::AndR: {
      std::vector<Formula> parts = {p.formula.lhs(), p.formula.rhs()};
      std::vector<Derivation> kids;
      for (int i = 0; i < 2; ++i) {
        Multiset<Polarized> m2 = moved;
        m2.remove(p);
        m2.add(out(parts[i]));
        kids.push_back(lwr_rec(d.children[i], from, to, m2, c));
      }
      RuleInstance ni = shape_on(RuleId::AndR, target, {to}, p, std::nullopt, c);
      ni.premises.clear();
      for (const auto& k : kids) ni.premises.push_back(k.conclusion());
      return Derivation{std::move(ni), std::move(kids)};
    }
    case RuleId::ImpR:
    case RuleId::AllR: {
      Label v = i0.labels[1];
      Multiset<Polarized> m2 = moved;
      m2.remove(p);
      Derivation t = lwr_rec(d.children[0], from, to, m2, c);
      t = relocate_child(t, from, v, to, c);
      RuleInstance ni = i0.rule == RuleId::ImpR
                            ? shape_on(RuleId::ImpR, target, {to, v}, p, std::nullopt, c)
                            : shape_on(RuleId::AllR, target, {to, v}, p, *i0.var, c);
      return rebuild(std::move(ni), {std::move(t)});
    }
    default: throw TransformError("lwr: unexpected principal interaction");
  }
}

}  // namespace

Derivation lft_deriv(const Derivation& d, Label to, Label from,
                     const std::vector<Polarized>& moved, const Calculus& c) {
  if (!strictly_reachable(d.conclusion(), to, from))
    throw TransformError("lft: needs strict reachability " + label_name(to) + " to " +
                         label_name(from));
  for (const auto& p : moved)
    if (p.polarity != Polarity::Input) throw TransformError("lft moves input formulas");
  auto m = to_multiset(moved);
  for (const auto& [p, cnt] : m)
    if (locate_or_throw(d.conclusion(), from).forms.count(p) < cnt)
      throw TransformError("lft: formula not present at the source component");
  return lft_rec(d, to, from, m, c);
}

Derivation lwr_deriv(const Derivation& d, Label from, Label to,
                     const std::vector<Polarized>& moved, const Calculus& c) {
  if (!strictly_reachable(d.conclusion(), from, to))
    throw TransformError("lwr: needs strict reachability " + label_name(from) + " to " +
                         label_name(to));
  for (const auto& p : moved)
    if (p.polarity != Polarity::Output) throw TransformError("lwr moves output formulas");
  auto m = to_multiset(moved);
  for (const auto& [p, cnt] : m)
    if (locate_or_throw(d.conclusion(), from).forms.count(p) < cnt)
      throw TransformError("lwr: formula not present at the source component");
  return lwr_rec(d, from, to, m, c);
}

// ---------------------------------------------------------------------------
// Fresh-variable deletion (Appendix A)

namespace {

Derivation fresh_delete_rec(const Derivation& d, const std::string& y, Label root,
                            const Calculus& c) {
  // extension-rule merges never consume signature variables, so the uniform
  // root-signature rewrite commutes with them; no guard needed here
  const RuleInstance& i0 = d.inst;
  Sequent target = update_at(d.conclusion(), root, [&](Sequent& n) { n.sig.remove(y); });

  if (i0.var && *i0.var == y && (i0.rule == RuleId::AllL1 || i0.rule == RuleId::ExR1)) {
    // the deleted variable was used to instantiate: switch to the
    // signature-extending variant, which re-introduces it as fresh
    RuleInstance ni;
    if (i0.rule == RuleId::AllL1)
      ni = shape_on(RuleId::AllL2, target, {root, i0.labels[0], i0.labels[1]}, i0.principal, y,
                    c);
    else
      ni = shape_on(RuleId::ExR2, target, {root, i0.labels[0]}, i0.principal, y, c);
    return Derivation{std::move(ni), d.children};
  }
  RuleInstance ni = i0;
  ni.conclusion = target;
  std::vector<Derivation> kids;
  for (const auto& k : d.children) kids.push_back(fresh_delete_rec(k, y, root, c));
  return rebuild(std::move(ni), std::move(kids));
}

}  // namespace

Derivation fresh_delete(const Derivation& d, const std::string& y, const Calculus& c) {
  const Sequent& concl = d.conclusion();
  Label root = concl.label;
  if (!concl.sig.contains(y))
    throw TransformError("fresh_delete: " + y + " is not in the root signature");
  Sequent probe = update_at(concl, root, [&](Sequent& n) { n.sig.remove(y); });
  if (all_sequent_vars(probe).count(y))
    throw TransformError("fresh_delete: " + y + " occurs in the remaining sequent");
  return fresh_delete_rec(d, y, root, c);
}

// ---------------------------------------------------------------------------
// Cut elimination (intuitionistic calculi)

namespace {

bool has_cut(const Derivation& d) {
  if (d.inst.rule == RuleId::Cut) return true;
  return std::any_of(d.children.begin(), d.children.end(),
                     [](const Derivation& k) { return has_cut(k); });
}

Derivation reduce_cut(const Formula& phi, Label w, const Derivation& d1, const Derivation& d2,
                      const Calculus& c);

// Permutes the cut above the last rule of the side where the cut formula is
// not principal. `into_right` selects the side.
Derivation permute_cut(const Formula& phi, Label w, const Derivation& d1, const Derivation& d2,
                       bool into_right, const Calculus& c) {
  Derivation active = into_right ? d2 : d1;
  const Derivation& other = into_right ? d1 : d2;
  // the lifted shape's fresh names must not occur anywhere in `other`
  FreshGen g;
  cover_derivation(g, other);
  cover_derivation(g, active);
  if (fresh_var_rule(active.inst.rule)) active = rename_fresh_var(active, g.fresh_var(), c);
  if (int slot = fresh_label_slot(active.inst.rule); slot >= 0)
    active = rename_fresh_label(active, g.fresh_label(), c);
  RuleInstance lifted = active.inst;
  lifted.conclusion = other.conclusion();
  lifted.premises = instance_premises(lifted, c);
  std::vector<Derivation> inverted = invert_rule(lifted, other, c);
  Sequent target = without_form(d1.conclusion(), w, out(phi));
  std::vector<Derivation> kids;
  for (size_t i = 0; i < active.children.size(); ++i) {
    kids.push_back(into_right ? reduce_cut(phi, w, inverted[i], active.children[i], c)
                              : reduce_cut(phi, w, active.children[i], inverted[i], c));
  }
  RuleInstance ni = active.inst;
  ni.conclusion = target;
  return rebuild(std::move(ni), std::move(kids));
}

// Removes one stray copy of z from sig(at); under ND the context must provide
// z at some component reaching `at`.
Derivation drop_sig_copy(const Derivation& d, Label at, const std::string& z,
                         const Calculus& c) {
  if (c.regime == Regime::CD) return cd_deriv(d, at, {z}, c);
  // ND: shift the copy up to another holder and contract
  const Sequent& concl = d.conclusion();
  Label holder = -1;
  Sequent probe = update_at(concl, at, [&](Sequent& n) { n.sig.remove(z); });
  for (Label l : labels_of(probe))
    if (reachable(probe, l, at) && locate_or_throw(probe, l).sig.contains(z)) {
      holder = l;
      break;
    }
  if (holder == -1) throw TransformError("cut: cannot discharge signature copy");
  if (holder == at) return cv_deriv(d, at, z, c);
  Derivation t = nd_deriv(d, holder, at, {z}, c);
  return cv_deriv(t, holder, z, c);
}

// Moves a freshly introduced z (present only at sig(j)) to the root and
// deletes it.
Derivation discharge_fresh(const Derivation& d, Label j, const std::string& z,
                           const Calculus& c) {
  Label root = d.conclusion().label;
  Derivation t = d;
  if (j != root) t = nd_deriv(t, root, j, {z}, c);
  return fresh_delete(t, z, c);
}

Derivation reduce_cut(const Formula& phi, Label w, const Derivation& d1, const Derivation& d2,
                      const Calculus& c) {
  Sequent target = without_form(d1.conclusion(), w, out(phi));

  if (phi.kind() == Conn::Bottom) return botr_deriv(d1, w, c);

  const RuleInstance& r1 = d1.inst;
  const RuleInstance& r2 = d2.inst;

  // initial premises whose principal pair survives the cut
  if (r1.rule == RuleId::BotL) return leaf_on(r1, target);
  bool left_pair_consumed = (r1.rule == RuleId::Id || r1.rule == RuleId::IdQ) &&
                            alpha_equal(r1.principal->formula, phi) && r1.labels[1] == w &&
                            locate_or_throw(d1.conclusion(), w).forms.count(out(phi)) == 1;
  if ((r1.rule == RuleId::Id || r1.rule == RuleId::IdQ) && !left_pair_consumed)
    return leaf_on(r1, target);
  if (r2.rule == RuleId::BotL) {
    RuleInstance ni = r2;
    ni.conclusion = target;
    ni.premises.clear();
    return Derivation{std::move(ni), {}};
  }
  bool right_pair_consumed = (r2.rule == RuleId::Id || r2.rule == RuleId::IdQ) &&
                             alpha_equal(r2.principal->formula, phi) && r2.labels[0] == w &&
                             locate_or_throw(d2.conclusion(), w).forms.count(in(phi)) == 1;
  if ((r2.rule == RuleId::Id || r2.rule == RuleId::IdQ) && !right_pair_consumed) {
    RuleInstance ni = r2;
    ni.conclusion = target;
    ni.premises.clear();
    return Derivation{std::move(ni), {}};
  }

  const bool left_principal =
      left_pair_consumed ||
      (r1.principal && r1.principal->polarity == Polarity::Output &&
       alpha_equal(r1.principal->formula, phi) &&
       ((r1.rule == RuleId::ExR2 ? r1.labels[1] : r1.labels[0]) == w) &&
       (r1.rule == RuleId::OrR || r1.rule == RuleId::AndR || r1.rule == RuleId::ImpR ||
        r1.rule == RuleId::AllR || r1.rule == RuleId::ExR1 || r1.rule == RuleId::ExR2));
  const bool right_principal =
      right_pair_consumed ||
      (r2.principal && r2.principal->polarity == Polarity::Input &&
       alpha_equal(r2.principal->formula, phi) && principal_node(r2) == w &&
       (r2.rule == RuleId::OrL || r2.rule == RuleId::AndL || r2.rule == RuleId::ImpL ||
        r2.rule == RuleId::ExL || r2.rule == RuleId::AllL1 || r2.rule == RuleId::AllL2 ||
        r2.rule == RuleId::Ds));

  if (!right_principal) return permute_cut(phi, w, d1, d2, true, c);
  if (!left_principal) return permute_cut(phi, w, d1, d2, false, c);

  // principal on both sides
  if (phi.is_atom()) {
    if (r2.rule == RuleId::Id || r2.rule == RuleId::IdQ) {
      // both identity leaves: reachability composes
      RuleInstance ni = r1;
      ni.labels = {r1.labels[0], r2.labels[1]};
      ni.rule = phi.args().empty() && !c.first_order() ? RuleId::Id : RuleId::IdQ;
      return leaf_on(std::move(ni), target);
    }
    // right premise ends in (ds) on the cut atom
    Label a = r1.labels[0];
    const Derivation& b = d2.children[0];
    Derivation moved = a == w ? b : nd_deriv(b, a, w, phi.args(), c);
    Sequent left_concl = moved.conclusion();
    left_concl = without_form(left_concl, w, in(phi));
    left_concl = with_form(left_concl, w, out(phi));
    RuleInstance idleaf = r1;
    Derivation lf = leaf_on(std::move(idleaf), left_concl);
    Derivation e = reduce_cut(phi, w, lf, moved, c);
    RuleInstance ds = shape_on(RuleId::Ds, target, {a}, in(phi), std::nullopt, c);
    return rebuild(std::move(ds), {std::move(e)});
  }

  switch (phi.kind()) {
    case Conn::Or: {
      const Formula a = phi.lhs(), b = phi.rhs();
      const Derivation& l = d1.children[0];                      // C + a^o + b^o
      const Derivation& ra = d2.children[0];                     // C + a^i
      const Derivation& rb = d2.children[1];                     // C + b^i
      Derivation e1 = reduce_cut(a, w, l, wk_deriv(ra, w, {out(b)}, {}, c), c);  // C + b^o
      return reduce_cut(b, w, e1, rb, c);
    }
    case Conn::And: {
      const Formula a = phi.lhs(), b = phi.rhs();
      const Derivation& la = d1.children[0];  // C + a^o
      const Derivation& lb = d1.children[1];  // C + b^o
      const Derivation& r = d2.children[0];   // C + a^i + b^i
      Derivation e1 = reduce_cut(a, w, wk_deriv(la, w, {in(b)}, {}, c), r, c);  // C + b^i
      return reduce_cut(b, w, lb, e1, c);
    }
    case Conn::Imp: {
      const Formula a = phi.lhs(), b = phi.rhs();
      Label u = r2.labels[1];
      const Derivation& ra = d2.children[0];  // C + phi^i + a^o @ u
      const Derivation& rb = d2.children[1];  // C + phi^i + b^i @ u
      Derivation da = reduce_cut(phi, w, wk_deriv(d1, u, {out(a)}, {}, c), ra, c);  // C + a^o@u
      Derivation db = reduce_cut(phi, w, wk_deriv(d1, u, {in(b)}, {}, c), rb, c);   // C + b^i@u
      Derivation m = u == w ? d1 : lwr_deriv(d1, w, u, {out(phi)}, c);
      FreshGen g;
      cover_derivation(g, m);
      Label v2 = g.fresh_label();
      auto shape = shape_on(RuleId::ImpR, m.conclusion(), {u, v2}, out(phi), std::nullopt, c);
      m = invert_rule(shape, m, c)[0];
      m = mrg_deriv(m, u, v2, c);  // C + a^i@u + b^o@u
      Derivation e1 = reduce_cut(b, u, m, wk_deriv(db, u, {in(a)}, {}, c), c);  // C + a^i@u
      return reduce_cut(a, u, da, e1, c);
    }
    case Conn::Forall: {
      const std::string z = *r2.var;
      Label u = r2.rule == RuleId::AllL1 ? r2.labels[1] : r2.labels[2];
      const Derivation& bprem = d2.children[0];
      Formula inst_f = instantiated(*r2.principal, z);
      // D_1 / D_2: shift the cut to the premise of the right rule
      Derivation dd1 = wk_deriv(d1, u, {in(inst_f)}, {}, c);
      if (r2.rule == RuleId::AllL2) dd1 = wv_deriv(dd1, r2.labels[0], z, c);
      Derivation dd2 = reduce_cut(phi, w, dd1, bprem, c);  // (C [+ sig j,z]) + inst^i @ u
      // main branch: instantiate the left premise at z
      Derivation m = u == w ? d1 : lwr_deriv(d1, w, u, {out(phi)}, c);
      if (r2.rule == RuleId::AllL2) m = wv_deriv(m, r2.labels[0], z, c);
      FreshGen g;
      cover_derivation(g, m);
      Sequent tmp;
      tmp.sig.add(z);
      g.cover(tmp);
      Label v2 = g.fresh_label();
      std::string y2 = g.fresh_var();
      auto shape = shape_on(RuleId::AllR, m.conclusion(), {u, v2}, out(phi), y2, c);
      m = invert_rule(shape, m, c)[0];
      m = mrg_deriv(m, u, v2, c);
      m = ps_deriv(m, z, y2, c);           // ... + sig(u, z) + inst^o @ u
      m = drop_sig_copy(m, u, z, c);       // ... + inst^o @ u
      Derivation e = reduce_cut(inst_f, u, m, dd2, c);
      if (r2.rule == RuleId::AllL2) e = discharge_fresh(e, r2.labels[0], z, c);
      return e;
    }
    case Conn::Exists: {
      const std::string y = *r2.var;  // fresh variable of (ex_l)
      const std::string z = *r1.var;  // instantiation variable of the left rule
      const Derivation& aprem = d1.children[0];
      const Derivation& bprem = d2.children[0];
      Formula inst_f = instantiated(*r1.principal, z);
      Derivation dd1 = wk_deriv(d2, w, {out(inst_f)}, {}, c);
      if (r1.rule == RuleId::ExR2) dd1 = wv_deriv(dd1, r1.labels[0], z, c);
      Derivation dd2 = reduce_cut(phi, w, aprem, dd1, c);  // (C [+ sig j,z]) + inst^o @ w
      // main: rename the fresh y of (ex_l) to z and discharge the signature copy
      Derivation m = ps_deriv(bprem, z, y, c);  // C + sig(w, z) + inst^i @ w
      if (r1.rule == RuleId::ExR1) {
        m = drop_sig_copy(m, w, z, c);
      } else {
        // z must sit at the component j of (ex_r2)
        Label j = r1.labels[0];
        if (j != w) {
          if (c.regime == Regime::ND) {
            m = nd_deriv(m, j, w, {z}, c);
          } else {
            m = wv_deriv(m, j, z, c);
            m = cd_deriv(m, w, {z}, c);
          }
        }
      }
      Derivation e = reduce_cut(inst_f, w, dd2, m, c);
      if (r1.rule == RuleId::ExR2) e = discharge_fresh(e, r1.labels[0], z, c);
      return e;
    }
    default: throw TransformError("cut: unexpected principal case");
  }
}

Derivation eliminate_one(const Derivation& d, const Calculus& c, bool& did) {
  if (d.inst.rule == RuleId::Cut && !has_cut(d.children[0]) && !has_cut(d.children[1])) {
    did = true;
    return reduce_cut(d.inst.principal->formula, d.inst.labels[0], d.children[0], d.children[1],
                      c);
  }
  Derivation out = d;
  for (size_t i = 0; i < out.children.size() && !did; ++i) {
    out.children[i] = eliminate_one(out.children[i], c, did);
    if (did) out.inst.premises[i] = out.children[i].conclusion();
  }
  return out;
}

}  // namespace

Derivation eliminate_cut(const Derivation& d, const Calculus& c) {
  if (c.has_lin())
    throw TransformError(
        "cut elimination is only available for the intuitionistic calculi; (lin) resists the "
        "permutation");
  Derivation cur = d;
  while (has_cut(cur)) {
    bool did = false;
    cur = eliminate_one(cur, c, did);
    if (!did) throw TransformError("cut: no topmost cut found");
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Request dispatcher, with the GD-family re-prove fallback

namespace {

TransformResult reprove(const Sequent& goal, const Calculus& c, const Budget& budget) {
  ProveResult r = prove(goal, c, budget);
  if (r.status != ProveResult::Status::Proved)
    throw TransformError("fallback proof search did not close within budget");
  return {*r.derivation, true};
}

std::vector<Polarized> moved_forms(const TransformRequest& req) {
  if (!req.add_forms.empty()) return req.add_forms;
  if (req.formula) return {*req.formula};
  throw TransformError(req.rule + ": no formulas given");
}

}  // namespace

TransformResult admissible(const TransformRequest& req, const Derivation& d, const Calculus& c) {
  const bool gd = c.has_lin();
  const Sequent& concl = d.conclusion();

  if (req.rule == "wk") return {wk_deriv(d, req.w, req.add_forms, req.add_kids, c), false};
  if (req.rule == "wv") return {wv_deriv(d, req.w, req.var, c), false};
  if (req.rule == "cv") return {cv_deriv(d, req.w, req.var, c), false};
  if (req.rule == "bot_r") return {botr_deriv(d, req.w, c), false};
  if (req.rule == "nd") return {nd_deriv(d, req.w, req.u, req.vars, c), false};
  if (req.rule == "dd") return {dd_deriv(d, req.w, req.u, req.vars, c), false};
  if (req.rule == "cd") return {cd_deriv(d, req.w, req.vars, c), false};
  if (req.rule == "mrg") return {mrg_deriv(d, req.w, req.u, c), false};
  if (req.rule == "ctr_in") {
    if (!req.formula || req.formula->polarity != Polarity::Input)
      throw TransformError("ctr_in: an input formula is required");
    return {ctr_deriv(d, req.w, *req.formula, c), false};
  }
  if (req.rule == "ps") return {ps_deriv(d, req.var, req.var2, c), false};
  if (req.rule == "ls") return {ls_deriv(d, req.w, req.u, c), false};
  if (req.rule == "n") return {n_deriv(d, c), false};
  if (req.rule == "lft") return {lft_deriv(d, req.w, req.u, moved_forms(req), c), false};
  if (req.rule == "fresh_delete") return {fresh_delete(d, req.var, c), false};

  if (req.rule == "ctr_out") {
    if (!req.formula || req.formula->polarity != Polarity::Output)
      throw TransformError("ctr_out: an output formula is required");
    if (!gd) return {ctr_deriv(d, req.w, *req.formula, c), false};
    return reprove(without_form(concl, req.w, *req.formula), c, req.reprove_budget);
  }
  if (req.rule == "lwr") {
    auto forms = moved_forms(req);
    if (!gd) return {lwr_deriv(d, req.w, req.u, forms, c), false};
    Sequent target = concl;
    for (const auto& p : forms) target = without_form(target, req.w, p);
    for (const auto& p : forms) target = with_form(target, req.u, p);
    return reprove(target, c, req.reprove_budget);
  }
  if (req.rule == "ex") {
    FreshGen g;
    cover_derivation(g, d);
    Label e = g.fresh_label();
    if (!gd) return {ex_deriv(d, req.w, req.u, e, c), false};
    return reprove(insert_between(concl, req.w, req.u, e), c, req.reprove_budget);
  }
  if (req.rule == "ec") {
    if (!gd) return {ec_deriv(d, req.w, req.u, req.v, c), false};
    return reprove(merge_siblings(concl, req.w, req.u, req.v), c, req.reprove_budget);
  }
  if (req.rule == "cut") {
    if (!req.formula || !req.second)
      throw TransformError("cut: a cut formula and a second derivation are required");
    const Formula& phi = req.formula->formula;
    Sequent target = without_form(concl, req.w, out(phi));
    if (!sequent_alpha_equal(target,
                             without_form(req.second->conclusion(), req.w, in(phi))))
      throw TransformError("cut: premise contexts do not agree");
    if (gd) return reprove(target, c, req.reprove_budget);
    Calculus cc = c;
    cc.allow_cut = true;
    RuleInstance cut{RuleId::Cut, "", target, {req.w}, out(phi), std::nullopt, {}};
    cut.premises = {concl, req.second->conclusion()};
    Derivation with_cut{cut, {d, *req.second}};
    return {eliminate_cut(with_cut, c), false};
  }
  throw TransformError("unknown transform rule '" + req.rule + "'");
}

}  // namespace nsq
