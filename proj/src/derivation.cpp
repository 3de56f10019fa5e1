#include "nsq/derivation.hpp"

#include <algorithm>

namespace nsq {

namespace {

bool is_initial(RuleId r) { return r == RuleId::Id || r == RuleId::IdQ || r == RuleId::BotL; }

void check_rec(const Derivation& d, const Calculus& c, const std::string& path,
               std::vector<Violation>& out) {
  auto ls = labels_of(d.inst.conclusion);
  for (size_t i = 1; i < ls.size(); ++i)
    if (ls[i] == ls[i - 1]) {
      out.push_back({path, "duplicate label " + label_name(ls[i]) + " in conclusion"});
      break;
    }
  if (auto err = check_instance(d.inst, c)) out.push_back({path, *err});
  if (d.inst.premises.empty() && !is_initial(d.inst.rule))
    out.push_back({path, "leaf is not an initial rule"});
  if (d.children.size() != d.inst.premises.size()) {
    out.push_back({path, "child count does not match premise count"});
    return;
  }
  for (size_t i = 0; i < d.children.size(); ++i) {
    std::string sub = path.empty() ? std::to_string(i) : path + "." + std::to_string(i);
    if (!sequent_alpha_equal(d.children[i].conclusion(), d.inst.premises[i]))
      out.push_back({sub, "child conclusion differs from parent premise"});
    check_rec(d.children[i], c, sub, out);
  }
}

}  // namespace

std::vector<Violation> check(const Derivation& d, const Calculus& c) {
  std::vector<Violation> out;
  try {
    check_rec(d, c, "", out);
  } catch (const std::exception& e) {
    out.push_back({"", std::string("internal: ") + e.what()});
  }
  return out;
}

bool check_ok(const Derivation& d, const Calculus& c) { return check(d, c).empty(); }

int height(const Derivation& d) {
  int h = 0;
  for (const auto& k : d.children) h = std::max(h, height(k));
  return h + 1;
}

bool uses_rule(const Derivation& d, RuleId r) {
  if (d.inst.rule == r) return true;
  return std::any_of(d.children.begin(), d.children.end(),
                     [&](const Derivation& k) { return uses_rule(k, r); });
}

void cover_derivation(FreshGen& g, const Derivation& d) {
  g.cover(d.inst.conclusion);
  for (const auto& p : d.inst.premises) g.cover(p);
  if (d.inst.var) {
    Sequent tmp;
    tmp.sig.add(*d.inst.var);
    g.cover(tmp);
  }
  for (const auto& k : d.children) cover_derivation(g, k);
}

namespace {

Derivation leaf(RuleInstance inst) { return Derivation{std::move(inst), {}}; }

Derivation node(RuleInstance inst, std::vector<Derivation> kids) {
  return Derivation{std::move(inst), std::move(kids)};
}

RuleInstance make_inst(RuleId r, const Sequent& s, std::vector<Label> labels,
                       std::optional<Polarized> principal, std::optional<std::string> var,
                       const Calculus& c) {
  RuleInstance inst{r, "", s, std::move(labels), std::move(principal), std::move(var), {}};
  inst.premises = instance_premises(inst, c);
  return inst;
}

Derivation general_id(const Sequent& s, const Formula& f, Label w, Label u, const Calculus& c,
                      FreshGen& fresh) {
  switch (f.kind()) {
    case Conn::Atom: {
      RuleId r = f.args().empty() ? RuleId::Id : RuleId::IdQ;
      return leaf(make_inst(r, s, {w, u}, in(f), std::nullopt, c));
    }
    case Conn::Bottom:
      return leaf(make_inst(RuleId::BotL, s, {w}, std::nullopt, std::nullopt, c));
    case Conn::Or: {
      auto orr = make_inst(RuleId::OrR, s, {u}, out(f), std::nullopt, c);
      Sequent s1 = orr.premises[0];
      auto orl = make_inst(RuleId::OrL, s1, {w}, in(f), std::nullopt, c);
      Derivation dl = general_id(orl.premises[0], f.lhs(), w, u, c, fresh);
      Derivation dr = general_id(orl.premises[1], f.rhs(), w, u, c, fresh);
      return node(orr, {node(orl, {std::move(dl), std::move(dr)})});
    }
    case Conn::And: {
      auto andr = make_inst(RuleId::AndR, s, {u}, out(f), std::nullopt, c);
      std::vector<Derivation> kids;
      for (int i = 0; i < 2; ++i) {
        const Sequent& si = andr.premises[i];
        auto andl = make_inst(RuleId::AndL, si, {w}, in(f), std::nullopt, c);
        Formula part = i == 0 ? f.lhs() : f.rhs();
        Derivation sub = general_id(andl.premises[0], part, w, u, c, fresh);
        kids.push_back(node(andl, {std::move(sub)}));
      }
      return node(andr, std::move(kids));
    }
    case Conn::Imp: {
      Label v = fresh.fresh_label();
      auto impr = make_inst(RuleId::ImpR, s, {u, v}, out(f), std::nullopt, c);
      const Sequent& s1 = impr.premises[0];
      auto impl = make_inst(RuleId::ImpL, s1, {w, v}, in(f), std::nullopt, c);
      Derivation dl = general_id(impl.premises[0], f.lhs(), v, v, c, fresh);
      Derivation dr = general_id(impl.premises[1], f.rhs(), v, v, c, fresh);
      return node(impr, {node(impl, {std::move(dl), std::move(dr)})});
    }
    case Conn::Forall: {
      Label v = fresh.fresh_label();
      std::string y = fresh.fresh_var();
      auto allr = make_inst(RuleId::AllR, s, {u, v}, out(f), y, c);
      const Sequent& s1 = allr.premises[0];
      auto alll = make_inst(RuleId::AllL1, s1, {w, v}, in(f), y, c);
      Formula inner = substitute(f.body(), y, f.bound_var());
      Derivation sub = general_id(alll.premises[0], inner, v, v, c, fresh);
      return node(allr, {node(alll, {std::move(sub)})});
    }
    case Conn::Exists: {
      std::string y = fresh.fresh_var();
      auto exl = make_inst(RuleId::ExL, s, {w}, in(f), y, c);
      const Sequent& s1 = exl.premises[0];
      auto exr = make_inst(RuleId::ExR1, s1, {u}, out(f), y, c);
      Formula inner = substitute(f.body(), y, f.bound_var());
      Derivation sub = general_id(exr.premises[0], inner, w, u, c, fresh);
      return node(exl, {node(exr, {std::move(sub)})});
    }
  }
  throw SequentError("general-id: unreachable");
}

}  // namespace

Derivation derive_general_id(const Sequent& s, const Formula& f, Label w, Label u,
                             const Calculus& c) {
  if (!reachable(s, w, u))
    throw SequentError("general-id: " + label_name(u) + " not reachable from " + label_name(w));
  if (!locate_or_throw(s, w).forms.contains(in(f)) ||
      !locate_or_throw(s, u).forms.contains(out(f)))
    throw SequentError("general-id: occurrences f^i at w and f^o at u are required");
  if (!c.first_order() && !f.is_propositional())
    throw SequentError("general-id: first-order formula in a propositional calculus");
  FreshGen fresh;
  fresh.cover(s);
  return general_id(s, f, w, u, c, fresh);
}

}  // namespace nsq
