#include "nsq/prover.hpp"

#include <algorithm>
#include <cassert>

#include "nsq/transform.hpp"

namespace nsq {

SearchState::SearchState(Sequent start, Calculus calc, Budget budget)
    : calc_(std::move(calc)), budget_(budget) {
  fresh_.cover(start);
  nodes_.push_back({std::move(start), std::nullopt, {}, -1});
  branches_.push_back({});
}

std::vector<int> SearchState::open_branches() const {
  std::vector<int> out;
  for (size_t i = 0; i < branches_.size(); ++i)
    if (!branches_[i].closed) out.push_back(static_cast<int>(i));
  return out;
}

const Sequent& SearchState::branch_top(int b) const { return top_of(branches_.at(b)); }

bool SearchState::branch_saturated(int b) const { return branches_.at(b).saturated; }

std::vector<Sequent> SearchState::branch_path(int b) const {
  std::vector<Sequent> path;
  for (int n = branches_.at(b).leaf; n != -1; n = nodes_[n].parent) path.push_back(nodes_[n].seq);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<int> SearchState::apply(int bi, const RuleInstance& inst) {
  int leaf = branches_[bi].leaf;
  nodes_[leaf].inst = inst;
  std::vector<int> result;
  if (inst.premises.empty()) {
    branches_[bi].closed = true;
    return result;
  }
  for (size_t i = 0; i < inst.premises.size(); ++i) {
    if (sequent_size(inst.premises[i]) > budget_.max_size) {
      phase_ = Phase::Unknown;
      unknown_reason_ = "sequent-size";
    }
    int ni = static_cast<int>(nodes_.size());
    nodes_.push_back({inst.premises[i], std::nullopt, {}, leaf});
    nodes_[leaf].kids.push_back(ni);
    if (i == 0) {
      branches_[bi].leaf = ni;
      result.push_back(bi);
    } else {
      Branch nb = branches_[bi];
      nb.leaf = ni;
      branches_.push_back(std::move(nb));
      result.push_back(static_cast<int>(branches_.size()) - 1);
    }
  }
  return result;
}

void SearchState::closure_step() {
  for (int bi : open_branches()) {
    const Sequent& top = top_of(branches_[bi]);
    RuleId idrule = calc_.first_order() ? RuleId::IdQ : RuleId::Id;
    auto ids = applicable_instances(top, idrule, calc_, fresh_);
    if (!ids.empty()) {
      apply(bi, ids.front());
      continue;
    }
    auto bots = applicable_instances(top, RuleId::BotL, calc_, fresh_);
    if (!bots.empty()) apply(bi, bots.front());
  }
}

void SearchState::rule_step(RuleId r) {
  struct Item {
    std::vector<Label> labels;
    std::optional<Polarized> principal;
    std::optional<std::string> var;
  };
  for (int bi : open_branches()) {
    Branch& b0 = branches_[bi];
    if (b0.closed) continue;
    // snapshot of applicable instances, minus the branch's blocking sets
    std::vector<Item> items;
    for (const auto& inst : applicable_instances(top_of(b0), r, calc_, fresh_)) {
      if (r == RuleId::ImpL &&
          b0.done_imp.count({inst.labels[0], inst.principal->formula, inst.labels[1]}))
        continue;
      if (r == RuleId::ExR1 &&
          b0.done_exr1.count({inst.labels[0], inst.principal->formula, *inst.var}))
        continue;
      if (r == RuleId::AllL1 && b0.done_alll1.count({inst.labels[0], inst.principal->formula,
                                                     inst.labels[1], *inst.var}))
        continue;
      if (r == RuleId::ImpR) {
        // a component already holding phi^i and psi^o falsifies phi -> psi by
        // itself; spawning the child component would regrow forever
        const Sequent& node = locate_or_throw(top_of(b0), inst.labels[0]);
        if (node.forms.contains(in(inst.principal->formula.lhs())) &&
            node.forms.contains(out(inst.principal->formula.rhs())))
          continue;
      }
      items.push_back({inst.labels, inst.principal, inst.var});
    }
    std::vector<int> descendants = {bi};
    for (auto& item : items) {
      std::vector<int> next;
      for (int d : descendants) {
        // fresh names are drawn at application time
        std::vector<Label> labels = item.labels;
        std::optional<std::string> var = item.var;
        if (r == RuleId::ImpR) labels[1] = fresh_.fresh_label();
        if (r == RuleId::AllR) {
          labels[1] = fresh_.fresh_label();
          var = fresh_.fresh_var();
        }
        if (r == RuleId::ExL) var = fresh_.fresh_var();
        // record blocking before the branch may split
        if (r == RuleId::ImpL)
          branches_[d].done_imp.insert({labels[0], item.principal->formula, labels[1]});
        if (r == RuleId::ExR1)
          branches_[d].done_exr1.insert({labels[0], item.principal->formula, *var});
        if (r == RuleId::AllL1)
          branches_[d].done_alll1.insert(
              {labels[0], item.principal->formula, labels[1], *var});
        RuleInstance inst{r, "", top_of(branches_[d]), labels, item.principal, var, {}};
        inst.premises = instance_premises(inst, calc_);
        auto res = apply(d, inst);
        next.insert(next.end(), res.begin(), res.end());
        if (phase_ == Phase::Unknown) return;
      }
      descendants = std::move(next);
    }
  }
}

void SearchState::lin_step() {
  std::vector<int> worklist = open_branches();
  while (!worklist.empty()) {
    int bi = worklist.back();
    worklist.pop_back();
    if (branches_[bi].closed) continue;
    const Sequent& top = top_of(branches_[bi]);
    // first node in pre-order with two or more children
    const Sequent* hit = nullptr;
    std::function<void(const Sequent&)> find = [&](const Sequent& n) {
      if (hit) return;
      if (n.kids.size() >= 2) {
        hit = &n;
        return;
      }
      for (const auto& k : n.kids) find(k);
    };
    find(top);
    if (!hit) continue;
    RuleInstance inst{RuleId::Lin,
                      "",
                      top,
                      {hit->label, hit->kids[0].label, hit->kids[1].label},
                      std::nullopt,
                      std::nullopt,
                      {}};
    inst.premises = instance_premises(inst, calc_);
    auto res = apply(bi, inst);
    if (phase_ == Phase::Unknown) return;
    worklist.insert(worklist.end(), res.begin(), res.end());
  }
}

void SearchState::extension_step() {
  for (const auto& ext : calc_.extensions) {
    for (int bi : open_branches()) {
      Branch& b0 = branches_[bi];
      if (b0.closed) continue;
      std::vector<std::vector<Label>> items;
      for (const auto& inst : applicable_instances(top_of(b0), ext, calc_))
        if (!b0.done_ext.count({ext.name, inst.labels})) items.push_back(inst.labels);
      std::vector<int> descendants = {bi};
      for (auto& labels : items) {
        std::vector<int> next;
        for (int d : descendants) {
          branches_[d].done_ext.insert({ext.name, labels});
          RuleInstance inst{RuleId::Ext, ext.name, top_of(branches_[d]),
                            labels,      std::nullopt, std::nullopt, {}};
          try {
            inst.premises = instance_premises(inst, calc_);
          } catch (const SequentError&) {
            // an earlier merge removed one of the matched components
            next.push_back(d);
            continue;
          }
          auto res = apply(d, inst);
          next.insert(next.end(), res.begin(), res.end());
          if (phase_ == Phase::Unknown) return;
        }
        descendants = std::move(next);
      }
    }
  }
}

SearchState::Phase SearchState::run_round() {
  if (phase_ != Phase::Running) return phase_;
  ++round_;
  closure_step();
  if (open_branches().empty()) {
    phase_ = Phase::Proved;
    return phase_;
  }
  if (calc_.first_order()) rule_step(RuleId::Ds);
  rule_step(RuleId::OrL);
  if (phase_ == Phase::Unknown) return phase_;
  rule_step(RuleId::OrR);
  rule_step(RuleId::AndL);
  rule_step(RuleId::AndR);
  if (phase_ == Phase::Unknown) return phase_;
  rule_step(RuleId::ImpL);
  if (phase_ == Phase::Unknown) return phase_;
  rule_step(RuleId::ImpR);
  if (calc_.first_order()) {
    rule_step(RuleId::ExL);
    rule_step(RuleId::ExR1);
    if (phase_ == Phase::Unknown) return phase_;
    rule_step(RuleId::AllL1);
    if (phase_ == Phase::Unknown) return phase_;
    rule_step(RuleId::AllR);
  }
  if (phase_ == Phase::Unknown) return phase_;
  if (calc_.has_lin()) lin_step();
  if (!calc_.extensions.empty()) extension_step();
  if (phase_ == Phase::Unknown) return phase_;

  // saturation: a full round left the top unchanged
  for (int bi : open_branches()) {
    Branch& b = branches_[bi];
    if (b.prev_top && *b.prev_top == top_of(b)) {
      b.saturated = true;
      if (refuted_branch_ == -1) refuted_branch_ = bi;
    }
  }
  if (refuted_branch_ != -1) {
    phase_ = Phase::Refuted;
    return phase_;
  }
  for (int bi : open_branches()) branches_[bi].prev_top = top_of(branches_[bi]);
  if (round_ >= budget_.max_rounds) {
    phase_ = Phase::Unknown;
    unknown_reason_ = "budget";
  }
  return phase_;
}

Derivation SearchState::assemble(int node) const {
  const TNode& n = nodes_[node];
  if (!n.inst) throw SequentError("internal: open leaf while assembling a proof");
  Derivation d{*n.inst, {}};
  for (int k : n.kids) d.children.push_back(assemble(k));
  return d;
}

Derivation SearchState::assemble_derivation() const {
  if (phase_ != Phase::Proved) throw SequentError("no proof to assemble");
  return assemble(0);
}

Sequent goal_sequent(const Formula& goal) {
  Sequent s;
  s.label = 0;
  for (const auto& x : free_vars(goal)) s.sig.add(x);
  s.forms.add(out(goal));
  return s;
}

ProveResult prove(const Sequent& goal, const Calculus& c, const Budget& budget) {
  if (!c.first_order() && !sequent_is_propositional(goal))
    throw SequentError("first-order goal under a propositional calculus");

  Sequent start = goal;
  std::string zvar;
  if (c.first_order()) {
    FreshGen g;
    g.cover(goal);
    zvar = g.fresh_var("z");
    start = with_sig(goal, goal.label, zvar);
  }
  SearchState st(start, c, budget);
  while (st.run_round() == SearchState::Phase::Running) {
  }

  ProveResult res;
  res.input = goal;
  res.rounds = st.round();
  switch (st.phase()) {
    case SearchState::Phase::Proved: {
      Derivation d = st.assemble_derivation();
      if (!zvar.empty()) d = fresh_delete(d, zvar, c);
      res.status = ProveResult::Status::Proved;
      res.derivation = std::move(d);
      break;
    }
    case SearchState::Phase::Refuted: {
      int bi = st.refuted_branch();
      res.status = ProveResult::Status::Refuted;
      res.saturated_top = st.branch_top(bi);
      res.witness_branch = st.branch_path(bi);
      res.countermodel = extract_countermodel(*res.saturated_top, c.logic);
      break;
    }
    default:
      res.status = ProveResult::Status::Unknown;
      res.unknown_reason = st.unknown_reason();
      break;
  }
  return res;
}

ProveResult prove(const Formula& goal, const Calculus& c, const Budget& budget) {
  return prove(goal_sequent(goal), c, budget);
}

}  // namespace nsq
