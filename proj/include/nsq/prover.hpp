#pragma once

#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "nsq/derivation.hpp"
#include "nsq/semantics.hpp"

namespace nsq {

struct Budget {
  int max_rounds = 200;
  int max_size = 100000;  // per-sequent size (nodes + formulas + signature entries)
};

struct ProveResult {
  enum class Status { Proved, Refuted, Unknown };
  Status status = Status::Unknown;
  std::optional<Derivation> derivation;    // Proved
  std::optional<Countermodel> countermodel;  // Refuted
  Sequent input;                           // goal sequent, without the starting variable
  std::optional<Sequent> saturated_top;    // Refuted
  std::vector<Sequent> witness_branch;     // Refuted: sequents from root to the top
  std::string unknown_reason;              // "budget" | "sequent-size"
  int rounds = 0;
};

// Bottom-up proof search: one scheduler round applies, to every open branch,
// the closure check and then each rule step in the fixed order
//   (ds), (or_l), (or_r), (and_l), (and_r), (imp_l), (imp_r),
//   (ex_l), (ex_r1), (all_l1), (all_r), (lin), extensions
// skipping instances recorded in the per-branch blocking sets. A branch whose
// top survives a full round unchanged is saturated.
class SearchState {
public:
  enum class Phase { Running, Proved, Refuted, Unknown };

  SearchState(Sequent start, Calculus calc, Budget budget);

  Phase run_round();
  Phase phase() const { return phase_; }
  int round() const { return round_; }
  const std::string& unknown_reason() const { return unknown_reason_; }

  std::vector<int> open_branches() const;
  const Sequent& branch_top(int b) const;
  bool branch_saturated(int b) const;
  int refuted_branch() const { return refuted_branch_; }
  std::vector<Sequent> branch_path(int b) const;  // root .. top

  Derivation assemble_derivation() const;  // requires Phase::Proved

private:
  struct TNode {
    Sequent seq;
    std::optional<RuleInstance> inst;
    std::vector<int> kids;
    int parent = -1;
  };
  struct Branch {
    int leaf = 0;
    bool closed = false;
    bool saturated = false;
    std::optional<Sequent> prev_top;
    std::set<std::tuple<Label, Formula, Label>> done_imp;
    std::set<std::tuple<Label, Formula, std::string>> done_exr1;
    std::set<std::tuple<Label, Formula, Label, std::string>> done_alll1;
    std::set<std::pair<std::string, std::vector<Label>>> done_ext;
  };

  Calculus calc_;
  Budget budget_;
  FreshGen fresh_;
  std::vector<TNode> nodes_;
  std::vector<Branch> branches_;
  Phase phase_ = Phase::Running;
  std::string unknown_reason_;
  int round_ = 0;
  int refuted_branch_ = -1;

  const Sequent& top_of(const Branch& b) const { return nodes_[b.leaf].seq; }
  std::vector<int> apply(int bi, const RuleInstance& inst);
  void closure_step();
  void rule_step(RuleId r);
  void lin_step();
  void extension_step();
  Derivation assemble(int node) const;
};

// Proves a sequent goal. For first-order calculi a fresh starting variable is
// added to the root signature before search and deleted from the resulting
// proof (Appendix-A discipline); propositional sequents are searched as given.
ProveResult prove(const Sequent& goal, const Calculus& c, const Budget& budget = {});

// Formula goals become X; f^o with X the free variables of f.
ProveResult prove(const Formula& goal, const Calculus& c, const Budget& budget = {});

Sequent goal_sequent(const Formula& goal);

}  // namespace nsq
