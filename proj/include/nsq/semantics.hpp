#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nsq/calculus.hpp"
#include "nsq/sequent.hpp"

namespace nsq {

// Worlds are small integers rendered like labels ("w0", "w1", ...).
// Domain elements are variable names (the extracted models use the
// identity assignment, so elements and variables coincide).
struct KripkeModel {
  std::set<int> worlds;
  std::set<std::pair<int, int>> order;  // reflexive-transitive
  std::map<int, std::set<std::string>> domains;
  std::map<std::string, int> arities;
  // predicate -> world -> set of argument tuples
  std::map<std::string, std::map<int, std::set<std::vector<std::string>>>> valuation;

  bool leq(int w, int u) const { return order.count({w, u}) > 0; }
  bool holds(const std::string& pred, int w, const std::vector<std::string>& args) const;
  const std::set<std::string>& domain(int w) const;
};

using Interpretation = std::map<Label, int>;       // iota: label -> world
using Assignment = std::map<std::string, std::string>;  // mu: var -> element

struct Countermodel {
  KripkeModel model;
  Interpretation iota;
  Assignment mu;
};

// Def. 2.2 / 2.6 forcing clauses.
bool forces(const KripkeModel& m, int w, const Assignment& mu, const Formula& f);

// Nested-sequent satisfaction (three clauses, including the signature
// condition mu(x) in D(iota(u))). Throws if a label of s is missing in iota.
bool satisfies_sequent(const KripkeModel& m, const Interpretation& iota, const Assignment& mu,
                       const Sequent& s);

struct FrameReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Exactly the invariants the logic imposes: preorder + monotone valuation
// always; connectivity for GD/GN/GC; non-empty domains, (ND)/(CD) and
// V(p,w) <= D(w)^n for the first-order logics.
FrameReport check_frame_conditions(const KripkeModel& m, Logic logic);

// Appendix-A construction over a saturated branch top. For GD-family logics
// the top must be linear. `starting_var` should name the prover's starting
// variable when one was added (kept in the domains).
Countermodel extract_countermodel(const Sequent& top, Logic logic);

struct OracleResult {
  std::optional<Countermodel> model;  // falsifying model if found
  bool truncated = false;             // search space was cut off by the bounds
};

// Exhaustive finite-model search up to the bounds: frames up to isomorphism,
// monotone valuations over the predicates of f, domains for the first-order
// logics drawn from a fixed universe d1..d<max_domain>. The first model
// falsifying f (at the iota(w0) world, free variables via mu) is returned.
OracleResult enumerate_countermodel(const Formula& f, Logic logic, int max_worlds,
                                    int max_domain, long long combination_cap = 20000000);

}  // namespace nsq
