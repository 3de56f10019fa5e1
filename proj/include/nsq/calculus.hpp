#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nsq/sequent.hpp"

namespace nsq {

enum class Logic { I, GD, ND, CD, GN, GC };
enum class Regime { Propositional, ND, CD };

std::string logic_name(Logic l);
std::optional<Logic> logic_from_name(const std::string& s);

enum class RuleId {
  Id,      // (id), 0-ary special case of (id_Q)
  BotL,    // (bot^i)
  OrL, OrR, AndL, AndR, ImpL, ImpR,
  Lin,     // (lin)
  IdQ,     // (id_Q)
  Ds,      // (ds)
  ExL,     // (exists^i)
  ExR1, ExR2,      // (exists^o_1), (exists^o_2)
  AllR,            // (forall^o)
  AllL1, AllL2,    // (forall^i_1), (forall^i_2)
  Cut,     // only valid when a checker is asked to allow it
  Ext,     // compiled extension rule, identified by name
};

std::string rule_name(RuleId r);
std::optional<RuleId> rule_from_name(const std::string& s);

// Disjunctive linear / branching conditions from which structural rules are
// compiled. DLC: antecedent chain w1 <= ... <= wn; each disjunct i in [1, n-1]
// means w_{i+1} <= w_i and yields a premise merging the child component
// w_{i+1} into its parent w_i. DBC: antecedent fan w <= w1, ..., w <= wn;
// disjuncts are MergeRoot(j) (w_j <= w), Nest(j,k) (w_j <= w_k), Eq(j,k)
// (w_j = w_k) with 1-based child indices.
struct DbcDisjunct {
  enum class Kind { MergeRoot, Nest, Eq } kind;
  int j = 0, k = 0;
};

struct ExtensionRule {
  std::string name;
  enum class Kind { DLC, DBC } kind;
  int n = 0;  // DLC: chain length in components; DBC: fan-out
  std::vector<int> dlc_disjuncts;       // DLC only
  std::vector<DbcDisjunct> dbc_disjuncts;  // DBC only
};

ExtensionRule builtin_extension(const std::string& name);  // "bd2", "sym"

struct Calculus {
  Logic logic = Logic::I;
  Regime regime = Regime::Propositional;
  std::set<RuleId> rules;
  std::vector<ExtensionRule> extensions;
  bool allow_cut = false;

  bool has(RuleId r) const { return rules.count(r) > 0; }
  bool has_lin() const { return has(RuleId::Lin); }
  bool first_order() const { return regime != Regime::Propositional; }
  const ExtensionRule* extension(const std::string& name) const;

  static Calculus for_logic(Logic l, std::vector<ExtensionRule> exts = {});
};

// One rule application read bottom-up: a conclusion, the data instantiating
// the schema, and the premises the schema generates from them.
struct RuleInstance {
  RuleId rule = RuleId::Id;
  std::string ext_name;  // rule == Ext
  Sequent conclusion;
  // Role-positional labels:
  //   Id/IdQ {w,u}; BotL {w}; OrL/OrR/AndL/AndR {w}; ImpL {w,u}; ImpR {w,fresh u};
  //   Lin {parent w, v, u}; Ds {w}; ExL {w}; ExR1 {w}; ExR2 {sig w, u};
  //   AllR {w, fresh u}; AllL1 {w,u}; AllL2 {sig w, u, v}; Cut {w};
  //   Ext DLC {chain}; Ext DBC {w, children..., disjunct index appended}.
  std::vector<Label> labels;
  std::optional<Polarized> principal;
  std::optional<std::string> var;  // instantiation or fresh variable
  std::vector<Sequent> premises;
};

// Monotone fresh-name source. Never scans; initialise it past a sequent with
// `cover` once, before use.
struct FreshGen {
  Label next_label = 1;
  long long next_var = 0;

  void cover(const Sequent& s);
  Label fresh_label() { return next_label++; }
  std::string fresh_var(const std::string& stem = "y") {
    return stem + "'" + std::to_string(next_var++);
  }
};

// All schema instances of rule `r` with conclusion `s` under calculus `c`.
// Enumeration order is deterministic. Rules with fresh choices consume names
// from `fresh`. Throws if r is not in c.
std::vector<RuleInstance> applicable_instances(const Sequent& s, RuleId r, const Calculus& c,
                                               FreshGen& fresh);
std::vector<RuleInstance> applicable_instances(const Sequent& s, const ExtensionRule& ext,
                                               const Calculus& c);

// Re-derives the premises the schema assigns to (conclusion, instantiation)
// and checks every side condition. Empty result = valid instance.
std::optional<std::string> check_instance(const RuleInstance& inst, const Calculus& c);

// The premises the schema generates; throws SequentError on malformed data.
std::vector<Sequent> instance_premises(const RuleInstance& inst, const Calculus& c);

}  // namespace nsq
