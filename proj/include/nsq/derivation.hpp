#pragma once

#include <memory>
#include <string>
#include <vector>

#include "nsq/calculus.hpp"

namespace nsq {

// A derivation is a tree of rule instances; each child proves the
// corresponding premise of its parent's instance. Leaves are 0-premise
// instances of the initial rules (id, id_q, bot_l).
struct Derivation {
  RuleInstance inst;
  std::vector<Derivation> children;

  const Sequent& conclusion() const { return inst.conclusion; }
};

struct Violation {
  std::string path;  // premise indices from the root, e.g. "0.1"
  std::string message;
};

// Re-verifies every node against the calculus schemas, including side
// conditions and the leaf condition. Total; never throws.
std::vector<Violation> check(const Derivation& d, const Calculus& c);
bool check_ok(const Derivation& d, const Calculus& c);

// 1 for leaves, 1 + max over children otherwise.
int height(const Derivation& d);

bool uses_rule(const Derivation& d, RuleId r);

// Collects every variable and the largest label over all sequents of d.
void cover_derivation(FreshGen& g, const Derivation& d);

// Lemma general-id: given a sequent s containing f^i at w and f^o at u with
// reachable(w, u), builds a derivation of s by recursion on f.
Derivation derive_general_id(const Sequent& s, const Formula& f, Label w, Label u,
                             const Calculus& c);

}  // namespace nsq
