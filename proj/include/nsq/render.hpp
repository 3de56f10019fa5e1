#pragma once

#include <string>

#include "nsq/derivation.hpp"
#include "nsq/prover.hpp"
#include "nsq/semantics.hpp"

namespace nsq {

// UTF-8 rule names matching the calculus notation, e.g. "(⊃•)", "(∀°)".
std::string rule_display(const RuleInstance& inst);

// One rule per line; indentation tracks premise depth.
std::string render_derivation(const Derivation& d);

std::string render_model(const Countermodel& cm);

std::string render_result(const ProveResult& r);

}  // namespace nsq
