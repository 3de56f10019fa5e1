#pragma once

#include <json.hpp>

#include "nsq/prover.hpp"
#include "nsq/semantics.hpp"
#include "nsq/transform.hpp"

namespace nsq {

using json = nlohmann::json;

// Sequent: {"sig":[...], "in":[...], "out":[...], "kids":[{"label":"w1","node":{...}}]}
json sequent_to_json(const Sequent& s);
Sequent sequent_from_json(const json& j, ArityTable& arities);

// Derivation: {"rule":..., "conclusion":..., "inst":{...}, "premises":[...]}
json derivation_to_json(const Derivation& d);
Derivation derivation_from_json(const json& j, ArityTable& arities);

// Model: {"worlds":[...], "order":[[w,u]...], "domains":{...}, "valuation":{...}}
json model_to_json(const KripkeModel& m);
KripkeModel model_from_json(const json& j);

json countermodel_to_json(const Countermodel& cm);
Countermodel countermodel_from_json(const json& j);

json prove_result_to_json(const ProveResult& r, Logic logic,
                          const std::vector<std::string>& extensions);

struct CheckInput {
  enum class Kind { Derivation, Refutation } kind;
  Logic logic = Logic::I;
  std::vector<std::string> extensions;
  std::optional<Derivation> derivation;
  std::optional<Countermodel> countermodel;
  std::optional<Sequent> sequent;
};
CheckInput check_input_from_json(const json& j);

struct TransformInput {
  Logic logic = Logic::I;
  std::vector<std::string> extensions;
  TransformRequest request;
  Derivation derivation;
  // set for invert_* requests
  std::optional<RuleId> invert_rule_id;
  std::vector<Label> invert_labels;
  std::optional<Polarized> invert_principal;
  std::optional<std::string> invert_var;
};
TransformInput transform_input_from_json(const json& j);

ExtensionRule extension_from_json(const json& j);

}  // namespace nsq
