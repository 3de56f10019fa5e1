#include "nsq/render.hpp"

#include <sstream>

namespace nsq {

std::string rule_display(const RuleInstance& inst) {
  switch (inst.rule) {
    case RuleId::Id: return "(id)";
    case RuleId::BotL: return "(⊥•)";
    case RuleId::OrL: return "(∨•)";
    case RuleId::OrR: return "(∨°)";
    case RuleId::AndL: return "(∧•)";
    case RuleId::AndR: return "(∧°)";
    case RuleId::ImpL: return "(⊃•)";
    case RuleId::ImpR: return "(⊃°)";
    case RuleId::Lin: return "(lin)";
    case RuleId::IdQ: return "(id_Q)";
    case RuleId::Ds: return "(ds)";
    case RuleId::ExL: return "(∃•)";
    case RuleId::ExR1: return "(∃°₁)";
    case RuleId::ExR2: return "(∃°₂)";
    case RuleId::AllR: return "(∀°)";
    case RuleId::AllL1: return "(∀•₁)";
    case RuleId::AllL2: return "(∀•₂)";
    case RuleId::Cut: return "(cut)";
    case RuleId::Ext: return "(" + inst.ext_name + ")";
  }
  return "(?)";
}

namespace {

void render_rec(const Derivation& d, int depth, std::ostringstream& os) {
  for (int i = 0; i < depth; ++i) os << "  ";
  os << rule_display(d.inst);
  if (d.inst.var) os << " " << *d.inst.var;
  if (!d.inst.labels.empty()) {
    os << " @";
    for (Label l : d.inst.labels) os << " " << label_name(l);
  }
  os << "  ⊢  " << sequent_str(d.inst.conclusion) << "\n";
  for (const auto& k : d.children) render_rec(k, depth + 1, os);
}

}  // namespace

std::string render_derivation(const Derivation& d) {
  std::ostringstream os;
  render_rec(d, 0, os);
  return os.str();
}

std::string render_model(const Countermodel& cm) {
  std::ostringstream os;
  const KripkeModel& m = cm.model;
  os << "worlds:";
  for (int w : m.worlds) os << " " << label_name(w);
  os << "\norder:";
  bool any = false;
  for (auto [w, u] : m.order)
    if (w != u) {
      os << " " << label_name(w) << "≤" << label_name(u);
      any = true;
    }
  if (!any) os << " (discrete)";
  os << "\n";
  if (!m.domains.empty()) {
    os << "domains:\n";
    for (const auto& [w, d] : m.domains) {
      os << "  D(" << label_name(w) << ") = {";
      bool first = true;
      for (const auto& x : d) {
        if (!first) os << ", ";
        os << x;
        first = false;
      }
      os << "}\n";
    }
  }
  os << "valuation:\n";
  for (const auto& [p, byw] : m.valuation) {
    for (const auto& [w, tuples] : byw) {
      if (tuples.empty()) continue;
      os << "  V(" << p << ", " << label_name(w) << ") = {";
      bool first = true;
      for (const auto& t : tuples) {
        if (!first) os << ", ";
        os << "(";
        for (size_t i = 0; i < t.size(); ++i) {
          if (i) os << ",";
          os << t[i];
        }
        os << ")";
        first = false;
      }
      os << "}\n";
    }
  }
  return os.str();
}

std::string render_result(const ProveResult& r) {
  std::ostringstream os;
  switch (r.status) {
    case ProveResult::Status::Proved:
      os << "PROVED in " << r.rounds << " round(s)\n";
      os << render_derivation(*r.derivation);
      break;
    case ProveResult::Status::Refuted:
      os << "REFUTED in " << r.rounds << " round(s); counter-model:\n";
      os << render_model(*r.countermodel);
      break;
    default:
      os << "UNKNOWN (" << r.unknown_reason << ") after " << r.rounds << " round(s)\n";
      break;
  }
  return os.str();
}

}  // namespace nsq
