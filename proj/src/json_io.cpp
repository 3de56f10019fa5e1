#include "nsq/json_io.hpp"

namespace nsq {

json sequent_to_json(const Sequent& s) {
  json j;
  j["sig"] = json::array();
  for (const auto& [x, c] : s.sig)
    for (int i = 0; i < c; ++i) j["sig"].push_back(x);
  j["in"] = json::array();
  j["out"] = json::array();
  for (const auto& [p, c] : s.forms)
    for (int i = 0; i < c; ++i)
      j[p.polarity == Polarity::Input ? "in" : "out"].push_back(p.formula.str());
  j["kids"] = json::array();
  for (const auto& k : s.kids)
    j["kids"].push_back({{"label", label_name(k.label)}, {"node", sequent_to_json(k)}});
  return j;
}

namespace {

Sequent sequent_from_json_rec(const json& j, ArityTable& ar) {
  Sequent s;
  for (const auto& x : j.value("sig", json::array())) s.sig.add(x.get<std::string>());
  for (const auto& f : j.value("in", json::array()))
    s.forms.add(in(parse_formula(f.get<std::string>(), ar)));
  for (const auto& f : j.value("out", json::array()))
    s.forms.add(out(parse_formula(f.get<std::string>(), ar)));
  for (const auto& kid : j.value("kids", json::array())) {
    Sequent k = sequent_from_json_rec(kid.at("node"), ar);
    k.label = parse_label(kid.at("label").get<std::string>());
    s.add_kid(std::move(k));
  }
  return s;
}

}  // namespace

Sequent sequent_from_json(const json& j, ArityTable& arities) {
  Sequent s = sequent_from_json_rec(j, arities);
  s.label = 0;
  auto ls = labels_of(s);
  for (size_t i = 1; i < ls.size(); ++i)
    if (ls[i] == ls[i - 1]) throw SequentError("duplicate label " + label_name(ls[i]));
  return s;
}

json derivation_to_json(const Derivation& d) {
  json j;
  j["rule"] = d.inst.rule == RuleId::Ext ? d.inst.ext_name : rule_name(d.inst.rule);
  j["conclusion"] = sequent_to_json(d.inst.conclusion);
  json inst;
  inst["labels"] = json::array();
  for (Label l : d.inst.labels) inst["labels"].push_back(label_name(l));
  if (d.inst.principal) {
    inst["principal"] = {{"f", d.inst.principal->formula.str()},
                         {"pol", d.inst.principal->polarity == Polarity::Input ? "i" : "o"}};
  }
  if (d.inst.var) inst["var"] = *d.inst.var;
  if (d.inst.rule == RuleId::Ext) inst["ext"] = d.inst.ext_name;
  j["inst"] = inst;
  j["premises"] = json::array();
  for (const auto& k : d.children) j["premises"].push_back(derivation_to_json(k));
  return j;
}

namespace {

Derivation derivation_from_json_rec(const json& j, ArityTable& ar) {
  Derivation d;
  std::string rname = j.at("rule").get<std::string>();
  auto r = rule_from_name(rname);
  if (r) {
    d.inst.rule = *r;
  } else {
    d.inst.rule = RuleId::Ext;
    d.inst.ext_name = rname;
  }
  Sequent concl = sequent_from_json_rec(j.at("conclusion"), ar);
  // the root label of a nested conclusion is fixed by context; top level is w0
  d.inst.conclusion = concl;
  const json& inst = j.value("inst", json::object());
  for (const auto& l : inst.value("labels", json::array()))
    d.inst.labels.push_back(parse_label(l.get<std::string>()));
  if (inst.contains("principal")) {
    const json& p = inst["principal"];
    Formula f = parse_formula(p.at("f").get<std::string>(), ar);
    d.inst.principal =
        Polarized{f, p.at("pol").get<std::string>() == "i" ? Polarity::Input : Polarity::Output};
  }
  if (inst.contains("var")) d.inst.var = inst["var"].get<std::string>();
  if (inst.contains("ext")) d.inst.ext_name = inst["ext"].get<std::string>();
  for (const auto& k : j.value("premises", json::array())) {
    Derivation kid = derivation_from_json_rec(k, ar);
    d.inst.premises.push_back(kid.conclusion());
    d.children.push_back(std::move(kid));
  }
  return d;
}

}  // namespace

Derivation derivation_from_json(const json& j, ArityTable& arities) {
  return derivation_from_json_rec(j, arities);
}

json model_to_json(const KripkeModel& m) {
  json j;
  j["worlds"] = json::array();
  for (int w : m.worlds) j["worlds"].push_back(label_name(w));
  j["order"] = json::array();
  for (auto [w, u] : m.order) j["order"].push_back({label_name(w), label_name(u)});
  j["domains"] = json::object();
  for (const auto& [w, d] : m.domains) {
    json dom = json::array();
    for (const auto& x : d) dom.push_back(x);
    j["domains"][label_name(w)] = dom;
  }
  j["arities"] = json::object();
  for (const auto& [p, n] : m.arities) j["arities"][p] = n;
  j["valuation"] = json::object();
  for (const auto& [p, byw] : m.valuation) {
    json jp = json::object();
    for (const auto& [w, tuples] : byw) {
      json jt = json::array();
      for (const auto& t : tuples) jt.push_back(t);
      jp[label_name(w)] = jt;
    }
    j["valuation"][p] = jp;
  }
  return j;
}

KripkeModel model_from_json(const json& j) {
  KripkeModel m;
  for (const auto& w : j.at("worlds")) m.worlds.insert(parse_label(w.get<std::string>()));
  for (const auto& e : j.at("order"))
    m.order.insert({parse_label(e[0].get<std::string>()), parse_label(e[1].get<std::string>())});
  const json doms = j.value("domains", json::object());
  for (auto it = doms.begin(); it != doms.end(); ++it) {
    std::set<std::string> d;
    for (const auto& x : it.value()) d.insert(x.get<std::string>());
    m.domains[parse_label(it.key())] = d;
  }
  const json ars = j.value("arities", json::object());
  for (auto it = ars.begin(); it != ars.end(); ++it) m.arities[it.key()] = it.value().get<int>();
  const json& val = j.value("valuation", json::object());
  for (auto it = val.begin(); it != val.end(); ++it) {
    for (auto wt = it.value().begin(); wt != it.value().end(); ++wt) {
      std::set<std::vector<std::string>> tuples;
      for (const auto& t : wt.value()) tuples.insert(t.get<std::vector<std::string>>());
      m.valuation[it.key()][parse_label(wt.key())] = tuples;
      if (!m.arities.count(it.key()) && !tuples.empty())
        m.arities[it.key()] = static_cast<int>(tuples.begin()->size());
    }
  }
  return m;
}

json countermodel_to_json(const Countermodel& cm) {
  json j = model_to_json(cm.model);
  j["iota"] = json::object();
  for (auto [l, w] : cm.iota) j["iota"][label_name(l)] = label_name(w);
  j["mu"] = json::object();
  for (const auto& [x, d] : cm.mu) j["mu"][x] = d;
  return j;
}

Countermodel countermodel_from_json(const json& j) {
  Countermodel cm;
  cm.model = model_from_json(j);
  const json& iota = j.value("iota", json::object());
  for (auto it = iota.begin(); it != iota.end(); ++it)
    cm.iota[parse_label(it.key())] = parse_label(it.value().get<std::string>());
  const json& mu = j.value("mu", json::object());
  for (auto it = mu.begin(); it != mu.end(); ++it) cm.mu[it.key()] = it.value().get<std::string>();
  return cm;
}

json prove_result_to_json(const ProveResult& r, Logic logic,
                          const std::vector<std::string>& extensions) {
  json j;
  j["logic"] = logic_name(logic);
  if (!extensions.empty()) j["extensions"] = extensions;
  j["rounds"] = r.rounds;
  j["sequent"] = sequent_to_json(r.input);
  switch (r.status) {
    case ProveResult::Status::Proved:
      j["result"] = "proved";
      j["derivation"] = derivation_to_json(*r.derivation);
      break;
    case ProveResult::Status::Refuted:
      j["result"] = "refuted";
      j["model"] = countermodel_to_json(*r.countermodel);
      j["saturated"] = sequent_to_json(*r.saturated_top);
      break;
    default:
      j["result"] = "unknown";
      j["reason"] = r.unknown_reason;
      break;
  }
  return j;
}

namespace {

Logic logic_of(const json& j) {
  std::string name = j.value("logic", "I");
  auto l = logic_from_name(name);
  if (!l) throw SequentError("unknown logic '" + name + "'");
  return *l;
}

std::vector<std::string> extensions_of(const json& j) {
  std::vector<std::string> out;
  for (const auto& e : j.value("extensions", json::array())) out.push_back(e.get<std::string>());
  return out;
}

}  // namespace

CheckInput check_input_from_json(const json& j) {
  CheckInput ci;
  ci.logic = logic_of(j);
  ci.extensions = extensions_of(j);
  ArityTable ar;
  if (j.contains("derivation")) {
    ci.kind = CheckInput::Kind::Derivation;
    ci.derivation = derivation_from_json(j.at("derivation"), ar);
  } else if (j.contains("rule")) {  // a bare derivation object
    ci.kind = CheckInput::Kind::Derivation;
    ci.derivation = derivation_from_json(j, ar);
  } else if (j.contains("model")) {
    ci.kind = CheckInput::Kind::Refutation;
    ci.countermodel = countermodel_from_json(j.at("model"));
    if (!j.contains("sequent")) throw SequentError("refutation check needs a sequent");
    ci.sequent = sequent_from_json(j.at("sequent"), ar);
  } else {
    throw SequentError("check input must contain a derivation or a model+sequent");
  }
  return ci;
}

TransformInput transform_input_from_json(const json& j) {
  TransformInput ti;
  ti.logic = logic_of(j);
  ti.extensions = extensions_of(j);
  ArityTable ar;
  ti.derivation = derivation_from_json(j.at("derivation"), ar);
  const json& rq = j.at("request");
  TransformRequest& r = ti.request;
  r.rule = rq.at("rule").get<std::string>();
  if (rq.contains("w")) r.w = parse_label(rq["w"].get<std::string>());
  if (rq.contains("u")) r.u = parse_label(rq["u"].get<std::string>());
  if (rq.contains("v")) r.v = parse_label(rq["v"].get<std::string>());
  if (rq.contains("var")) r.var = rq["var"].get<std::string>();
  if (rq.contains("var2")) r.var2 = rq["var2"].get<std::string>();
  for (const auto& v : rq.value("vars", json::array())) r.vars.push_back(v.get<std::string>());
  auto parse_pol = [&](const json& pj) {
    Formula f = parse_formula(pj.at("f").get<std::string>(), ar);
    return Polarized{f, pj.at("pol").get<std::string>() == "i" ? Polarity::Input
                                                               : Polarity::Output};
  };
  if (rq.contains("formula")) r.formula = parse_pol(rq["formula"]);
  for (const auto& pj : rq.value("add_forms", json::array())) r.add_forms.push_back(parse_pol(pj));
  for (const auto& kj : rq.value("add_kids", json::array())) {
    Sequent k = sequent_from_json_rec(kj.at("node"), ar);
    k.label = parse_label(kj.at("label").get<std::string>());
    r.add_kids.push_back(std::move(k));
  }
  if (rq.contains("max_rounds")) r.reprove_budget.max_rounds = rq["max_rounds"].get<int>();
  if (rq.contains("max_size")) r.reprove_budget.max_size = rq["max_size"].get<int>();
  if (j.contains("derivation2")) r.second = derivation_from_json(j.at("derivation2"), ar);

  if (r.rule.rfind("invert_", 0) == 0) {
    std::string rn = r.rule.substr(7);
    auto rid = rule_from_name(rn);
    if (!rid) throw SequentError("unknown rule to invert: " + rn);
    ti.invert_rule_id = rid;
    for (const auto& l : rq.value("labels", json::array()))
      ti.invert_labels.push_back(parse_label(l.get<std::string>()));
    if (r.formula) ti.invert_principal = r.formula;
    if (!r.var.empty()) ti.invert_var = r.var;
  }
  return ti;
}

ExtensionRule extension_from_json(const json& j) {
  ExtensionRule e;
  e.name = j.at("name").get<std::string>();
  std::string kind = j.at("kind").get<std::string>();
  e.n = j.at("n").get<int>();
  if (kind == "dlc") {
    e.kind = ExtensionRule::Kind::DLC;
    for (const auto& d : j.at("disjuncts")) e.dlc_disjuncts.push_back(d.get<int>());
  } else if (kind == "dbc") {
    e.kind = ExtensionRule::Kind::DBC;
    for (const auto& d : j.at("disjuncts")) {
      DbcDisjunct dd;
      std::string t = d.at("type").get<std::string>();
      dd.j = d.value("j", 0);
      dd.k = d.value("k", 0);
      if (t == "merge_root")
        dd.kind = DbcDisjunct::Kind::MergeRoot;
      else if (t == "le")
        dd.kind = DbcDisjunct::Kind::Nest;
      else if (t == "eq")
        dd.kind = DbcDisjunct::Kind::Eq;
      else
        throw SequentError("unknown DBC disjunct type '" + t + "'");
      e.dbc_disjuncts.push_back(dd);
    }
  } else {
    throw SequentError("extension kind must be dlc or dbc");
  }
  return e;
}

}  // namespace nsq
