// nsq: prove, check, transform, and model-search front end for the nested
// sequent calculi N_I, N_GD, N_ND, N_CD, N_GN, N_GC.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nsq/json_io.hpp"
#include "nsq/render.hpp"

using namespace nsq;

namespace {

constexpr int kExitProved = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitError = 3;

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

struct CommonOpts {
  std::string logic = "I";
  std::string extensions;  // comma separated
  std::string ext_file;
  int max_rounds = 200;
  int max_size = 100000;
  std::string format = "text";
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

Calculus build_calculus(const CommonOpts& o, std::vector<std::string>* names = nullptr) {
  auto l = logic_from_name(o.logic);
  if (!l) throw std::runtime_error("unknown logic '" + o.logic + "' (use I|GD|ND|CD|GN|GC)");
  std::vector<ExtensionRule> exts;
  for (const auto& e : split_commas(o.extensions)) {
    exts.push_back(builtin_extension(e));
    if (names) names->push_back(e);
  }
  if (!o.ext_file.empty()) {
    json j = json::parse(slurp(o.ext_file));
    if (!j.is_array()) j = json::array({j});
    for (const auto& e : j) {
      exts.push_back(extension_from_json(e));
      if (names) names->push_back(exts.back().name);
    }
  }
  return Calculus::for_logic(*l, std::move(exts));
}

int run_prove_one(const std::string& text, bool as_sequent, const CommonOpts& opts,
                  bool print_output) {
  std::vector<std::string> ext_names;
  Calculus calc = build_calculus(opts, &ext_names);
  Budget budget{opts.max_rounds, opts.max_size};

  ProveResult res;
  if (as_sequent) {
    Sequent goal = parse_sequent(text);
    if (!calc.first_order() && !sequent_is_propositional(goal))
      throw std::runtime_error("first-order sequent under propositional logic " + opts.logic);
    res = prove(goal, calc, budget);
  } else {
    Formula goal = parse_formula(text);
    if (!calc.first_order() && !goal.is_propositional())
      throw std::runtime_error("first-order formula under propositional logic " + opts.logic);
    res = prove(goal, calc, budget);
  }

  if (print_output) {
    if (opts.format == "json") {
      std::cout << prove_result_to_json(res, calc.logic, ext_names).dump(2) << "\n";
    } else {
      if (!ext_names.empty()) std::cout << "[extension calculus: results are relative to the added rules]\n";
      std::cout << render_result(res);
    }
  }
  switch (res.status) {
    case ProveResult::Status::Proved: return kExitProved;
    case ProveResult::Status::Refuted: return kExitRefuted;
    default: return kExitUnknown;
  }
}

int run_check(const std::string& text) {
  CheckInput ci = check_input_from_json(json::parse(text));
  Calculus calc = Calculus::for_logic(ci.logic);
  for (const auto& e : ci.extensions) calc.extensions.push_back(builtin_extension(e));
  if (ci.kind == CheckInput::Kind::Derivation) {
    auto violations = check(*ci.derivation, calc);
    if (violations.empty()) {
      std::cout << "OK: derivation checks in N_" << logic_name(calc.logic) << "\n";
      return kExitProved;
    }
    for (const auto& v : violations)
      std::cout << "violation at [" << (v.path.empty() ? "root" : v.path) << "]: " << v.message
                << "\n";
    return kExitError;
  }
  // refutation: frame conditions + falsification
  auto rep = check_frame_conditions(ci.countermodel->model, calc.logic);
  bool falsified = false;
  std::string sat_error;
  try {
    falsified =
        !satisfies_sequent(ci.countermodel->model, ci.countermodel->iota, ci.countermodel->mu,
                           *ci.sequent);
  } catch (const std::exception& e) {
    sat_error = e.what();
  }
  if (rep.ok && falsified) {
    std::cout << "OK: model satisfies the N_" << logic_name(calc.logic)
              << " frame conditions and falsifies the sequent\n";
    return kExitProved;
  }
  for (const auto& v : rep.violations) std::cout << "frame violation: " << v << "\n";
  if (!sat_error.empty())
    std::cout << "evaluation error: " << sat_error << "\n";
  else if (!falsified)
    std::cout << "model does not falsify the sequent\n";
  return kExitError;
}

int run_transform(const std::string& text) {
  TransformInput ti = transform_input_from_json(json::parse(text));
  Calculus calc = Calculus::for_logic(ti.logic);
  for (const auto& e : ti.extensions) calc.extensions.push_back(builtin_extension(e));
  if (ti.invert_rule_id) {
    auto results = invert(*ti.invert_rule_id, ti.derivation, ti.invert_labels,
                          *ti.invert_principal, ti.invert_var, calc);
    json out = json::array();
    for (const auto& d : results) out.push_back(derivation_to_json(d));
    std::cout << out.dump(2) << "\n";
    return kExitProved;
  }
  TransformResult r = admissible(ti.request, ti.derivation, calc);
  json out;
  out["logic"] = logic_name(ti.logic);
  out["reproved"] = r.reproved;
  out["derivation"] = derivation_to_json(r.derivation);
  std::cout << out.dump(2) << "\n";
  return kExitProved;
}

int run_oracle(const std::string& text, const CommonOpts& opts, int max_worlds, int max_domain) {
  auto l = logic_from_name(opts.logic);
  if (!l) throw std::runtime_error("unknown logic '" + opts.logic + "'");
  Formula goal = parse_formula(text);
  OracleResult r = enumerate_countermodel(goal, *l, max_worlds, max_domain);
  if (r.model) {
    if (opts.format == "json") {
      json j;
      j["result"] = "countermodel";
      j["logic"] = logic_name(*l);
      j["model"] = countermodel_to_json(*r.model);
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "counter-model found:\n" << render_model(*r.model);
    }
    return kExitRefuted;
  }
  if (r.truncated) {
    std::cout << (opts.format == "json" ? "{\"result\":\"truncated\"}"
                                        : "search truncated by the bounds; no counter-model found")
              << "\n";
    return kExitUnknown;
  }
  std::cout << (opts.format == "json" ? "{\"result\":\"none\"}"
                                      : "no counter-model within the bounds")
            << "\n";
  return kExitProved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nested sequent prover for intuitionistic and Goedel-Dummett logics"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string input, file, batch;
  bool as_sequent = false;
  int max_worlds = 3, max_domain = 2;

  auto add_common = [&](CLI::App* sub, bool with_budget) {
    sub->add_option("--logic", opts.logic, "logic: I, GD, ND, CD, GN, GC")->capture_default_str();
    sub->add_option("--format", opts.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    if (with_budget) {
      sub->add_option("--max-rounds", opts.max_rounds, "scheduler round budget")
          ->capture_default_str();
      sub->add_option("--max-size", opts.max_size, "per-sequent size budget")
          ->capture_default_str();
      sub->add_option("--extensions", opts.extensions,
                      "comma-separated built-in extension rules (bd2, sym)");
      sub->add_option("--extensions-file", opts.ext_file, "JSON file of extension rules");
    }
  };

  CLI::App* prove_cmd = app.add_subcommand("prove", "search for a proof or a counter-model");
  add_common(prove_cmd, true);
  prove_cmd->add_option("goal", input, "goal formula (or sequent with --sequent); '-' = stdin");
  prove_cmd->add_option("--file", file, "read the goal from a file");
  prove_cmd->add_option("--batch", batch, "file with one goal per line");
  prove_cmd->add_flag("--sequent", as_sequent, "parse the goal in sequent syntax");

  CLI::App* check_cmd = app.add_subcommand("check", "verify a derivation or a refutation (JSON)");
  check_cmd->add_option("input", input, "JSON file; '-' = stdin")->required();

  CLI::App* tr_cmd = app.add_subcommand("transform", "apply an admissible rule or inversion");
  tr_cmd->add_option("input", input, "request JSON file; '-' = stdin")->required();

  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "brute-force finite counter-model search");
  add_common(oracle_cmd, false);
  oracle_cmd->add_option("goal", input, "goal formula; '-' = stdin");
  oracle_cmd->add_option("--file", file, "read the goal from a file");
  oracle_cmd->add_option("--max-worlds", max_worlds, "world bound")->capture_default_str();
  oracle_cmd->add_option("--max-domain", max_domain, "domain bound")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    auto goal_text = [&]() -> std::string {
      if (!file.empty()) return slurp(file);
      if (input == "-") return slurp("-");
      if (input.empty()) throw std::runtime_error("no goal given");
      return input;
    };
    if (prove_cmd->parsed()) {
      if (!batch.empty()) {
        std::istringstream lines(slurp(batch));
        std::string line;
        int worst = kExitProved;
        while (std::getline(lines, line)) {
          if (line.empty() || line[0] == '#') continue;
          int code = run_prove_one(line, as_sequent, opts, false);
          const char* verdict = code == kExitProved  ? "proved"
                                : code == kExitRefuted ? "refuted"
                                                        : "unknown";
          std::cout << verdict << "\t" << line << "\n";
          worst = std::max(worst, code);
        }
        return worst;
      }
      return run_prove_one(goal_text(), as_sequent, opts, true);
    }
    if (check_cmd->parsed()) return run_check(slurp(input));
    if (tr_cmd->parsed()) return run_transform(slurp(input));
    if (oracle_cmd->parsed()) return run_oracle(goal_text(), opts, max_worlds, max_domain);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
