#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nsq/json_io.hpp"
#include "nsq/prover.hpp"
#include "testutil.hpp"

using namespace nsq;

namespace {

bool refutation_is_sound(const ProveResult& r, Logic logic) {
  if (!r.countermodel) return false;
  if (!check_frame_conditions(r.countermodel->model, logic).ok) return false;
  return !satisfies_sequent(r.countermodel->model, r.countermodel->iota, r.countermodel->mu,
                            r.input);
}

}  // namespace

TEST_CASE("the linearity axiom is proved in GD with (lin) and refuted in I") {
  Formula goal = parse_formula("(p -> q) | (q -> p)");

  Calculus gd = Calculus::for_logic(Logic::GD);
  ProveResult rg = prove(goal, gd);
  REQUIRE(rg.status == ProveResult::Status::Proved);
  CHECK(check_ok(*rg.derivation, gd));
  CHECK(uses_rule(*rg.derivation, RuleId::Lin));

  Calculus i = Calculus::for_logic(Logic::I);
  ProveResult ri = prove(goal, i);
  REQUIRE(ri.status == ProveResult::Status::Refuted);
  CHECK(refutation_is_sound(ri, Logic::I));
  CHECK(ri.countermodel->model.worlds.size() == 3);  // the fork
}

TEST_CASE("p -> p is proved everywhere") {
  Formula goal = parse_formula("p -> p");
  for (Logic l : {Logic::I, Logic::GD, Logic::ND, Logic::CD, Logic::GN, Logic::GC}) {
    Calculus c = Calculus::for_logic(l);
    ProveResult r = prove(goal, c);
    REQUIRE(r.status == ProveResult::Status::Proved);
    CHECK(check_ok(*r.derivation, c));
  }
}

TEST_CASE("the constant-domain axiom separates CD from ND") {
  Formula goal = parse_formula("(forall x. (p(x) | q)) -> ((forall x. p(x)) | q)");

  Calculus cd = Calculus::for_logic(Logic::CD);
  ProveResult rc = prove(goal, cd);
  REQUIRE(rc.status == ProveResult::Status::Proved);
  CHECK(check_ok(*rc.derivation, cd));

  Calculus nd = Calculus::for_logic(Logic::ND);
  ProveResult rn = prove(goal, nd);
  REQUIRE(rn.status == ProveResult::Status::Refuted);
  CHECK(refutation_is_sound(rn, Logic::ND));
  // a genuinely growing domain must witness the failure
  bool grows = false;
  const auto& m = rn.countermodel->model;
  for (auto [w, u] : m.order)
    if (w != u && m.domain(w) != m.domain(u)) grows = true;
  CHECK(grows);
}

TEST_CASE("saturation is reached after two rounds on the refuted linearity axiom") {
  Sequent goal = goal_sequent(parse_formula("(p -> q) | (q -> p)"));
  SearchState st(goal, Calculus::for_logic(Logic::I), Budget{});
  CHECK(st.run_round() == SearchState::Phase::Running);
  CHECK(st.run_round() == SearchState::Phase::Refuted);
  CHECK(st.round() == 2);
  CHECK(st.branch_saturated(st.refuted_branch()));
  // the witness branch runs from the input to the saturated top
  auto path = st.branch_path(st.refuted_branch());
  REQUIRE(path.size() >= 2);
  CHECK(path.front() == goal);
  CHECK(path.back() == st.branch_top(st.refuted_branch()));
}

TEST_CASE("truth lemma holds on the saturated top") {
  for (const char* text : {"(p -> q) | (q -> p)", "p | (p -> bot)",
                           "p | (p -> (q | (q -> bot)))", "((p -> q) -> p) -> p"}) {
    ProveResult r = prove(parse_formula(text), Calculus::for_logic(Logic::I));
    REQUIRE(r.status == ProveResult::Status::Refuted);
    const auto& cm = *r.countermodel;
    std::function<void(const Sequent&)> walk = [&](const Sequent& n) {
      for (const auto& [p, c] : n.forms) {
        bool f = forces(cm.model, cm.iota.at(n.label), cm.mu, p.formula);
        if (p.polarity == Polarity::Input)
          CHECK(f);
        else
          CHECK(!f);
      }
      for (const auto& k : n.kids) walk(k);
    };
    walk(*r.saturated_top);
  }
}

TEST_CASE("prove results round-trip through JSON and re-verify") {
  // proved: derivation JSON reloads and checks
  {
    Calculus gd = Calculus::for_logic(Logic::GD);
    ProveResult r = prove(parse_formula("(p -> q) | (q -> p)"), gd);
    REQUIRE(r.status == ProveResult::Status::Proved);
    json j = prove_result_to_json(r, Logic::GD, {});
    CheckInput ci = check_input_from_json(j);
    REQUIRE(ci.kind == CheckInput::Kind::Derivation);
    CHECK(check_ok(*ci.derivation, Calculus::for_logic(ci.logic)));
  }
  // refuted: model + sequent JSON reload and re-verify
  {
    Calculus nd = Calculus::for_logic(Logic::ND);
    Formula goal = parse_formula("(forall x. (p(x) | q)) -> ((forall x. p(x)) | q)");
    ProveResult r = prove(goal, nd);
    REQUIRE(r.status == ProveResult::Status::Refuted);
    json j = prove_result_to_json(r, Logic::ND, {});
    CheckInput ci = check_input_from_json(j);
    REQUIRE(ci.kind == CheckInput::Kind::Refutation);
    CHECK(check_frame_conditions(ci.countermodel->model, ci.logic).ok);
    CHECK(!satisfies_sequent(ci.countermodel->model, ci.countermodel->iota, ci.countermodel->mu,
                             *ci.sequent));
  }
}

TEST_CASE("prove is deterministic") {
  Formula goal = parse_formula("(p -> q) | (q -> p)");
  for (Logic l : {Logic::I, Logic::GD}) {
    Calculus c = Calculus::for_logic(l);
    ProveResult a = prove(goal, c);
    ProveResult b = prove(goal, c);
    CHECK(prove_result_to_json(a, l, {}) == prove_result_to_json(b, l, {}));
  }
}

TEST_CASE("proofs lift along rule-set inclusion") {
  std::vector<std::string> goals = {"p -> p", "p -> (q -> p)", "(p & q) -> (q & p)",
                                    "bot -> q"};
  Calculus i = Calculus::for_logic(Logic::I);
  for (const auto& g : goals) {
    Formula f = parse_formula(g);
    ProveResult base = prove(f, i);
    REQUIRE(base.status == ProveResult::Status::Proved);
    for (Logic l : {Logic::GD, Logic::ND, Logic::CD, Logic::GN, Logic::GC}) {
      Calculus c = Calculus::for_logic(l);
      ProveResult r = prove(f, c);
      CHECK(r.status == ProveResult::Status::Proved);
      // and the N_I proof itself still checks there
      CHECK(check_ok(*base.derivation, c));
    }
  }
}

TEST_CASE("budgets produce Unknown instead of divergence") {
  // all_l1 / ex_l keep feeding each other fresh witnesses
  Formula diverging = parse_formula("(forall x. exists y. r(x,y)) -> bot");
  ProveResult r = prove(diverging, Calculus::for_logic(Logic::ND), Budget{15, 100000});
  CHECK(r.status == ProveResult::Status::Unknown);
  CHECK(r.unknown_reason == "budget");

  ProveResult r2 = prove(diverging, Calculus::for_logic(Logic::ND), Budget{200, 40});
  CHECK(r2.status == ProveResult::Status::Unknown);
  CHECK(r2.unknown_reason == "sequent-size");
}

TEST_CASE("first-order goals are rejected under propositional calculi") {
  CHECK_THROWS_AS(prove(parse_formula("forall x. p(x)"), Calculus::for_logic(Logic::I)),
                  SequentError);
}

TEST_CASE("sequent goals with structure are searched as given") {
  Sequent goal = parse_sequent("- ; p^i, [ - ; p^o ]w1");
  ProveResult r = prove(goal, Calculus::for_logic(Logic::I));
  REQUIRE(r.status == ProveResult::Status::Proved);
  CHECK(r.derivation->conclusion() == goal);
}

TEST_CASE("extension rules close their characteristic axioms") {
  // bd2 proves the bounded-depth-2 axiom over N_I and N_GD
  Formula bd2_ax = parse_formula("p | (p -> (q | (q -> bot)))");
  for (Logic l : {Logic::I, Logic::GD}) {
    Calculus c = Calculus::for_logic(l, {builtin_extension("bd2")});
    ProveResult r = prove(bd2_ax, c);
    REQUIRE(r.status == ProveResult::Status::Proved);
    CHECK(check_ok(*r.derivation, c));
    CHECK(uses_rule(*r.derivation, RuleId::Ext));
  }
  // sym proves excluded middle over N_I
  Calculus sym = Calculus::for_logic(Logic::I, {builtin_extension("sym")});
  ProveResult r = prove(parse_formula("p | (p -> bot)"), sym);
  REQUIRE(r.status == ProveResult::Status::Proved);
  CHECK(check_ok(*r.derivation, sym));
  // neither is provable in plain N_I
  CHECK(prove(bd2_ax, Calculus::for_logic(Logic::I)).status == ProveResult::Status::Refuted);
  CHECK(prove(parse_formula("p | (p -> bot)"), Calculus::for_logic(Logic::I)).status ==
        ProveResult::Status::Refuted);
}
