#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nsq/derivation.hpp"
#include "testutil.hpp"

using namespace nsq;

namespace {

RuleInstance inst_of(RuleId r, const Sequent& s, std::vector<Label> ls,
                     std::optional<Polarized> p, std::optional<std::string> v,
                     const Calculus& c) {
  RuleInstance i{r, "", s, std::move(ls), std::move(p), std::move(v), {}};
  i.premises = instance_premises(i, c);
  return i;
}

// The linearity-axiom derivation: (or_r), (imp_r) x 2, (lin), two identity
// leaves provided by the general-id lemma.
Derivation linearity_derivation(const Calculus& c) {
  Formula p = Formula::atom("p"), q = Formula::atom("q");
  Formula goal = Formula::orf(Formula::imp(p, q), Formula::imp(q, p));
  Sequent s0 = parse_sequent("- ; ((p -> q) | (q -> p))^o");
  auto orr = inst_of(RuleId::OrR, s0, {0}, out(goal), std::nullopt, c);
  auto impr1 = inst_of(RuleId::ImpR, orr.premises[0], {0, 1}, out(Formula::imp(p, q)),
                       std::nullopt, c);
  auto impr2 = inst_of(RuleId::ImpR, impr1.premises[0], {0, 2}, out(Formula::imp(q, p)),
                       std::nullopt, c);
  auto lin = inst_of(RuleId::Lin, impr2.premises[0], {0, 1, 2}, std::nullopt, std::nullopt, c);
  Derivation left = derive_general_id(lin.premises[0], p, 1, 2, c);
  Derivation right = derive_general_id(lin.premises[1], q, 2, 1, c);
  return Derivation{
      orr,
      {Derivation{impr1, {Derivation{impr2, {Derivation{lin, {left, right}}}}}}}};
}

}  // namespace

TEST_CASE("the linearity-axiom derivation checks in N_GD but not N_I") {
  Calculus gd = Calculus::for_logic(Logic::GD);
  Derivation d = linearity_derivation(gd);
  CHECK(check_ok(d, gd));

  Calculus i = Calculus::for_logic(Logic::I);
  auto violations = check(d, i);
  REQUIRE(!violations.empty());
  bool lin_flagged = false;
  for (const auto& v : violations)
    if (v.message.find("lin") != std::string::npos) lin_flagged = true;
  CHECK(lin_flagged);
  // the offending node is the (lin) instance three premises up
  CHECK(violations[0].path == "0.0.0");
}

TEST_CASE("a single id instance checks in any calculus") {
  Sequent s = parse_sequent("- ; p^i, [ - ; p^o ]w1");
  for (Logic l : {Logic::I, Logic::GD, Logic::ND, Logic::CD, Logic::GN, Logic::GC}) {
    Calculus c = Calculus::for_logic(l);
    Derivation d{inst_of(RuleId::Id, s, {0, 1}, in(Formula::atom("p")), std::nullopt, c), {}};
    CHECK(check_ok(d, c));
  }
}

TEST_CASE("check reports mismatched children and bad leaves") {
  Calculus c = Calculus::for_logic(Logic::I);
  Sequent s = parse_sequent("- ; (p | p)^o");
  auto orr = inst_of(RuleId::OrR, s, {0}, out(parse_formula("p | p")), std::nullopt, c);
  // wrong child conclusion
  Derivation bad{orr, {Derivation{inst_of(RuleId::OrR, s, {0}, out(parse_formula("p | p")),
                                          std::nullopt, c),
                                  {}}}};
  auto violations = check(bad, c);
  CHECK(!violations.empty());
}

TEST_CASE("height") {
  Calculus c = Calculus::for_logic(Logic::I);
  Sequent s = parse_sequent("- ; p^i, p^o");
  Derivation leaf{inst_of(RuleId::Id, s, {0, 0}, in(Formula::atom("p")), std::nullopt, c), {}};
  CHECK(height(leaf) == 1);

  Sequent s2 = parse_sequent("- ; p^i, (p | p)^o");
  auto orr = inst_of(RuleId::OrR, s2, {0}, out(parse_formula("p | p")), std::nullopt, c);
  Derivation unary{orr, {Derivation{inst_of(RuleId::Id, orr.premises[0], {0, 0},
                                            in(Formula::atom("p")), std::nullopt, c),
                                    {}}}};
  CHECK(height(unary) == 2);

  CHECK(height(linearity_derivation(Calculus::for_logic(Logic::GD))) == 5);
}

TEST_CASE("general-id base and recursive cases") {
  Calculus c = Calculus::for_logic(Logic::I);
  Sequent s = parse_sequent("- ; p^i, [ - ; p^o ]w1");
  Derivation d = derive_general_id(s, Formula::atom("p"), 0, 1, c);
  CHECK(d.children.empty());
  CHECK(d.inst.rule == RuleId::Id);

  Formula disj = parse_formula("p | q");
  Sequent s2 = parse_sequent("- ; (p | q)^i, [ - ; (p | q)^o ]w1");
  Derivation d2 = derive_general_id(s2, disj, 0, 1, c);
  CHECK(d2.inst.rule == RuleId::OrR);
  REQUIRE(d2.children.size() == 1);
  CHECK(d2.children[0].inst.rule == RuleId::OrL);
  CHECK(check_ok(d2, c));

  Calculus nd = Calculus::for_logic(Logic::ND);
  Formula uni = parse_formula("forall x. p(x)");
  Sequent s3 = parse_sequent("- ; (forall x. p(x))^i, [ - ; (forall x. p(x))^o ]w1");
  Derivation d3 = derive_general_id(s3, uni, 0, 1, nd);
  CHECK(d3.inst.rule == RuleId::AllR);
  REQUIRE(d3.children.size() == 1);
  CHECK(d3.children[0].inst.rule == RuleId::AllL1);
  CHECK(check_ok(d3, nd));

  CHECK_THROWS_AS(derive_general_id(s3, uni, 1, 0, nd), SequentError);  // not reachable
}

TEST_CASE("general-id checks in every calculus on random formulas") {
  testutil::FormulaGen prop_gen(21, {"p", "q"}, false);
  std::vector<Calculus> all;
  for (Logic l : {Logic::I, Logic::GD, Logic::ND, Logic::CD, Logic::GN, Logic::GC})
    all.push_back(Calculus::for_logic(l));
  for (int i = 0; i < 40; ++i) {
    Formula f = prop_gen.gen(5);
    Sequent s;
    s.label = 0;
    s.forms.add(in(f));
    s.forms.add(out(f));
    for (const auto& c : all) {
      Derivation d = derive_general_id(s, f, 0, 0, c);
      CHECK(check_ok(d, c));
    }
  }
  testutil::FormulaGen fo_gen(22, {"p", "q"}, true);
  for (int i = 0; i < 40; ++i) {
    Formula f = fo_gen.gen(5);
    Sequent s;
    s.label = 0;
    for (const auto& v : free_vars(f)) s.sig.add(v);
    s.forms.add(in(f));
    s.forms.add(out(f));
    for (Logic l : {Logic::ND, Logic::CD, Logic::GN, Logic::GC}) {
      Calculus c = Calculus::for_logic(l);
      Derivation d = derive_general_id(s, f, 0, 0, c);
      CHECK(check_ok(d, c));
    }
  }
}

TEST_CASE("checking is monotone in the rule set") {
  // N_I proofs are N_GD / N_ND / N_CD / N_GN / N_GC proofs
  Calculus i = Calculus::for_logic(Logic::I);
  Sequent s = parse_sequent("- ; (p & q)^i, [ - ; (p & q)^o ]w1");
  Derivation d = derive_general_id(s, parse_formula("p & q"), 0, 1, i);
  for (Logic l : {Logic::I, Logic::GD, Logic::ND, Logic::CD, Logic::GN, Logic::GC})
    CHECK(check_ok(d, Calculus::for_logic(l)));
}
