#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nsq/transform.hpp"
#include "testutil.hpp"

using namespace nsq;

namespace {

Derivation proved(const std::string& goal, Logic l) {
  ProveResult r = prove(parse_formula(goal), Calculus::for_logic(l));
  REQUIRE(r.status == ProveResult::Status::Proved);
  return *r.derivation;
}

Derivation proved_seq(const std::string& goal, Logic l) {
  ProveResult r = prove(parse_sequent(goal), Calculus::for_logic(l));
  REQUIRE(r.status == ProveResult::Status::Proved);
  return *r.derivation;
}

RuleInstance shape(RuleId r, const Derivation& d, std::vector<Label> ls, Polarized p,
                   std::optional<std::string> var, const Calculus& c) {
  FreshGen g;
  cover_derivation(g, d);
  RuleInstance s{r, "", d.conclusion(), std::move(ls), p, std::move(var), {}};
  if (r == RuleId::ImpR || r == RuleId::AllR) s.labels.push_back(g.fresh_label());
  if (r == RuleId::AllR || r == RuleId::ExL || r == RuleId::ExR2 || r == RuleId::AllL2)
    if (!s.var) s.var = g.fresh_var();
  s.premises = instance_premises(s, c);
  return s;
}

void check_roundtrip(const RuleInstance& sh, const Derivation& d, const Calculus& c) {
  auto inverted = invert_rule(sh, d, c);
  REQUIRE(inverted.size() == sh.premises.size());
  for (size_t i = 0; i < inverted.size(); ++i) {
    CHECK(sequent_alpha_equal(inverted[i].conclusion(), sh.premises[i]));
    CHECK(check_ok(inverted[i], c));
    CHECK(height(inverted[i]) <= height(d));
  }
  Derivation reapplied{sh, inverted};
  CHECK(check_ok(reapplied, c));
  CHECK(sequent_alpha_equal(reapplied.conclusion(), d.conclusion()));
}

}  // namespace

TEST_CASE("weakening adds formulas and nestings height-preservingly") {
  Calculus c = Calculus::for_logic(Logic::I);
  Derivation d = proved("p -> p", Logic::I);
  int h = height(d);

  Derivation w1 = wk_deriv(d, 0, {in(parse_formula("q | r"))}, {}, c);
  CHECK(check_ok(w1, c));
  CHECK(height(w1) <= h);
  CHECK(w1.conclusion().forms.contains(in(parse_formula("q | r"))));

  Sequent kid = parse_sequent("- ; r^o");
  kid.label = 9;
  Derivation w2 = wk_deriv(d, 0, {}, {kid}, c);
  CHECK(check_ok(w2, c));
  CHECK(height(w2) <= h);
  CHECK(has_label(w2.conclusion(), 9));
}

TEST_CASE("weakening renames clashing fresh labels and variables") {
  Calculus c = Calculus::for_logic(Logic::I);
  Derivation d = proved("p -> p", Logic::I);  // introduces a fresh component
  // find the label the proof introduced and weaken a nesting with that label in
  Label used = d.children.empty() ? 1 : d.children[0].conclusion().kids[0].label;
  Sequent kid = parse_sequent("- ; r^o");
  kid.label = used;
  Derivation w = wk_deriv(d, 0, {}, {kid}, c);
  CHECK(check_ok(w, c));

  Calculus nd = Calculus::for_logic(Logic::ND);
  Derivation dfo = proved("(exists x. p(x)) -> (exists y. p(y))", Logic::ND);
  std::string held;  // a fresh variable used inside the proof
  std::function<void(const Derivation&)> find = [&](const Derivation& n) {
    if (n.inst.rule == RuleId::ExL && held.empty()) held = *n.inst.var;
    for (const auto& k : n.children) find(k);
  };
  find(dfo);
  REQUIRE(!held.empty());
  Derivation w2 = wk_deriv(dfo, 0, {in(Formula::atom("r", {held}))}, {}, nd);
  CHECK(check_ok(w2, nd));
}

TEST_CASE("variable substitution rewrites a proof") {
  Calculus nd = Calculus::for_logic(Logic::ND);
  Sequent s = parse_sequent("x ; p(x)^i, p(x)^o");
  Derivation d = derive_general_id(s, Formula::atom("p", {"x"}), 0, 0, nd);
  Derivation e = ps_deriv(d, "y", "x", nd);
  CHECK(check_ok(e, nd));
  CHECK(e.conclusion() == parse_sequent("y ; p(y)^i, p(y)^o"));
  CHECK(height(e) == height(d));

  // substitution through a quantifier proof with freshness interactions
  Derivation dq = proved("(forall x. p(x)) -> (forall y. p(y))", Logic::ND);
  Derivation eq = ps_deriv(dq, "v9", "u9", nd);  // no-op names still walk the proof
  CHECK(check_ok(eq, nd));
}

TEST_CASE("label substitution renames components") {
  Calculus c = Calculus::for_logic(Logic::I);
  Derivation d = proved_seq("- ; p^i, [ - ; p^o ]w1", Logic::I);
  Derivation e = ls_deriv(d, 5, 1, c);
  CHECK(check_ok(e, c));
  CHECK(has_label(e.conclusion(), 5));
  CHECK(!has_label(e.conclusion(), 1));
  CHECK(height(e) == height(d));
}

TEST_CASE("bot_r deletes a spurious bottom output") {
  Calculus c = Calculus::for_logic(Logic::I);
  Derivation d = proved_seq("- ; p^i, bot^o, p^o", Logic::I);
  Derivation e = botr_deriv(d, 0, c);
  CHECK(check_ok(e, c));
  CHECK(!e.conclusion().forms.contains(out(Formula::bottom())));
  CHECK(height(e) <= height(d));
}

TEST_CASE("nesting wraps a proof under a fresh root") {
  Calculus c = Calculus::for_logic(Logic::I);
  Derivation d = proved("p -> p", Logic::I);
  Derivation e = n_deriv(d, c);
  CHECK(check_ok(e, c));
  CHECK(e.conclusion().forms.empty());
  REQUIRE(e.conclusion().kids.size() == 1);
  CHECK(height(e) == height(d));
}

TEST_CASE("signature moves: wv, cv, nd, dd, cd") {
  Calculus nd = Calculus::for_logic(Logic::ND);
  Sequent s = parse_sequent("- ; (forall x. p(x))^i, [ y ; p(y)^o ]w1");
  Derivation d = proved_seq("- ; (forall x. p(x))^i, [ y ; p(y)^o ]w1", Logic::ND);

  Derivation dv = wv_deriv(d, 0, "t", nd);
  CHECK(check_ok(dv, nd));
  CHECK(dv.conclusion().sig.contains("t"));

  Derivation dv2 = wv_deriv(dv, 0, "t", nd);
  Derivation dc = cv_deriv(dv2, 0, "t", nd);
  CHECK(check_ok(dc, nd));
  CHECK(dc.conclusion() == dv.conclusion());

  // nd moves y from w1 up to the root
  Derivation dn = nd_deriv(d, 0, 1, {"y"}, nd);
  CHECK(check_ok(dn, nd));
  CHECK(dn.conclusion().sig.contains("y"));
  CHECK(!locate_or_throw(dn.conclusion(), 1).sig.contains("y"));
  CHECK(height(dn) <= height(d));
  CHECK(sequent_alpha_equal(s, d.conclusion()));

  // dd and cd are constant-domain moves
  Calculus cd = Calculus::for_logic(Logic::CD);
  Derivation dcd = proved_seq("- ; (forall x. p(x))^i, [ y ; p(y)^o ]w1", Logic::CD);
  Derivation ddown = dd_deriv(nd_deriv(dcd, 0, 1, {"y"}, cd), 0, 1, {"y"}, cd);
  CHECK(check_ok(ddown, cd));
  CHECK(sequent_alpha_equal(ddown.conclusion(), dcd.conclusion()));
  Derivation dup = wv_deriv(dcd, 0, "t", cd);
  CHECK(check_ok(cd_deriv(dup, 0, {"t"}, cd), cd));
  CHECK_THROWS_AS(dd_deriv(dn, 0, 1, {"y"}, nd), TransformError);
}

TEST_CASE("merge fuses a child into its parent, also through (lin)") {
  Calculus c = Calculus::for_logic(Logic::I);
  Derivation d = proved_seq("- ; (p -> q)^i, [ - ; (p -> q)^o ]w1", Logic::I);
  Derivation e = mrg_deriv(d, 0, 1, c);
  CHECK(check_ok(e, c));
  CHECK(sequent_alpha_equal(e.conclusion(), parse_sequent("- ; (p -> q)^i, (p -> q)^o")));
  CHECK(height(e) <= height(d));

  // in a GD proof the degenerate (lin) premise is selected
  Calculus gd = Calculus::for_logic(Logic::GD);
  ProveResult rg = prove(parse_formula("(p -> q) | (q -> p)"), gd);
  REQUIRE(rg.status == ProveResult::Status::Proved);
  const Derivation& dg = *rg.derivation;
  // locate the (lin) node and merge one linearized sibling into its parent
  const Derivation* lin = nullptr;
  std::function<void(const Derivation&)> find = [&](const Derivation& n) {
    if (n.inst.rule == RuleId::Lin) lin = &n;
    for (const auto& k : n.children) find(k);
  };
  find(dg);
  REQUIRE(lin != nullptr);
  Derivation eg = mrg_deriv(*lin, lin->inst.labels[0], lin->inst.labels[1], gd);
  CHECK(check_ok(eg, gd));
  CHECK(height(eg) <= height(*lin));
}

TEST_CASE("contraction for inputs and outputs") {
  Calculus c = Calculus::for_logic(Logic::I);
  Polarized dup = in(parse_formula("p | q"));
  Derivation base = proved_seq("- ; (p | q)^i, (q | p)^o", Logic::I);
  Derivation doubled = wk_deriv(base, 0, {dup}, {}, c);
  Derivation contracted = ctr_deriv(doubled, 0, dup, c);
  CHECK(check_ok(contracted, c));
  CHECK(sequent_alpha_equal(contracted.conclusion(), base.conclusion()));
  CHECK(height(contracted) <= height(doubled));

  Polarized dupo = out(parse_formula("q | p"));
  Derivation doubled2 = wk_deriv(base, 0, {dupo}, {}, c);
  Derivation contracted2 = ctr_deriv(doubled2, 0, dupo, c);
  CHECK(check_ok(contracted2, c));
  CHECK(sequent_alpha_equal(contracted2.conclusion(), base.conclusion()));

  // contraction duplicating the principal of the root rule
  Derivation d3 = proved_seq("- ; (p -> q)^i, (p -> q)^o", Logic::I);
  Polarized impo = out(parse_formula("p -> q"));
  Derivation doubled3 = wk_deriv(d3, 0, {impo}, {}, c);
  Derivation contracted3 = ctr_deriv(doubled3, 0, impo, c);
  CHECK(check_ok(contracted3, c));
  CHECK(sequent_alpha_equal(contracted3.conclusion(), d3.conclusion()));

  // first-order contraction over an exists input
  Calculus nd = Calculus::for_logic(Logic::ND);
  Derivation d4 = proved_seq("- ; (exists x. p(x))^i, (exists y. p(y))^o", Logic::ND);
  Polarized ex = in(parse_formula("exists x. p(x)"));
  Derivation doubled4 = wk_deriv(d4, 0, {ex}, {}, nd);
  Derivation contracted4 = ctr_deriv(doubled4, 0, ex, nd);
  CHECK(check_ok(contracted4, nd));
  CHECK(sequent_alpha_equal(contracted4.conclusion(), d4.conclusion()));
  CHECK(height(contracted4) <= height(doubled4));
}

TEST_CASE("inversion round-trips for every logical rule") {
  Calculus i = Calculus::for_logic(Logic::I);
  Calculus nd = Calculus::for_logic(Logic::ND);
  Calculus cd = Calculus::for_logic(Logic::CD);

  {
    Derivation d = proved_seq("- ; (p | q)^i, (q | p)^o", Logic::I);
    check_roundtrip(shape(RuleId::OrL, d, {0}, in(parse_formula("p | q")), {}, i), d, i);
    check_roundtrip(shape(RuleId::OrR, d, {0}, out(parse_formula("q | p")), {}, i), d, i);
  }
  {
    Derivation d = proved_seq("- ; (p & q)^i, (q & p)^o", Logic::I);
    check_roundtrip(shape(RuleId::AndL, d, {0}, in(parse_formula("p & q")), {}, i), d, i);
    check_roundtrip(shape(RuleId::AndR, d, {0}, out(parse_formula("q & p")), {}, i), d, i);
  }
  {
    Derivation d = proved_seq("- ; (p -> q)^i, p^i, q^o", Logic::I);
    check_roundtrip(shape(RuleId::ImpL, d, {0, 0}, in(parse_formula("p -> q")), {}, i), d, i);
  }
  {
    Derivation d = proved_seq("- ; (p -> q)^i, (p -> q)^o", Logic::I);
    check_roundtrip(shape(RuleId::ImpR, d, {0}, out(parse_formula("p -> q")), {}, i), d, i);
  }
  {
    Derivation d = proved_seq("x ; (exists y. p(y))^i, (exists y. p(y))^o", Logic::ND);
    check_roundtrip(shape(RuleId::ExL, d, {0}, in(parse_formula("exists y. p(y)")), {}, nd), d,
                    nd);
    check_roundtrip(shape(RuleId::ExR1, d, {0}, out(parse_formula("exists y. p(y)")), "x", nd),
                    d, nd);
    check_roundtrip(shape(RuleId::ExR2, d, {0, 0}, out(parse_formula("exists y. p(y)")), {}, nd),
                    d, nd);
  }
  {
    Derivation d = proved_seq("x ; (forall y. p(y))^i, (forall y. p(y))^o", Logic::CD);
    check_roundtrip(shape(RuleId::AllR, d, {0}, out(parse_formula("forall y. p(y)")), {}, cd), d,
                    cd);
    check_roundtrip(shape(RuleId::AllL1, d, {0, 0}, in(parse_formula("forall y. p(y)")), "x",
                          cd),
                    d, cd);
    check_roundtrip(shape(RuleId::AllL2, d, {0, 0, 0}, in(parse_formula("forall y. p(y)")), {},
                          cd),
                    d, cd);
  }
  {
    Derivation d = proved_seq("x ; p(x)^i, p(x)^o", Logic::ND);
    check_roundtrip(shape(RuleId::Ds, d, {0}, in(Formula::atom("p", {"x"})), {}, nd), d, nd);
  }
}

TEST_CASE("inversion of imp_r on an identity leaf keeps a leaf-sized proof") {
  Calculus c = Calculus::for_logic(Logic::I);
  Derivation d = proved_seq("- ; p^i, p^o, (q -> r)^o", Logic::I);
  REQUIRE(height(d) == 1);
  auto sh = shape(RuleId::ImpR, d, {0}, out(parse_formula("q -> r")), {}, c);
  auto inv = invert_rule(sh, d, c);
  REQUIRE(inv.size() == 1);
  CHECK(height(inv[0]) == 1);
  CHECK(check_ok(inv[0], c));
}

TEST_CASE("fresh variable deletion converts consuming instances") {
  Calculus nd = Calculus::for_logic(Logic::ND);
  // y only occurs in the root signature; the proof instantiates with it
  Sequent s0 = parse_sequent("y ; (forall x. p(x))^i, (exists x. p(x))^o");
  RuleInstance i1{RuleId::AllL1, "", s0, {0, 0}, in(parse_formula("forall x. p(x)")), "y", {}};
  i1.premises = instance_premises(i1, nd);
  RuleInstance i2{RuleId::ExR1, "", i1.premises[0], {0},
                  out(parse_formula("exists x. p(x)")), "y", {}};
  i2.premises = instance_premises(i2, nd);
  RuleInstance leaf{RuleId::IdQ, "", i2.premises[0], {0, 0}, in(Formula::atom("p", {"y"})),
                    std::nullopt, {}};
  leaf.premises = instance_premises(leaf, nd);
  Derivation d{i1, {Derivation{i2, {Derivation{leaf, {}}}}}};
  REQUIRE(check_ok(d, nd));

  Derivation e = fresh_delete(d, "y", nd);
  CHECK(check_ok(e, nd));
  CHECK(!e.conclusion().sig.contains("y"));
  CHECK(height(e) <= height(d));
  CHECK(e.inst.rule == RuleId::AllL2);

  // deleting a variable that occurs elsewhere is rejected
  Derivation bad = derive_general_id(parse_sequent("y ; p(y)^i, p(y)^o"),
                                     Formula::atom("p", {"y"}), 0, 0, nd);
  CHECK_THROWS_AS(fresh_delete(bad, "y", nd), TransformError);
}

TEST_CASE("lft and lwr shift formulas along a path") {
  Calculus c = Calculus::for_logic(Logic::I);
  {
    Derivation d = proved_seq("- ; q^i, [ - ; p^i, p^o ]w1", Logic::I);
    Derivation e = lft_deriv(d, 0, 1, {in(Formula::atom("p"))}, c);
    CHECK(check_ok(e, c));
    CHECK(e.conclusion().forms.contains(in(Formula::atom("p"))));
    CHECK(height(e) <= height(d));
  }
  {
    Derivation d = proved_seq("- ; (q -> r)^o, [ - ; p^i, p^o ]w1", Logic::I);
    Derivation e = lwr_deriv(d, 0, 1, {out(parse_formula("q -> r"))}, c);
    CHECK(check_ok(e, c));
    CHECK(locate_or_throw(e.conclusion(), 1).forms.contains(out(parse_formula("q -> r"))));
    CHECK(height(e) <= height(d));
  }
  {
    // moving the principal of an imp_r forces the child relocation machinery
    Derivation d = proved_seq("- ; (p -> p)^o, [ - ; q^i, q^o ]w1", Logic::I);
    Derivation e = lwr_deriv(d, 0, 1, {out(parse_formula("p -> p"))}, c);
    CHECK(check_ok(e, c));
    CHECK(height(e) <= height(d));
  }
}

TEST_CASE("ex and ec are height-preserving in the intuitionistic calculi") {
  Calculus c = Calculus::for_logic(Logic::I);
  Derivation d = proved_seq("- ; p^i, [ - ; p^o ]w1", Logic::I);
  Derivation e = ex_deriv(d, 0, 1, 7, c);
  CHECK(check_ok(e, c));
  CHECK(height(e) == height(d));
  CHECK(has_label(e.conclusion(), 7));

  Derivation d2 = proved_seq("- ; p^i, [ - ; p^o ]w1, [ - ; q^i ]w2", Logic::I);
  Derivation e2 = ec_deriv(d2, 0, 1, 2, c);
  CHECK(check_ok(e2, c));
  CHECK(height(e2) <= height(d2));
  CHECK(!has_label(e2.conclusion(), 2));
}

TEST_CASE("GD-family fallbacks reprove the transformed conclusion") {
  Calculus gd = Calculus::for_logic(Logic::GD);
  Derivation d = proved_seq("- ; p^i, [ - ; p^o ]w1", Logic::GD);

  TransformRequest ex_req;
  ex_req.rule = "ex";
  ex_req.w = 0;
  ex_req.u = 1;
  TransformResult r1 = admissible(ex_req, d, gd);
  CHECK(r1.reproved);
  CHECK(check_ok(r1.derivation, gd));

  Derivation doubled = wk_deriv(d, 0, {out(parse_formula("q -> q"))}, {}, gd);
  TransformRequest ctr_req;
  ctr_req.rule = "ctr_out";
  ctr_req.w = 0;
  ctr_req.formula = out(parse_formula("q -> q"));
  // only one copy present: contraction needs two, so weaken once more
  Derivation doubled2 = wk_deriv(doubled, 0, {out(parse_formula("q -> q"))}, {}, gd);
  TransformResult r2 = admissible(ctr_req, doubled2, gd);
  CHECK(r2.reproved);
  CHECK(check_ok(r2.derivation, gd));

  Derivation d3 = proved_seq("- ; q^o, [ - ; p^i, p^o ]w1", Logic::GD);
  TransformRequest lwr_req;
  lwr_req.rule = "lwr";
  lwr_req.w = 0;
  lwr_req.u = 1;
  lwr_req.formula = out(Formula::atom("q"));
  TransformResult r3 = admissible(lwr_req, d3, gd);
  CHECK(r3.reproved);
  CHECK(check_ok(r3.derivation, gd));

  Derivation d4 = proved_seq("- ; p^i, [ - ; p^o ]w1, [ - ; q^i ]w2", Logic::GD);
  TransformRequest ec_req;
  ec_req.rule = "ec";
  ec_req.w = 0;
  ec_req.u = 1;
  ec_req.v = 2;
  TransformResult r4 = admissible(ec_req, d4, gd);
  CHECK(r4.reproved);
  CHECK(check_ok(r4.derivation, gd));
}

TEST_CASE("cut elimination leaves cut-free proofs unchanged") {
  Calculus c = Calculus::for_logic(Logic::I);
  Derivation d = proved("p -> p", Logic::I);
  Derivation e = eliminate_cut(d, c);
  CHECK(check_ok(e, c));
  CHECK(sequent_alpha_equal(e.conclusion(), d.conclusion()));
}

TEST_CASE("an atomic cut between two identity leaves composes reachability") {
  Calculus c = Calculus::for_logic(Logic::I);
  Calculus cc = c;
  cc.allow_cut = true;
  Sequent concl = parse_sequent("- ; p^i, [ - ; [ - ; p^o ]w2 ]w1");
  Formula p = Formula::atom("p");
  RuleInstance cut{RuleId::Cut, "", concl, {1}, out(p), std::nullopt, {}};
  cut.premises = {with_form(concl, 1, out(p)), with_form(concl, 1, in(p))};
  RuleInstance l1{RuleId::Id, "", cut.premises[0], {0, 1}, in(p), std::nullopt, {}};
  l1.premises = instance_premises(l1, cc);
  RuleInstance l2{RuleId::Id, "", cut.premises[1], {1, 2}, in(p), std::nullopt, {}};
  l2.premises = instance_premises(l2, cc);
  Derivation d{cut, {Derivation{l1, {}}, Derivation{l2, {}}}};
  REQUIRE(check_ok(d, cc));

  Derivation e = eliminate_cut(d, c);
  CHECK(check_ok(e, c));
  CHECK(!uses_rule(e, RuleId::Cut));
  CHECK(e.children.empty());
  CHECK(e.inst.labels == std::vector<Label>{0, 2});
  CHECK(sequent_alpha_equal(e.conclusion(), concl));
}

TEST_CASE("cuts on compound formulas reduce to smaller cuts and vanish") {
  Calculus c = Calculus::for_logic(Logic::I);
  Calculus cc = c;
  cc.allow_cut = true;
  Derivation base = proved_seq("- ; (p | q)^i, (q | p)^o", Logic::I);
  for (const char* cutf : {"p | q", "p & (q -> p)", "(p -> q) -> (p -> q)"}) {
    Formula phi = parse_formula(cutf);
    Derivation left = wk_deriv(base, 0, {out(phi)}, {}, c);
    Derivation right = wk_deriv(base, 0, {in(phi)}, {}, c);
    RuleInstance cut{RuleId::Cut, "", base.conclusion(), {0}, out(phi), std::nullopt, {}};
    cut.premises = {left.conclusion(), right.conclusion()};
    Derivation d{cut, {left, right}};
    REQUIRE(check_ok(d, cc));
    Derivation e = eliminate_cut(d, c);
    CHECK(check_ok(e, c));
    CHECK(!uses_rule(e, RuleId::Cut));
    CHECK(sequent_alpha_equal(e.conclusion(), base.conclusion()));
  }
}

TEST_CASE("principal cuts over general-id proofs eliminate") {
  for (Logic l : {Logic::I, Logic::ND}) {
    Calculus c = Calculus::for_logic(l);
    Calculus cc = c;
    cc.allow_cut = true;
    std::vector<std::string> cut_formulas = {"p -> q", "p | (q & p)", "p & q"};
    if (l == Logic::ND) {
      cut_formulas.push_back("forall x. p1(x)");
      cut_formulas.push_back("exists x. p1(x)");
    }
    for (const auto& text : cut_formulas) {
      Formula phi = parse_formula(text);
      Sequent ctx;
      ctx.label = 0;
      if (l == Logic::ND) ctx.sig.add("x0");
      ctx.forms.add(in(phi));
      ctx.forms.add(out(phi));
      // left premise: phi^i, phi^o, phi^o ; right premise: phi^i, phi^i, phi^o
      Derivation gi = derive_general_id(ctx, phi, 0, 0, c);
      Derivation left = wk_deriv(gi, 0, {out(phi)}, {}, c);
      Derivation right = wk_deriv(gi, 0, {in(phi)}, {}, c);
      RuleInstance cut{RuleId::Cut, "", ctx, {0}, out(phi), std::nullopt, {}};
      cut.premises = {left.conclusion(), right.conclusion()};
      Derivation d{cut, {left, right}};
      REQUIRE(check_ok(d, cc));
      Derivation e = eliminate_cut(d, c);
      CHECK(check_ok(e, c));
      CHECK(!uses_rule(e, RuleId::Cut));
      CHECK(sequent_alpha_equal(e.conclusion(), ctx));
    }
  }
}

TEST_CASE("cut elimination refuses GD-family calculi") {
  Calculus gd = Calculus::for_logic(Logic::GD);
  Derivation d = proved("p -> p", Logic::GD);
  CHECK_THROWS_AS(eliminate_cut(d, gd), TransformError);
}

TEST_CASE("the admissible-cut request works in both regimes") {
  Formula phi = parse_formula("q -> q");
  for (Logic l : {Logic::I, Logic::GD}) {
    Calculus c = Calculus::for_logic(l);
    Derivation base = proved("p -> p", l);
    Derivation left = wk_deriv(base, 0, {out(phi)}, {}, c);
    Derivation right = wk_deriv(base, 0, {in(phi)}, {}, c);
    TransformRequest req;
    req.rule = "cut";
    req.w = 0;
    req.formula = out(phi);
    req.second = right;
    TransformResult r = admissible(req, left, c);
    CHECK(check_ok(r.derivation, c));
    CHECK(sequent_alpha_equal(r.derivation.conclusion(), base.conclusion()));
    CHECK(r.reproved == (l == Logic::GD));
  }
}
