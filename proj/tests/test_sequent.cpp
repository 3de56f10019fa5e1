#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nsq/sequent.hpp"
#include "testutil.hpp"

using namespace nsq;

namespace {

// The running example: p^i, [q^i, [ ]_w2]_w1, [p->q^i, r|bot^o]_w3
Sequent running_example() {
  return parse_sequent("- ; p^i, [ - ; q^i, [ - ; ]w2 ]w1, [ - ; (p -> q)^i, (r | bot)^o ]w3");
}

}  // namespace

TEST_CASE("reachability on the running example") {
  Sequent s = running_example();
  CHECK(reachable(s, 0, 2));        // root reaches the inner empty component
  CHECK(!reachable(s, 1, 3));       // disjoint subtrees
  CHECK(reachable(s, 3, 3));        // reflexive
  CHECK(!strictly_reachable(s, 0, 0));
  CHECK(strictly_reachable(s, 0, 2));
  CHECK(!strictly_reachable(s, 2, 0));
  CHECK_THROWS_AS(reachable(s, 0, 9), SequentError);
}

TEST_CASE("availability follows ancestor signatures") {
  // y ; p(y)^i, [ x ; q^o, [ z ; (r(y) -> p(z))^o ]w2 ]w1
  Sequent s = parse_sequent("y ; p(y)^i, [ x ; q^o, [ z ; (r(y) -> p(z))^o ]w2 ]w1");
  CHECK(available(s, "y", 2));
  CHECK(available(s, "y", 0));
  CHECK(available(s, "y", 1));
  CHECK(!available(s, "x", 0));
  CHECK(available(s, "x", 1));
  CHECK(available(s, "x", 2));
  CHECK(!available(s, "z", 1));
  CHECK(available(s, "z", 2));
}

TEST_CASE("linearity") {
  CHECK(is_linear(parse_sequent("- ; p^i, q^o")));
  CHECK(!is_linear(running_example()));
  CHECK(is_linear(parse_sequent("- ; [ - ; [ - ; ]w2 ]w1")));
}

TEST_CASE("propositional formula interpretation") {
  Formula top = Formula::top();
  Formula bot = Formula::bottom();
  CHECK(interpret_propositional(parse_sequent("- ; p^i, q^o")) ==
        Formula::imp(Formula::atom("p"), Formula::atom("q")));
  CHECK(interpret_propositional(parse_sequent("- ;")) == Formula::imp(top, bot));
  CHECK(interpret_propositional(parse_sequent("- ; p^i, [ - ; q^o ]w1")) ==
        Formula::imp(Formula::atom("p"),
                     Formula::orf(bot, Formula::imp(top, Formula::atom("q")))));
  CHECK_THROWS_AS(interpret_propositional(parse_sequent("x ; p^o")), SequentError);
  CHECK_THROWS_AS(interpret_propositional(parse_sequent("- ; p(x)^o")), SequentError);
}

TEST_CASE("locate and replace form a zipper") {
  Sequent s = running_example();
  const Sequent* u = locate(s, 2);
  REQUIRE(u != nullptr);
  CHECK(u->forms.empty());
  Sequent with_q = *u;
  with_q.forms.add(in(Formula::atom("q")));
  Sequent t = replace_at(s, 2, with_q);
  CHECK(locate_or_throw(t, 2).forms.contains(in(Formula::atom("q"))));
  // round trip
  CHECK(replace_at(t, 2, *locate(s, 2)) == s);
  CHECK(locate(s, 0) == &s);
  CHECK_THROWS_AS(replace_at(s, 9, s), SequentError);
}

TEST_CASE("text syntax round trips") {
  Sequent s = parse_sequent("y ; p(y)^i, [ x ; q^o ]w1");
  CHECK(parse_sequent(sequent_str(s)) == s);
  Sequent t = running_example();
  CHECK(parse_sequent(sequent_str(t)) == t);
  CHECK_THROWS_AS(parse_sequent("- ; [ - ; ]w1, [ - ; ]w1"), ParseError);  // duplicate label
}

TEST_CASE("sequent equality is order-insensitive on children") {
  Sequent a = parse_sequent("- ; [ - ; p^i ]w1, [ - ; q^i ]w2");
  Sequent b = parse_sequent("- ; [ - ; q^i ]w2, [ - ; p^i ]w1");
  CHECK(a == b);
}

TEST_CASE("reachability is a preorder and availability is monotone") {
  std::mt19937 rng(11);
  testutil::FormulaGen gen(12, {"p", "q"}, true);
  for (int round = 0; round < 50; ++round) {
    // random tree with 5 nodes
    Sequent nodes[5];
    for (int i = 0; i < 5; ++i) {
      nodes[i].label = i;
      if (rng() % 2) nodes[i].sig.add("v" + std::to_string(rng() % 3));
      nodes[i].forms.add(in(gen.gen(2)));
    }
    for (int i = 4; i >= 1; --i) {
      int parent = static_cast<int>(rng() % i);
      nodes[parent].add_kid(nodes[i]);
    }
    Sequent s = nodes[0];
    auto ls = labels_of(s);
    for (Label a : ls) {
      CHECK(reachable(s, a, a));
      CHECK(!strictly_reachable(s, a, a));
      for (Label b : ls)
        for (Label c : ls) {
          if (reachable(s, a, b) && reachable(s, b, c)) CHECK(reachable(s, a, c));
          if (strictly_reachable(s, a, b) && strictly_reachable(s, b, c))
            CHECK(strictly_reachable(s, a, c));
        }
    }
    for (const auto& x : all_sequent_vars(s))
      for (Label a : ls)
        if (available(s, x, a))
          for (Label b : ls)
            if (reachable(s, a, b)) CHECK(available(s, x, b));
    // linearity iff every node has at most one child
    bool at_most_one = true;
    std::function<void(const Sequent&)> walk = [&](const Sequent& n) {
      if (n.kids.size() > 1) at_most_one = false;
      for (const auto& k : n.kids) walk(k);
    };
    walk(s);
    CHECK(is_linear(s) == at_most_one);
  }
}

TEST_CASE("multiset counts matter for equality") {
  Sequent a = parse_sequent("- ; p^i, p^i");
  Sequent b = parse_sequent("- ; p^i");
  CHECK(a != b);
  CHECK(a.forms.count(in(Formula::atom("p"))) == 2);
}
