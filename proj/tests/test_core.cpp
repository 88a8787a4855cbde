#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "modlog/fact_store.hpp"
#include "modlog/parser.hpp"
#include "support.hpp"

using namespace modlog;
using namespace testsupport;

TEST_CASE("parse_program accepts the transitivity rule") {
  Program p = parse_program("R(?x,?y), R(?y,?z) -> R(?x,?z).");
  REQUIRE(p.rules.size() == 1);
  const Rule& r = p.rules[0];
  CHECK(r.head.predicate == sym("R"));
  CHECK(r.pos_body.size() == 2);
  CHECK(r.neg_body.empty());
  CHECK(r.head.args[0] == Term::variable(sym("x")));
  CHECK(r.head.args[1] == Term::variable(sym("z")));
}

TEST_CASE("parse_program accepts the symmetry rule") {
  Program p = parse_program("R(?x,?y) -> R(?y,?x).");
  REQUIRE(p.rules.size() == 1);
  CHECK(p.rules[0].pos_body.size() == 1);
  CHECK(p.rules[0].head.args[0] == Term::variable(sym("y")));
}

TEST_CASE("parse_program accepts negated body atoms") {
  Program p = parse_program("P(?x), not Q(?x) -> S(?x).");
  REQUIRE(p.rules.size() == 1);
  CHECK(p.rules[0].pos_body.size() == 1);
  REQUIRE(p.rules[0].neg_body.size() == 1);
  CHECK(p.rules[0].neg_body[0].predicate == sym("Q"));
}

TEST_CASE("parse_program handles comments and whitespace") {
  Program p = parse_program(
      "% a comment line\n"
      "  R(?x,?y) , R(?y,?z) -> R(?x,?z) .  % trailing comment\n");
  CHECK(p.rules.size() == 1);
}

TEST_CASE("duplicate rules are dropped at load") {
  Program p = parse_program(
      "R(?x,?y), R(?y,?z) -> R(?x,?z).\n"
      "R(?x,?y), R(?y,?z) -> R(?x,?z).\n");
  CHECK(p.rules.size() == 1);
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_program("R(?x,?y) -> R(?x,?y).\nR(?x -> R(?x).\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.column > 1);
  }
}

TEST_CASE("unsafe rules are rejected with the offending variable") {
  try {
    parse_program("P(?x), not Q(?y) -> S(?x).");
    FAIL("expected UnsafeRuleError");
  } catch (const UnsafeRuleError& e) {
    CHECK(e.variable == sym("y"));
  }
  CHECK_THROWS_AS(parse_program("P(?x) -> S(?x,?z)."), UnsafeRuleError);
}

TEST_CASE("check_safety on hand-built rules") {
  // Ground rule with no variables is trivially safe.
  Rule ground;
  ground.head = Atom{sym("P"), {Term::constant(sym("a"))}};
  CHECK_NOTHROW(check_safety(ground));

  Rule bad;
  bad.head = Atom{sym("S"), {Term::variable(sym("x"))}};
  bad.pos_body.push_back(Atom{sym("P"), {Term::variable(sym("x"))}});
  bad.neg_body.push_back(Atom{sym("Q"), {Term::variable(sym("y"))}});
  CHECK_THROWS_AS(check_safety(bad), UnsafeRuleError);
}

TEST_CASE("arity clashes are load-time errors") {
  CHECK_THROWS_AS(parse_program("R(?x,?y) -> R(?x).\n"), ArityClashError);
  CHECK_THROWS_AS(
      parse_program("P(?x) -> Q(?x).\nP(?x,?y) -> Q(?x)."), ArityClashError);

  Program p = parse_program("R(?x,?y) -> R(?y,?x).");
  FactSet bad = facts_of({fact("R", {"a"})});
  CHECK_THROWS_AS(check_fact_arities(p, bad), ArityClashError);
  FactSet good = facts_of({fact("R", {"a", "b"}), fact("S", {"a"})});
  CHECK_NOTHROW(check_fact_arities(p, good));
}

TEST_CASE("parse_facts basics") {
  FactSet fs = parse_facts("R(c0,c1).\n");
  CHECK(fs.size() == 1);
  CHECK(fs.contains(fact("R", {"c0", "c1"})));

  CHECK(parse_facts("").empty());
  CHECK(parse_facts("% just a comment\n\n").empty());
  CHECK_THROWS_AS(parse_facts("R(?x,a)."), ParseError);
}

TEST_CASE("serialise_dataset sorts and is stable") {
  FactSet fs = facts_of({fact("R", {"b", "a"}), fact("R", {"a", "b"})});
  CHECK(serialise_dataset(fs) == "R(a,b).\nR(b,a).\n");
  CHECK(serialise_dataset(FactSet{}) == "");
}

TEST_CASE("parse after serialise is the identity on random datasets") {
  Rng rng(101);
  for (int iter = 0; iter < 50; ++iter) {
    FactSet fs = random_dataset(rng, 12);
    FactSet back = parse_facts(serialise_dataset(fs));
    CHECK(back.set_equals(fs));
    CHECK(serialise_dataset(back) == serialise_dataset(fs));
  }
}

TEST_CASE("program round-trips through serialise_program") {
  const std::string text =
      "P(?x), not Q(?x) -> S(?x).\nR(?x,?y), R(?y,?z) -> R(?x,?z).\n";
  Program p = parse_program(text);
  Program q = parse_program(serialise_program(p));
  CHECK(p.rules == q.rules);
}

TEST_CASE("FactSet insert/remove/contains") {
  FactSet fs;
  CHECK(fs.insert(fact("R", {"a", "b"})));
  CHECK_FALSE(fs.insert(fact("R", {"a", "b"})));
  CHECK_FALSE(fs.remove(fact("R", {"x", "y"})));
  CHECK(fs.remove(fact("R", {"a", "b"})));
  CHECK_FALSE(fs.contains(fact("R", {"a", "b"})));
  CHECK(fs.empty());
}

TEST_CASE("FactSet iteration is insertion order, indexes agree") {
  FactSet fs;
  fs.insert(fact("R", {"b", "c"}));
  fs.insert(fact("R", {"a", "b"}));
  fs.insert(fact("S", {"a", "b"}));
  std::vector<Fact> seen = fs.to_vector();
  REQUIRE(seen.size() == 3);
  CHECK(seen[0] == fact("R", {"b", "c"}));
  CHECK(seen[1] == fact("R", {"a", "b"}));

  int hits = 0;
  fs.for_each_with_arg(sym("R"), 1, sym("b"), [&](const Fact& f) {
    ++hits;
    CHECK(f == fact("R", {"a", "b"}));
  });
  CHECK(hits == 1);

  hits = 0;
  fs.for_each_with_pred(sym("S"), [&](const Fact&) { ++hits; });
  CHECK(hits == 1);
}

TEST_CASE("FactSet set algebra") {
  FactSet a = facts_of({fact("R", {"a", "b"}), fact("R", {"b", "c"})});
  FactSet b = facts_of({fact("R", {"b", "c"}), fact("R", {"c", "d"})});
  CHECK(a.set_union(b).size() == 3);
  CHECK(a.set_minus(b).size() == 1);
  CHECK(a.set_minus(b).contains(fact("R", {"a", "b"})));
  CHECK(a.set_intersect(b).size() == 1);
  CHECK(a.is_subset_of(a.set_union(b)));
  CHECK_FALSE(a.set_equals(b));
}

TEST_CASE("DatasetView membership law on randomized triples") {
  Rng rng(202);
  for (int iter = 0; iter < 100; ++iter) {
    FactSet base = random_dataset(rng, 10);
    FactSet minus = random_dataset(rng, 6);
    FactSet plus = random_dataset(rng, 6);
    DatasetView view{&base, &minus, nullptr, &plus};

    auto law = [&](const Fact& f) {
      return (base.contains(f) && !minus.contains(f)) || plus.contains(f);
    };
    for (const std::string& p : pred_pool())
      for (const std::string& x : const_pool())
        for (const std::string& y : const_pool()) {
          Fact f = fact(p, {x, y});
          CHECK(view.contains(f) == law(f));
        }

    // Iteration yields each member exactly once.
    FactSet snap = view.snapshot();
    for (const std::string& p : pred_pool()) {
      std::vector<Fact> seen;
      view.for_each_with_pred(sym(p), [&](const Fact& f) { seen.push_back(f); });
      for (std::size_t i = 0; i < seen.size(); ++i) {
        CHECK(law(seen[i]));
        for (std::size_t j = i + 1; j < seen.size(); ++j) CHECK(seen[i] != seen[j]);
      }
    }
    std::size_t members = 0;
    for (const std::string& p : pred_pool())
      for (const std::string& x : const_pool())
        for (const std::string& y : const_pool())
          if (law(fact(p, {x, y}))) ++members;
    CHECK(snap.size() == members);
  }
}

TEST_CASE("DatasetView carve-out keeps facts in both minus and minus_keep") {
  FactSet base = facts_of({fact("R", {"a", "b"}), fact("R", {"b", "c"})});
  FactSet minus = facts_of({fact("R", {"a", "b"}), fact("R", {"b", "c"})});
  FactSet keep = facts_of({fact("R", {"b", "c"})});
  DatasetView view{&base, &minus, &keep, nullptr};
  CHECK_FALSE(view.contains(fact("R", {"a", "b"})));
  CHECK(view.contains(fact("R", {"b", "c"})));
}

TEST_CASE("nonrecursive counter bookkeeping") {
  NrCounter c;
  CHECK(c.adjust(fact("R", {"a", "b"}), +1) == 1);
  CHECK(c.adjust(fact("R", {"a", "b"}), +1) == 2);
  CHECK(c.adjust(fact("R", {"a", "b"}), -1) == 1);
  CHECK(c.get(fact("R", {"a", "b"})) == 1);
  CHECK(c.get(fact("R", {"x", "y"})) == 0);
  CHECK_THROWS_AS(c.adjust(fact("R", {"x", "y"}), -1), NegativeCounterError);
  CHECK(c.adjust(fact("R", {"a", "b"}), -1) == 0);
  CHECK(c.size() == 0);
}

TEST_CASE("match enumerates grounding substitutions") {
  FactSet fs = facts_of(
      {fact("R", {"a", "b"}), fact("R", {"a", "c"}), fact("R", {"b", "c"})});
  DatasetView view = DatasetView::of(fs);

  Atom pat{sym("R"), {Term::constant(sym("a")), Term::variable(sym("y"))}};
  std::vector<Symbol> ys;
  match(pat, view, [&](const Substitution& s) {
    Symbol v = 0;
    REQUIRE(s.lookup(sym("y"), v));
    ys.push_back(v);
  });
  REQUIRE(ys.size() == 2);
  CHECK(ys[0] == sym("b"));
  CHECK(ys[1] == sym("c"));
}

TEST_CASE("match honours repeated variables") {
  FactSet fs = facts_of({fact("R", {"a", "a"}), fact("R", {"a", "b"})});
  Atom diag{sym("R"), {Term::variable(sym("x")), Term::variable(sym("x"))}};
  int hits = 0;
  match(diag, DatasetView::of(fs), [&](const Substitution& s) {
    Symbol v = 0;
    REQUIRE(s.lookup(sym("x"), v));
    CHECK(v == sym("a"));
    ++hits;
  });
  CHECK(hits == 1);
}

TEST_CASE("match on a predicate with no facts yields nothing") {
  FactSet fs = facts_of({fact("R", {"a", "b"})});
  Atom pat{sym("Zmissing"), {Term::variable(sym("x")), Term::variable(sym("y"))}};
  int hits = 0;
  match(pat, DatasetView::of(fs), [&](const Substitution&) { ++hits; });
  CHECK(hits == 0);
}
