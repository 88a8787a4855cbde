#pragma once

#include <random>
#include <string>
#include <vector>

#include "modlog/engine.hpp"
#include "modlog/parser.hpp"
#include "modlog/stratify.hpp"

namespace testsupport {

using namespace modlog;

inline Symbol sym(const std::string& s) { return symbols().intern(s); }

inline Fact fact(const std::string& pred, const std::vector<std::string>& args) {
  Fact f{sym(pred), {}};
  for (const std::string& a : args) f.args.push_back(sym(a));
  return f;
}

inline FactSet facts_of(std::initializer_list<Fact> fs) {
  FactSet out;
  for (const Fact& f : fs) out.insert(f);
  return out;
}

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  int pick(int lo, int hi) {  // inclusive
    return static_cast<int>(engine() % static_cast<std::uint64_t>(hi - lo + 1)) + lo;
  }
  bool chance(int percent) { return pick(1, 100) <= percent; }
};

inline const std::vector<std::string>& pred_pool() {
  static const std::vector<std::string> p{"p", "q", "r"};
  return p;
}

inline const std::vector<std::string>& const_pool() {
  static const std::vector<std::string> c{"a", "b", "c", "d"};
  return c;
}

/// Random stratifiable program: at most 5 rules over at most 3 binary
/// predicates, negation allowed; safe by construction, resampled until it
/// stratifies. With some probability the transitivity or symmetry rule for a
/// predicate is injected so module detection gets exercised.
inline Program random_program(Rng& rng) {
  static const std::vector<std::string> vars{"x", "y", "z", "w"};
  for (;;) {
    Program prog;
    int nrules = rng.pick(1, 5);
    for (int k = 0; k < nrules; ++k) {
      if (rng.chance(15)) {
        const std::string& r = pred_pool()[rng.pick(0, 2)];
        prog.rules.push_back(parse_program(r + "(?x,?y), " + r + "(?y,?z) -> " + r +
                                           "(?x,?z).")
                                 .rules[0]);
        continue;
      }
      if (rng.chance(10)) {
        const std::string& r = pred_pool()[rng.pick(0, 2)];
        prog.rules.push_back(
            parse_program(r + "(?x,?y) -> " + r + "(?y,?x).").rules[0]);
        continue;
      }

      Rule rule;
      int npos = rng.pick(1, 2);
      std::vector<Symbol> positive_vars;
      for (int i = 0; i < npos; ++i) {
        Atom a{sym(pred_pool()[rng.pick(0, 2)]), {}};
        for (int j = 0; j < 2; ++j) {
          if (rng.chance(15)) {
            a.args.push_back(Term::constant(sym(const_pool()[rng.pick(0, 3)])));
          } else {
            Symbol v = sym(vars[rng.pick(0, 3)]);
            a.args.push_back(Term::variable(v));
            positive_vars.push_back(v);
          }
        }
        rule.pos_body.push_back(a);
      }
      auto safe_term = [&]() {
        if (positive_vars.empty() || rng.chance(25))
          return Term::constant(sym(const_pool()[rng.pick(0, 3)]));
        return Term::variable(
            positive_vars[rng.pick(0, static_cast<int>(positive_vars.size()) - 1)]);
      };
      if (rng.chance(30)) {
        Atom neg{sym(pred_pool()[rng.pick(0, 2)]), {safe_term(), safe_term()}};
        rule.neg_body.push_back(neg);
      }
      rule.head = Atom{sym(pred_pool()[rng.pick(0, 2)]), {safe_term(), safe_term()}};
      prog.rules.push_back(std::move(rule));
    }
    try {
      stratify(prog);
      return prog;
    } catch (const NotStratifiableError&) {
      // resample
    }
  }
}

/// Up to `max_facts` binary facts over the shared predicate and constant pools.
inline FactSet random_dataset(Rng& rng, int max_facts) {
  FactSet out;
  int n = rng.pick(0, max_facts);
  for (int i = 0; i < n; ++i)
    out.insert(fact(pred_pool()[rng.pick(0, 2)],
                    {const_pool()[rng.pick(0, 3)], const_pool()[rng.pick(0, 3)]}));
  return out;
}

/// Splits a dataset into a deletion sample plus fresh insertions.
inline void random_update(Rng& rng, const FactSet& base, FactSet& eminus, FactSet& eplus) {
  base.for_each([&](const Fact& f) {
    if (rng.chance(30)) eminus.insert(f);
  });
  int n = rng.pick(0, 5);
  for (int i = 0; i < n; ++i)
    eplus.insert(fact(pred_pool()[rng.pick(0, 2)],
                      {const_pool()[rng.pick(0, 3)], const_pool()[rng.pick(0, 3)]}));
}

}  // namespace testsupport
