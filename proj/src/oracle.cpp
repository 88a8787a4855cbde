#include "modlog/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "modlog/generic_module.hpp"
#include "modlog/stratify.hpp"

namespace modlog {

namespace {

// Stratum assignment by plain iteration-to-fixpoint, independent of the
// engine's SCC-based layering. Any valid stratification works here.
std::map<Symbol, int> naive_strata(const Program& program, int& max_stratum) {
  std::map<Symbol, int> lambda;
  auto level = [&](Symbol p) -> int& {
    auto [it, inserted] = lambda.emplace(p, 1);
    (void)inserted;
    return it->second;
  };
  for (const Rule& r : program.rules) {
    level(r.head.predicate);
    for (const Atom& a : r.pos_body) level(a.predicate);
    for (const Atom& a : r.neg_body) level(a.predicate);
  }

  const int bound = static_cast<int>(lambda.size()) + 1;
  bool changed = true;
  int rounds = 0;
  while (changed) {
    if (++rounds > bound * static_cast<int>(program.rules.size() + 1))
      throw NotStratifiableError("not stratifiable", {});
    changed = false;
    for (const Rule& r : program.rules) {
      int& h = level(r.head.predicate);
      for (const Atom& a : r.pos_body)
        if (level(a.predicate) > h) {
          h = level(a.predicate);
          changed = true;
        }
      for (const Atom& a : r.neg_body)
        if (level(a.predicate) + 1 > h) {
          h = level(a.predicate) + 1;
          changed = true;
        }
    }
  }
  max_stratum = 1;
  for (const auto& [p, s] : lambda) max_stratum = std::max(max_stratum, s);
  return lambda;
}

// Enumerates all groundings of the positive body by brute force over the
// whole fact set, then checks negative atoms; no indexes, no deltas.
void naive_rule(const Rule& rule, const std::set<Fact>& facts,
                std::map<Symbol, Symbol>& bind, std::size_t depth,
                std::set<Fact>& out) {
  if (depth == rule.pos_body.size()) {
    for (const Atom& a : rule.neg_body) {
      Fact f{a.predicate, {}};
      for (const Term& t : a.args)
        f.args.push_back(t.is_constant() ? t.sym : bind.at(t.sym));
      if (facts.count(f)) return;
    }
    Fact h{rule.head.predicate, {}};
    for (const Term& t : rule.head.args)
      h.args.push_back(t.is_constant() ? t.sym : bind.at(t.sym));
    out.insert(h);
    return;
  }
  const Atom& atom = rule.pos_body[depth];
  for (const Fact& f : facts) {
    if (f.predicate != atom.predicate || f.args.size() != atom.args.size()) continue;
    std::vector<Symbol> fresh;
    bool ok = true;
    for (std::size_t i = 0; ok && i < atom.args.size(); ++i) {
      const Term& t = atom.args[i];
      if (t.is_constant()) {
        ok = t.sym == f.args[i];
      } else {
        auto it = bind.find(t.sym);
        if (it == bind.end()) {
          bind.emplace(t.sym, f.args[i]);
          fresh.push_back(t.sym);
        } else {
          ok = it->second == f.args[i];
        }
      }
    }
    if (ok) naive_rule(rule, facts, bind, depth + 1, out);
    for (Symbol v : fresh) bind.erase(v);
  }
}

}  // namespace

FactSet naive_fixpoint(const Program& program, const FactSet& explicit_facts) {
  int max_stratum = 0;
  std::map<Symbol, int> lambda = naive_strata(program, max_stratum);
  auto stratum_of = [&](Symbol p) {
    auto it = lambda.find(p);
    return it == lambda.end() ? 1 : it->second;
  };

  std::set<Fact> facts;
  explicit_facts.for_each([&](const Fact& f) { facts.insert(f); });

  for (int s = 1; s <= max_stratum; ++s) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Rule& r : program.rules) {
        if (stratum_of(r.head.predicate) != s) continue;
        std::set<Fact> out;
        std::map<Symbol, Symbol> bind;
        naive_rule(r, facts, bind, 0, out);
        for (const Fact& f : out)
          if (facts.insert(f).second) changed = true;
      }
    }
  }

  FactSet result;
  for (const Fact& f : facts) result.insert(f);
  return result;
}

FactSet dred_reference(const Program& program, const FactSet& explicit_facts,
                       const FactSet& materialisation, const FactSet& eminus,
                       const FactSet& eplus) {
  Stratification strat = stratify(program, ModuleDetection::Off);

  FactSet em, ep;
  eminus.for_each([&](const Fact& f) {
    if (explicit_facts.contains(f) && !eplus.contains(f)) em.insert(f);
  });
  eplus.for_each([&](const Fact& f) {
    if (!explicit_facts.contains(f)) ep.insert(f);
  });

  const FactSet& old = materialisation;
  FactSet deleted, added;

  for (int s = 1; s <= strat.max_stratum; ++s) {
    std::vector<Rule> stratum_rules;
    for (std::size_t i : strat.strata[s - 1].nonrecursive)
      stratum_rules.push_back(program.rules[i]);
    for (std::size_t i : strat.strata[s - 1].recursive)
      stratum_rules.push_back(program.rules[i]);

    FactSet dma = deleted.set_minus(added);
    FactSet amd = added.set_minus(deleted);

    // Overdeletion: one-step consequences of changes so far, closed under the
    // whole stratum (DRed upper bound, no counters).
    FactSet seed;
    em.for_each([&](const Fact& f) {
      if (strat.stratum_of(f.predicate) == s) seed.insert(f);
    });
    FactSet ceasing = apply_rules(stratum_rules, DatasetView::of(old),
                                  DatasetView::of(old), &dma, &amd, nullptr);
    ceasing.for_each([&](const Fact& f) { seed.insert(f); });
    FactSet over = inv_semi(stratum_rules, old, old, seed);
    seed.for_each([&](const Fact& f) { deleted.insert(f); });
    over.for_each([&](const Fact& f) { deleted.insert(f); });

    dma = deleted.set_minus(added);
    amd = added.set_minus(deleted);
    DatasetView current{&old, &deleted, nullptr, &added};  // (I \ D) u A

    // One-step rederivation: surviving explicit facts plus heads of instances
    // still valid in the current dataset.
    FactSet insert_seed;
    explicit_facts.for_each([&](const Fact& f) {
      if (!em.contains(f) && dma.contains(f) && strat.stratum_of(f.predicate) == s)
        insert_seed.insert(f);
    });
    FactSet onestep =
        apply_rules(stratum_rules, current, current, nullptr, nullptr, nullptr);
    onestep.for_each([&](const Fact& f) {
      if (dma.contains(f)) insert_seed.insert(f);
    });

    // Insertions: explicit additions and new one-step consequences of lower
    // stratum changes.
    ep.for_each([&](const Fact& f) {
      if (strat.stratum_of(f.predicate) == s && !current.contains(f))
        insert_seed.insert(f);
    });
    FactSet starting =
        apply_rules(stratum_rules, current, current, &amd, &dma, nullptr);
    starting.for_each([&](const Fact& f) {
      if (!current.contains(f)) insert_seed.insert(f);
    });

    insert_seed.for_each([&](const Fact& f) { added.insert(f); });
    FactSet cur = current.snapshot();
    FactSet closure = semi(stratum_rules, cur, cur, insert_seed);
    closure.for_each([&](const Fact& f) { added.insert(f); });
  }

  FactSet result;
  old.for_each([&](const Fact& f) {
    if (!deleted.contains(f) || added.contains(f)) result.insert(f);
  });
  added.for_each([&](const Fact& f) { result.insert(f); });
  return result;
}

OracleReport verify(const FactSet& actual, const FactSet& expected) {
  OracleReport report;
  expected.for_each([&](const Fact& f) {
    if (!actual.contains(f)) report.missing.push_back(f);
  });
  actual.for_each([&](const Fact& f) {
    if (!expected.contains(f)) report.extra.push_back(f);
  });
  std::sort(report.missing.begin(), report.missing.end());
  std::sort(report.extra.begin(), report.extra.end());
  return report;
}

std::string OracleReport::summary() const {
  if (ok()) return "ok";
  std::string out;
  out += "missing " + std::to_string(missing.size()) + ", extra " +
         std::to_string(extra.size());
  std::size_t shown = 0;
  for (const Fact& f : missing) {
    if (shown++ == 5) break;
    out += "\n  missing: " + to_string(f);
  }
  shown = 0;
  for (const Fact& f : extra) {
    if (shown++ == 5) break;
    out += "\n  extra:   " + to_string(f);
  }
  return out;
}

}  // namespace modlog
