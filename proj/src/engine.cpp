#include "modlog/engine.hpp"

#include <algorithm>
#include <chrono>

namespace modlog {

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   start)
      .count();
}

// Accumulates one stats row; counter deltas are measured against the
// operation-wide counter so phases can share it.
struct Phase {
  PhaseStats row;
  std::uint64_t base_instances, base_joins;
  std::chrono::steady_clock::time_point start;

  Phase(std::string name, const InstanceCounter& c)
      : base_instances(c.rule_instances),
        base_joins(c.join_results),
        start(std::chrono::steady_clock::now()) {
    row.phase = std::move(name);
  }

  PhaseStats finish(const InstanceCounter& c) {
    row.rule_instances = c.rule_instances - base_instances;
    row.join_results = c.join_results - base_joins;
    row.wall_ms = ms_since(start);
    return row;
  }
};

}  // namespace

MaterialisationState::MaterialisationState(Program program, EvalMode mode,
                                           ModuleDetection detection)
    : program_(std::move(program)),
      mode_(mode),
      detection_(mode == EvalMode::Seminaive ? ModuleDetection::Off : detection) {
  strat_ = stratify(program_, detection_);
  nr_rules_.resize(strat_.max_stratum);
  rec_rules_.resize(strat_.max_stratum);
  for (int s = 1; s <= strat_.max_stratum; ++s) {
    for (std::size_t i : strat_.strata[s - 1].nonrecursive)
      nr_rules_[s - 1].push_back(program_.rules[i]);
    for (std::size_t i : strat_.strata[s - 1].recursive)
      rec_rules_[s - 1].push_back(program_.rules[i]);
  }
  rebuild_modules();
}

void MaterialisationState::rebuild_modules() {
  modules_.clear();
  modules_.resize(strat_.max_stratum);
  for (int s = 1; s <= strat_.max_stratum; ++s)
    for (const ModuleSpec& spec : strat_.strata[s - 1].modules)
      modules_[s - 1].push_back(make_module(spec, program_, &counter_));
}

FactSet MaterialisationState::nonrecursive_seed(int s, const FactSet& explicit_slice,
                                                bool increment) {
  FactSet seed;
  explicit_slice.for_each([&](const Fact& f) {
    if (strat_.stratum_of(f.predicate) != s) return;
    seed.insert(f);
    if (increment) store_.nr().adjust(f, +1);
  });

  DatasetView iview = DatasetView::of(store_.facts());
  for (const Rule& r : nr_rules_[s - 1])
    match_rule_instances(r, iview, iview, nullptr, nullptr, &counter_,
                         [&](const Rule& rule, const Substitution& sub) {
                           Fact h = sub.ground(rule.head);
                           if (increment) store_.nr().adjust(h, +1);
                           seed.insert(h);
                         });
  return seed;
}

void MaterialisationState::run_stratum_seminaive(int s, const FactSet& seed) {
  const std::vector<Rule>& rec = rec_rules_[s - 1];
  FactSet delta = seed;
  while (!delta.empty()) {
    delta.for_each([&](const Fact& f) { store_.insert(f); });
    if (rec.empty()) break;
    DatasetView iview = DatasetView::of(store_.facts());
    FactSet heads = apply_rules(rec, iview, iview, &delta, nullptr, &counter_);
    FactSet nxt;
    heads.for_each([&](const Fact& f) {
      if (!store_.contains(f)) nxt.insert(f);
    });
    delta = std::move(nxt);
  }
}

void MaterialisationState::run_stratum_modular(int s, const FactSet& seed) {
  auto& mods = modules_[s - 1];
  std::vector<FactSet> deltas(mods.size());

  FactSet delta = seed;
  while (!delta.empty()) {
    delta.for_each([&](const Fact& f) { store_.insert(f); });
    if (mods.empty()) break;
    for (std::size_t i = 0; i < mods.size(); ++i) {
      FactSet arg = delta.set_minus(deltas[i]);
      deltas[i] = mods[i]->add(store_.facts(), store_.facts(), arg);
    }
    FactSet nxt;
    for (const FactSet& di : deltas)
      di.for_each([&](const Fact& f) {
        if (!store_.contains(f)) nxt.insert(f);
      });
    delta = std::move(nxt);
  }
}

void MaterialisationState::materialise(const FactSet& explicit_facts) {
  explicit_ = explicit_facts;
  store_.clear();
  rebuild_modules();
  stats_.clear();
  counter_.reset();

  for (int s = 1; s <= strat_.max_stratum; ++s) {
    Phase phase("materialise/s" + std::to_string(s), counter_);
    std::size_t before = store_.size();
    FactSet seed = nonrecursive_seed(s, explicit_, true);
    if (mode_ == EvalMode::Seminaive)
      run_stratum_seminaive(s, seed);
    else
      run_stratum_modular(s, seed);
    phase.row.facts_added = store_.size() - before;
    stats_.push_back(phase.finish(counter_));
  }
}

void MaterialisationState::overdelete(int s, const FactSet& eminus, FactSet& deleted,
                                      FactSet& added) {
  Phase phase("overdelete/s" + std::to_string(s), counter_);
  const std::size_t d_before = deleted.size();
  const FactSet& ifacts = store_.facts();
  FactSet dma = deleted.set_minus(added);  // D \ A
  FactSet amd = added.set_minus(deleted);  // A \ D

  // Every ceasing nonrecursive derivation decrements the counter; only facts
  // whose counter reaches zero are actually overdeleted (anything else keeps
  // an independent nonrecursive derivation and must survive).
  FactSet candidates;
  eminus.for_each([&](const Fact& f) {
    if (strat_.stratum_of(f.predicate) != s) return;
    store_.nr().adjust(f, -1);
    candidates.insert(f);
  });
  DatasetView iview = DatasetView::of(ifacts);
  for (const Rule& r : nr_rules_[s - 1]) {
    match_rule_instances(r, iview, iview, &dma, &amd, &counter_,
                         [&](const Rule& rule, const Substitution& sub) {
                           Fact h = sub.ground(rule.head);
                           store_.nr().adjust(h, -1);
                           candidates.insert(h);
                         });
  }

  FactSet delta;
  candidates.for_each([&](const Fact& f) {
    if (store_.nr().get(f) == 0) delta.insert(f);
  });

  auto& mods = modules_[s - 1];
  auto foreign = [&](const FactSet& src, std::size_t i) {
    FactSet out;
    const auto& heads = mods[i]->head_predicates();
    src.for_each([&](const Fact& f) {
      if (std::find(heads.begin(), heads.end(), f.predicate) == heads.end())
        out.insert(f);
    });
    return out;
  };

  for (std::size_t i = 0; i < mods.size(); ++i) {
    FactSet consequences = mods[i]->diff(ifacts, foreign(dma, i), foreign(amd, i));
    consequences.for_each([&](const Fact& f) {
      if (store_.nr().get(f) == 0) delta.insert(f);
    });
  }

  std::vector<FactSet> deltas(mods.size());
  while (!delta.empty()) {
    for (std::size_t i = 0; i < mods.size(); ++i) {
      FactSet arg = delta.set_minus(deltas[i]);
      // I \ (D \ A) and I u A at this point in the update
      FactSet ipos = DatasetView{&ifacts, &deleted, &added, nullptr}.snapshot();
      FactSet ineg = DatasetView{&ifacts, nullptr, nullptr, &added}.snapshot();
      deltas[i] = mods[i]->del(ipos, ineg, arg, store_.nr());
    }
    delta.for_each([&](const Fact& f) { deleted.insert(f); });
    FactSet nxt;
    for (const FactSet& di : deltas)
      di.for_each([&](const Fact& f) {
        if (!deleted.contains(f)) nxt.insert(f);
      });
    delta = std::move(nxt);
  }

  phase.row.facts_deleted = deleted.size() - d_before;
  stats_.push_back(phase.finish(counter_));
}

void MaterialisationState::rederive_insert(int s, const FactSet& eplus, FactSet& deleted,
                                           FactSet& added) {
  Phase phase("rederive-insert/s" + std::to_string(s), counter_);
  const std::size_t a_before = added.size();
  const FactSet& ifacts = store_.facts();
  FactSet dma = deleted.set_minus(added);
  FactSet amd = added.set_minus(deleted);
  DatasetView current{&ifacts, &deleted, nullptr, &added};  // (I \ D) u A

  FactSet delta;
  // Facts that gain a nonrecursive derivation while still being derivable are
  // not propagated, but stateful modules must still record them: a module's
  // internal edge set has to keep generating the materialisation, and a fact
  // that survives later deletions through its counter is useless to the module
  // if it was never handed to add().
  FactSet refresh;
  auto emit = [&](const Fact& f) {
    if (!current.contains(f)) delta.insert(f);
  };
  auto emit_nr = [&](const Fact& f) {
    if (current.contains(f))
      refresh.insert(f);
    else
      delta.insert(f);
  };

  eplus.for_each([&](const Fact& f) {
    if (strat_.stratum_of(f.predicate) != s) return;
    store_.nr().adjust(f, +1);
    emit_nr(f);
  });
  for (const Rule& r : nr_rules_[s - 1]) {
    match_rule_instances(r, current, current, &amd, &dma, &counter_,
                         [&](const Rule& rule, const Substitution& sub) {
                           Fact h = sub.ground(rule.head);
                           store_.nr().adjust(h, +1);
                           emit_nr(h);
                         });
  }

  auto& mods = modules_[s - 1];
  auto foreign = [&](const FactSet& src, std::size_t i) {
    FactSet out;
    const auto& heads = mods[i]->head_predicates();
    src.for_each([&](const Fact& f) {
      if (std::find(heads.begin(), heads.end(), f.predicate) == heads.end())
        out.insert(f);
    });
    return out;
  };

  std::vector<FactSet> deltas(mods.size());
  std::uint64_t rederived = 0;
  for (std::size_t i = 0; i < mods.size(); ++i) {
    FactSet cur = current.snapshot();
    deltas[i] = mods[i]->red(ifacts, cur, dma);
    rederived += deltas[i].size();
    deltas[i].for_each(emit);
    FactSet consequences = mods[i]->diff(cur, foreign(amd, i), foreign(dma, i));
    consequences.for_each(emit);
  }

  while (!delta.empty() || !refresh.empty()) {
    delta.for_each([&](const Fact& f) { added.insert(f); });
    for (std::size_t i = 0; i < mods.size(); ++i) {
      FactSet arg = delta.set_union(refresh).set_minus(deltas[i]);
      FactSet cur = current.snapshot();
      deltas[i] = mods[i]->add(cur, cur, arg);
    }
    refresh.clear();
    FactSet nxt;
    for (const FactSet& di : deltas)
      di.for_each([&](const Fact& f) {
        if (!current.contains(f)) nxt.insert(f);
      });
    delta = std::move(nxt);
  }

  phase.row.facts_rederived = rederived;
  phase.row.facts_added = added.size() - a_before;
  stats_.push_back(phase.finish(counter_));
}

void MaterialisationState::incremental_update(const FactSet& eminus, const FactSet& eplus) {
  stats_.clear();
  counter_.reset();

  // Normalise the request against the current explicit facts.
  FactSet em, ep;
  eminus.for_each([&](const Fact& f) {
    if (explicit_.contains(f) && !eplus.contains(f)) em.insert(f);
  });
  eplus.for_each([&](const Fact& f) {
    if (!explicit_.contains(f)) ep.insert(f);
  });

  FactSet deleted, added;
  for (int s = 1; s <= strat_.max_stratum; ++s) {
    overdelete(s, em, deleted, added);
    rederive_insert(s, ep, deleted, added);
  }

  em.for_each([&](const Fact& f) { explicit_.remove(f); });
  ep.for_each([&](const Fact& f) { explicit_.insert(f); });
  deleted.for_each([&](const Fact& f) {
    if (!added.contains(f)) store_.remove(f);
  });
  added.for_each([&](const Fact& f) { store_.insert(f); });
}

MaterialisationState materialise(const Program& program, const FactSet& explicit_facts,
                                 EvalMode mode, ModuleDetection detection) {
  MaterialisationState state(program, mode, detection);
  state.materialise(explicit_facts);
  return state;
}

}  // namespace modlog
