#include "modlog/apply.hpp"

#include <algorithm>
#include <cassert>

#include "modlog/fact_store.hpp"

namespace modlog {

namespace {

enum class AtomMode { Plain, InDelta, NotDelta };

/// Binds `atom` against `fact`; on success runs `cont` and returns its
/// result, always restoring the substitution afterwards.
template <typename Cont>
void unify(const Atom& atom, const Fact& fact, Substitution& subst, Cont&& cont) {
  const std::size_t mark = subst.size();
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    const Term& t = atom.args[i];
    if (t.is_constant()) {
      if (t.sym != fact.args[i]) {
        subst.truncate(mark);
        return;
      }
    } else {
      Symbol bound;
      if (subst.lookup(t.sym, bound)) {
        if (bound != fact.args[i]) {
          subst.truncate(mark);
          return;
        }
      } else {
        subst.bind(t.sym, fact.args[i]);
      }
    }
  }
  cont();
  subst.truncate(mark);
}

/// Enumerates candidate facts for `atom` under the current bindings, using
/// the tightest available index, and recurses via `cont` per match.
template <typename Cont>
void enumerate_atom(const Atom& atom, AtomMode mode, const DatasetView& view,
                    const FactSet* delta, Substitution& subst, Cont&& cont) {
  auto filtered = [&](const Fact& f) {
    if (mode == AtomMode::InDelta && !view.contains(f)) return;
    if (mode == AtomMode::NotDelta && delta && delta->contains(f)) return;
    unify(atom, f, subst, cont);
  };

  if (mode == AtomMode::InDelta) {
    // Delta facts in insertion order.
    if (delta) delta->for_each_with_pred(atom.predicate, filtered);
    return;
  }

  // Pick the first argument that is already ground as the index key.
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    const Term& t = atom.args[i];
    Symbol value;
    if (t.is_constant())
      value = t.sym;
    else if (!subst.lookup(t.sym, value))
      continue;
    view.for_each_with_arg(atom.predicate, i, value, filtered);
    return;
  }
  view.for_each_with_pred(atom.predicate, filtered);
}

void match_with_modes(const Rule& rule, const std::vector<std::size_t>& order,
                      const std::vector<AtomMode>& modes, const DatasetView& ipos,
                      const DatasetView& ineg, const FactSet* delta_pos,
                      const FactSet* delta_neg, bool require_neg_delta,
                      InstanceCounter* counter, const InstanceSink& sink,
                      Substitution& subst, std::size_t depth) {
  if (depth == order.size()) {
    // Positive body fully ground; negative atoms are ground by safety.
    bool neg_hit = false;
    for (const Atom& a : rule.neg_body) {
      Fact f = subst.ground(a);
      if (ineg.contains(f)) return;
      if (require_neg_delta && delta_neg && delta_neg->contains(f)) neg_hit = true;
    }
    if (require_neg_delta && !neg_hit) return;
    if (counter) {
      ++counter->rule_instances;
      if (counter->trace) {
        auto sorted = subst.bindings();
        std::sort(sorted.begin(), sorted.end());
        std::vector<Symbol> key;
        key.reserve(sorted.size() * 2);
        for (auto [v, c] : sorted) {
          key.push_back(v);
          key.push_back(c);
        }
        counter->trace->emplace_back(static_cast<const void*>(&rule), std::move(key));
      }
    }
    sink(rule, subst);
    return;
  }
  const std::size_t atom_idx = order[depth];
  enumerate_atom(rule.pos_body[atom_idx], modes[atom_idx], ipos, delta_pos, subst,
                 [&] {
                   match_with_modes(rule, order, modes, ipos, ineg, delta_pos, delta_neg,
                                    require_neg_delta, counter, sink, subst, depth + 1);
                 });
}

}  // namespace

void match_rule_instances(const Rule& rule, const DatasetView& ipos,
                          const DatasetView& ineg, const FactSet* delta_pos,
                          const FactSet* delta_neg, InstanceCounter* counter,
                          const InstanceSink& sink) {
  const std::size_t k = rule.pos_body.size();
  Substitution subst;

  if (!delta_pos && !delta_neg) {
    // Unrestricted: one pass, body atoms left to right.
    std::vector<std::size_t> order(k);
    std::vector<AtomMode> modes(k, AtomMode::Plain);
    for (std::size_t i = 0; i < k; ++i) order[i] = i;
    match_with_modes(rule, order, modes, ipos, ineg, nullptr, nullptr, false, counter,
                     sink, subst, 0);
    return;
  }

  // One delta-rule per positive atom: atom j in delta, atoms before j outside
  // delta, atoms after j unrestricted. The delta atom is matched first.
  if (delta_pos && !delta_pos->empty()) {
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<std::size_t> order;
      order.reserve(k);
      order.push_back(j);
      for (std::size_t i = 0; i < k; ++i)
        if (i != j) order.push_back(i);
      std::vector<AtomMode> modes(k, AtomMode::Plain);
      modes[j] = AtomMode::InDelta;
      for (std::size_t i = 0; i < j; ++i) modes[i] = AtomMode::NotDelta;
      match_with_modes(rule, order, modes, ipos, ineg, delta_pos, nullptr, false, counter,
                       sink, subst, 0);
    }
  }

  // One delta-rule for the negative delta: every positive atom outside
  // delta_pos, at least one negative atom in delta_neg.
  if (delta_neg && !delta_neg->empty() && !rule.neg_body.empty()) {
    std::vector<std::size_t> order(k);
    std::vector<AtomMode> modes(k, AtomMode::NotDelta);
    for (std::size_t i = 0; i < k; ++i) order[i] = i;
    match_with_modes(rule, order, modes, ipos, ineg, delta_pos, delta_neg, true, counter,
                     sink, subst, 0);
  }
}

FactSet apply_rules(std::span<const Rule> rules, const DatasetView& ipos,
                    const DatasetView& ineg, const FactSet* delta_pos,
                    const FactSet* delta_neg, InstanceCounter* counter) {
  // Delta facts outside ipos (resp. inside ineg) are harmless: the matcher
  // filters delta matches through the views, which is exactly the operator
  // semantics, so no precondition is imposed here.
  FactSet out;
  for (const Rule& rule : rules)
    match_rule_instances(rule, ipos, ineg, delta_pos, delta_neg, counter,
                         [&](const Rule& r, const Substitution& s) {
                           out.insert(s.ground(r.head));
                         });
  return out;
}

void match(const Atom& pattern, const DatasetView& view,
           const std::function<void(const Substitution&)>& sink) {
  Substitution subst;
  enumerate_atom(pattern, AtomMode::Plain, view, nullptr, subst,
                 [&] { sink(subst); });
}

}  // namespace modlog
