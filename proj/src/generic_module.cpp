#include "modlog/generic_module.hpp"

#include <algorithm>

namespace modlog {

FactSet semi(std::span<const Rule> rules, const FactSet& ipos, const FactSet& ineg,
             const FactSet& delta, InstanceCounter* counter) {
  FactSet j;
  FactSet cur = delta;  // round k's delta
  DatasetView pos{&ipos, nullptr, nullptr, &j};
  DatasetView neg = DatasetView::of(ineg);
  while (!cur.empty()) {
    FactSet heads = apply_rules(rules, pos, neg, &cur, nullptr, counter);
    FactSet nxt;
    heads.for_each([&](const Fact& f) {
      if (!ipos.contains(f) && !j.contains(f)) nxt.insert(f);
    });
    nxt.for_each([&](const Fact& f) { j.insert(f); });
    cur = std::move(nxt);
  }
  return j;
}

namespace {

// Shared body of the two overdeletion fixpoints; `gate` filters candidate
// deltas (always true for the upper bound, counter-is-zero for the lower).
template <typename Gate>
FactSet inv_semi_impl(std::span<const Rule> rules, const FactSet& ipos,
                      const FactSet& ineg, const FactSet& delta,
                      InstanceCounter* counter, Gate&& gate) {
  FactSet j;            // J_i, lags one round behind the deltas
  FactSet cur = delta;  // Delta_i
  DatasetView neg = DatasetView::of(ineg);
  while (!cur.empty()) {
    DatasetView pos{&ipos, &j, nullptr, nullptr};  // ipos \ J_i
    FactSet heads = apply_rules(rules, pos, neg, &cur, nullptr, counter);
    FactSet nxt;
    heads.for_each([&](const Fact& f) {
      if (!delta.contains(f) && !j.contains(f) && gate(f)) nxt.insert(f);
    });
    // J_{i+1} = J_i u Delta_i: the lag lets round i's deltas still match
    // positive body atoms while computing round i+1.
    cur.for_each([&](const Fact& f) { j.insert(f); });
    nxt.for_each([&](const Fact& f) {
      if (j.contains(f)) nxt.remove(f);  // already settled, cannot match again
    });
    cur = std::move(nxt);
  }
  return j.set_minus(delta);
}

}  // namespace

FactSet inv_semi(std::span<const Rule> rules, const FactSet& ipos, const FactSet& ineg,
                 const FactSet& delta, InstanceCounter* counter) {
  return inv_semi_impl(rules, ipos, ineg, delta, counter,
                       [](const Fact&) { return true; });
}

FactSet inv_semi_c(std::span<const Rule> rules, const FactSet& ipos, const FactSet& ineg,
                   const FactSet& delta, const NrCounter& cnr,
                   InstanceCounter* counter) {
  return inv_semi_impl(rules, ipos, ineg, delta, counter,
                       [&](const Fact& f) { return cnr.get(f) == 0; });
}

FactSet generic_red(std::span<const Rule> rules, const FactSet& ipos, const FactSet& ineg,
                    const FactSet& delta, InstanceCounter* counter) {
  FactSet j;
  DatasetView pos{&ipos, &delta, nullptr, &j};  // (ipos \ delta) u J
  DatasetView neg = DatasetView::of(ineg);

  // Full first pass, then seminaive rounds seeded with the rederived facts.
  FactSet heads = apply_rules(rules, pos, neg, nullptr, nullptr, counter);
  FactSet cur;
  heads.for_each([&](const Fact& f) {
    if (delta.contains(f)) cur.insert(f);
  });
  while (!cur.empty()) {
    cur.for_each([&](const Fact& f) { j.insert(f); });
    heads = apply_rules(rules, pos, neg, &cur, nullptr, counter);
    FactSet nxt;
    heads.for_each([&](const Fact& f) {
      if (delta.contains(f) && !j.contains(f)) nxt.insert(f);
    });
    cur = std::move(nxt);
  }
  return j;
}

FactSet generic_diff(std::span<const Rule> rules, const FactSet& ipos,
                     const FactSet& delta_pos, const FactSet& delta_neg,
                     InstanceCounter* counter) {
  return apply_rules(rules, DatasetView::of(ipos), DatasetView::of(ipos), &delta_pos,
                     &delta_neg, counter);
}

GenericModule::GenericModule(std::vector<Rule> rules, InstanceCounter* counter)
    : rules_(std::move(rules)), counter_(counter) {
  for (const Rule& r : rules_)
    if (std::find(heads_.begin(), heads_.end(), r.head.predicate) == heads_.end())
      heads_.push_back(r.head.predicate);
}

FactSet GenericModule::add(const FactSet& ipos, const FactSet& ineg,
                           const FactSet& delta) {
  return semi(rules_, ipos, ineg, delta, counter_);
}

FactSet GenericModule::del(const FactSet& ipos, const FactSet& ineg,
                           const FactSet& delta, const NrCounter& cnr) {
  return inv_semi_c(rules_, ipos, ineg, delta, cnr, counter_);
}

FactSet GenericModule::red(const FactSet& ipos, const FactSet& ineg,
                           const FactSet& delta) {
  return generic_red(rules_, ipos, ineg, delta, counter_);
}

FactSet GenericModule::diff(const FactSet& ipos, const FactSet& delta_pos,
                            const FactSet& delta_neg) {
  return generic_diff(rules_, ipos, delta_pos, delta_neg, counter_);
}

}  // namespace modlog
