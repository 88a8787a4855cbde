#pragma once

#include <functional>
#include <span>

#include "modlog/ast.hpp"
#include "modlog/fact_set.hpp"

namespace modlog {

/// Work counters, reset per engine operation. `rule_instances` counts
/// qualifying rule instances enumerated by the generic matcher;
/// `join_results` counts candidate pairs examined by the TC and STC inner
/// loops (including component pair enumeration). When `trace` is set, every
/// enumerated instance is recorded so tests can assert that no instance is
/// considered twice.
struct InstanceCounter {
  std::uint64_t rule_instances = 0;
  std::uint64_t join_results = 0;
  std::vector<std::pair<const void*, std::vector<Symbol>>>* trace = nullptr;

  void reset() {
    rule_instances = 0;
    join_results = 0;
  }
};

using InstanceSink = std::function<void(const Rule&, const Substitution&)>;

/// Enumerates exactly once each instance r-sigma of `rule` with positive body
/// in `ipos`, negative body disjoint from `ineg`, and (when delta_pos or
/// delta_neg is non-null) at least one positive body atom in delta_pos or one
/// negative body atom in delta_neg. Enumeration uses the seminaive delta-rule
/// decomposition: for k positive atoms there are k delta-rules where atom j
/// matches delta_pos and atoms before j match ipos minus delta_pos, plus one
/// delta-rule for delta_neg with all positive atoms outside delta_pos.
void match_rule_instances(const Rule& rule, const DatasetView& ipos,
                          const DatasetView& ineg, const FactSet* delta_pos,
                          const FactSet* delta_neg, InstanceCounter* counter,
                          const InstanceSink& sink);

/// The operator Pi[I+, I- :: D+, D-]: the set of heads from the enumeration
/// above, over all rules. Null delta pointers drop the delta restriction.
/// Preconditions (delta_pos subseteq ipos, delta_neg disjoint from ineg) are
/// asserted in debug builds.
FactSet apply_rules(std::span<const Rule> rules, const DatasetView& ipos,
                    const DatasetView& ineg, const FactSet* delta_pos,
                    const FactSet* delta_neg, InstanceCounter* counter = nullptr);

inline FactSet apply_rules(std::span<const Rule> rules, const DatasetView& i,
                           InstanceCounter* counter = nullptr) {
  return apply_rules(rules, i, i, nullptr, nullptr, counter);
}

}  // namespace modlog
