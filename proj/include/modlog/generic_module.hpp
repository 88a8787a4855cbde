#pragma once

#include <span>

#include "modlog/apply.hpp"
#include "modlog/fact_store.hpp"
#include "modlog/module.hpp"

namespace modlog {

// Seminaive constructions for an arbitrary recursive rule set. These back the
// generic module's plugin functions and double as the reference oracles the
// specialised modules are tested against.

/// Smallest J with Pi[ipos u J, ineg :: delta u J] subseteq ipos u J,
/// computed by iterating delta rounds to a fixpoint.
FactSet semi(std::span<const Rule> rules, const FactSet& ipos, const FactSet& ineg,
             const FactSet& delta, InstanceCounter* counter = nullptr);

/// DRed-style overdeletion: smallest J with
/// Pi[ipos, ineg :: delta u J] subseteq delta u J. Excludes delta.
FactSet inv_semi(std::span<const Rule> rules, const FactSet& ipos, const FactSet& ineg,
                 const FactSet& delta, InstanceCounter* counter = nullptr);

/// DRedc-style overdeletion: smallest J such that every consequence touching
/// delta u J is in delta u J or has a nonzero nonrecursive counter.
FactSet inv_semi_c(std::span<const Rule> rules, const FactSet& ipos, const FactSet& ineg,
                   const FactSet& delta, const NrCounter& cnr,
                   InstanceCounter* counter = nullptr);

/// Rederivation in one or more steps: smallest J with
/// Pi[(ipos \ delta) u J, ineg] inter delta subseteq J.
FactSet generic_red(std::span<const Rule> rules, const FactSet& ipos, const FactSet& ineg,
                    const FactSet& delta, InstanceCounter* counter = nullptr);

/// Pi[ipos :: delta_pos, delta_neg] for delta sets free of head predicates.
FactSet generic_diff(std::span<const Rule> rules, const FactSet& ipos,
                     const FactSet& delta_pos, const FactSet& delta_neg,
                     InstanceCounter* counter = nullptr);

/// Stateless fallback module: Add = Semi, Del = InvSemic (the lower bound),
/// Red = the rederivation fixpoint, Diff = the delta operator.
class GenericModule : public ModulePlugin {
 public:
  GenericModule(std::vector<Rule> rules, InstanceCounter* counter);

  FactSet add(const FactSet& ipos, const FactSet& ineg, const FactSet& delta) override;
  FactSet del(const FactSet& ipos, const FactSet& ineg, const FactSet& delta,
              const NrCounter& cnr) override;
  FactSet red(const FactSet& ipos, const FactSet& ineg, const FactSet& delta) override;
  FactSet diff(const FactSet& ipos, const FactSet& delta_pos,
               const FactSet& delta_neg) override;
  const std::vector<Symbol>& head_predicates() const override { return heads_; }

  const std::vector<Rule>& rules() const { return rules_; }

 private:
  std::vector<Rule> rules_;
  std::vector<Symbol> heads_;
  InstanceCounter* counter_;
};

}  // namespace modlog
