#pragma once

#include "modlog/module.hpp"

namespace modlog {

/// Specialised module for a single rule axiomatising R as transitive.
/// Keeps the global set X_R of "external" R-facts (facts fed to the module
/// from outside); every derived R(a0,an) is witnessed by a chain of X_R
/// edges, so closure only ever joins against X_R on the left.
class TcModule : public ModulePlugin {
 public:
  TcModule(Symbol predicate, InstanceCounter* counter);

  FactSet add(const FactSet& ipos, const FactSet& ineg, const FactSet& delta) override;
  FactSet del(const FactSet& ipos, const FactSet& ineg, const FactSet& delta,
              const NrCounter& cnr) override;
  FactSet red(const FactSet& ipos, const FactSet& ineg, const FactSet& delta) override;
  FactSet diff(const FactSet& ipos, const FactSet& delta_pos,
               const FactSet& delta_neg) override;
  const std::vector<Symbol>& head_predicates() const override { return heads_; }

  const FactSet& external() const { return external_; }
  Symbol predicate() const { return pred_; }

 private:
  Symbol pred_;
  std::vector<Symbol> heads_;
  FactSet external_;  // X_R
  InstanceCounter* counter_;
};

}  // namespace modlog
