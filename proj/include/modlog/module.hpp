#pragma once

#include <memory>

#include "modlog/apply.hpp"
#include "modlog/fact_store.hpp"
#include "modlog/stratify.hpp"

namespace modlog {

/// The four pluggable functions handling one recursive-rule module. Inputs
/// are concrete snapshots of the dataset expressions at the call site; the
/// returned sets obey the Add/Del/Red/Diff contracts (smallest closure,
/// lower/upper overdeletion sandwich, rederivation closure, delta
/// consequences). Implementations may keep persistent state across calls.
class ModulePlugin {
 public:
  virtual ~ModulePlugin() = default;

  virtual FactSet add(const FactSet& ipos, const FactSet& ineg, const FactSet& delta) = 0;
  virtual FactSet del(const FactSet& ipos, const FactSet& ineg, const FactSet& delta,
                      const NrCounter& cnr) = 0;
  virtual FactSet red(const FactSet& ipos, const FactSet& ineg, const FactSet& delta) = 0;
  virtual FactSet diff(const FactSet& ipos, const FactSet& delta_pos,
                       const FactSet& delta_neg) = 0;

  /// Predicates occurring in this module's rule heads; the engine filters
  /// Diff arguments down to foreign predicates with this.
  virtual const std::vector<Symbol>& head_predicates() const = 0;
};

std::unique_ptr<ModulePlugin> make_module(const ModuleSpec& spec, const Program& program,
                                          InstanceCounter* counter);

}  // namespace modlog
