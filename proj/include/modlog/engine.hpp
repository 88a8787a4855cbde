#pragma once

#include <memory>
#include <string>

#include "modlog/apply.hpp"
#include "modlog/fact_store.hpp"
#include "modlog/module.hpp"
#include "modlog/stratify.hpp"

namespace modlog {

enum class EvalMode { Seminaive, Modular };

struct PhaseStats {
  std::string phase;
  std::uint64_t rule_instances = 0;
  std::uint64_t join_results = 0;
  std::uint64_t facts_deleted = 0;
  std::uint64_t facts_rederived = 0;
  std::uint64_t facts_added = 0;
  double wall_ms = 0.0;
};

/// Engine state between operations: the explicit facts E, the materialisation
/// I with its nonrecursive counters, and the per-stratum module plugins whose
/// internal state (X_R, C_R, Y_R) persists across updates.
class MaterialisationState {
 public:
  MaterialisationState(Program program, EvalMode mode, ModuleDetection detection);

  const Program& program() const { return program_; }
  const Stratification& stratification() const { return strat_; }
  EvalMode mode() const { return mode_; }
  const FactSet& explicit_facts() const { return explicit_; }
  const FactStore& store() const { return store_; }
  const FactSet& materialisation() const { return store_.facts(); }

  InstanceCounter& counter() { return counter_; }
  const std::vector<PhaseStats>& last_stats() const { return stats_; }

  /// Computes I = Mat(Pi, E) from scratch. Seminaive mode runs the plain
  /// stratum-by-stratum delta loop; modular mode drives the module plugins.
  void materialise(const FactSet& explicit_facts);

  /// Updates E to (E \ eminus) u eplus and I to the matching materialisation
  /// via overdeletion, rederivation and insertion, reusing module state.
  void incremental_update(const FactSet& eminus, const FactSet& eplus);

  ModulePlugin& module(int stratum, std::size_t index) { return *modules_[stratum - 1][index]; }

 private:
  void run_stratum_modular(int s, const FactSet& seed);
  void run_stratum_seminaive(int s, const FactSet& seed);
  FactSet nonrecursive_seed(int s, const FactSet& explicit_slice, bool increment);
  void overdelete(int s, const FactSet& eminus, FactSet& deleted, FactSet& added);
  void rederive_insert(int s, const FactSet& eplus, FactSet& deleted, FactSet& added);
  void rebuild_modules();

  Program program_;
  Stratification strat_;
  std::vector<std::vector<Rule>> nr_rules_, rec_rules_;  // per stratum
  EvalMode mode_;
  ModuleDetection detection_;
  FactSet explicit_;
  FactStore store_;
  std::vector<std::vector<std::unique_ptr<ModulePlugin>>> modules_;  // per stratum
  InstanceCounter counter_;
  std::vector<PhaseStats> stats_;
};

/// Convenience wrapper: parse nothing, just materialise.
MaterialisationState materialise(const Program& program, const FactSet& explicit_facts,
                                 EvalMode mode = EvalMode::Modular,
                                 ModuleDetection detection = ModuleDetection::Auto);

}  // namespace modlog
