#pragma once

#include <unordered_map>
#include <vector>

#include "modlog/ast.hpp"

namespace modlog {

enum class ModuleKind { Generic, Tc, Stc };

/// One recursive-rule module of a stratum: a Generic catch-all, or a
/// specialised transitive / symmetric-transitive closure module for a single
/// predicate.
struct ModuleSpec {
  ModuleKind kind;
  Symbol predicate = 0;               // meaningful for Tc / Stc
  std::vector<std::size_t> rules;     // indices into Program::rules
};

struct StratumInfo {
  std::vector<std::size_t> nonrecursive;  // rule indices
  std::vector<std::size_t> recursive;
  std::vector<ModuleSpec> modules;        // partition of `recursive`
};

struct Stratification {
  std::unordered_map<Symbol, int> lambda;  // predicate -> stratum, 1-based
  int max_stratum = 1;
  std::vector<StratumInfo> strata;         // strata[s-1]

  /// Predicates with no rules (pure input data) default to stratum 1.
  int stratum_of(Symbol pred) const {
    auto it = lambda.find(pred);
    return it == lambda.end() ? 1 : it->second;
  }
};

enum class ModuleDetection { Auto, Off };

/// Computes the canonical stratification: SCC condensation of the predicate
/// dependency graph with strata assigned by longest-path layering, then
/// splits each stratum into nonrecursive and recursive rules and partitions
/// the recursive part into modules. Throws NotStratifiableError when a
/// dependency cycle crosses a negative edge.
Stratification stratify(const Program& program,
                        ModuleDetection detection = ModuleDetection::Auto);

/// True when `rule` is R(x,y), R(y,z) -> R(x,z) for some predicate R, up to
/// variable renaming and body order.
bool is_transitivity_rule(const Rule& rule, Symbol* pred_out = nullptr);

/// True when `rule` is R(x,y) -> R(y,x), up to renaming.
bool is_symmetry_rule(const Rule& rule, Symbol* pred_out = nullptr);

}  // namespace modlog
