#pragma once

#include <string>

#include "modlog/ast.hpp"
#include "modlog/fact_set.hpp"

namespace modlog {

struct OracleReport {
  std::vector<Fact> missing;  // in expected, not in actual
  std::vector<Fact> extra;    // in actual, not in expected
  bool ok() const { return missing.empty() && extra.empty(); }
  std::string summary() const;
};

/// Ground-truth materialisation: stratum-by-stratum full re-application to a
/// fixpoint with nested-loop matching and no indexes or deltas. Deliberately
/// slow and structurally unrelated to the engine.
FactSet naive_fixpoint(const Program& program, const FactSet& explicit_facts);

/// Classic whole-stratum DRed (upper-bound overdeletion, one-step
/// rederivation, seminaive insertion). Returns the updated materialisation.
FactSet dred_reference(const Program& program, const FactSet& explicit_facts,
                       const FactSet& materialisation, const FactSet& eminus,
                       const FactSet& eplus);

OracleReport verify(const FactSet& actual, const FactSet& expected);

}  // namespace modlog
