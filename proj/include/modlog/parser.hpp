#pragma once

#include <string>
#include <string_view>

#include "modlog/ast.hpp"
#include "modlog/fact_set.hpp"

namespace modlog {

// Concrete syntax:
//   rule:  R(?x,?y), R(?y,?z) -> R(?x,?z).
//   fact:  R(a,b).
// Variables start with '?', identifiers are [A-Za-z0-9_]+, '%' starts a
// comment running to end of line. Rules are safety-checked, duplicates are
// dropped, and an arity clash is a load-time error.

Program parse_program(std::string_view text);

FactSet parse_facts(std::string_view text);

/// Facts sorted lexicographically by (predicate, args); one per line with a
/// trailing '.', so output is stable and byte-comparable.
std::string serialise_dataset(const FactSet& dataset);

std::string serialise_program(const Program& program);

/// Checks every fact against the arities used by `program`; extends the map
/// with predicates the program does not mention. Throws ArityClashError.
void check_fact_arities(const Program& program, const FactSet& facts);

}  // namespace modlog
