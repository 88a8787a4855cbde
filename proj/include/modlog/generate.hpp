#pragma once

#include <cstdint>

#include "modlog/fact_set.hpp"

namespace modlog {

// Synthetic workload shapes; all deterministic given their parameters.
// Vertices are named c0, c1, ... (chain/dag) or c1..cn (cycle, clique).

/// n edges R(c0,c1) .. R(c{n-1},cn).
FactSet generate_chain(Symbol pred, int n);

/// n edges R(c1,c2) .. R(c{n-1},cn), R(cn,c1).
FactSet generate_cycle(Symbol pred, int n);

/// `edges` distinct edges sampled uniformly among pairs (ci,cj) with i < j
/// over `nodes` vertices.
FactSet generate_dag(Symbol pred, int nodes, int edges, std::uint64_t seed);

/// One orientation of every edge of the complete graph on c1..cn.
FactSet generate_clique(Symbol pred, int n);

}  // namespace modlog
