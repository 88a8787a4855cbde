#include "modlog/generate.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace modlog {

namespace {

Symbol vertex(int i) { return symbols().intern("c" + std::to_string(i)); }

Fact edge(Symbol pred, int i, int j) { return Fact{pred, {vertex(i), vertex(j)}}; }

}  // namespace

FactSet generate_chain(Symbol pred, int n) {
  FactSet out;
  for (int i = 0; i < n; ++i) out.insert(edge(pred, i, i + 1));
  return out;
}

FactSet generate_cycle(Symbol pred, int n) {
  FactSet out;
  for (int i = 1; i < n; ++i) out.insert(edge(pred, i, i + 1));
  out.insert(edge(pred, n, 1));
  return out;
}

FactSet generate_dag(Symbol pred, int nodes, int edges, std::uint64_t seed) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < nodes; ++i)
    for (int j = i + 1; j < nodes; ++j) pairs.emplace_back(i, j);
  std::mt19937_64 rng(seed);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  if (edges > static_cast<int>(pairs.size())) edges = static_cast<int>(pairs.size());
  FactSet out;
  for (int k = 0; k < edges; ++k) out.insert(edge(pred, pairs[k].first, pairs[k].second));
  return out;
}

FactSet generate_clique(Symbol pred, int n) {
  FactSet out;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) out.insert(edge(pred, i, j));
  return out;
}

}  // namespace modlog
