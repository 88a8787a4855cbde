#pragma once

#include <unordered_map>

#include "modlog/ast.hpp"
#include "modlog/fact_set.hpp"

namespace modlog {

/// Per-fact count of currently valid nonrecursive derivations. Explicit
/// membership in the current stratum counts as one derivation, so a nonzero
/// counter always means "survives overdeletion".
class NrCounter {
 public:
  std::uint32_t get(const Fact& f) const {
    auto it = counts_.find(f);
    return it == counts_.end() ? 0 : it->second;
  }

  /// delta is +1 or -1; going below zero signals an engine bug.
  std::uint32_t adjust(const Fact& f, int delta) {
    if (delta < 0 && get(f) == 0)
      throw NegativeCounterError("nonrecursive counter underflow for " + to_string(f));
    std::uint32_t& c = counts_[f];
    c = static_cast<std::uint32_t>(static_cast<int>(c) + delta);
    if (c == 0) counts_.erase(f);
    return c;
  }

  void clear() { counts_.clear(); }
  std::size_t size() const { return counts_.size(); }
  const std::unordered_map<Fact, std::uint32_t, FactHash>& map() const { return counts_; }

 private:
  std::unordered_map<Fact, std::uint32_t, FactHash> counts_;
};

/// Indexed dataset plus the global nonrecursive derivation counters.
class FactStore {
 public:
  bool insert(const Fact& f) { return facts_.insert(f); }
  bool remove(const Fact& f) { return facts_.remove(f); }
  bool contains(const Fact& f) const { return facts_.contains(f); }
  std::size_t size() const { return facts_.size(); }

  const FactSet& facts() const { return facts_; }
  FactSet& facts() { return facts_; }
  NrCounter& nr() { return nr_; }
  const NrCounter& nr() const { return nr_; }

  void clear() {
    facts_.clear();
    nr_.clear();
  }

 private:
  FactSet facts_;
  NrCounter nr_;
};

/// Yields, in deterministic order, every substitution grounding `pattern`
/// inside the view. Repeated variables are honoured (diagonal matches).
void match(const Atom& pattern, const DatasetView& view,
           const std::function<void(const Substitution&)>& sink);

}  // namespace modlog
