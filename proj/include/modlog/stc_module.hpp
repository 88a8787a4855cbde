#pragma once

#include <unordered_map>

#include "modlog/module.hpp"

namespace modlog {

/// Disjoint components of vertices with explicit member lists per root, so a
/// merge can enumerate the U x V cross product. Union by size, path
/// compression; member lists concatenate on merge, keeping enumeration order
/// deterministic.
class ComponentSet {
 public:
  bool has_vertex(Symbol v) const { return parent_.count(v) != 0; }

  /// Creates {v} if absent; returns true when created.
  bool add_singleton(Symbol v);

  Symbol find(Symbol v);  // v must be present

  /// Root of v's component, or nullopt-style: `has_vertex` first.
  const std::vector<Symbol>& members(Symbol root) const { return members_.at(root); }

  /// Merges the components of a and b (must be distinct); returns the new
  /// root. The surviving member list is old-a-members then old-b-members.
  Symbol merge(Symbol a, Symbol b);

  /// Removes the whole component rooted at `root`.
  void remove_component(Symbol root);

  std::size_t component_count() const { return members_.size(); }

  /// Root symbols in creation order (skipping removed/merged-away roots).
  std::vector<Symbol> roots() const;

 private:
  std::unordered_map<Symbol, Symbol> parent_;
  std::unordered_map<Symbol, std::vector<Symbol>> members_;  // root -> members
  std::unordered_map<Symbol, std::size_t> rank_;             // root -> size
  std::vector<Symbol> root_order_;
};

/// Specialised module for the rule pair axiomatising R as symmetric and
/// transitive, backed by connected components C_R plus the set Y_R of facts
/// that survived overdeletion through a nonzero nonrecursive counter.
class StcModule : public ModulePlugin {
 public:
  StcModule(Symbol predicate, InstanceCounter* counter);

  FactSet add(const FactSet& ipos, const FactSet& ineg, const FactSet& delta) override;
  FactSet del(const FactSet& ipos, const FactSet& ineg, const FactSet& delta,
              const NrCounter& cnr) override;
  FactSet red(const FactSet& ipos, const FactSet& ineg, const FactSet& delta) override;
  FactSet diff(const FactSet& ipos, const FactSet& delta_pos,
               const FactSet& delta_neg) override;
  const std::vector<Symbol>& head_predicates() const override { return heads_; }

  /// Incrementally folds the edges of `delta` into C_R, emitting the facts a
  /// new singleton or a component merge introduces.
  FactSet close_edges(const FactSet& delta);

  const ComponentSet& components() const { return components_; }
  const FactSet& pending() const { return pending_; }  // Y_R
  Symbol predicate() const { return pred_; }

 private:
  Symbol pred_;
  std::vector<Symbol> heads_;
  ComponentSet components_;  // C_R
  FactSet pending_;          // Y_R
  InstanceCounter* counter_;
};

}  // namespace modlog
