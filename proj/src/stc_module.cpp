#include "modlog/stc_module.hpp"

#include <algorithm>

namespace modlog {

bool ComponentSet::add_singleton(Symbol v) {
  if (parent_.count(v)) return false;
  parent_.emplace(v, v);
  members_.emplace(v, std::vector<Symbol>{v});
  rank_.emplace(v, 1);
  root_order_.push_back(v);
  return true;
}

Symbol ComponentSet::find(Symbol v) {
  Symbol root = v;
  while (parent_.at(root) != root) root = parent_.at(root);
  while (parent_.at(v) != root) {
    Symbol next = parent_.at(v);
    parent_[v] = root;
    v = next;
  }
  return root;
}

Symbol ComponentSet::merge(Symbol a, Symbol b) {
  Symbol ra = find(a), rb = find(b);
  // Larger component survives; the member list is a-members then b-members
  // either way, so enumeration order does not depend on the union direction.
  Symbol winner = rank_[ra] >= rank_[rb] ? ra : rb;
  Symbol loser = winner == ra ? rb : ra;
  std::vector<Symbol> joined = std::move(members_[ra]);
  joined.insert(joined.end(), members_[rb].begin(), members_[rb].end());
  parent_[loser] = winner;
  members_.erase(loser);
  members_[winner] = std::move(joined);
  rank_[winner] += rank_[loser];
  rank_.erase(loser);
  return winner;
}

void ComponentSet::remove_component(Symbol root) {
  for (Symbol v : members_.at(root)) {
    parent_.erase(v);
    rank_.erase(v);
  }
  members_.erase(root);
}

std::vector<Symbol> ComponentSet::roots() const {
  std::vector<Symbol> out;
  for (Symbol r : root_order_) {
    auto it = parent_.find(r);
    if (it != parent_.end() && it->second == r && members_.count(r)) out.push_back(r);
  }
  return out;
}

namespace {

Fact edge(Symbol pred, Symbol u, Symbol v) { return Fact{pred, {u, v}}; }

}  // namespace

StcModule::StcModule(Symbol predicate, InstanceCounter* counter)
    : pred_(predicate), heads_{predicate}, counter_(counter) {}

FactSet StcModule::close_edges(const FactSet& delta) {
  FactSet j;
  delta.for_each_with_pred(pred_, [&](const Fact& f) {
    Symbol u = f.args[0], v = f.args[1];
    if (components_.add_singleton(u)) j.insert(edge(pred_, u, u));
    if (components_.add_singleton(v)) j.insert(edge(pred_, v, v));
    Symbol ru = components_.find(u), rv = components_.find(v);
    if (ru == rv) return;
    // Copy the lists before the merge invalidates them.
    std::vector<Symbol> us = components_.members(ru);
    std::vector<Symbol> vs = components_.members(rv);
    for (Symbol a : us)
      for (Symbol b : vs) {
        if (counter_) ++counter_->join_results;
        j.insert(edge(pred_, a, b));
        j.insert(edge(pred_, b, a));
      }
    components_.merge(ru, rv);
  });
  return j;
}

FactSet StcModule::add(const FactSet& ipos, const FactSet& ineg, const FactSet& delta) {
  (void)ineg;
  return close_edges(delta).set_minus(ipos);
}

FactSet StcModule::del(const FactSet& ipos, const FactSet& ineg, const FactSet& delta,
                       const NrCounter& cnr) {
  (void)ipos;
  (void)ineg;
  FactSet j;
  // Components hit by a deleted fact, in delta order, deduplicated.
  std::vector<Symbol> hit;
  delta.for_each_with_pred(pred_, [&](const Fact& f) {
    Symbol u = f.args[0], v = f.args[1];
    if (!components_.has_vertex(u) || !components_.has_vertex(v)) return;
    Symbol ru = components_.find(u);
    if (components_.find(v) != ru) return;
    if (std::find(hit.begin(), hit.end(), ru) == hit.end()) hit.push_back(ru);
  });

  for (Symbol root : hit) {
    const std::vector<Symbol> us = components_.members(root);
    for (Symbol a : us)
      for (Symbol b : us) {
        if (counter_) ++counter_->join_results;
        Fact f = edge(pred_, a, b);
        if (cnr.get(f) == 0)
          j.insert(f);
        else
          pending_.insert(f);
      }
    components_.remove_component(root);
  }
  return j.set_minus(delta);
}

FactSet StcModule::red(const FactSet& ipos, const FactSet& ineg, const FactSet& delta) {
  (void)ipos;
  (void)ineg;
  FactSet j = close_edges(pending_).set_intersect(delta);
  pending_.clear();
  return j;
}

FactSet StcModule::diff(const FactSet& ipos, const FactSet& delta_pos,
                        const FactSet& delta_neg) {
  (void)ipos;
  (void)delta_pos;
  (void)delta_neg;
  return {};
}

}  // namespace modlog
