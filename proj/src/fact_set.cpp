#include "modlog/fact_set.hpp"

#include <algorithm>

namespace modlog {

const std::vector<std::uint32_t> FactSet::kEmpty{};

bool FactSet::insert(const Fact& f) {
  if (pos_.count(f)) return false;
  std::uint32_t row = static_cast<std::uint32_t>(rows_.size());
  rows_.push_back({f, true});
  pos_.emplace(f, row);
  PredIndex& idx = preds_[f.predicate];
  idx.arity = f.args.size();
  idx.rows.push_back(row);
  if (!f.args.empty()) idx.by_arg0[f.args[0]].push_back(row);
  if (f.args.size() == 2) idx.by_arg1[f.args[1]].push_back(row);
  ++size_;
  return true;
}

bool FactSet::remove(const Fact& f) {
  auto it = pos_.find(f);
  if (it == pos_.end()) return false;
  rows_[it->second].live = false;
  pos_.erase(it);
  --size_;
  return true;
}

void FactSet::clear() {
  rows_.clear();
  pos_.clear();
  preds_.clear();
  size_ = 0;
}

FactSet FactSet::set_union(const FactSet& other) const {
  FactSet out;
  for_each([&](const Fact& f) { out.insert(f); });
  other.for_each([&](const Fact& f) { out.insert(f); });
  return out;
}

FactSet FactSet::set_minus(const FactSet& other) const {
  FactSet out;
  for_each([&](const Fact& f) {
    if (!other.contains(f)) out.insert(f);
  });
  return out;
}

FactSet FactSet::set_intersect(const FactSet& other) const {
  FactSet out;
  for_each([&](const Fact& f) {
    if (other.contains(f)) out.insert(f);
  });
  return out;
}

bool FactSet::is_subset_of(const FactSet& other) const {
  bool ok = true;
  for_each([&](const Fact& f) { ok = ok && other.contains(f); });
  return ok;
}

bool FactSet::set_equals(const FactSet& other) const {
  return size() == other.size() && is_subset_of(other);
}

FactSet DatasetView::snapshot() const {
  FactSet out;
  if (base)
    base->for_each([&](const Fact& f) {
      if (base_visible(f)) out.insert(f);
    });
  if (plus) plus->for_each([&](const Fact& f) { out.insert(f); });
  return out;
}

}  // namespace modlog
