#pragma once

#include <cassert>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "modlog/ast.hpp"

namespace modlog {

/// Insertion-ordered, indexed set of facts. Binary predicates get adjacency
/// indexes on both argument positions; higher-arity predicates get a
/// first-argument index only. Iteration order is insertion order, which keeps
/// every enumeration in the engine deterministic.
class FactSet {
 public:
  FactSet() = default;

  bool insert(const Fact& f);
  bool remove(const Fact& f);
  bool contains(const Fact& f) const { return pos_.count(f) != 0; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  void clear();

  /// Visits facts in insertion order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const auto& row : rows_)
      if (row.live) fn(row.fact);
  }

  template <typename Fn>
  void for_each_with_pred(Symbol pred, Fn&& fn) const {
    auto it = preds_.find(pred);
    if (it == preds_.end()) return;
    for (std::uint32_t r : it->second.rows)
      if (rows_[r].live) fn(rows_[r].fact);
  }

  /// Facts whose argument `arg_pos` equals `value`. Falls back to a predicate
  /// scan when no index covers the position.
  template <typename Fn>
  void for_each_with_arg(Symbol pred, std::size_t arg_pos, Symbol value, Fn&& fn) const {
    auto it = preds_.find(pred);
    if (it == preds_.end()) return;
    const PredIndex& idx = it->second;
    const std::vector<std::uint32_t>* bucket = nullptr;
    if (arg_pos == 0) {
      auto b = idx.by_arg0.find(value);
      bucket = b == idx.by_arg0.end() ? &kEmpty : &b->second;
    } else if (arg_pos == 1 && idx.arity == 2) {
      auto b = idx.by_arg1.find(value);
      bucket = b == idx.by_arg1.end() ? &kEmpty : &b->second;
    }
    if (bucket) {
      for (std::uint32_t r : *bucket)
        if (rows_[r].live) fn(rows_[r].fact);
      return;
    }
    for (std::uint32_t r : idx.rows)
      if (rows_[r].live && rows_[r].fact.args[arg_pos] == value) fn(rows_[r].fact);
  }

  std::vector<Fact> to_vector() const {
    std::vector<Fact> out;
    out.reserve(size_);
    for_each([&](const Fact& f) { out.push_back(f); });
    return out;
  }

  // set algebra helpers; results preserve this set's insertion order
  FactSet set_union(const FactSet& other) const;
  FactSet set_minus(const FactSet& other) const;
  FactSet set_intersect(const FactSet& other) const;

  bool set_equals(const FactSet& other) const;
  bool is_subset_of(const FactSet& other) const;

 private:
  struct Row {
    Fact fact;
    bool live;
  };
  struct PredIndex {
    std::size_t arity = 0;
    std::vector<std::uint32_t> rows;
    std::unordered_map<Symbol, std::vector<std::uint32_t>> by_arg0;
    std::unordered_map<Symbol, std::vector<std::uint32_t>> by_arg1;
  };

  static const std::vector<std::uint32_t> kEmpty;

  std::vector<Row> rows_;
  std::unordered_map<Fact, std::uint32_t, FactHash> pos_;
  std::unordered_map<Symbol, PredIndex> preds_;
  std::size_t size_ = 0;
};

/// Composite read view realising (base \ minus) u plus without copying, with
/// an optional carve-out: facts in both `minus` and `minus_keep` stay visible.
/// That covers every dataset expression the incremental algorithm needs,
/// e.g. I \ (D \ A) as {base=I, minus=D, minus_keep=A}.
struct DatasetView {
  const FactSet* base = nullptr;
  const FactSet* minus = nullptr;
  const FactSet* minus_keep = nullptr;
  const FactSet* plus = nullptr;

  static DatasetView of(const FactSet& s) { return {&s, nullptr, nullptr, nullptr}; }

  bool contains(const Fact& f) const {
    if (plus && plus->contains(f)) return true;
    if (!base || !base->contains(f)) return false;
    if (minus && minus->contains(f) && !(minus_keep && minus_keep->contains(f))) return false;
    return true;
  }

  bool base_visible(const Fact& f) const {
    if (!base || !base->contains(f)) return false;
    if (minus && minus->contains(f) && !(minus_keep && minus_keep->contains(f))) return false;
    return true;
  }

  /// Base facts first (insertion order), then plus facts not already seen.
  template <typename Fn>
  void for_each_with_pred(Symbol pred, Fn&& fn) const {
    if (base)
      base->for_each_with_pred(pred, [&](const Fact& f) {
        if (base_visible(f)) fn(f);
      });
    if (plus)
      plus->for_each_with_pred(pred, [&](const Fact& f) {
        if (!base_visible(f)) fn(f);
      });
  }

  template <typename Fn>
  void for_each_with_arg(Symbol pred, std::size_t arg_pos, Symbol value, Fn&& fn) const {
    if (base)
      base->for_each_with_arg(pred, arg_pos, value, [&](const Fact& f) {
        if (base_visible(f)) fn(f);
      });
    if (plus)
      plus->for_each_with_arg(pred, arg_pos, value, [&](const Fact& f) {
        if (!base_visible(f)) fn(f);
      });
  }

  /// Materialises the view into a concrete set, base order then plus order.
  FactSet snapshot() const;
};

}  // namespace modlog
