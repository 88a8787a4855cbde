#include "modlog/tc_module.hpp"

#include <algorithm>
#include <deque>

namespace modlog {

namespace {

Fact edge(Symbol pred, Symbol u, Symbol v) { return Fact{pred, {u, v}}; }

}  // namespace

TcModule::TcModule(Symbol predicate, InstanceCounter* counter)
    : pred_(predicate), heads_{predicate}, counter_(counter) {}

FactSet TcModule::add(const FactSet& ipos, const FactSet& ineg, const FactSet& delta) {
  (void)ineg;
  FactSet j;
  std::deque<Fact> queue;

  delta.for_each_with_pred(pred_, [&](const Fact& f) {
    external_.insert(f);
    queue.push_back(f);
  });

  // New chains of the form delta edge followed by an old fact.
  delta.for_each_with_pred(pred_, [&](const Fact& uv) {
    ipos.for_each_with_arg(pred_, 0, uv.args[1], [&](const Fact& vw) {
      if (counter_) ++counter_->join_results;
      if (delta.contains(vw)) return;
      Fact uw = edge(pred_, uv.args[0], vw.args[1]);
      if (ipos.contains(uw)) return;
      if (j.insert(uw)) queue.push_back(uw);
    });
  });

  // Prepend external edges to every queued fact; the ipos u J guard keeps the
  // work proportional to the genuinely new facts.
  while (!queue.empty()) {
    Fact vw = queue.front();
    queue.pop_front();
    external_.for_each_with_arg(pred_, 1, vw.args[0], [&](const Fact& uv) {
      if (counter_) ++counter_->join_results;
      Fact uw = edge(pred_, uv.args[0], vw.args[1]);
      if (ipos.contains(uw) || j.contains(uw)) return;
      j.insert(uw);
      queue.push_back(uw);
    });
  }
  return j;
}

FactSet TcModule::del(const FactSet& ipos, const FactSet& ineg, const FactSet& delta,
                      const NrCounter& cnr) {
  (void)ineg;
  FactSet j;
  FactSet seen;  // S: facts whose loss has been propagated
  std::deque<Fact> queue;

  delta.for_each_with_pred(pred_, [&](const Fact& f) {
    external_.remove(f);
    seen.insert(f);
    queue.push_back(f);
  });

  auto lose = [&](Symbol u, Symbol w) {
    Fact uw = edge(pred_, u, w);
    if (!seen.insert(uw)) return;
    queue.push_back(uw);
    if (cnr.get(uw) == 0) j.insert(uw);
  };

  // Chains starting with a deleted edge. The join partner ranges over all of
  // ipos, deleted facts included: a chain of two deleted edges still has to
  // surface its consequence here, because the queue loop only prepends
  // surviving external edges. Seen facts are skipped inside lose().
  delta.for_each_with_pred(pred_, [&](const Fact& uv) {
    ipos.for_each_with_arg(pred_, 0, uv.args[1], [&](const Fact& vw) {
      if (counter_) ++counter_->join_results;
      lose(uv.args[0], vw.args[1]);
    });
  });

  while (!queue.empty()) {
    Fact vw = queue.front();
    queue.pop_front();
    external_.for_each_with_arg(pred_, 1, vw.args[0], [&](const Fact& uv) {
      if (counter_) ++counter_->join_results;
      Fact uw = edge(pred_, uv.args[0], vw.args[1]);
      if (!ipos.contains(uw) || seen.contains(uw)) return;
      lose(uv.args[0], vw.args[1]);
    });
  }
  // Overdeleted facts leave the edge set too. They are never passed back as a
  // later delta of this module, yet they may be stored edges when another rule
  // of the same stratum derived them; a reachability check must not walk over
  // an edge that is about to be deleted.
  j.for_each([&](const Fact& f) { external_.remove(f); });
  return j.set_minus(delta);
}

FactSet TcModule::red(const FactSet& ipos, const FactSet& ineg, const FactSet& delta) {
  (void)ipos;
  (void)ineg;
  FactSet j;
  std::vector<Symbol> sources;
  delta.for_each_with_pred(pred_, [&](const Fact& f) {
    Symbol u = f.args[0];
    if (std::find(sources.begin(), sources.end(), u) == sources.end())
      sources.push_back(u);
  });

  // Forward reachability from each source over the surviving external edges.
  for (Symbol u : sources) {
    std::vector<Symbol> frontier{u};
    FactSet reached;  // R(u,w) for every reached w
    while (!frontier.empty()) {
      Symbol v = frontier.back();
      frontier.pop_back();
      external_.for_each_with_arg(pred_, 0, v, [&](const Fact& vw) {
        if (counter_) ++counter_->join_results;
        Symbol w = vw.args[1];
        if (reached.insert(edge(pred_, u, w))) frontier.push_back(w);
      });
    }
    reached.for_each([&](const Fact& f) { j.insert(f); });
  }
  return j.set_intersect(delta);
}

FactSet TcModule::diff(const FactSet& ipos, const FactSet& delta_pos,
                       const FactSet& delta_neg) {
  (void)ipos;
  (void)delta_pos;
  (void)delta_neg;
  // R facts only ever follow from other R facts, so foreign deltas are inert.
  return {};
}

}  // namespace modlog
