#include "modlog/stratify.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace modlog {

namespace {

// Dependency edge head <- body predicate; negative edges must cross strata.
struct Edge {
  Symbol from, to;  // from = body predicate, to = head predicate
  bool negative;
};

struct DepGraph {
  std::vector<Symbol> nodes;                   // first-occurrence order
  std::unordered_map<Symbol, std::size_t> id;  // node -> index in `nodes`
  std::vector<std::vector<std::pair<std::size_t, bool>>> succ;  // (target, negative)

  std::size_t node(Symbol pred) {
    auto it = id.find(pred);
    if (it != id.end()) return it->second;
    std::size_t n = nodes.size();
    nodes.push_back(pred);
    id.emplace(pred, n);
    succ.emplace_back();
    return n;
  }

  void edge(Symbol from, Symbol to, bool negative) {
    std::size_t a = node(from), b = node(to);
    succ[a].emplace_back(b, negative);
  }
};

// Iterative Tarjan; components come out in reverse topological order.
struct Tarjan {
  const DepGraph& g;
  std::vector<int> index, lowlink, comp;
  std::vector<bool> on_stack;
  std::vector<std::size_t> stack;
  int next_index = 0, next_comp = 0;

  explicit Tarjan(const DepGraph& graph)
      : g(graph),
        index(graph.nodes.size(), -1),
        lowlink(graph.nodes.size(), 0),
        comp(graph.nodes.size(), -1),
        on_stack(graph.nodes.size(), false) {}

  void run() {
    for (std::size_t v = 0; v < g.nodes.size(); ++v)
      if (index[v] < 0) strongconnect(v);
  }

  void strongconnect(std::size_t root) {
    struct Frame {
      std::size_t v;
      std::size_t next_edge = 0;
    };
    std::vector<Frame> frames{{root}};
    while (!frames.empty()) {
      Frame& f = frames.back();
      std::size_t v = f.v;
      if (f.next_edge == 0) {
        index[v] = lowlink[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      bool descended = false;
      while (f.next_edge < g.succ[v].size()) {
        std::size_t w = g.succ[v][f.next_edge++].first;
        if (index[w] < 0) {
          frames.push_back({w});
          descended = true;
          break;
        }
        if (on_stack[w]) lowlink[v] = std::min(lowlink[v], index[w]);
      }
      if (descended) continue;
      if (lowlink[v] == index[v]) {
        while (true) {
          std::size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = next_comp;
          if (w == v) break;
        }
        ++next_comp;
      }
      frames.pop_back();
      if (!frames.empty()) {
        std::size_t parent = frames.back().v;
        lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
      }
    }
  }
};

// Shape matcher shared by is_transitivity_rule and is_symmetry_rule: checks
// that the rule's variables can be renamed onto a template.
bool matches_template(const Rule& rule, const Atom& thead,
                      const std::vector<Atom>& tbody) {
  if (!rule.neg_body.empty()) return false;
  if (rule.pos_body.size() != tbody.size()) return false;

  // Try each permutation of the body against the template body.
  std::vector<std::size_t> perm(tbody.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  do {
    std::unordered_map<Symbol, Symbol> fwd, bwd;  // rule var <-> template var
    auto align = [&](const Atom& a, const Atom& t) {
      if (a.predicate != t.predicate || a.args.size() != t.args.size()) return false;
      for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (!a.args[i].is_variable() || !t.args[i].is_variable()) return false;
        Symbol av = a.args[i].sym, tv = t.args[i].sym;
        auto [fit, fnew] = fwd.emplace(av, tv);
        if (!fnew && fit->second != tv) return false;
        auto [bit, bnew] = bwd.emplace(tv, av);
        if (!bnew && bit->second != av) return false;
      }
      return true;
    };
    bool ok = align(rule.head, thead);
    for (std::size_t i = 0; ok && i < tbody.size(); ++i)
      ok = align(rule.pos_body[i], tbody[perm[i]]);
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

bool is_transitivity_rule(const Rule& rule, Symbol* pred_out) {
  if (rule.pos_body.size() != 2 || !rule.neg_body.empty()) return false;
  Symbol r = rule.head.predicate;
  if (rule.head.args.size() != 2) return false;
  if (rule.pos_body[0].predicate != r || rule.pos_body[1].predicate != r) return false;

  Symbol x = symbols().intern("#tx"), y = symbols().intern("#ty"),
         z = symbols().intern("#tz");
  Atom head{r, {Term::variable(x), Term::variable(z)}};
  std::vector<Atom> body{{r, {Term::variable(x), Term::variable(y)}},
                         {r, {Term::variable(y), Term::variable(z)}}};
  if (!matches_template(rule, head, body)) return false;

  // x, y, z must be pairwise distinct in the rule, which the bijective
  // renaming in matches_template already enforces.
  if (pred_out) *pred_out = r;
  return true;
}

bool is_symmetry_rule(const Rule& rule, Symbol* pred_out) {
  if (rule.pos_body.size() != 1 || !rule.neg_body.empty()) return false;
  Symbol r = rule.head.predicate;
  if (rule.head.args.size() != 2) return false;
  if (rule.pos_body[0].predicate != r) return false;

  Symbol x = symbols().intern("#tx"), y = symbols().intern("#ty");
  Atom head{r, {Term::variable(y), Term::variable(x)}};
  std::vector<Atom> body{{r, {Term::variable(x), Term::variable(y)}}};
  if (!matches_template(rule, head, body)) return false;
  if (pred_out) *pred_out = r;
  return true;
}

Stratification stratify(const Program& program, ModuleDetection detection) {
  DepGraph g;
  for (const Rule& r : program.rules) {
    g.node(r.head.predicate);
    for (const Atom& a : r.pos_body) g.edge(a.predicate, r.head.predicate, false);
    for (const Atom& a : r.neg_body) g.edge(a.predicate, r.head.predicate, true);
  }

  Tarjan tarjan(g);
  tarjan.run();
  const int ncomp = tarjan.next_comp;

  // Negative edge inside one component means the program is not stratifiable.
  for (std::size_t v = 0; v < g.nodes.size(); ++v)
    for (auto [w, negative] : g.succ[v])
      if (negative && tarjan.comp[v] == tarjan.comp[w]) {
        std::vector<Symbol> cycle;
        for (std::size_t u = 0; u < g.nodes.size(); ++u)
          if (tarjan.comp[u] == tarjan.comp[v]) cycle.push_back(g.nodes[u]);
        std::string msg = "not stratifiable: negation cycle through";
        for (Symbol p : cycle) msg += " " + symbols().name(p);
        throw NotStratifiableError(msg, std::move(cycle));
      }

  // Longest-path layering over the condensation. Tarjan numbers components
  // in reverse topological order, so a descending scan is a topological one.
  std::vector<int> layer(ncomp, 1);
  for (int c = ncomp - 1; c >= 0; --c)
    for (std::size_t v = 0; v < g.nodes.size(); ++v) {
      if (tarjan.comp[v] != c) continue;
      for (auto [w, negative] : g.succ[v]) {
        int wc = tarjan.comp[w];
        if (wc == c) continue;
        layer[wc] = std::max(layer[wc], layer[c] + (negative ? 1 : 0));
      }
    }

  Stratification out;
  for (std::size_t v = 0; v < g.nodes.size(); ++v)
    out.lambda[g.nodes[v]] = layer[tarjan.comp[v]];
  for (int c = 0; c < ncomp; ++c) out.max_stratum = std::max(out.max_stratum, layer[c]);
  out.strata.resize(out.max_stratum);

  // A rule is recursive in its stratum when some positive body predicate
  // shares the head's stratum.
  for (std::size_t i = 0; i < program.rules.size(); ++i) {
    const Rule& r = program.rules[i];
    int s = out.stratum_of(r.head.predicate);
    bool recursive = false;
    for (const Atom& a : r.pos_body)
      if (out.stratum_of(a.predicate) == s) recursive = true;
    StratumInfo& info = out.strata[s - 1];
    (recursive ? info.recursive : info.nonrecursive).push_back(i);
  }

  // Partition each stratum's recursive rules into modules. A predicate with
  // both its transitivity rule and its symmetry rule gets an Stc module; one
  // with only the transitivity rule gets a Tc module; everything else lands
  // in a single Generic module.
  for (StratumInfo& info : out.strata) {
    std::map<Symbol, std::size_t> trans, sym;  // pred -> rule index
    for (std::size_t i : info.recursive) {
      Symbol p;
      if (detection == ModuleDetection::Auto && is_transitivity_rule(program.rules[i], &p) &&
          !trans.count(p))
        trans.emplace(p, i);
      else if (detection == ModuleDetection::Auto &&
               is_symmetry_rule(program.rules[i], &p) && !sym.count(p))
        sym.emplace(p, i);
    }

    std::unordered_set<std::size_t> claimed;
    for (auto [p, ti] : trans) {
      auto si = sym.find(p);
      ModuleSpec spec;
      spec.predicate = p;
      spec.rules.push_back(ti);
      claimed.insert(ti);
      if (si != sym.end()) {
        spec.kind = ModuleKind::Stc;
        spec.rules.push_back(si->second);
        claimed.insert(si->second);
      } else {
        spec.kind = ModuleKind::Tc;
      }
      info.modules.push_back(std::move(spec));
    }

    ModuleSpec generic{ModuleKind::Generic, 0, {}};
    for (std::size_t i : info.recursive)
      if (!claimed.count(i)) generic.rules.push_back(i);
    if (!generic.rules.empty()) info.modules.push_back(std::move(generic));
  }

  return out;
}

}  // namespace modlog
