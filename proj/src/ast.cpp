#include "modlog/ast.hpp"

#include <unordered_set>

namespace modlog {

SymbolTable& symbols() {
  static SymbolTable table;
  return table;
}

Fact Substitution::ground(const Atom& atom) const {
  Fact f;
  f.predicate = atom.predicate;
  f.args.reserve(atom.args.size());
  for (const Term& t : atom.args) {
    if (t.is_constant()) {
      f.args.push_back(t.sym);
    } else {
      Symbol c;
      if (!lookup(t.sym, c))
        throw std::logic_error("unbound variable ?" + symbols().name(t.sym) +
                               " while grounding " + to_string(atom));
      f.args.push_back(c);
    }
  }
  return f;
}

void check_safety(const Rule& rule) {
  std::unordered_set<Symbol> positive_vars;
  for (const Atom& a : rule.pos_body)
    for (const Term& t : a.args)
      if (t.is_variable()) positive_vars.insert(t.sym);

  auto require = [&](const Atom& a) {
    for (const Term& t : a.args)
      if (t.is_variable() && !positive_vars.count(t.sym))
        throw UnsafeRuleError("unsafe rule: variable ?" + symbols().name(t.sym) +
                                  " does not occur in a positive body atom",
                              t.sym);
  };
  require(rule.head);
  for (const Atom& a : rule.neg_body) require(a);
}

std::string to_string(const Term& t) {
  return t.is_variable() ? "?" + symbols().name(t.sym) : symbols().name(t.sym);
}

std::string to_string(const Atom& a) {
  std::string out = symbols().name(a.predicate) + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ",";
    out += to_string(a.args[i]);
  }
  return out + ")";
}

std::string to_string(const Fact& f) {
  std::string out = symbols().name(f.predicate) + "(";
  for (std::size_t i = 0; i < f.args.size(); ++i) {
    if (i) out += ",";
    out += symbols().name(f.args[i]);
  }
  return out + ")";
}

std::string to_string(const Rule& r) {
  std::string out;
  bool first = true;
  for (const Atom& a : r.pos_body) {
    if (!first) out += ", ";
    out += to_string(a);
    first = false;
  }
  for (const Atom& a : r.neg_body) {
    if (!first) out += ", ";
    out += "not " + to_string(a);
    first = false;
  }
  out += " -> " + to_string(r.head) + ".";
  return out;
}

}  // namespace modlog
