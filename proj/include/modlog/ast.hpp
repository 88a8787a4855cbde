#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace modlog {

using Symbol = std::uint32_t;

/// Append-only interning table. Interned ids give O(1) equality and cheap
/// hashing; constants and variables live in the same table but are kept
/// apart by Term::Kind.
class SymbolTable {
 public:
  Symbol intern(std::string_view text) {
    auto it = ids_.find(std::string(text));
    if (it != ids_.end()) return it->second;
    Symbol id = static_cast<Symbol>(names_.size());
    names_.emplace_back(text);
    ids_.emplace(names_.back(), id);
    return id;
  }

  const std::string& name(Symbol id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Symbol> ids_;
};

/// Process-wide symbol table. The engine is single-threaded by contract;
/// parsing and serialisation both go through this instance.
SymbolTable& symbols();

struct Term {
  enum class Kind : std::uint8_t { Constant, Variable };
  Kind kind;
  Symbol sym;

  static Term constant(Symbol s) { return {Kind::Constant, s}; }
  static Term variable(Symbol s) { return {Kind::Variable, s}; }
  bool is_variable() const { return kind == Kind::Variable; }
  bool is_constant() const { return kind == Kind::Constant; }

  friend bool operator==(const Term& a, const Term& b) {
    return a.kind == b.kind && a.sym == b.sym;
  }
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
};

struct Atom {
  Symbol predicate;
  std::vector<Term> args;

  friend bool operator==(const Atom& a, const Atom& b) {
    return a.predicate == b.predicate && a.args == b.args;
  }
  friend bool operator!=(const Atom& a, const Atom& b) { return !(a == b); }
};

/// A variable-free atom. Args are constant symbols only.
struct Fact {
  Symbol predicate;
  std::vector<Symbol> args;

  friend bool operator==(const Fact& a, const Fact& b) {
    return a.predicate == b.predicate && a.args == b.args;
  }
  friend bool operator!=(const Fact& a, const Fact& b) { return !(a == b); }
  friend bool operator<(const Fact& a, const Fact& b) {
    if (a.predicate != b.predicate) return a.predicate < b.predicate;
    return a.args < b.args;
  }
};

struct FactHash {
  std::size_t operator()(const Fact& f) const {
    std::size_t h = 0x9e3779b97f4a7c15ull ^ f.predicate;
    for (Symbol s : f.args) h = h * 1099511628211ull ^ (s + 0x7f4a7c15);
    return h;
  }
};

struct Rule {
  Atom head;
  std::vector<Atom> pos_body;
  std::vector<Atom> neg_body;

  friend bool operator==(const Rule& a, const Rule& b) {
    return a.head == b.head && a.pos_body == b.pos_body && a.neg_body == b.neg_body;
  }
};

struct Program {
  std::vector<Rule> rules;
};

/// Total variable-to-constant binding, kept in binding order so rule
/// instance enumeration is reproducible.
class Substitution {
 public:
  bool lookup(Symbol var, Symbol& out) const {
    for (const auto& [v, c] : bindings_)
      if (v == var) {
        out = c;
        return true;
      }
    return false;
  }

  void bind(Symbol var, Symbol constant) { bindings_.emplace_back(var, constant); }
  void truncate(std::size_t n) { bindings_.resize(n); }
  std::size_t size() const { return bindings_.size(); }
  const std::vector<std::pair<Symbol, Symbol>>& bindings() const { return bindings_; }

  /// Grounds an atom; every variable must be bound.
  Fact ground(const Atom& atom) const;

 private:
  std::vector<std::pair<Symbol, Symbol>> bindings_;
};

// ---- errors ----

struct ParseError : std::runtime_error {
  int line, column;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg), line(line_), column(col_) {}
};

struct UnsafeRuleError : std::runtime_error {
  Symbol variable;
  UnsafeRuleError(const std::string& msg, Symbol var)
      : std::runtime_error(msg), variable(var) {}
};

struct ArityClashError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotStratifiableError : std::runtime_error {
  /// Predicates on a dependency cycle that contains a negative edge.
  std::vector<Symbol> cycle;
  NotStratifiableError(const std::string& msg, std::vector<Symbol> cycle_)
      : std::runtime_error(msg), cycle(std::move(cycle_)) {}
};

struct NegativeCounterError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Throws UnsafeRuleError unless every variable of the head and the negative
/// body occurs in some positive body atom.
void check_safety(const Rule& rule);

std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Fact& f);
std::string to_string(const Rule& r);

}  // namespace modlog
