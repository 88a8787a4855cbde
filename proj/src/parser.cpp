#include "modlog/parser.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace modlog {

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1, column = 1;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  void advance() {
    if (text[pos] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
    ++pos;
  }

  void skip_ws() {
    while (!done()) {
      char c = peek();
      if (c == '%') {
        while (!done() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at line " + std::to_string(line) + ", column " +
                         std::to_string(column),
                     line, column);
  }

  void expect(char c) {
    skip_ws();
    if (done() || peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  bool try_consume(char c) {
    skip_ws();
    if (!done() && peek() == c) {
      advance();
      return true;
    }
    return false;
  }

  bool try_keyword(std::string_view kw) {
    skip_ws();
    if (text.substr(pos, kw.size()) != kw) return false;
    std::size_t after = pos + kw.size();
    if (after < text.size()) {
      char c = text[after];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') return false;
    }
    for (std::size_t i = 0; i < kw.size(); ++i) advance();
    return true;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (!done()) {
      char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
        advance();
      else
        break;
    }
    if (pos == start) fail("expected identifier");
    return std::string(text.substr(start, pos - start));
  }

  Term term() {
    skip_ws();
    if (!done() && peek() == '?') {
      advance();
      return Term::variable(symbols().intern(ident()));
    }
    return Term::constant(symbols().intern(ident()));
  }

  Atom atom() {
    Symbol pred = symbols().intern(ident());
    Atom a{pred, {}};
    expect('(');
    a.args.push_back(term());
    while (try_consume(',')) a.args.push_back(term());
    expect(')');
    return a;
  }
};

void note_arity(std::unordered_map<Symbol, std::size_t>& arities, const Symbol pred,
                std::size_t arity) {
  auto [it, inserted] = arities.emplace(pred, arity);
  if (!inserted && it->second != arity)
    throw ArityClashError("predicate " + symbols().name(pred) + " used with arities " +
                          std::to_string(it->second) + " and " + std::to_string(arity));
}

}  // namespace

Program parse_program(std::string_view text) {
  Cursor cur{text};
  Program program;
  std::unordered_map<Symbol, std::size_t> arities;

  cur.skip_ws();
  while (!cur.done()) {
    Rule rule;
    // Body: possibly empty list of literals, then "->".
    cur.skip_ws();
    bool body_done = cur.try_keyword("->") || (cur.try_consume('-') && cur.try_consume('>'));
    while (!body_done) {
      if (cur.try_keyword("not"))
        rule.neg_body.push_back(cur.atom());
      else
        rule.pos_body.push_back(cur.atom());
      if (cur.try_consume(',')) continue;
      cur.skip_ws();
      if (cur.try_consume('-')) {
        cur.expect('>');
        body_done = true;
      } else {
        cur.fail("expected ',' or '->'");
      }
    }
    rule.head = cur.atom();
    cur.expect('.');

    note_arity(arities, rule.head.predicate, rule.head.args.size());
    for (const Atom& a : rule.pos_body) note_arity(arities, a.predicate, a.args.size());
    for (const Atom& a : rule.neg_body) note_arity(arities, a.predicate, a.args.size());
    check_safety(rule);

    // Set semantics: drop duplicate rules.
    if (std::find(program.rules.begin(), program.rules.end(), rule) ==
        program.rules.end())
      program.rules.push_back(std::move(rule));
    cur.skip_ws();
  }
  return program;
}

FactSet parse_facts(std::string_view text) {
  Cursor cur{text};
  FactSet facts;
  std::unordered_map<Symbol, std::size_t> arities;
  cur.skip_ws();
  while (!cur.done()) {
    Atom a = cur.atom();
    cur.expect('.');
    Fact f;
    f.predicate = a.predicate;
    for (const Term& t : a.args) {
      if (t.is_variable())
        cur.fail("variable ?" + symbols().name(t.sym) + " not allowed in a fact");
      f.args.push_back(t.sym);
    }
    note_arity(arities, f.predicate, f.args.size());
    facts.insert(f);
    cur.skip_ws();
  }
  return facts;
}

std::string serialise_dataset(const FactSet& dataset) {
  std::vector<std::string> lines;
  lines.reserve(dataset.size());
  dataset.for_each([&](const Fact& f) { lines.push_back(to_string(f)); });
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const std::string& l : lines) {
    out += l;
    out += ".\n";
  }
  return out;
}

std::string serialise_program(const Program& program) {
  std::string out;
  for (const Rule& r : program.rules) {
    out += to_string(r);
    out += "\n";
  }
  return out;
}

void check_fact_arities(const Program& program, const FactSet& facts) {
  std::unordered_map<Symbol, std::size_t> arities;
  for (const Rule& r : program.rules) {
    note_arity(arities, r.head.predicate, r.head.args.size());
    for (const Atom& a : r.pos_body) note_arity(arities, a.predicate, a.args.size());
    for (const Atom& a : r.neg_body) note_arity(arities, a.predicate, a.args.size());
  }
  facts.for_each([&](const Fact& f) { note_arity(arities, f.predicate, f.args.size()); });
}

}  // namespace modlog
