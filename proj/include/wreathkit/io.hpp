#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "wreathkit/machine.hpp"

// Textual surface: automaton files, element expressions, DOT export.
//
// Automaton file, one directive per line ('#' starts a comment):
//
//   alphabet 3
//   state c   perm ()    1->_ 2->s23 3->c
//   state s23 perm (2 3) *->_
//   let t = perm(2 3) c perm(2 3) c
//
// `_` is the identity; `*->X` sends every letter to X.

namespace wreathkit {

class SyntaxError : public Error {
public:
  SyntaxError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line(line) {}
  int line;
};

struct Binding {
  std::string name;
  std::string expr;

  friend bool operator==(const Binding&, const Binding&) = default;
};

struct AutomatonFile {
  int alphabet = 0;
  std::vector<NamedState> states;
  std::vector<Binding> bindings;

  NamedRecursion recursion() const { return {alphabet, states}; }

  friend bool operator==(const AutomatonFile&, const AutomatonFile&) = default;
};

AutomatonFile parse_automaton_file(std::string_view text);
AutomatonFile read_automaton_file(const std::string& path);

/// Canonical text; parse_automaton_file(print_automaton_file(f)) == f.
std::string print_automaton_file(const AutomatonFile& f);

/// Named elements available to expressions: every state of a file, every
/// binding, and the built-ins c, t, ctilde of G_3.
class Scope {
public:
  Scope() = default;
  explicit Scope(const AutomatonFile& file);

  int alphabet() const { return alphabet_; }
  bool has(const std::string& name) const;
  Element get(const std::string& name) const;
  void bind(const std::string& name, const Element& g) { bound_.insert_or_assign(name, g); }

private:
  int alphabet_ = 3;
  NamedRecursion spec_;
  std::map<std::string, Element> bound_;
};

/// Grammar: expr := term+ (left-to-right product); term := atom ('^' int)*;
/// atom := name | id | 1 | perm(cycles) | tv(word) | '(' expr ')'.
Element parse_expression(std::string_view text, const Scope& scope);

/// Graph of the canonical automaton; each node is labelled by its root
/// permutation and has edges 1..d to its sections, left to right.
std::string to_dot(const Element& g, const std::string& name = "g");

}  // namespace wreathkit
