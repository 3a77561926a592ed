#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_set>
#include <vector>

#include "wreathkit/perm.hpp"

namespace wreathkit {

using StateId = std::uint32_t;

/// One state of a finite automaton over {1..d}: the root permutation and
/// the state reached after reading each letter (the first-level section).
struct MachineState {
  Perm root;
  std::vector<StateId> children;

  friend bool operator==(const MachineState&, const MachineState&) = default;
};

/// A finite-state automorphism of the rooted d-regular tree.
///
/// An Element is an automaton together with its initial state, which is
/// always state 0. Only reachable states are stored. Elements produced by
/// the group operations are canonical: bisimulation-minimal and numbered
/// breadth-first from the initial state with children visited in letter
/// order, so two canonical Elements are equal as automorphisms iff their
/// state tables are identical. Elements built from user recursions keep
/// whatever redundancy the recursion had until canonicalize() is called.
///
/// Values are immutable and cheap to copy.
class Element {
public:
  /// Identity over the one-letter alphabet; exists so Element is regular.
  Element();

  static Element identity(int alphabet);
  static Element rootwise(const Perm& sigma);

  /// Builds from an explicit state table, keeping the states reachable
  /// from `initial`. Validates arity and degrees. Result is not minimized.
  static Element from_states(int alphabet, std::vector<MachineState> states, StateId initial);

  /// Wreath assembly: the element (s_1, ..., s_d) root. Canonical.
  static Element from_sections(const std::vector<Element>& sections, const Perm& root);

  int alphabet() const { return data_->alphabet; }
  std::size_t state_count() const { return data_->states.size(); }
  const std::vector<MachineState>& states() const { return data_->states; }
  const MachineState& state(StateId s) const { return data_->states[s]; }
  const Perm& root() const { return data_->states[0].root; }
  bool is_canonical() const { return data_->canonical; }

  /// Hash of the canonical form; canonicalizes on demand.
  std::size_t hash() const;

  /// Total order on canonical forms (used by ordered containers).
  friend std::strong_ordering operator<=>(const Element& a, const Element& b);
  friend bool operator==(const Element& a, const Element& b);

private:
  struct Data {
    int alphabet = 1;
    std::vector<MachineState> states;
    bool canonical = false;
    std::size_t hash = 0;
  };
  explicit Element(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  static Element make(int alphabet, std::vector<MachineState> states, bool canonical);

  std::shared_ptr<const Data> data_;

  friend Element canonicalize(const Element& g);
  friend Element restrict(const Element& g, const Word& w);
  friend Element restrict_state(const Element& g, StateId s);
};

struct ElementHash {
  std::size_t operator()(const Element& g) const { return g.hash(); }
};

/// Image of the vertex w. Preserves length and prefixes.
Word act(const Element& g, const Word& w);

/// The section g|_w.
Element restrict(const Element& g, const Word& w);

/// The element rooted at state s of g's table.
Element restrict_state(const Element& g, StateId s);

/// Product g*h, where g acts first: (g*h)|_x = g|_x * h|_{g(x)}.
Element compose(const Element& g, const Element& h);
Element inverse(const Element& g);
Element power(const Element& g, long long k);

/// Left-to-right product of a sequence; identity over `alphabet` if empty.
Element product(const std::vector<Element>& factors, int alphabet);

bool is_identity(const Element& g);
bool equal(const Element& g, const Element& h);

/// Bisimulation minimization followed by breadth-first renumbering.
Element canonicalize(const Element& g);

/// All distinct sections S(g), in breadth-first order of g's canonical table.
std::vector<Element> states_of(const Element& g);

inline Element operator*(const Element& g, const Element& h) { return compose(g, h); }

/// Level-1 decomposition (sections and root permutation).
struct WreathDecomp {
  std::vector<Element> sections;
  Perm root;
};
WreathDecomp psi(const Element& g);
Element assemble(const WreathDecomp& w);

/// A state recursion written with names, as in "c = (1, s23, c)".
/// Child names refer to other states of the same recursion, or to the
/// reserved name "_" for the identity.
struct NamedState {
  std::string name;
  Perm root;
  std::vector<std::string> children;

  friend bool operator==(const NamedState&, const NamedState&) = default;
};

struct NamedRecursion {
  int alphabet = 2;
  std::vector<NamedState> states;
};

inline constexpr const char* kIdentityName = "_";

/// Realizes the named state `initial` of the recursion. Not minimized.
Element build_element(const NamedRecursion& spec, const std::string& initial);

/// Inverse of build_element: states of the canonical form named prefix0,
/// prefix1, ... (prefix0 is initial); the trivial state is written "_".
NamedRecursion to_recursion(const Element& g, const std::string& prefix = "s");

/// Linearizable insert-if-absent table of canonical elements. The only
/// shared mutable structure in the library; safe for concurrent callers.
class Interner {
public:
  /// Returns the stored representative and whether it was newly inserted.
  std::pair<Element, bool> intern(const Element& g);
  bool contains(const Element& g) const;
  std::size_t size() const;

private:
  mutable std::mutex mu_;
  std::unordered_set<Element, ElementHash> table_;
};

}  // namespace wreathkit
