#pragma once

// Shared fixtures and independent oracles for the unit tests.

#include <functional>
#include <random>
#include <vector>

#include "wreathkit/machine.hpp"
#include "wreathkit/mother.hpp"

namespace fixtures {

using namespace wreathkit;

inline Perm P(const char* s, int d = 3) { return Perm::parse(s, d); }
inline Element R(const char* s, int d = 3) { return Element::rootwise(P(s, d)); }

inline NamedRecursion grigorchuk_spec() {
  const Perm id = Perm::identity(2), s = Perm::parse("(1 2)", 2);
  return {2,
          {{"a", s, {"_", "_"}}, {"b", id, {"a", "c"}}, {"c", id, {"a", "d"}}, {"d", id, {"_", "b"}}}};
}

inline Element grig(const char* name) { return build_element(grigorchuk_spec(), name); }

/// All words of length exactly n over {1..d}.
inline std::vector<Word> words_of_length(int d, int n) {
  std::vector<Word> out{{}};
  for (int i = 0; i < n; ++i) {
    std::vector<Word> next;
    for (const auto& w : out)
      for (int x = 1; x <= d; ++x) {
        Word v = w;
        v.push_back(x);
        next.push_back(std::move(v));
      }
    out.swap(next);
  }
  return out;
}

inline std::vector<Word> words_up_to(int d, int n) {
  std::vector<Word> out;
  for (int k = 0; k <= n; ++k)
    for (auto& w : words_of_length(d, k)) out.push_back(std::move(w));
  return out;
}

/// Reference action written directly from recursions, independent of the
/// state-table machinery. An automorphism is a function on words.
using RefAut = std::function<Word(const Word&)>;

inline Word tail(const Word& w) { return Word(w.begin() + 1, w.end()); }
inline Word cons(int x, const Word& w) {
  Word out{x};
  out.insert(out.end(), w.begin(), w.end());
  return out;
}

inline RefAut ref_rootwise(Perm p) {
  return [p](const Word& w) {
    if (w.empty()) return w;
    return cons(p(w[0]), tail(w));
  };
}

/// c = (1, (23), c)
inline Word ref_c(const Word& w) {
  if (w.empty()) return w;
  if (w[0] == 1) return w;
  if (w[0] == 2) return cons(2, ref_rootwise(Perm::parse("(2 3)", 3))(tail(w)));
  return cons(3, ref_c(tail(w)));
}

inline RefAut ref_then(RefAut f, RefAut g) {
  return [f, g](const Word& w) { return g(f(w)); };
}

/// Level-by-level vertex enumeration of activity. Vertices whose section is
/// trivial are dropped, since all their descendants are trivial too; for
/// bounded elements the frontier therefore stays small. Entry n is the
/// number of level-n vertices with nontrivial section.
inline std::vector<std::uint64_t> enumerated_activity(const Element& g, int levels) {
  std::vector<std::uint64_t> out;
  std::vector<Word> frontier;
  if (!is_identity(g)) frontier.push_back({});
  for (int n = 0; n <= levels; ++n) {
    out.push_back(frontier.size());
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (int x = 1; x <= g.alphabet(); ++x) {
        Word wx = w;
        wx.push_back(x);
        if (!is_identity(restrict(g, wx))) next.push_back(std::move(wx));
      }
    if (next.size() > 100000) throw std::runtime_error("enumerated_activity: frontier too large");
    frontier.swap(next);
  }
  return out;
}

/// Random product of k mother generators of G_d.
inline Element random_product(std::mt19937& rng, const std::vector<Element>& gens, int k) {
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  Element e = Element::identity(gens.front().alphabet());
  for (int i = 0; i < k; ++i) e = e * gens[pick(rng)];
  return e;
}

}  // namespace fixtures
