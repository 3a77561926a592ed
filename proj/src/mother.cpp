#include <array>
#include "wreathkit/mother.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <unordered_map>

namespace wreathkit {

Element b_gen(int d, const std::vector<Perm>& parts, const Perm& sigma) {
  if (d < 2) throw Error("B-type generators need d >= 2");
  if (parts.size() != static_cast<std::size_t>(d - 1))
    throw Error("b_gen: expected " + std::to_string(d - 1) + " section permutations, got " +
                std::to_string(parts.size()));
  if (sigma.degree() != d - 1)
    throw Error("b_gen: sigma must have degree " + std::to_string(d - 1));
  for (const auto& p : parts)
    if (p.degree() != d) throw Error("b_gen: section permutations must have degree " + std::to_string(d));

  // state 0: b, states 1..d-1: rootwise parts, state d: identity
  const auto id = static_cast<StateId>(d);
  std::vector<MachineState> st;
  MachineState b{sigma.extend(d), {}};
  for (int i = 1; i < d; ++i) b.children.push_back(static_cast<StateId>(i));
  b.children.push_back(0);
  st.push_back(std::move(b));
  for (const auto& p : parts) st.push_back({p, std::vector<StateId>(static_cast<std::size_t>(d), id)});
  st.push_back({Perm::identity(d), std::vector<StateId>(static_cast<std::size_t>(d), id)});
  return canonicalize(Element::from_states(d, std::move(st), 0));
}

std::vector<Element> mother_gens(int d) {
  if (d < 2) throw Error("mother groups are defined for d >= 2");
  std::vector<Element> out;
  std::set<Element> seen;
  auto push = [&](Element e) {
    if (seen.insert(e).second) out.push_back(std::move(e));
  };
  const auto sd = Perm::all(d);
  for (const auto& p : sd) push(Element::rootwise(p));

  const auto sd1 = Perm::all(d - 1);
  std::vector<std::size_t> idx(static_cast<std::size_t>(d - 1), 0);
  while (true) {
    std::vector<Perm> parts;
    for (auto i : idx) parts.push_back(sd[i]);
    for (const auto& sigma : sd1) push(b_gen(d, parts, sigma));
    // odometer over S_d^{d-1}, last coordinate fastest
    std::size_t k = idx.size();
    while (true) {
      --k;
      if (++idx[k] < sd.size()) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
  }
}

Element embed_up(const Element& g) {
  const int d = g.alphabet();
  const auto id = static_cast<StateId>(g.state_count());
  std::vector<MachineState> st;
  st.reserve(g.state_count() + 1);
  for (const auto& s : g.states()) {
    MachineState t{s.root.shift_up(), {id}};
    for (StateId c : s.children) t.children.push_back(c);
    st.push_back(std::move(t));
  }
  st.push_back({Perm::identity(d + 1), std::vector<StateId>(static_cast<std::size_t>(d + 1), id)});
  return canonicalize(Element::from_states(d + 1, std::move(st), 0));
}

const SpecialElements& special_elems() {
  static const SpecialElements elems = [] {
    const Element c = b_gen(3, {Perm::identity(3), Perm::parse("(2 3)", 3)}, Perm::identity(2));
    const Element s23 = Element::rootwise(Perm::parse("(2 3)", 3));
    const Element s12 = Element::rootwise(Perm::parse("(1 2)", 3));
    return SpecialElements{c, product({s23, c, s23, c}, 3), product({s12, c, s12}, 3)};
  }();
  return elems;
}

const G2Gens& g2_gens() {
  static const G2Gens gens{Element::rootwise(Perm::parse("(1 2)", 2)),
                           b_gen(2, {Perm::parse("(1 2)", 2)}, Perm::identity(1))};
  return gens;
}

Element elem_tv(const Word& v) {
  Element e = special_elems().t;
  const Element one = Element::identity(3);
  for (auto it = v.rbegin(); it != v.rend(); ++it) {
    if (*it < 1 || *it > 3) throw Error("t_v is defined for words over {1,2,3}");
    std::vector<Element> sections(3, one);
    sections[static_cast<std::size_t>(*it - 1)] = e;
    e = Element::from_sections(sections, Perm::identity(3));
  }
  return e;
}

std::vector<Perm> alternating3() {
  return {Perm::identity(3), Perm::parse("(1 2 3)", 3), Perm::parse("(1 3 2)", 3)};
}

namespace {

bool is_involution(const Perm& p) { return (p * p).is_identity(); }

bool in_a3(const Perm& p) {
  const auto a3 = alternating3();
  return std::find(a3.begin(), a3.end(), p) != a3.end();
}

Eq7Solution complete(const Perm& s1, const Perm& s1p, const Perm& s2p, const Perm& a) {
  Eq7Solution s{s1, s1p, s2p, a, Perm::identity(3), a, Perm::identity(3), Perm::identity(3), Perm::identity(3)};
  // s1''' from s1 s1' s1'' s1''' = 1, then s2 from the second coordinate
  // equation, then s2''' from s2 s2' s2'' s2''' = 1.
  s.s1ppp = s.s1pp.inverse() * s1p.inverse() * s1.inverse();
  s.s2 = (s1p * s.s2pp * s.s1ppp).inverse();
  s.s2ppp = s.s2pp.inverse() * s2p.inverse() * s.s2.inverse();
  return s;
}

}  // namespace

Eq7Result solve_eq7(const Perm& omega) {
  if (omega.degree() != 3 || !in_a3(omega)) throw Error("omega must be an element of A_3");
  const auto s3 = Perm::all(3);
  Eq7Result result;
  using Key = std::tuple<bool, bool, bool, bool>;
  std::optional<Key> best;
  for (const auto& s1 : s3)
    for (const auto& a : s3)
      for (const auto& s2p : s3)
        for (const auto& s1p : s3) {
          const Perm lhs = (s2p * a * s2p.inverse()) * (s1p * a.inverse() * s1p.inverse());
          if (lhs != s1.inverse() * omega * s1) continue;
          Eq7Solution sol = complete(s1, s1p, s2p, a);
          const Key key{!s1.is_identity(), s2p != a, !is_involution(a), !is_involution(s1p)};
          if (!best || key < *best) {
            best = key;
            result.chosen = sol;
          }
          result.all.push_back(std::move(sol));
        }
  if (!best) throw Error("equation has no solution for omega = " + omega.to_string());

  // The completed tuple must satisfy the four coordinate equations.
  const auto& s = result.chosen;
  const Perm id = Perm::identity(3);
  if (s.s1 * s.s2p * s.s1pp * s.s2ppp != omega || s.s2 * s.s1p * s.s2pp * s.s1ppp != id ||
      s.s1 * s.s1p * s.s1pp * s.s1ppp != id || s.s2 * s.s2p * s.s2pp * s.s2ppp != id)
    throw Error("completed tuple fails the coordinate equations");
  return result;
}

Element assemble_eq7_product(const Eq7Solution& s) {
  const Perm one2 = Perm::identity(2);
  const Element swap = Element::rootwise(Perm::parse("(1 2)", 3));
  return product({b_gen(3, {s.s1, s.s2}, one2), swap, b_gen(3, {s.s1p, s.s2p}, one2), swap,
                  b_gen(3, {s.s1pp, s.s2pp}, one2), swap, b_gen(3, {s.s1ppp, s.s2ppp}, one2), swap},
                 3);
}

bool in_stab1(const Element& g) { return g.root().is_identity(); }

Element psi_preimage_A3(const Perm& omega) {
  const Eq7Result r = solve_eq7(omega);
  const Element g = assemble_eq7_product(r.chosen);
  const WreathDecomp w = psi(g);
  const Element one = Element::identity(3);
  if (!in_stab1(g) || w.sections[0] != Element::rootwise(omega) || w.sections[1] != one || w.sections[2] != one)
    throw Error("preimage verification failed for omega = " + omega.to_string());
  return g;
}

std::optional<PreimageWitness> stab1_preimage(const Element& target, int coord, int radius,
                                              std::size_t node_budget) {
  if (target.alphabet() != 3) throw Error("stab1_preimage works in G_3");
  if (coord < 1 || coord > 3) throw Error("coordinate must be 1..3");
  if (radius < 1) throw Error("radius must be at least 1");
  static const auto kGens = mother_gens(3);
  // sections of each generator at each letter, computed once
  static const auto kSections = [] {
    std::vector<std::array<Element, 3>> out;
    for (const auto& u : kGens) out.push_back({restrict(u, {1}), restrict(u, {2}), restrict(u, {3})});
    return out;
  }();

  struct Node {
    Perm root;
    Element section;
    std::size_t parent;
    std::size_t gen;
  };
  struct KeyHash {
    std::size_t operator()(const std::pair<Perm, Element>& k) const {
      return k.first.hash() * 31 + k.second.hash();
    }
  };
  std::vector<Node> nodes{{Perm::identity(3), Element::identity(3), 0, 0}};
  std::unordered_map<std::pair<Perm, Element>, std::size_t, KeyHash> seen;
  seen.emplace(std::make_pair(nodes[0].root, nodes[0].section), 0);

  auto witness = [&](std::size_t i) {
    std::vector<std::size_t> word;
    for (; i != 0; i = nodes[i].parent) word.push_back(nodes[i].gen);
    std::reverse(word.begin(), word.end());
    std::vector<Element> factors;
    for (auto k : word) factors.push_back(kGens[k]);
    return PreimageWitness{product(factors, 3), word};
  };
  auto is_goal = [&](const Node& n) { return n.root.is_identity() && n.section == target; };

  if (is_goal(nodes[0])) return PreimageWitness{Element::identity(3), {}};
  std::size_t layer_begin = 0;
  for (int len = 1; len <= radius; ++len) {
    const std::size_t layer_end = nodes.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (std::size_t k = 0; k < kGens.size(); ++k) {
        const Element& u = kGens[k];
        const Letter at = nodes[i].root(coord);
        Node next{nodes[i].root * u.root(), nodes[i].section * kSections[k][static_cast<std::size_t>(at - 1)], i, k};
        auto [it, fresh] = seen.try_emplace(std::make_pair(next.root, next.section), nodes.size());
        if (!fresh) continue;
        nodes.push_back(std::move(next));
        if (is_goal(nodes.back())) {
          PreimageWitness w = witness(nodes.size() - 1);
          if (!in_stab1(w.element) || restrict(w.element, Word{coord}) != target)
            throw Error("preimage witness failed verification");
          return w;
        }
        if (nodes.size() > node_budget) throw Error("stab1_preimage: node budget exceeded");
      }
    }
    layer_begin = layer_end;
  }
  return std::nullopt;
}

}  // namespace wreathkit
