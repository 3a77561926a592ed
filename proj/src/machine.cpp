#include "wreathkit/machine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

namespace wreathkit {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

std::size_t hash_states(int alphabet, const std::vector<MachineState>& states) {
  std::size_t h = static_cast<std::size_t>(alphabet) * 0x9e3779b97f4a7c15ull;
  for (const auto& s : states) {
    h = (h ^ s.root.hash()) * 1099511628211ull;
    for (auto c : s.children) h = (h ^ (c + 0x51ull)) * 1099511628211ull;
  }
  return h;
}

// Keeps the states reachable from `initial`, renumbered breadth-first.
std::vector<MachineState> bfs_renumber(const std::vector<MachineState>& states, StateId initial) {
  constexpr StateId kUnseen = ~StateId{0};
  std::vector<StateId> index(states.size(), kUnseen);
  std::vector<StateId> order;
  order.reserve(states.size());
  index[initial] = 0;
  order.push_back(initial);
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (StateId c : states[order[head]].children) {
      if (index[c] == kUnseen) {
        index[c] = static_cast<StateId>(order.size());
        order.push_back(c);
      }
    }
  }
  std::vector<MachineState> out;
  out.reserve(order.size());
  for (StateId old : order) {
    MachineState s{states[old].root, {}};
    s.children.reserve(states[old].children.size());
    for (StateId c : states[old].children) s.children.push_back(index[c]);
    out.push_back(std::move(s));
  }
  return out;
}

std::mutex& identity_mutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

Element::Element() : Element(identity(1)) {}

Element Element::make(int alphabet, std::vector<MachineState> states, bool canonical) {
  auto d = std::make_shared<Data>();
  d->alphabet = alphabet;
  d->states = std::move(states);
  d->canonical = canonical;
  if (canonical) d->hash = hash_states(alphabet, d->states);
  return Element(std::shared_ptr<const Data>(std::move(d)));
}

Element Element::identity(int alphabet) {
  if (alphabet < 1) throw Error("alphabet size must be positive");
  std::lock_guard lock(identity_mutex());
  static std::map<int, Element>* cache = new std::map<int, Element>();
  auto it = cache->find(alphabet);
  if (it != cache->end()) return it->second;
  std::vector<MachineState> st{{Perm::identity(alphabet), std::vector<StateId>(static_cast<std::size_t>(alphabet), 0)}};
  Element e = make(alphabet, std::move(st), true);
  cache->emplace(alphabet, e);
  return e;
}

Element Element::rootwise(const Perm& sigma) {
  if (sigma.is_identity()) return identity(sigma.degree());
  const int d = sigma.degree();
  std::vector<MachineState> st{
      {sigma, std::vector<StateId>(static_cast<std::size_t>(d), 1)},
      {Perm::identity(d), std::vector<StateId>(static_cast<std::size_t>(d), 1)}};
  return make(d, std::move(st), true);
}

Element Element::from_states(int alphabet, std::vector<MachineState> states, StateId initial) {
  if (alphabet < 1) throw Error("alphabet size must be positive");
  if (states.empty()) throw Error("automaton has no states");
  if (initial >= states.size()) throw Error("initial state out of range");
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& s = states[i];
    if (s.root.degree() != alphabet)
      throw Error("state " + std::to_string(i) + ": root degree " + std::to_string(s.root.degree()) +
                  " differs from alphabet " + std::to_string(alphabet));
    if (s.children.size() != static_cast<std::size_t>(alphabet))
      throw Error("state " + std::to_string(i) + ": expected " + std::to_string(alphabet) + " children, got " +
                  std::to_string(s.children.size()));
    for (StateId c : s.children)
      if (c >= states.size()) throw Error("state " + std::to_string(i) + ": dangling child reference");
  }
  return make(alphabet, bfs_renumber(states, initial), false);
}

Element Element::from_sections(const std::vector<Element>& sections, const Perm& root) {
  const int d = root.degree();
  if (sections.size() != static_cast<std::size_t>(d))
    throw Error("wreath assembly needs " + std::to_string(d) + " sections, got " + std::to_string(sections.size()));
  std::vector<MachineState> st(1);
  st[0].root = root;
  for (const auto& sec : sections) {
    if (sec.alphabet() != d) throw Error("section alphabet differs from root degree");
    const auto offset = static_cast<StateId>(st.size());
    st[0].children.push_back(offset);
    for (const auto& s : sec.states()) {
      MachineState copy{s.root, {}};
      for (StateId c : s.children) copy.children.push_back(c + offset);
      st.push_back(std::move(copy));
    }
  }
  return canonicalize(from_states(d, std::move(st), 0));
}

std::size_t Element::hash() const {
  if (data_->canonical) return data_->hash;
  return canonicalize(*this).data_->hash;
}

std::strong_ordering operator<=>(const Element& a, const Element& b) {
  const Element ca = canonicalize(a);
  const Element cb = canonicalize(b);
  if (ca.data_ == cb.data_) return std::strong_ordering::equal;
  if (auto c = ca.alphabet() <=> cb.alphabet(); c != 0) return c;
  if (auto c = ca.state_count() <=> cb.state_count(); c != 0) return c;
  for (std::size_t i = 0; i < ca.state_count(); ++i) {
    const auto& sa = ca.states()[i];
    const auto& sb = cb.states()[i];
    if (auto c = sa.root <=> sb.root; c != 0) return c;
    if (auto c = sa.children <=> sb.children; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

bool operator==(const Element& a, const Element& b) {
  if (a.data_ == b.data_) return true;
  if (a.alphabet() != b.alphabet()) return false;
  const Element ca = canonicalize(a);
  const Element cb = canonicalize(b);
  if (ca.data_->hash != cb.data_->hash) return false;
  return ca.data_->states == cb.data_->states;
}

Word act(const Element& g, const Word& w) {
  Word out;
  out.reserve(w.size());
  StateId s = 0;
  for (Letter x : w) {
    const auto& st = g.state(s);
    out.push_back(st.root(x));
    s = st.children[static_cast<std::size_t>(x - 1)];
  }
  return out;
}

Element restrict_state(const Element& g, StateId s) {
  if (s >= g.state_count()) throw Error("state index out of range");
  if (s == 0) return g;
  // A reachable subset of a minimal machine is still minimal.
  return Element::make(g.alphabet(), bfs_renumber(g.states(), s), g.is_canonical());
}

Element restrict(const Element& g, const Word& w) {
  StateId s = 0;
  for (Letter x : w) {
    if (x < 1 || x > g.alphabet()) throw Error("letter " + std::to_string(x) + " out of alphabet");
    s = g.state(s).children[static_cast<std::size_t>(x - 1)];
  }
  return restrict_state(g, s);
}

Element compose(const Element& g, const Element& h) {
  if (g.alphabet() != h.alphabet())
    throw Error("alphabet mismatch: " + std::to_string(g.alphabet()) + " vs " + std::to_string(h.alphabet()));
  const auto d = static_cast<std::size_t>(g.alphabet());
  std::unordered_map<std::uint64_t, StateId> index;
  std::vector<std::pair<StateId, StateId>> pairs;
  std::vector<MachineState> out;
  auto key = [](StateId a, StateId b) { return (static_cast<std::uint64_t>(a) << 32) | b; };
  auto lookup = [&](StateId a, StateId b) {
    auto [it, fresh] = index.try_emplace(key(a, b), static_cast<StateId>(pairs.size()));
    if (fresh) pairs.emplace_back(a, b);
    return it->second;
  };
  lookup(0, 0);
  for (std::size_t head = 0; head < pairs.size(); ++head) {
    const auto [a, b] = pairs[head];
    const auto& sa = g.state(a);
    const auto& sb = h.state(b);
    MachineState s{sa.root * sb.root, std::vector<StateId>(d)};
    for (std::size_t x = 0; x < d; ++x)
      s.children[x] = lookup(sa.children[x], sb.children[static_cast<std::size_t>(sa.root.image0(static_cast<int>(x)))]);
    out.push_back(std::move(s));
  }
  return canonicalize(Element::from_states(g.alphabet(), std::move(out), 0));
}

Element inverse(const Element& g) {
  const auto d = static_cast<std::size_t>(g.alphabet());
  std::vector<MachineState> out;
  out.reserve(g.state_count());
  for (const auto& s : g.states()) {
    MachineState t{s.root.inverse(), std::vector<StateId>(d)};
    for (std::size_t x = 0; x < d; ++x)
      t.children[x] = s.children[static_cast<std::size_t>(t.root.image0(static_cast<int>(x)))];
    out.push_back(std::move(t));
  }
  return canonicalize(Element::from_states(g.alphabet(), std::move(out), 0));
}

Element power(const Element& g, long long k) {
  Element base = k < 0 ? inverse(g) : g;
  unsigned long long n = k < 0 ? static_cast<unsigned long long>(-(k + 1)) + 1 : static_cast<unsigned long long>(k);
  Element acc = Element::identity(g.alphabet());
  while (n > 0) {
    if (n & 1) acc = compose(acc, base);
    n >>= 1;
    if (n > 0) base = compose(base, base);
  }
  return acc;
}

Element product(const std::vector<Element>& factors, int alphabet) {
  Element acc = Element::identity(alphabet);
  for (const auto& f : factors) acc = compose(acc, f);
  return acc;
}

bool is_identity(const Element& g) {
  for (const auto& s : g.states())
    if (!s.root.is_identity()) return false;
  return true;
}

bool equal(const Element& g, const Element& h) {
  if (g.alphabet() != h.alphabet())
    throw Error("alphabet mismatch: " + std::to_string(g.alphabet()) + " vs " + std::to_string(h.alphabet()));
  return g == h;
}

Element canonicalize(const Element& g) {
  if (g.is_canonical()) return g;
  const auto& states = g.states();
  const std::size_t n = states.size();
  const auto d = static_cast<std::size_t>(g.alphabet());

  std::vector<std::uint32_t> cls(n);
  std::size_t classes = 0;
  {
    std::unordered_map<Perm, std::uint32_t> by_root;
    for (std::size_t i = 0; i < n; ++i) {
      auto [it, fresh] = by_root.try_emplace(states[i].root, static_cast<std::uint32_t>(by_root.size()));
      cls[i] = it->second;
    }
    classes = by_root.size();
  }
  std::vector<std::uint32_t> sig(d + 1);
  while (true) {
    std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VecHash> by_sig;
    std::vector<std::uint32_t> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      sig[0] = cls[i];
      for (std::size_t x = 0; x < d; ++x) sig[x + 1] = cls[states[i].children[x]];
      auto [it, fresh] = by_sig.try_emplace(sig, static_cast<std::uint32_t>(by_sig.size()));
      next[i] = it->second;
    }
    const std::size_t refined = by_sig.size();
    cls.swap(next);
    if (refined == classes) break;
    classes = refined;
  }

  std::vector<MachineState> quotient(classes);
  std::vector<bool> filled(classes, false);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = cls[i];
    if (filled[c]) continue;
    filled[c] = true;
    quotient[c].root = states[i].root;
    quotient[c].children.resize(d);
    for (std::size_t x = 0; x < d; ++x) quotient[c].children[x] = cls[states[i].children[x]];
  }
  return Element::make(g.alphabet(), bfs_renumber(quotient, cls[0]), true);
}

std::vector<Element> states_of(const Element& g) {
  const Element c = canonicalize(g);
  std::vector<Element> out;
  out.reserve(c.state_count());
  for (StateId s = 0; s < c.state_count(); ++s) out.push_back(restrict_state(c, s));
  return out;
}

WreathDecomp psi(const Element& g) {
  WreathDecomp w{{}, g.root()};
  for (Letter x = 1; x <= g.alphabet(); ++x) w.sections.push_back(restrict(g, Word{x}));
  return w;
}

Element assemble(const WreathDecomp& w) { return Element::from_sections(w.sections, w.root); }

Element build_element(const NamedRecursion& spec, const std::string& initial) {
  const int d = spec.alphabet;
  if (d < 1) throw Error("alphabet size must be positive");
  std::map<std::string, StateId> index;
  for (const auto& s : spec.states) {
    if (s.name == kIdentityName) throw Error("state name \"_\" is reserved for the identity");
    if (!index.emplace(s.name, static_cast<StateId>(index.size())).second)
      throw Error("duplicate state name \"" + s.name + "\"");
  }
  const auto identity_id = static_cast<StateId>(spec.states.size());
  std::vector<MachineState> table;
  table.reserve(spec.states.size() + 1);
  for (const auto& s : spec.states) {
    if (s.root.degree() != d)
      throw Error("state \"" + s.name + "\": permutation degree " + std::to_string(s.root.degree()) +
                  " differs from alphabet " + std::to_string(d));
    if (s.children.size() != static_cast<std::size_t>(d))
      throw Error("state \"" + s.name + "\": " + std::to_string(d) + " children required, got " +
                  std::to_string(s.children.size()));
    MachineState m{s.root, {}};
    for (const auto& c : s.children) {
      if (c == kIdentityName) {
        m.children.push_back(identity_id);
        continue;
      }
      auto it = index.find(c);
      if (it == index.end()) throw Error("state \"" + s.name + "\": unknown state \"" + c + "\"");
      m.children.push_back(it->second);
    }
    table.push_back(std::move(m));
  }
  table.push_back({Perm::identity(d), std::vector<StateId>(static_cast<std::size_t>(d), identity_id)});
  StateId start = identity_id;
  if (initial != kIdentityName) {
    auto it = index.find(initial);
    if (it == index.end()) throw Error("unknown state \"" + initial + "\"");
    start = it->second;
  }
  return Element::from_states(d, std::move(table), start);
}

std::pair<Element, bool> Interner::intern(const Element& g) {
  Element c = canonicalize(g);
  std::lock_guard lock(mu_);
  auto [it, fresh] = table_.insert(std::move(c));
  return {*it, fresh};
}

bool Interner::contains(const Element& g) const {
  Element c = canonicalize(g);
  std::lock_guard lock(mu_);
  return table_.count(c) > 0;
}

std::size_t Interner::size() const {
  std::lock_guard lock(mu_);
  return table_.size();
}

NamedRecursion to_recursion(const Element& g, const std::string& prefix) {
  const Element c = canonicalize(g);
  const auto& st = c.states();
  // trivial states: identity root and only trivial children (greatest fixpoint)
  std::vector<bool> trivial(st.size(), true);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < st.size(); ++i) {
      if (!trivial[i]) continue;
      bool ok = st[i].root.is_identity();
      for (StateId ch : st[i].children) ok = ok && trivial[ch];
      if (!ok) {
        trivial[i] = false;
        changed = true;
      }
    }
  }
  NamedRecursion out{c.alphabet(), {}};
  auto name = [&](StateId i) { return trivial[i] ? std::string(kIdentityName) : prefix + std::to_string(i); };
  for (StateId i = 0; i < st.size(); ++i) {
    if (trivial[i] && i != 0) continue;
    NamedState ns{prefix + std::to_string(i), st[i].root, {}};
    for (StateId ch : st[i].children) ns.children.push_back(name(ch));
    out.states.push_back(std::move(ns));
  }
  return out;
}

}  // namespace wreathkit
