#include "wreathkit/sidki.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace wreathkit {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t s = a + b;
  return s < a ? std::numeric_limits<std::uint64_t>::max() : s;
}

// Index of the identity state of a canonical machine, or kNone.
std::uint32_t identity_state(const Element& c) {
  for (std::uint32_t s = 0; s < c.state_count(); ++s) {
    const auto& st = c.state(s);
    if (!st.root.is_identity()) continue;
    if (std::all_of(st.children.begin(), st.children.end(), [&](StateId x) { return x == s; })) return s;
  }
  return kNone;
}

// Number of level-n words whose section is nontrivial, per state, advanced
// one level at a time.
std::vector<std::uint64_t> step_counts(const Element& c, std::uint32_t id, const std::vector<std::uint64_t>& cnt) {
  std::vector<std::uint64_t> next(cnt.size(), 0);
  for (std::uint32_t s = 0; s < cnt.size(); ++s) {
    if (cnt[s] == 0 || s == id) continue;
    for (StateId ch : c.state(s).children)
      if (ch != id) next[ch] = sat_add(next[ch], cnt[s]);
  }
  return next;
}

std::uint64_t total(const std::vector<std::uint64_t>& cnt, std::uint32_t id) {
  std::uint64_t t = 0;
  for (std::uint32_t s = 0; s < cnt.size(); ++s)
    if (s != id) t = sat_add(t, cnt[s]);
  return t;
}

struct Scc {
  std::vector<std::uint32_t> comp;        // component of each state
  std::vector<std::vector<std::uint32_t>> members;
};

// Tarjan over the non-identity subgraph (iterative).
Scc strongly_connected(const Element& c, std::uint32_t id) {
  const std::uint32_t n = static_cast<std::uint32_t>(c.state_count());
  Scc out{std::vector<std::uint32_t>(n, kNone), {}};
  std::vector<std::uint32_t> low(n, 0), num(n, kNone), stack;
  std::vector<bool> on_stack(n, false);
  std::uint32_t counter = 0;
  struct Frame {
    std::uint32_t v;
    std::size_t edge;
  };
  for (std::uint32_t root = 0; root < n; ++root) {
    if (root == id || num[root] != kNone) continue;
    std::vector<Frame> frames{{root, 0}};
    num[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& f = frames.back();
      const auto& kids = c.state(f.v).children;
      if (f.edge < kids.size()) {
        const std::uint32_t w = kids[f.edge++];
        if (w == id) continue;
        if (num[w] == kNone) {
          num[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], num[w]);
        }
        continue;
      }
      const std::uint32_t v = f.v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      if (low[v] == num[v]) {
        const auto k = static_cast<std::uint32_t>(out.members.size());
        out.members.emplace_back();
        while (true) {
          const std::uint32_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          out.comp[w] = k;
          out.members[k].push_back(w);
          if (w == v) break;
        }
      }
    }
  }
  return out;
}

}  // namespace

std::string to_string(Kind k) {
  switch (k) {
    case Kind::Identity: return "identity";
    case Kind::Finitary: return "finitary";
    case Kind::Directed: return "directed";
    case Kind::BoundedOther: return "bounded";
    case Kind::Unbounded: return "unbounded";
  }
  return "?";
}

std::uint64_t activity(const Element& g, int level) {
  if (level < 0) throw Error("level must be nonnegative");
  const Element c = canonicalize(g);
  const std::uint32_t id = identity_state(c);
  std::vector<std::uint64_t> cnt(c.state_count(), 0);
  cnt[0] = 1;
  for (int i = 0; i < level; ++i) cnt = step_counts(c, id, cnt);
  return total(cnt, id);
}

Classification classify(const Element& g) {
  const Element c = canonicalize(g);
  Classification out;
  if (is_identity(c)) return out;

  const std::uint32_t n = static_cast<std::uint32_t>(c.state_count());
  const std::uint32_t id = identity_state(c);
  const Scc scc = strongly_connected(c, id);

  // An SCC is a cycle component if it carries at least one internal edge.
  std::vector<std::size_t> internal_edges(scc.members.size(), 0);
  for (std::uint32_t s = 0; s < n; ++s) {
    if (s == id) continue;
    for (StateId ch : c.state(s).children)
      if (ch != id && scc.comp[ch] == scc.comp[s]) ++internal_edges[scc.comp[s]];
  }
  auto is_cycle_comp = [&](std::uint32_t k) { return internal_edges[k] > 0; };

  // Tarjan emits components in reverse topological order, so successors of
  // a component always have smaller indices.
  std::vector<bool> reaches_cycle(scc.members.size(), false);
  for (std::uint32_t k = 0; k < scc.members.size(); ++k) {
    bool r = is_cycle_comp(k);
    for (std::uint32_t s : scc.members[k])
      for (StateId ch : c.state(s).children)
        if (ch != id && scc.comp[ch] != k && reaches_cycle[scc.comp[ch]]) r = true;
    reaches_cycle[k] = r;
  }
  auto non_finitary = [&](std::uint32_t s) { return s != id && reaches_cycle[scc.comp[s]]; };

  if (!non_finitary(0)) {
    // Finitary: depth is the longest path down to the identity state.
    std::vector<int> depth(n, 0);
    for (std::uint32_t k = 0; k < scc.members.size(); ++k) {
      for (std::uint32_t s : scc.members[k]) {
        int d = 0;
        for (StateId ch : c.state(s).children) d = std::max(d, ch == id ? 0 : depth[ch]);
        depth[s] = d + 1;
      }
    }
    out.kind = Kind::Finitary;
    out.finitary_depth = depth[0];
  } else {
    bool bounded = true;
    for (std::uint32_t k = 0; k < scc.members.size() && bounded; ++k) {
      if (!is_cycle_comp(k)) continue;
      if (internal_edges[k] != scc.members[k].size()) bounded = false;  // not a simple cycle
      for (std::uint32_t s : scc.members[k])
        for (StateId ch : c.state(s).children)
          if (ch != id && scc.comp[ch] != k && reaches_cycle[scc.comp[ch]]) bounded = false;
    }
    if (!bounded) {
      out.kind = Kind::Unbounded;
      return out;
    }

    const std::uint32_t k0 = scc.comp[0];
    if (is_cycle_comp(k0)) {
      out.kind = Kind::Directed;
      std::uint32_t s = 0;
      do {
        const auto& kids = c.state(s).children;
        for (std::size_t x = 0; x < kids.size(); ++x) {
          if (kids[x] != id && scc.comp[kids[x]] == k0) {
            out.spine.push_back(static_cast<Letter>(x + 1));
            s = kids[x];
            break;
          }
        }
      } while (s != 0);
      out.period = static_cast<int>(out.spine.size());
    } else {
      out.kind = Kind::BoundedOther;
    }

    std::set<std::uint32_t> level{0};
    for (int m = 0;; ++m) {
      const bool all_directed = std::all_of(level.begin(), level.end(), [&](std::uint32_t s) {
        return !non_finitary(s) || is_cycle_comp(scc.comp[s]);
      });
      if (all_directed) {
        out.bounded_depth = m;
        break;
      }
      std::set<std::uint32_t> next;
      for (std::uint32_t s : level)
        for (StateId ch : c.state(s).children) next.insert(ch);
      level.swap(next);
    }
  }

  // Bounded: the per-state count vectors take finitely many values, so the
  // sequence is eventually periodic and the maximum is attained before the
  // first repeat.
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<std::uint64_t> cnt(n, 0);
  cnt[0] = 1;
  while (seen.insert(cnt).second) {
    out.max_activity = std::max(out.max_activity, total(cnt, id));
    cnt = step_counts(c, id, cnt);
  }
  return out;
}

}  // namespace wreathkit
