#include "wreathkit/metrics.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "wreathkit/mother.hpp"

namespace wreathkit {

std::string to_string(WeightMode m) {
  switch (m) {
    case WeightMode::Unit: return "unit";
    case WeightMode::Paper: return "paper";
    case WeightMode::Proper: return "proper";
  }
  return "?";
}

WeightMode parse_weight_mode(const std::string& s) {
  if (s == "unit") return WeightMode::Unit;
  if (s == "paper") return WeightMode::Paper;
  if (s == "proper") return WeightMode::Proper;
  throw Error("unknown weight mode '" + s + "' (expected unit, paper or proper)");
}

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Complete: return "complete";
    case SearchStatus::BudgetExhausted: return "budget-exhausted";
    case SearchStatus::NotReached: return "not-reached";
  }
  return "?";
}

SearchLimits limits_from_env() {
  SearchLimits lim;
  if (const char* s = std::getenv("WREATHKIT_BUDGET")) {
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end == s || *end != '\0' || v < 1) throw Error("WREATHKIT_BUDGET must be a positive number");
    lim.node_budget = static_cast<std::size_t>(v);
  }
  return lim;
}

WeightedGenSet WeightedGenSet::unit(const std::vector<Element>& gens, const std::vector<std::string>& labels) {
  if (gens.empty()) throw Error("generator set is empty");
  if (!labels.empty() && labels.size() != gens.size()) throw Error("label count does not match generators");
  WeightedGenSet out;
  out.mode = WeightMode::Unit;
  std::unordered_map<Element, std::size_t, ElementHash> index;
  auto add = [&](const Element& g, std::string label) {
    if (g.alphabet() != gens.front().alphabet()) throw Error("generators over different alphabets");
    if (index.emplace(g, out.gens.size()).second) out.gens.push_back({g, 1, std::move(label)});
  };
  for (std::size_t i = 0; i < gens.size(); ++i) add(gens[i], labels.empty() ? "g" + std::to_string(i) : labels[i]);
  for (std::size_t i = 0; i < gens.size(); ++i)
    add(inverse(gens[i]), (labels.empty() ? "g" + std::to_string(i) : labels[i]) + "^-1");
  return out;
}

WeightedGenSet WeightedGenSet::t_family(int max_depth, WeightMode mode) {
  if (max_depth < 0) throw Error("max_depth must be >= 0");
  if (mode == WeightMode::Unit) throw Error("t_family needs paper or proper weights");
  WeightedGenSet out;
  out.mode = mode;
  std::vector<Word> layer{{}};
  for (int len = 0; len <= max_depth; ++len) {
    const int weight = mode == WeightMode::Paper ? len : len + 1;
    for (const Word& v : layer) {
      const std::string name = v.empty() ? "t" : "t_" + word_to_string(v);
      const Element g = elem_tv(v);
      out.gens.push_back({g, weight, name});
      out.gens.push_back({inverse(g), weight, name + "^-1"});
    }
    std::vector<Word> next;
    for (const Word& v : layer)
      for (Letter x = 1; x <= 3; ++x) {
        Word vx = v;
        vx.push_back(x);
        next.push_back(std::move(vx));
      }
    layer.swap(next);
  }
  return out;
}

int WeightedGenSet::alphabet() const {
  if (gens.empty()) throw Error("generator set is empty");
  return gens.front().element.alphabet();
}

namespace {

// Label-setting search over (weight, zero factors used) with Pareto
// dominance, processed in (weight, zeros, insertion) order.
struct Search {
  struct Node {
    Element g;
    int w;
    int z;
    std::size_t parent;
    std::size_t gen;
  };
  std::vector<Node> nodes;
  std::vector<bool> dead;
  std::unordered_map<Element, std::vector<std::size_t>, ElementHash> labels;
  std::unordered_map<Element, std::size_t, ElementHash> best;  // first node with minimal weight
  SearchStatus status = SearchStatus::Complete;
  int exact_below = 0;  // every weight < exact_below is final
  std::size_t hit = SIZE_MAX;

  std::vector<std::string> word_of(const WeightedGenSet& gs, std::size_t i) const {
    std::vector<std::string> out;
    for (; i != 0; i = nodes[i].parent) out.push_back(gs.gens[nodes[i].gen].label);
    std::reverse(out.begin(), out.end());
    return out;
  }
};

Search run_search(const WeightedGenSet& gs, int max_weight, const SearchLimits& lim, const Element* stop) {
  Search s;
  const int d = gs.alphabet();
  s.nodes.push_back({Element::identity(d), 0, 0, 0, 0});
  s.dead.push_back(false);
  s.labels[s.nodes[0].g] = {0};
  s.best[s.nodes[0].g] = 0;
  s.exact_below = max_weight + 1;

  using Key = std::tuple<int, int, std::size_t>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> queue;
  queue.emplace(0, 0, 0);
  while (!queue.empty()) {
    const auto [w, z, i] = queue.top();
    queue.pop();
    if (s.dead[i]) continue;
    if (stop && s.nodes[i].g == *stop) {
      s.hit = i;
      return s;
    }
    for (std::size_t k = 0; k < gs.gens.size(); ++k) {
      const auto& gen = gs.gens[k];
      const int nw = w + gen.weight, nz = z + (gen.weight == 0 ? 1 : 0);
      if (nw > max_weight || nz > lim.zero_budget) continue;
      Element h = s.nodes[i].g * gen.element;
      auto& ls = s.labels[h];
      bool dominated = false;
      for (std::size_t j : ls)
        if (!s.dead[j] && s.nodes[j].w <= nw && s.nodes[j].z <= nz) dominated = true;
      if (dominated) continue;
      for (std::size_t j : ls)
        if (s.nodes[j].w >= nw && s.nodes[j].z >= nz) s.dead[j] = true;
      const std::size_t id = s.nodes.size();
      ls.push_back(id);
      auto [it, fresh] = s.best.try_emplace(h, id);
      if (!fresh && s.nodes[it->second].w > nw) it->second = id;
      s.nodes.push_back({std::move(h), nw, nz, i, k});
      s.dead.push_back(false);
      queue.emplace(nw, nz, id);
      if (s.nodes.size() > lim.node_budget) {
        s.status = SearchStatus::BudgetExhausted;
        s.exact_below = w;
        return s;
      }
    }
  }
  return s;
}

}  // namespace

std::string GrowthTable::to_csv() const {
  std::ostringstream os;
  os << "radius,ball_size\n";
  for (std::size_t r = 0; r < sizes.size(); ++r) os << r << ',' << sizes[r] << '\n';
  return os.str();
}

GrowthTable ball_growth(const WeightedGenSet& gens, int radius, const SearchLimits& limits, bool retain_frontiers) {
  if (radius < 0) throw Error("radius must be >= 0");
  const Search s = run_search(gens, radius, limits, nullptr);
  GrowthTable table;
  table.status = s.status;
  const int exact = std::min(radius, s.exact_below - 1);
  if (exact < 0) return table;
  std::vector<std::uint64_t> layer(static_cast<std::size_t>(exact) + 1, 0);
  if (retain_frontiers) table.frontiers.resize(layer.size());
  for (const auto& [g, id] : s.best) {
    const int w = s.nodes[id].w;
    if (w > exact) continue;
    ++layer[static_cast<std::size_t>(w)];
    if (retain_frontiers) table.frontiers[static_cast<std::size_t>(w)].push_back(g);
  }
  std::uint64_t acc = 0;
  for (auto n : layer) table.sizes.push_back(acc += n);
  for (auto& f : table.frontiers) std::sort(f.begin(), f.end());
  return table;
}

LengthResult t_length(const Element& g, int max_gen_depth, WeightMode mode, int max_weight,
                      const SearchLimits& limits) {
  if (g.alphabet() != 3) throw Error("t_length works in G_3");
  if (max_weight < 0) throw Error("max_weight must be >= 0");
  const WeightedGenSet gs = WeightedGenSet::t_family(max_gen_depth, mode);
  const Search s = run_search(gs, max_weight, limits, &g);
  LengthResult r;
  r.explored = s.nodes.size();
  if (s.hit != SIZE_MAX) {
    r.status = SearchStatus::Complete;
    r.length = s.nodes[s.hit].w;
    r.witness = s.word_of(gs, s.hit);
  } else {
    r.status = s.status == SearchStatus::BudgetExhausted ? SearchStatus::BudgetExhausted : SearchStatus::NotReached;
  }
  return r;
}

bool CosetReport::all_separated() const {
  return std::all_of(entries.begin(), entries.end(), [&](const CosetEntry& e) {
    return static_cast<int>(e.w.size()) <= n || e.verdict == "separated";
  });
}

CosetReport coset_separation_check(int n, const std::vector<Word>& samples, const SearchLimits& limits) {
  if (n < 0 || n > 2) throw Error("coset_separation_check is limited to 0 <= n <= 2");
  const WeightedGenSet gs = WeightedGenSet::t_family(n, WeightMode::Paper);
  const Search s = run_search(gs, n, limits, nullptr);
  CosetReport rep;
  rep.n = n;
  rep.enumerated = s.best.size();
  for (const Word& w : samples) {
    CosetEntry e{w, "", {}};
    if (static_cast<int>(w.size()) <= n) {
      e.verdict = "in-subgroup";
    } else if (auto it = s.best.find(elem_tv(w)); it != s.best.end()) {
      e.verdict = "witness";
      e.witness = s.word_of(gs, it->second);
    } else {
      e.verdict = s.status == SearchStatus::Complete ? "separated" : "budget-exhausted";
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace wreathkit
