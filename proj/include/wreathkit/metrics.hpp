#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "wreathkit/machine.hpp"

namespace wreathkit {

// Weight schemes. Unit: every generator costs 1. Paper: t_v^{+-1} costs |v|,
// so t itself is free. Proper: t_v^{+-1} costs |v| + 1.
enum class WeightMode { Unit, Paper, Proper };
std::string to_string(WeightMode m);
WeightMode parse_weight_mode(const std::string& s);

struct WeightedGen {
  Element element;
  int weight = 1;
  std::string label;
};

struct WeightedGenSet {
  WeightMode mode = WeightMode::Unit;
  std::vector<WeightedGen> gens;  // closed under inverses, deduplicated

  /// Unit weights; inverses are added when missing.
  static WeightedGenSet unit(const std::vector<Element>& gens, const std::vector<std::string>& labels = {});
  /// t_v^{+-1} for |v| <= max_depth, weighted by mode (Paper or Proper).
  static WeightedGenSet t_family(int max_depth, WeightMode mode);

  int alphabet() const;
};

enum class SearchStatus { Complete, BudgetExhausted, NotReached };
std::string to_string(SearchStatus s);

// Zero-weight generators make the layers infinite, so every search also caps
// the number of zero-weight factors a product may use.
struct SearchLimits {
  std::size_t node_budget = 10'000'000;
  int zero_budget = 4;
};

/// Reads WREATHKIT_BUDGET (node budget) from the environment, if set.
SearchLimits limits_from_env();

struct GrowthTable {
  SearchStatus status = SearchStatus::Complete;
  std::vector<std::uint64_t> sizes;               // sizes[r] = |B(r)|, exact
  std::vector<std::vector<Element>> frontiers;    // elements of length exactly r, if retained

  std::string to_csv() const;
};

GrowthTable ball_growth(const WeightedGenSet& gens, int radius, const SearchLimits& limits = {},
                        bool retain_frontiers = false);

struct LengthResult {
  SearchStatus status = SearchStatus::NotReached;
  int length = -1;
  std::vector<std::string> witness;  // generator labels, left to right
  std::size_t explored = 0;
};

/// Minimal total weight of g over {t_v^{+-1} : |v| <= max_gen_depth}, searched
/// up to max_weight. Exact relative to the truncation and the zero budget.
LengthResult t_length(const Element& g, int max_gen_depth, WeightMode mode, int max_weight,
                      const SearchLimits& limits = {});

struct CosetEntry {
  Word w;
  std::string verdict;  // "separated", "witness", "in-subgroup", "budget-exhausted"
  std::vector<std::string> witness;
};

struct CosetReport {
  int n = 0;
  std::size_t enumerated = 0;
  std::vector<CosetEntry> entries;

  bool all_separated() const;
};

/// For each sample w with |w| > n, checks that no product of Paper weight
/// <= n over {t_v^{+-1} : |v| <= n} equals t_w. Samples with |w| <= n lie in
/// T_n and are reported as such.
CosetReport coset_separation_check(int n, const std::vector<Word>& samples, const SearchLimits& limits = {});

}  // namespace wreathkit
