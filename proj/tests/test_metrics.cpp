#include "doctest.h"

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "wreathkit/metrics.hpp"

using namespace fixtures;

namespace {

// Plain unit-weight BFS with an ordered set, sharing nothing with the
// labelled search except element arithmetic.
std::vector<std::uint64_t> bfs_sizes(const std::vector<Element>& gens, int radius) {
  std::set<Element> seen{Element::identity(gens.front().alphabet())};
  std::vector<Element> frontier(seen.begin(), seen.end());
  std::vector<std::uint64_t> out{1};
  for (int r = 1; r <= radius; ++r) {
    std::vector<Element> next;
    for (const auto& g : frontier)
      for (const auto& s : gens) {
        for (const Element& h : {g * s, g * inverse(s)})
          if (seen.insert(h).second) next.push_back(h);
      }
    frontier.swap(next);
    out.push_back(seen.size());
  }
  return out;
}

}  // namespace

TEST_CASE("ball growth of G_2 is the Z2*Z2 line") {
  const auto table = ball_growth(WeightedGenSet::unit({g2_gens().a, g2_gens().b}), 6);
  CHECK(table.status == SearchStatus::Complete);
  REQUIRE(table.sizes.size() == 7);
  for (int r = 0; r <= 6; ++r) CHECK(table.sizes[static_cast<std::size_t>(r)] == static_cast<std::uint64_t>(2 * r + 1));
  CHECK(table.to_csv().rfind("radius,ball_size\n0,1\n1,3\n2,5\n3,7\n", 0) == 0);
}

TEST_CASE("ball growth of G_3") {
  const auto gens = mother_gens(3);
  const auto table = ball_growth(WeightedGenSet::unit(gens), 2);
  CHECK(table.sizes[0] == 1);
  CHECK(table.sizes[1] == 77);
  CHECK(table.sizes == bfs_sizes(gens, 2));

  // independent of enumeration order
  auto shuffled = gens;
  std::mt19937 rng(1);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  CHECK(ball_growth(WeightedGenSet::unit(shuffled), 2).sizes == table.sizes);

  CHECK(ball_growth(WeightedGenSet::unit(gens), 0).sizes == std::vector<std::uint64_t>{1});
  CHECK_THROWS_AS(ball_growth(WeightedGenSet::unit(gens), -1), Error);
}

TEST_CASE("frontier retention and budget") {
  const auto gs = WeightedGenSet::unit({g2_gens().a, g2_gens().b});
  const auto table = ball_growth(gs, 3, {}, true);
  REQUIRE(table.frontiers.size() == 4);
  CHECK(table.frontiers[0].size() == 1);
  CHECK(table.frontiers[3].size() == 2);

  const auto cut = ball_growth(WeightedGenSet::unit(mother_gens(3)), 3, {1000, 4});
  CHECK(cut.status == SearchStatus::BudgetExhausted);
  CHECK(cut.sizes.size() < 4);
  for (std::size_t r = 0; r < cut.sizes.size(); ++r) CHECK(cut.sizes[r] == (r == 0 ? 1u : 77u));
}

TEST_CASE("weighted t family") {
  const auto paper = WeightedGenSet::t_family(1, WeightMode::Paper);
  CHECK(paper.gens.size() == 8);
  CHECK(paper.gens[0].weight == 0);
  CHECK(paper.gens[2].weight == 1);
  const auto proper = WeightedGenSet::t_family(1, WeightMode::Proper);
  CHECK(proper.gens[0].weight == 1);
  CHECK(proper.gens[7].weight == 2);
  CHECK_THROWS_AS(WeightedGenSet::t_family(1, WeightMode::Unit), Error);

  // the weight-0 layer under paper weights is exactly t^-Z..t^Z
  for (int z : {0, 1, 3, 6}) {
    const auto table = ball_growth(paper, 0, {100000, z});
    CHECK(table.sizes[0] == static_cast<std::uint64_t>(2 * z + 1));
  }
  // proper weights: finite balls, no zero budget involved
  const auto p = ball_growth(proper, 3, {1000000, 0});
  CHECK(p.status == SearchStatus::Complete);
  CHECK(p.sizes[0] == 1);
  CHECK(p.sizes[1] == 3);
  for (std::size_t r = 1; r < p.sizes.size(); ++r) CHECK(p.sizes[r] >= p.sizes[r - 1]);
}

TEST_CASE("t_length") {
  const auto id = t_length(Element::identity(3), 2, WeightMode::Paper, 3);
  CHECK(id.status == SearchStatus::Complete);
  CHECK(id.length == 0);

  const auto t22 = t_length(elem_tv(parse_word("22")), 2, WeightMode::Paper, 3);
  CHECK(t22.status == SearchStatus::Complete);
  CHECK(t22.length == 2);
  CHECK(t_length(elem_tv(parse_word("22")), 2, WeightMode::Paper, 1).status == SearchStatus::NotReached);

  CHECK(t_length(special_elems().t, 1, WeightMode::Paper, 2).length == 0);
  CHECK(t_length(special_elems().t, 1, WeightMode::Proper, 2).length == 1);
  CHECK(t_length(special_elems().c, 1, WeightMode::Proper, 3).status == SearchStatus::NotReached);

  // t^2 = t_2^-1 t_3 is free under paper weights but costs 2 either way under proper
  const auto t2 = t_length(power(special_elems().t, 2), 1, WeightMode::Proper, 4);
  CHECK(t2.length == 2);
  CHECK(t2.witness.size() == 2);

  std::mt19937 rng(4);
  const auto gs = WeightedGenSet::t_family(1, WeightMode::Proper);
  for (int i = 0; i < 12; ++i) {
    const auto& a = gs.gens[rng() % gs.gens.size()];
    const auto& b = gs.gens[rng() % gs.gens.size()];
    const auto la = t_length(a.element, 1, WeightMode::Proper, 4);
    const auto lb = t_length(b.element, 1, WeightMode::Proper, 4);
    const auto lab = t_length(a.element * b.element, 1, WeightMode::Proper, 4);
    const auto linv = t_length(inverse(a.element * b.element), 1, WeightMode::Proper, 4);
    CHECK(la.length <= a.weight);
    CHECK(lab.length <= la.length + lb.length);
    CHECK(linv.length == lab.length);
  }
}

TEST_CASE("coset separation") {
  const auto r1 = coset_separation_check(1, words_of_length(3, 2));
  CHECK(r1.all_separated());
  CHECK(r1.entries.size() == 9);
  for (const auto& e : r1.entries) CHECK(e.verdict == "separated");

  const auto r0 = coset_separation_check(0, {parse_word("2"), parse_word("3")});
  CHECK(r0.all_separated());
  CHECK(r0.enumerated == 9);  // t^-4..t^4

  const auto sub = coset_separation_check(1, {parse_word("2")});
  CHECK(sub.entries[0].verdict == "in-subgroup");
  CHECK_THROWS_AS(coset_separation_check(3, {}), Error);

  const auto cut = coset_separation_check(1, {parse_word("22")}, {10, 4});
  CHECK(cut.entries[0].verdict == "budget-exhausted");
  CHECK_FALSE(cut.all_separated());
}
