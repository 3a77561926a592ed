#include "doctest.h"

#include <set>

#include "fixtures.hpp"
#include "wreathkit/embedder.hpp"

using namespace fixtures;

namespace {

std::vector<Element> grig_all() { return {grig("a"), grig("b"), grig("c"), grig("d")}; }

// e = (1, (23), e)(13): directed with period 1, but its root moves the
// spine letter, so the pipeline has to recode with delta.
Element moving_root() {
  return build_element({3, {{"e", P("(1 3)"), {"_", "s", "e"}}, {"s", P("(2 3)"), {"_", "_", "_"}}}}, "e");
}

Word flatten(const std::vector<Word>& blocks) {
  Word out;
  for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
  return out;
}

bool same_set(const std::vector<Element>& xs, const std::vector<Element>& ys) {
  return std::set<Element>(xs.begin(), xs.end()) == std::set<Element>(ys.begin(), ys.end()) && xs.size() == ys.size();
}

}  // namespace

TEST_CASE("analyze") {
  const auto g = analyze(grig_all());
  CHECK(same_set(g.Q, {grig("a"), grig("b"), grig("c"), grig("d"), Element::identity(2)}));
  CHECK(same_set(g.F, {grig("a"), Element::identity(2)}));
  CHECK(g.m == 2);
  CHECK(g.l == 3);

  const auto c = analyze({special_elems().c});
  CHECK(c.Q.size() == 3);
  CHECK(c.l == 1);
  CHECK(c.m == 2);  // (23) has depth 1 and m must exceed it

  const auto one = analyze({Element::identity(3)});
  CHECK(one.Q.size() == 1);
  CHECK(one.F.size() == 1);
  CHECK(one.m == 1);
  CHECK(one.l == 1);

  const NamedRecursion unb{2, {{"g", Perm::identity(2), {"g", "h"}}, {"h", P("(1 2)", 2), {"h", "h"}}}};
  CHECK_THROWS_AS(analyze({build_element(unb, "g")}), UnboundedGenerator);
  CHECK_THROWS_AS(analyze({}), Error);
  CHECK_THROWS_AS(analyze({grig("a"), special_elems().c}), Error);
}

TEST_CASE("restricted_set") {
  CHECK(same_set(restricted_set(grig_all(), 2), analyze(grig_all()).Q));
  CHECK(same_set(restricted_set({special_elems().c}, 1), {special_elems().c, R("(2 3)"), Element::identity(3)}));
  CHECK(same_set(restricted_set({special_elems().c}, 0), analyze({special_elems().c}).Q));
  CHECK(same_set(restricted_set({grig("a")}, 2), {Element::identity(2)}));
}

TEST_CASE("block letters") {
  CHECK(block_rank(parse_word("111"), 2) == 1);
  CHECK(block_rank(parse_word("222"), 2) == 8);
  CHECK(block_rank(parse_word("121"), 2) == 3);
  for (Letter r = 1; r <= 27; ++r) CHECK(block_rank(block_word(r, 3, 3), 3) == r);
  CHECK_THROWS_AS(block_word(9, 2, 3), Error);
}

TEST_CASE("block_power") {
  CHECK(block_power(special_elems().c, 1) == special_elems().c);

  const Element b3 = block_power(grig("b"), 3);
  CHECK(b3.alphabet() == 8);
  CHECK(restrict(b3, {block_rank(parse_word("222"), 2)}) == b3);
  // b = (a, c): 111 -> 1 a(11) = 121, unrolled by hand
  CHECK(act(b3, {1}) == Word{block_rank(parse_word("121"), 2)});

  // acting on blocks and flattening commutes with acting on flat words
  for (const auto& g : {grig("b"), grig("c"), grig("a")}) {
    const Element g3 = block_power(g, 3);
    for (Letter x = 1; x <= 8; ++x)
      for (Letter y = 0; y <= 8; ++y) {
        Word bw{x};
        if (y > 0) bw.push_back(y);
        std::vector<Word> in, out;
        for (Letter r : bw) in.push_back(block_word(r, 2, 3));
        for (Letter r : act(g3, bw)) out.push_back(block_word(r, 2, 3));
        CHECK(flatten(out) == act(g, flatten(in)));
      }
  }
  const Element t2 = block_power(special_elems().t, 2);
  for (const auto& w : words_up_to(9, 2)) {
    std::vector<Word> in, out;
    for (Letter r : w) in.push_back(block_word(r, 3, 2));
    for (Letter r : act(t2, w)) out.push_back(block_word(r, 3, 2));
    CHECK(flatten(out) == act(special_elems().t, flatten(in)));
  }
}

TEST_CASE("delta") {
  const int n = 8;
  const Perm zeta = Perm::cycle(n);
  const Element delta = build_delta(n, 1, zeta);
  CHECK(delta.state_count() <= static_cast<std::size_t>(n));
  CHECK(delta.root().is_identity());
  CHECK(restrict(delta, {1}) == delta);
  CHECK(is_identity(delta * inverse(delta)));
  // recoding: zeta^i1(o) zeta^i2(o) -> zeta^i1(o) zeta^(i2-i1)(o)
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2) {
      const Letter a = zeta.pow(i1)(1), b = zeta.pow(i2)(1), c = zeta.pow(i2 - i1)(1);
      CHECK(act(delta, {a, b}) == Word{a, c});
    }
  // other base letters and cycles
  const Perm z5 = P("(1 3 5 2 4)", 5);
  const Element d5 = build_delta(5, 3, z5);
  CHECK(restrict(d5, {3}) == d5);
  for (Letter x = 1; x <= 5; ++x) CHECK(zeta_power_to(z5, 3, x)(3) == x);
  CHECK_THROWS_AS(build_delta(4, 1, P("(1 2)(3 4)", 4)), Error);
  CHECK_THROWS_AS(build_delta(3, 1, Perm::cycle(4)), Error);
}

TEST_CASE("delta_conjugate") {
  const int n = 3;
  const Perm zeta = Perm::cycle(n);
  const Element delta = build_delta(n, 1, zeta);
  CHECK(is_identity(delta_conjugate(Element::identity(3), delta)));

  std::mt19937 rng(9);
  const auto gens = mother_gens(3);
  for (int i = 0; i < 25; ++i) {
    const Element a = random_product(rng, gens, 2), b = random_product(rng, gens, 2);
    CHECK(delta_conjugate(a * b, delta) == delta_conjugate(a, delta) * delta_conjugate(b, delta));
    CHECK(delta_conjugate(inverse(a), delta) == inverse(delta_conjugate(a, delta)));
    // component formula: (a^delta)|_x = zeta_x (a|_x)^delta zeta_{sigma(x)}^-1
    const Element ad = delta_conjugate(a, delta);
    for (Letter x = 1; x <= n; ++x) {
      const Element rhs = Element::rootwise(zeta_power_to(zeta, 1, x)) * delta_conjugate(restrict(a, {x}), delta) *
                          Element::rootwise(zeta_power_to(zeta, 1, a.root()(x)).inverse());
      CHECK(restrict(ad, {x}) == rhs);
    }
  }
}

TEST_CASE("normalize_directed") {
  for (const Element& alpha : {block_power(grig("b"), 3), moving_root()}) {
    const int n = alpha.alphabet();
    const Perm zeta = Perm::cycle(n);
    const Element delta = build_delta(n, 1, zeta);
    const Element beta = normalize_directed(alpha, delta, zeta, 1);
    CHECK(restrict(beta, {1}) == beta);
    CHECK(beta.root()(1) == 1);
    for (const auto& w : words_up_to(n, 2)) CHECK(act(beta, cons(1, w)).front() == 1);
    for (Letter x = 2; x <= n; ++x) CHECK(classify(restrict(beta, {x})).finitary());
  }
  const Perm z = Perm::cycle(2);
  CHECK_THROWS_AS(normalize_directed(grig("a"), build_delta(2, 1, z), z, 1), Error);
}

TEST_CASE("mother_form_check") {
  CHECK(mother_form_check(b_gen(3, {P("(1 2)"), P("(1 3)")}, P("(1 2)", 2)), 3).ok);
  CHECK(mother_form_check(special_elems().c, 3).ok);
  for (Letter o = 1; o <= 3; ++o) CHECK_FALSE(mother_form_check(special_elems().t, o).ok);
  const auto bad = mother_form_check(special_elems().c, 2);
  CHECK_FALSE(bad.ok);
  CHECK(bad.failing_coordinate == 2);
  CHECK_FALSE(mother_form_check(moving_root(), 3).ok);
}

TEST_CASE("embed_pipeline") {
  const auto g = embed_pipeline(grig_all(), {"a", "b", "c", "d"});
  CHECK(g.analysis.l == 3);
  CHECK(g.intermediate_alphabet == 8);
  CHECK(g.m_prime == 1);
  CHECK(g.final_alphabet == 8);
  CHECK(g.all_pass());
  CHECK(g.certificates.size() == 5);
  CHECK(g.target() == "G_8 wr 2^2");

  const auto c = embed_pipeline({special_elems().c});
  CHECK(c.final_alphabet == 3);
  CHECK(c.all_pass());
  CHECK_FALSE(c.delta_applied);

  const auto a = embed_pipeline({grig("a")});
  CHECK(a.analysis.l == 1);
  CHECK(a.all_pass());

  const auto e = embed_pipeline({moving_root()});
  CHECK(e.delta_applied);
  CHECK(e.all_pass());
  CHECK(e.final_alphabet == 9);

  // certificates survive a round trip through their serialized form
  for (const auto* rep : {&g, &c, &e})
    for (const auto& cert : rep->certificates) {
      Certificate copy = cert;
      copy.element = build_element(to_recursion(cert.element), "s0");
      CHECK(copy.element == cert.element);
      CHECK(recheck(copy));
    }
}
