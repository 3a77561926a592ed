#include "doctest.h"

#include "fixtures.hpp"

using namespace fixtures;

namespace {

NamedRecursion c_spec() {
  return {3, {{"c", Perm::identity(3), {"_", "s23", "c"}}, {"s23", P("(2 3)"), {"_", "_", "_"}}}};
}

// Oracle for is_identity: fixes every word up to the given length.
bool acts_trivially_up_to(const Element& g, int n) {
  for (const auto& w : words_up_to(g.alphabet(), n))
    if (act(g, w) != w) return false;
  return true;
}

}  // namespace

TEST_CASE("build_element") {
  const Element c = build_element(c_spec(), "c");
  CHECK(c.state_count() == 3);
  CHECK(c == special_elems().c);

  const Perm id2 = Perm::identity(2);
  const NamedRecursion b_spec{2, {{"b", id2, {"s", "b"}}, {"s", P("(1 2)", 2), {"_", "_"}}}};
  CHECK(build_element(b_spec, "b") == g2_gens().b);

  const NamedRecursion x_spec{3, {{"x", Perm::identity(3), {"_", "_", "_"}}}};
  CHECK(is_identity(build_element(x_spec, "x")));

  CHECK_THROWS_AS(build_element({3, {{"x", Perm::identity(3), {"_", "y", "_"}}}}, "x"), Error);
  CHECK_THROWS_AS(build_element({3, {{"x", Perm::identity(3), {"_", "_"}}}}, "x"), Error);
  CHECK_THROWS_AS(build_element({3, {{"x", P("(1 2)", 2), {"_", "_", "_"}}}}, "x"), Error);
  CHECK_THROWS_AS(build_element(c_spec(), "nope"), Error);
}

TEST_CASE("act") {
  const auto& sp = special_elems();
  CHECK(act(sp.c, parse_word("23")) == parse_word("22"));
  CHECK(act(sp.t, parse_word("1111")) == parse_word("1111"));
  CHECK(act(R("(2 3)"), parse_word("31")) == parse_word("21"));

  // against the hand-written recursion for c
  for (const auto& w : words_up_to(3, 5)) CHECK(act(sp.c, w) == ref_c(w));

  // t = (23) c (23) c evaluated as a chain of reference functions
  const RefAut s23 = ref_rootwise(P("(2 3)"));
  const RefAut ref_t = ref_then(ref_then(ref_then(s23, ref_c), s23), ref_c);
  for (const auto& w : words_up_to(3, 5)) CHECK(act(sp.t, w) == ref_t(w));
}

TEST_CASE("restrict") {
  const auto& sp = special_elems();
  CHECK(restrict(sp.c, parse_word("3")) == sp.c);
  CHECK(is_identity(restrict(sp.c, parse_word("21"))));
  CHECK(restrict(sp.t, parse_word("2")) == sp.c * R("(2 3)"));
  CHECK(restrict(sp.t, {}) == sp.t);
  for (const auto& u : words_up_to(3, 2))
    for (const auto& v : words_up_to(3, 2)) {
      Word uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      CHECK(restrict(restrict(sp.t, u), v) == restrict(sp.t, uv));
    }
}

TEST_CASE("compose") {
  const auto& sp = special_elems();
  const Element s23 = R("(2 3)");
  const Element one = Element::identity(3);
  const Element built = Element::from_sections({one, sp.c * s23, s23 * sp.c}, Perm::identity(3));
  CHECK(product({s23, sp.c, s23, sp.c}, 3) == built);
  CHECK(is_identity(sp.c * sp.c));
  CHECK(act(g2_gens().a * g2_gens().b, parse_word("11")) == parse_word("21"));
  CHECK_THROWS_AS(compose(sp.c, g2_gens().a), Error);
}

TEST_CASE("inverse") {
  const auto& sp = special_elems();
  CHECK(inverse(R("(1 2 3)")) == R("(1 3 2)"));
  CHECK(inverse(sp.c) == sp.c);
  const Element one = Element::identity(3);
  const Element s23 = R("(2 3)");
  CHECK(inverse(sp.t) == Element::from_sections({one, s23 * sp.c, sp.c * s23}, Perm::identity(3)));
}

TEST_CASE("is_identity and equal") {
  const auto& sp = special_elems();
  CHECK(is_identity(sp.c * sp.c));
  CHECK_FALSE(is_identity(sp.t));
  const Element t2 = elem_tv(parse_word("2")), t3 = elem_tv(parse_word("3"));
  CHECK(is_identity(t2 * t3 * inverse(t2) * inverse(t3)));

  CHECK(equal(sp.t * t2, t2 * sp.t));
  const Element t231 = elem_tv(parse_word("231"));
  CHECK_FALSE(equal(sp.t * t231, t231 * sp.t));
  // the two products differ on the word 231222
  CHECK(act(sp.t * t231, parse_word("231222")) == parse_word("221222"));
  CHECK(act(t231 * sp.t, parse_word("231222")) == parse_word("221233"));
  CHECK_FALSE(equal(sp.t, inverse(sp.t)));
  CHECK_FALSE(is_identity(sp.t * sp.t));
  CHECK_THROWS_AS(equal(sp.t, g2_gens().a), Error);
}

TEST_CASE("canonicalize") {
  const Perm id = Perm::identity(3);
  const NamedRecursion redundant{
      3, {{"i0", id, {"i1", "i2", "i3"}}, {"i1", id, {"i2", "i3", "i4"}}, {"i2", id, {"i3", "i4", "i0"}},
          {"i3", id, {"i4", "i0", "i1"}}, {"i4", id, {"i0", "i1", "_"}}}};
  const Element e = build_element(redundant, "i0");
  CHECK(e.state_count() == 6);
  CHECK_FALSE(e.is_canonical());
  CHECK(canonicalize(e).state_count() == 1);

  const NamedRecursion unrolled{3,
                                {{"c0", id, {"_", "s", "c1"}},
                                 {"c1", id, {"_", "s2", "c0"}},
                                 {"s", P("(2 3)"), {"_", "_", "_"}},
                                 {"s2", P("(2 3)"), {"_", "_", "_"}}}};
  const Element cu = canonicalize(build_element(unrolled, "c0"));
  CHECK(cu.states() == special_elems().c.states());

  CHECK(canonicalize(elem_tv(parse_word("2"))).state_count() == 7);
  CHECK(canonicalize(cu).states() == cu.states());
}

TEST_CASE("states_of") {
  const auto c_states = states_of(special_elems().c);
  CHECK(c_states.size() == 3);
  CHECK(c_states[0] == special_elems().c);
  CHECK(std::count(c_states.begin(), c_states.end(), R("(2 3)")) == 1);
  CHECK(std::count(c_states.begin(), c_states.end(), Element::identity(3)) == 1);

  const auto b_states = states_of(grig("b"));
  CHECK(b_states.size() == 5);
  for (const char* n : {"a", "b", "c", "d"}) CHECK(std::count(b_states.begin(), b_states.end(), grig(n)) == 1);

  CHECK(states_of(R("(1 3)")).size() == 2);
}

TEST_CASE("psi and assemble") {
  const auto& sp = special_elems();
  const auto w = psi(sp.t);
  CHECK(w.root.is_identity());
  CHECK(is_identity(w.sections[0]));
  CHECK(w.sections[1] == sp.c * R("(2 3)"));
  CHECK(w.sections[2] == R("(2 3)") * sp.c);
  CHECK(assemble(w) == sp.t);
  const auto wc = psi(sp.c);
  CHECK(wc.sections[1] == R("(2 3)"));
  CHECK(wc.sections[2] == sp.c);
  const auto wr = psi(R("(1 3)"));
  CHECK(wr.root == P("(1 3)"));
  for (const auto& s : wr.sections) CHECK(is_identity(s));
}

TEST_CASE("randomized laws over G_3 generators") {
  std::mt19937 rng(7);
  const auto gens = mother_gens(3);
  for (int trial = 0; trial < 150; ++trial) {
    const Element g = random_product(rng, gens, 3);
    const Element h = random_product(rng, gens, 3);
    const Element k = random_product(rng, gens, 2);
    // convention pin and prefix preservation
    for (const auto& w : words_of_length(3, 4)) {
      const Word gw = act(g * h, w);
      CHECK(gw == act(h, act(g, w)));
      CHECK(Word(gw.begin(), gw.begin() + 2) == act(g * h, Word(w.begin(), w.begin() + 2)));
    }
    // cocycle rule
    for (Letter x = 1; x <= 3; ++x)
      CHECK(restrict(g * h, {x}) == restrict(g, {x}) * restrict(h, {g.root()(x)}));
    CHECK((g * h) * k == g * (h * k));
    CHECK(is_identity(g * inverse(g)));
    CHECK(canonicalize(canonicalize(g)).states() == canonicalize(g).states());
    CHECK(is_identity(g) == acts_trivially_up_to(g, static_cast<int>(g.state_count())));
    CHECK((g == h) == (canonicalize(g).states() == canonicalize(h).states()));
  }
}

TEST_CASE("interner deduplicates") {
  Interner in;
  const auto& sp = special_elems();
  CHECK(in.intern(sp.c).second);
  CHECK_FALSE(in.intern(sp.c * sp.t * inverse(sp.t)).second);
  CHECK(in.contains(sp.c));
  CHECK(in.size() == 1);
}
