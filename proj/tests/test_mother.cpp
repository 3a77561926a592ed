#include "doctest.h"

#include "fixtures.hpp"

using namespace fixtures;

TEST_CASE("mother_gens") {
  const auto g3 = mother_gens(3);
  CHECK(g3.size() == 77);  // |S_3| + |B_3| - 1 shared identity = 6 + 72 - 1
  const auto g2 = mother_gens(2);
  CHECK(g2.size() == 3);
  CHECK(std::count(g2.begin(), g2.end(), g2_gens().a) == 1);
  CHECK(std::count(g2.begin(), g2.end(), g2_gens().b) == 1);
  // rootwise generators come first, then the B-type ones
  for (std::size_t i = 6; i < g3.size(); ++i) {
    CHECK(restrict(g3[i], {3}) == g3[i]);
    CHECK(g3[i].root()(3) == 3);
  }
  CHECK_THROWS_AS(mother_gens(1), Error);
}

TEST_CASE("b_gen") {
  const Perm id3 = Perm::identity(3), id2 = Perm::identity(2);
  CHECK(b_gen(3, {id3, P("(2 3)")}, id2) == special_elems().c);
  CHECK(is_identity(b_gen(3, {id3, id3}, id2)));
  CHECK(b_gen(2, {P("(1 2)", 2)}, Perm::identity(1)) == g2_gens().b);
  const Element b = b_gen(3, {P("(1 2)"), P("(1 3)")}, P("(1 2)", 2));
  CHECK(restrict(b, {3}) == b);
  CHECK(b.root() == P("(1 2)"));
  CHECK_THROWS_AS(b_gen(3, {id3}, id2), Error);
  CHECK_THROWS_AS(b_gen(3, {id3, id3}, id3), Error);
}

TEST_CASE("embed_up") {
  const auto& g2 = g2_gens();
  const auto& sp = special_elems();
  CHECK(embed_up(g2.b) == sp.c);
  CHECK(embed_up(g2.a) == R("(2 3)"));
  CHECK(embed_up(g2.a * g2.b * g2.a * g2.b) == sp.t);

  std::mt19937 rng(3);
  const auto gens = mother_gens(2);
  for (int i = 0; i < 40; ++i) {
    const Element g = random_product(rng, gens, 4), h = random_product(rng, gens, 4);
    CHECK(embed_up(g * h) == embed_up(g) * embed_up(h));
    CHECK(is_identity(embed_up(g)) == is_identity(g));
    CHECK(is_identity(restrict(embed_up(g), {1})));
  }
}

TEST_CASE("special elements") {
  const auto& sp = special_elems();
  const Element one = Element::identity(3);
  CHECK(sp.c_tilde == Element::from_sections({R("(2 3)"), one, sp.c}, Perm::identity(3)));
  CHECK(sp.c * sp.c_tilde == sp.c_tilde * sp.c);
  const Element one_one_t = Element::from_sections({one, one, sp.t}, Perm::identity(3));
  CHECK(sp.t * (sp.c_tilde * inverse(sp.t) * sp.c_tilde) == one_one_t);
  CHECK(power(R("(2 3)") * sp.c * R("(2 3)") * sp.c_tilde, 2) == one_one_t);
}

TEST_CASE("elem_tv") {
  const auto& sp = special_elems();
  const Element one = Element::identity(3);
  CHECK(elem_tv({}) == sp.t);
  CHECK(elem_tv({1}) == Element::from_sections({sp.t, one, one}, Perm::identity(3)));
  CHECK(elem_tv({2, 3}) == Element::from_sections({one, elem_tv({3}), one}, Perm::identity(3)));
  const Element t23 = elem_tv({2, 3});
  for (const auto& w : words_up_to(3, 4))
    if (w.size() < 2 || w[0] != 2 || w[1] != 3) CHECK(act(t23, w) == w);
  CHECK_THROWS_AS(elem_tv({4}), Error);
}

TEST_CASE("commuting family and infinite order") {
  std::vector<Element> family;
  for (const char* v : {"2", "3", "12", "13", "112", "113", "1112", "1113"}) family.push_back(elem_tv(parse_word(v)));
  for (const auto& x : family)
    for (const auto& y : family) CHECK(x * y == y * x);
  Element acc = special_elems().t;
  for (int k = 1; k <= 32; ++k, acc = acc * special_elems().t) CHECK_FALSE(is_identity(acc));
}

TEST_CASE("psi is a homomorphism on generator products") {
  std::mt19937 rng(5);
  const auto gens = mother_gens(3);
  for (int i = 0; i < 60; ++i) {
    const Element g = random_product(rng, gens, 2), h = random_product(rng, gens, 2);
    const auto pg = psi(g), ph = psi(h), pgh = psi(g * h);
    CHECK(pgh.root == pg.root * ph.root);
    for (int x = 1; x <= 3; ++x)
      CHECK(pgh.sections[static_cast<std::size_t>(x - 1)] ==
            pg.sections[static_cast<std::size_t>(x - 1)] * ph.sections[static_cast<std::size_t>(pg.root(x) - 1)]);
  }
}

TEST_CASE("solve_eq7") {
  const auto r123 = solve_eq7(P("(1 2 3)"));
  CHECK(r123.chosen.s1.is_identity());
  CHECK(r123.chosen.s2p == P("(1 2)"));
  CHECK(r123.chosen.s1p == P("(2 3)"));
  CHECK(r123.chosen.a == P("(1 2)"));

  const auto r132 = solve_eq7(P("(1 3 2)"));
  CHECK(r132.chosen.s1.is_identity());
  CHECK(r132.chosen.s2p == P("(1 2)"));
  CHECK(r132.chosen.s1p == P("(1 3)"));
  CHECK(r132.chosen.a == P("(1 2)"));

  const auto r1 = solve_eq7(Perm::identity(3));
  for (const Perm* p : {&r1.chosen.s1, &r1.chosen.s1p, &r1.chosen.s2p, &r1.chosen.a, &r1.chosen.s2,
                        &r1.chosen.s1pp, &r1.chosen.s2pp, &r1.chosen.s1ppp, &r1.chosen.s2ppp})
    CHECK(p->is_identity());

  // every recorded solution satisfies the equation
  for (const auto& omega : alternating3())
    for (const auto& s : solve_eq7(omega).all)
      CHECK((s.s2p * s.a * s.s2p.inverse()) * (s.s1p * s.a.inverse() * s.s1p.inverse()) ==
            s.s1.inverse() * omega * s.s1);
  CHECK_THROWS_AS(solve_eq7(P("(1 2)")), Error);
}

TEST_CASE("psi_preimage_A3") {
  const Element one = Element::identity(3);
  for (const auto& omega : alternating3()) {
    const Element g = psi_preimage_A3(omega);
    CHECK(in_stab1(g));
    const auto w = psi(g);
    CHECK(w.sections[0] == Element::rootwise(omega));
    CHECK(w.sections[1] == one);
    CHECK(w.sections[2] == one);
    for (const auto& v : words_of_length(3, 1)) CHECK(act(g, v) == v);
  }
  CHECK(is_identity(psi_preimage_A3(Perm::identity(3))));
}

TEST_CASE("stab1_preimage") {
  const auto& sp = special_elems();
  auto w = stab1_preimage(sp.c, 3, 1);
  REQUIRE(w);
  CHECK(w->element == sp.c);
  w = stab1_preimage(R("(2 3)"), 2, 1);
  REQUIRE(w);
  CHECK(w->element == sp.c);

  // explicit witness for t at coordinate 3: t (ctilde t^-1 ctilde) = (1, 1, t)
  const Element ladder = sp.t * sp.c_tilde * inverse(sp.t) * sp.c_tilde;
  CHECK(in_stab1(ladder));
  CHECK(restrict(ladder, {3}) == sp.t);
  CHECK_FALSE(stab1_preimage(sp.t, 3, 5).has_value());
  // the shortest witness has length 8; the full search takes minutes, so
  // only the word it returns is re-checked here
  const auto gens = mother_gens(3);
  std::vector<Element> factors;
  for (int rep = 0; rep < 2; ++rep)
    for (std::size_t k : {1, 65, 3, 15}) factors.push_back(gens[k]);
  const Element found = product(factors, 3);
  CHECK(in_stab1(found));
  CHECK(restrict(found, {3}) == sp.t);
  CHECK_THROWS_AS(stab1_preimage(sp.t, 3, 8, 1000), Error);
}
