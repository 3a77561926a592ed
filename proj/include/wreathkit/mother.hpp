#pragma once

#include <array>
#include <optional>
#include <vector>

#include "wreathkit/machine.hpp"

namespace wreathkit {

/// Generators S_d u B_d of the mother group G_d, as canonical elements,
/// duplicates removed (the identity is kept once). Rootwise generators come
/// first in canonical-cycle order, then B-type generators.
std::vector<Element> mother_gens(int d);

/// The B-type generator b = (b_1, ..., b_{d-1}, b) sigma, where sigma is a
/// permutation of degree d-1 acting on the first d-1 letters.
Element b_gen(int d, const std::vector<Perm>& parts, const Perm& sigma);

/// Natural embedding G_d -> G_{d+1}: letter k becomes k+1, the new letter 1
/// is fixed and carries the identity section.
Element embed_up(const Element& g);

/// The G_3 elements c = (1, (23), c), t = (23) c (23) c and
/// ctilde = (12) c (12) = ((23), 1, c).
struct SpecialElements {
  Element c;
  Element t;
  Element c_tilde;
};
const SpecialElements& special_elems();

/// t_v: t for the empty word, and t_{xv} carries t_v at letter x.
Element elem_tv(const Word& v);

/// The generators a = (1,1)(12) and b = ((12), b) of G_2.
struct G2Gens {
  Element a;
  Element b;
};
const G2Gens& g2_gens();

/// One solution of (s2' a s2'^-1)(s1' a^-1 s1'^-1) = s1^-1 omega s1 and the
/// full eight-permutation tuple obtained from it. Primes are spelled
/// p (') , pp ('') and ppp (''').
struct Eq7Solution {
  Perm s1, s1p, s2p, a;
  // complete tuple
  Perm s2, s1pp, s2pp, s1ppp, s2ppp;
};

struct Eq7Result {
  Eq7Solution chosen;
  std::vector<Eq7Solution> all;  // every (s1, s1', s2', a) in S_3^4 that works
};

/// Brute force over S_3^4. `omega` must lie in A_3. The chosen solution
/// prefers s1 = 1, s2' = a, then involutive a and s1', then canonical order.
Eq7Result solve_eq7(const Perm& omega);

/// The explicit element X1 (12) X2 (12) X3 (12) X4 (12) with
/// X_k = b_gen(3, {s1^(k), s2^(k)}, 1) built from a tuple.
Element assemble_eq7_product(const Eq7Solution& s);

/// g in Stab(1) with psi(g) = (omega, 1, 1); verified before returning.
Element psi_preimage_A3(const Perm& omega);

/// Elements of A_3 = {(), (1 2 3), (1 3 2)}.
std::vector<Perm> alternating3();

bool in_stab1(const Element& g);

/// Shortest (then lexicographically first by generator index) word over
/// mother_gens(3) of length <= radius whose value h lies in Stab(1) with
/// psi(h).sections[coord-1] == target. The search is over pairs
/// (root action, section at the tracked coordinate), which determine
/// exactly the two conditions tested.
struct PreimageWitness {
  Element element;
  std::vector<std::size_t> word;  // indices into mother_gens(3)
};
std::optional<PreimageWitness> stab1_preimage(const Element& target, int coord, int radius,
                                              std::size_t node_budget = 10'000'000);

}  // namespace wreathkit
