#include "wreathkit/suite.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include "wreathkit/embedder.hpp"
#include "wreathkit/metrics.hpp"
#include "wreathkit/mother.hpp"
#include "wreathkit/relations.hpp"
#include "wreathkit/sidki.hpp"

namespace wreathkit {

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  // Records a failed check; the first few names go into the detail line.
  void check(bool cond, const std::string& what) {
    if (cond) return;
    if (ok || failures < 3) detail << (failures ? "; " : "failed: ") << what;
    ok = false;
    ++failures;
  }
  int failures = 0;
};

Perm P(const char* cycles) { return Perm::parse(cycles, 3); }
Element R(const char* cycles) { return Element::rootwise(P(cycles)); }

Element random_product(std::mt19937& rng, const std::vector<Element>& gens, int k) {
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  Element e = Element::identity(gens.front().alphabet());
  for (int i = 0; i < k; ++i) e = e * gens[pick(rng)];
  return e;
}

// Pruned level enumeration: level-n vertices whose section is nontrivial.
std::vector<std::uint64_t> enumerated_activity(const Element& g, int levels) {
  std::vector<std::uint64_t> out;
  std::vector<Word> frontier;
  if (!is_identity(g)) frontier.push_back({});
  for (int n = 0; n <= levels; ++n) {
    out.push_back(frontier.size());
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (Letter x = 1; x <= g.alphabet(); ++x) {
        Word wx = w;
        wx.push_back(x);
        if (!is_identity(restrict(g, wx))) next.push_back(std::move(wx));
      }
    if (next.size() > 100000) throw Error("activity enumeration: frontier too large");
    frontier.swap(next);
  }
  return out;
}

// g and h agree on every vertex: walk the raw state tables in lockstep, level
// by level, until no new pair of states appears. Uses no minimization.
bool same_action(const Element& g, const Element& h) {
  std::set<std::pair<StateId, StateId>> seen{{0, 0}};
  std::vector<std::pair<StateId, StateId>> level{{0, 0}};
  while (!level.empty()) {
    std::vector<std::pair<StateId, StateId>> next;
    for (auto [s, t] : level) {
      if (g.state(s).root != h.state(t).root) return false;
      for (std::size_t x = 0; x < g.state(s).children.size(); ++x) {
        const std::pair<StateId, StateId> p{g.state(s).children[x], h.state(t).children[x]};
        if (seen.insert(p).second) next.push_back(p);
      }
    }
    level.swap(next);
  }
  return true;
}

Outcome wreath_identity() {
  Outcome o;
  const Element c = build_element({3, {{"c", Perm::identity(3), {"_", "s", "c"}}, {"s", P("(2 3)"), {"_", "_", "_"}}}}, "c");
  const Element s = R("(2 3)");
  const Element lhs = product({s, c, s, c}, 3);
  const Element rhs = Element::from_sections({Element::identity(3), c * s, s * c}, Perm::identity(3));
  o.check(lhs == rhs, "(23)c(23)c != (1, c(23), (23)c)");
  return o;
}

Outcome ladder() {
  Outcome o;
  const auto& sp = special_elems();
  const Element one = Element::identity(3);
  const Element one_one_t = Element::from_sections({one, one, sp.t}, Perm::identity(3));
  o.check(sp.c * sp.c_tilde == sp.c_tilde * sp.c, "c ctilde != ctilde c");
  o.check(power(R("(2 3)") * sp.c * R("(2 3)") * sp.c_tilde, 2) == one_one_t, "[(23)c(23)ctilde]^2 != (1,1,t)");
  o.check(sp.t * (sp.c_tilde * inverse(sp.t) * sp.c_tilde) == one_one_t, "t(ctilde t^-1 ctilde) != (1,1,t)");
  return o;
}

Outcome eq7() {
  Outcome o;
  const auto has = [](const Eq7Result& r, const char* s2p, const char* a, const char* s1p) {
    for (const auto& s : r.all)
      if (s.s1.is_identity() && s.s2p == P(s2p) && s.a == P(a) && s.s1p == P(s1p)) return true;
    return false;
  };
  o.check(has(solve_eq7(P("(1 2 3)")), "(1 2)", "(1 2)", "(2 3)"), "(12)(12)(12)(23)(12)(23) missing for (123)");
  o.check(has(solve_eq7(P("(1 3 2)")), "(1 2)", "(1 2)", "(1 3)"), "(12)(12)(12)(13)(12)(13) missing for (132)");
  const Element one = Element::identity(3);
  for (const auto& omega : alternating3()) {
    const Element g = psi_preimage_A3(omega);
    const auto w = psi(g);
    o.check(in_stab1(g) && w.sections[0] == Element::rootwise(omega) && w.sections[1] == one && w.sections[2] == one,
            "psi(g) != (" + omega.to_string() + ",1,1)");
  }
  return o;
}

Outcome audit() {
  Outcome o;
  const auto r = audit_prop41(2, 5);
  o.check(r.hard_failures() == 0, std::to_string(r.hard_failures()) + " pattern-clause failures");
  o.check(r.length_preserved, "a conjugate left the family of same-length generators");
  bool reported = false;
  for (const auto& e : r.failures)
    if (e.clause == "contains-1" && e.truth.v == parse_word("221") && e.w2.size() >= 3 &&
        Word(e.w2.end() - 3, e.w2.end()) == parse_word("231"))
      reported = true;
  o.check(reported, "discrepancy at v = 231 not reported");
  o.check(conj_by_t(parse_word("231"), 1) == ConjImage{parse_word("221"), 1}, "t t_231 t^-1 != t_221");
  std::size_t soft = r.failures.size() - r.hard_failures();
  o.detail << (o.ok ? "" : "; ") << "0 pattern failures, " << soft << " contains-1 discrepancies";
  return o;
}

Outcome bijection() {
  Outcome o;
  for (int k = 1; k <= 4; ++k) {
    std::set<Word> images;
    std::vector<Word> words{{}};
    for (int i = 0; i < k; ++i) {
      std::vector<Word> next;
      for (const auto& w : words)
        for (Letter x = 1; x <= 3; ++x) {
          Word wx = w;
          wx.push_back(x);
          next.push_back(std::move(wx));
        }
      words.swap(next);
    }
    for (const auto& v : words) {
      const auto img = conj_by_t(v, 1);
      o.check(img.v.size() == v.size(), "length changed at " + word_to_string(v));
      o.check(conj_by_t(img.v, -1) == ConjImage{v, img.sign}, "round trip failed at " + word_to_string(v));
      images.insert(img.v);
    }
    o.check(images.size() == words.size(), "not a bijection at k = " + std::to_string(k));
  }
  return o;
}

Outcome commuting() {
  Outcome o;
  std::vector<Element> S;
  for (const char* v : {"2", "3", "12", "13", "112", "113", "1112", "1113"}) S.push_back(elem_tv(parse_word(v)));
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = i + 1; j < S.size(); ++j) o.check(S[i] * S[j] == S[j] * S[i], "S does not commute");
  const Element t = special_elems().t;
  Element tk = t;
  for (int k = 1; k <= 32; ++k, tk = tk * t) o.check(!is_identity(tk), "t^" + std::to_string(k) + " = 1");

  const auto& g2 = g2_gens();
  o.check(embed_up(g2.a * g2.b * g2.a * g2.b) == t, "phi(abab) != t");
  std::mt19937 rng(38);
  const std::vector<Element> gens{g2.a, g2.b};
  for (int i = 0; i < 100; ++i) {
    const Element g = random_product(rng, gens, 1 + i % 8), h = random_product(rng, gens, 1 + (i * 5) % 8);
    o.check(embed_up(g * h) == embed_up(g) * embed_up(h), "phi(gh) != phi(g)phi(h)");
  }
  return o;
}

Outcome classifier() {
  Outcome o;
  std::mt19937 rng(20);
  const auto gens = mother_gens(3);
  int cases = 0;
  for (int i = 0; i < 600; ++i) {
    const Element g = random_product(rng, gens, 1 + i % 3);
    const auto k = classify(g);
    const int horizon = 2 * static_cast<int>(canonicalize(g).state_count());
    const auto counts = enumerated_activity(g, horizon);
    o.check(k.bounded(), "bounded element classified unbounded");
    o.check(k.max_activity == *std::max_element(counts.begin(), counts.end()), "max activity differs");
    for (int n = 0; n <= horizon; ++n)
      o.check(activity(g, n) == counts[static_cast<std::size_t>(n)], "activity differs at level " + std::to_string(n));
    ++cases;
  }
  const NamedRecursion grig{2,
                            {{"a", Perm::parse("(1 2)", 2), {"_", "_"}},
                             {"b", Perm::identity(2), {"a", "c"}},
                             {"c", Perm::identity(2), {"a", "d"}},
                             {"d", Perm::identity(2), {"_", "b"}}}};
  const auto a = classify(build_element(grig, "a"));
  o.check(a.kind == Kind::Finitary && a.finitary_depth == 1, "a is not finitary of depth 1");
  for (const char* n : {"b", "c", "d"}) {
    const auto k = classify(build_element(grig, n));
    o.check(k.kind == Kind::Directed && k.period == 3, std::string(n) + " is not directed of period 3");
  }
  o.detail << (o.ok ? "" : "; ") << cases << " sampled products";
  return o;
}

Outcome embedding() {
  Outcome o;
  const NamedRecursion grig{2,
                            {{"a", Perm::parse("(1 2)", 2), {"_", "_"}},
                             {"b", Perm::identity(2), {"a", "c"}},
                             {"c", Perm::identity(2), {"a", "d"}},
                             {"d", Perm::identity(2), {"_", "b"}}}};
  std::vector<Element> gens;
  for (const char* n : {"a", "b", "c", "d"}) gens.push_back(build_element(grig, n));
  try {
    const auto g = embed_pipeline(gens, {"a", "b", "c", "d"});
    o.check(g.analysis.l == 3, "l != 3");
    o.check(g.final_alphabet == 8, "final alphabet " + std::to_string(g.final_alphabet));
    for (const auto& c : g.certificates) {
      o.check(c.pass && recheck(c), "certificate " + c.label);
      if (c.kind == "directed") o.check(mother_form_check(c.element, c.o).ok, "mother form " + c.label);
    }
    o.check(embed_pipeline({special_elems().c}).final_alphabet == 3, "{c} not over 3 letters");
    o.check(embed_pipeline({gens[0]}).all_pass(), "{a} failed");
  } catch (const Error& e) {
    o.check(false, e.what());
  }
  return o;
}

Outcome metrics() {
  Outcome o;
  const auto& g2 = g2_gens();
  const auto b2 = ball_growth(WeightedGenSet::unit({g2.a, g2.b}, {"a", "b"}), 3);
  o.check(b2.status == SearchStatus::Complete && b2.sizes == std::vector<std::uint64_t>{1, 3, 5, 7}, "G_2 ball sizes");
  const auto b3 = ball_growth(WeightedGenSet::unit(mother_gens(3)), 1);
  o.check(b3.sizes.size() == 2 && b3.sizes[1] == 77, "|B(1)| != 77 in G_3");
  for (int n = 0; n <= 1; ++n) {
    std::vector<Word> samples{{}};
    for (int i = 0; i <= n; ++i) {
      std::vector<Word> next;
      for (const auto& w : samples)
        for (Letter x = 1; x <= 3; ++x) {
          Word wx = w;
          wx.push_back(x);
          next.push_back(std::move(wx));
        }
      samples.swap(next);
    }
    const auto r = coset_separation_check(n, samples);
    o.check(r.all_separated(), "coset separation fails at n = " + std::to_string(n));
  }
  return o;
}

Outcome infrastructure() {
  Outcome o;
  std::mt19937 rng(10);
  const auto gens = mother_gens(3);
  std::uniform_int_distribution<int> len(1, 3), letter(1, 3), coin(0, 3);
  int equal_pairs = 0;
  for (int i = 0; i < 1000; ++i) {
    const Element g = random_product(rng, gens, len(rng));
    const Element k = random_product(rng, gens, len(rng));
    const Element h = coin(rng) == 0 ? g * k * inverse(k) : random_product(rng, gens, len(rng));
    const Element cg = canonicalize(g);
    o.check(canonicalize(cg).states() == cg.states(), "canonicalize not idempotent");

    const bool truth = same_action(g, h);
    equal_pairs += truth;
    o.check((g == h) == truth, "equal disagrees with the lockstep oracle");
    o.check((cg.states() == canonicalize(h).states()) == truth, "canonical forms disagree with the oracle");
    o.check(is_identity(g * inverse(h)) == truth, "is_identity disagrees with the oracle");

    Word w;
    for (int j = 0; j < 6; ++j) w.push_back(letter(rng));
    o.check(act(g * h, w) == act(h, act(g, w)), "act(gh, w) != act(h, act(g, w))");
    const Word u(w.begin(), w.begin() + 2);
    o.check(restrict(g * h, u) == restrict(g, u) * restrict(h, act(g, u)), "cocycle rule");
  }
  o.detail << (o.ok ? "" : "; ") << equal_pairs << " equal pairs among 1000";
  return o;
}

struct Criterion {
  const char* name;
  double limit_seconds;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"wreath identity t = (23)c(23)c", 0.001, wreath_identity},
    {"c/ctilde ladder", 0.010, ladder},
    {"eq7 solutions and A_3 preimages", 1.0, eq7},
    {"relation audit, prefixes <= 2, suffixes <= 5", 60.0, audit},
    {"conjugation bijection, k <= 4", 30.0, bijection},
    {"commuting family, infinite order of t, phi", 10.0, commuting},
    {"classifier vs level enumeration", 120.0, classifier},
    {"embedding compiler", 30.0, embedding},
    {"ball growth and coset separation", 120.0, metrics},
    {"infrastructure invariants", 60.0, infrastructure},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(int only, const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int i = 0; i < static_cast<int>(std::size(kCriteria)); ++i) {
    if (only != 0 && only != i + 1) continue;
    const auto& c = kCriteria[i];
    CriterionResult r;
    r.id = i + 1;
    r.name = c.name;
    r.limit_seconds = c.limit_seconds;
    const auto start = std::chrono::steady_clock::now();
    try {
      auto o = c.run();
      r.checks_ok = o.ok;
      r.detail = o.detail.str();
    } catch (const std::exception& e) {
      r.checks_ok = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.checks_ok && !r.pass()) r.detail += (r.detail.empty() ? "" : "; ") + std::string("over time limit");
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  char timing[64];
  std::snprintf(timing, sizeof timing, "(%.4f s / limit %g s)", r.seconds, r.limit_seconds);
  std::string line = std::string(r.pass() ? "PASS" : "FAIL") + "  " + std::to_string(r.id) + " " + r.name + " " + timing;
  if (!r.detail.empty()) line += " - " + r.detail;
  return line;
}

}  // namespace wreathkit
