#include "wreathkit/relations.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_set>

#include "wreathkit/mother.hpp"

namespace wreathkit {

namespace {

// t_v is rebuilt constantly during audits; memoize.
const Element& tv(const Word& v) {
  static std::mutex mu;
  static std::map<Word, Element> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(v);
  if (it == cache.end()) it = cache.emplace(v, elem_tv(v)).first;
  return it->second;
}

Element signed_tv(const Word& v, int sign) { return sign > 0 ? tv(v) : inverse(tv(v)); }

Word cat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Word threes(std::size_t n) { return Word(n, 3); }

bool is_prefix(const Word& p, const Word& w) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

void check_sign(int e) {
  if (e != 1 && e != -1) throw Error("exponent must be +1 or -1");
}

std::vector<Word> words_of_length(int n) {
  std::vector<Word> out{{}};
  for (int i = 0; i < n; ++i) {
    std::vector<Word> next;
    for (const auto& w : out)
      for (Letter x = 1; x <= 3; ++x) next.push_back(cat(w, {x}));
    out.swap(next);
  }
  return out;
}

}  // namespace

Element to_element(const FormalGenerator& g) {
  check_sign(g.exponent);
  return signed_tv(g.v, g.exponent);
}

std::string to_string(const FormalGenerator& g) {
  return "t_" + (g.v.empty() ? std::string("{}") : word_to_string(g.v)) + (g.exponent < 0 ? "^-1" : "");
}

Letter hat(Letter a) {
  if (a == 2) return 3;
  if (a == 3) return 2;
  if (a == 1) return 1;
  throw Error("hat: letter out of range");
}

std::optional<ClausePrediction> pattern_clause(const Word& v) {
  const std::size_t n = v.size();
  if (n == 0) return std::nullopt;
  if (n == 1) return ClausePrediction{"x", v, 1};
  if (n == 2) return ClausePrediction{"ab", {v[0], hat(v[1])}, -1};

  const Word rest(v.begin() + 3, v.end());
  if (v[0] == 2 && v[1] == 3) return ClausePrediction{"23 a v", cat({2, 2, hat(v[2])}, rest), 1};
  if (v[0] == 3 && v[1] == 2) return ClausePrediction{"32 a v", cat({3, 3, hat(v[2])}, rest), 1};
  if (v[0] != v[1] || v[0] == 1) return std::nullopt;

  // v = 22 3^k ... or 33 3^k ...
  const bool two = v[0] == 2;
  std::size_t i = 2;
  while (i < n && v[i] == 3) ++i;
  const std::size_t k = i - 2;
  if (i == n) {
    if (two) return ClausePrediction{"22 3^n", cat({2, 3}, threes(k)), -1};
    return ClausePrediction{"3^n", cat({3, 2}, threes(n - 2)), -1};
  }
  if (v[i] != 2) return std::nullopt;
  const Word head = two ? Word{2, 3} : Word{3, 2};
  const std::string base = two ? "22 3^n 2" : "33 3^n 2";
  if (i + 1 == n) return ClausePrediction{base, cat(cat(head, threes(k)), {2}), -1};
  const Word tail(v.begin() + static_cast<std::ptrdiff_t>(i) + 2, v.end());
  return ClausePrediction{base + " a v", cat(cat(cat(head, threes(k)), {2, hat(v[i + 1])}), tail), 1};
}

std::optional<ClausePrediction> stated_clause(const Word& v) {
  if (std::find(v.begin(), v.end(), 1) != v.end()) return ClausePrediction{"contains-1", v, 1};
  return pattern_clause(v);
}

ConjImage conj_by_t(const Word& v, int e) {
  check_sign(e);
  const Element& t = special_elems().t;
  const Element te = e > 0 ? t : inverse(t);
  const Element g = te * tv(v) * inverse(te);
  const Element t_inv = inverse(t);

  // t_{v'}^{+-1} is trivial off the path to v' and equals t^{+-1} at v'.
  Word w;
  const std::size_t max_depth = v.size() + g.state_count() + 1;
  for (std::size_t depth = 0; depth <= max_depth; ++depth) {
    const Element h = restrict(g, w);
    int sign = 0;
    if (h == t) sign = 1;
    else if (h == t_inv) sign = -1;
    if (sign != 0) {
      if (!equal(g, signed_tv(w, sign))) break;
      return {w, sign};
    }
    if (!h.root().is_identity()) break;
    Letter next = 0;
    for (Letter x = 1; x <= 3; ++x) {
      if (is_identity(restrict(h, {x}))) continue;
      if (next != 0) {
        next = -1;
        break;
      }
      next = x;
    }
    if (next <= 0) break;
    w.push_back(next);
  }
  throw Error("conjugate of t_" + word_to_string(v) + " is not a single generator");
}

Relation relation_for(const Word& v) {
  const ConjImage img = conj_by_t(v, 1);
  Relation r{v, img.v, img.sign, "", false};
  if (const auto c = stated_clause(v)) {
    r.paper_case = c->clause;
    r.agrees_with_paper = c->v == img.v && c->sign == img.sign;
  }
  return r;
}

std::size_t AuditReport::hard_failures() const {
  std::size_t n = 0;
  for (const auto& [clause, tally] : tallies)
    if (clause != "contains-1") n += tally.failed;
  return n;
}

AuditReport audit_prop41(int max_prefix, int max_suffix, int incomparable_len) {
  if (max_prefix < 0 || max_suffix < 1 || incomparable_len < 0) throw Error("audit bounds out of range");
  AuditReport rep;
  rep.max_prefix = max_prefix;
  rep.max_suffix = max_suffix;

  std::map<Word, std::optional<ConjImage>> truth;
  auto ground_truth = [&](const Word& v) -> std::optional<ConjImage> {
    auto it = truth.find(v);
    if (it != truth.end()) return it->second;
    std::optional<ConjImage> img;
    try {
      img = conj_by_t(v, 1);
    } catch (const Error&) {
    }
    if (!img || img->v.size() != v.size()) rep.length_preserved = false;
    truth.emplace(v, img);
    return img;
  };

  for (int lp = 0; lp <= max_prefix; ++lp)
    for (const Word& w1 : words_of_length(lp)) {
      const Element& t1 = tv(w1);
      for (int ls = 1; ls <= max_suffix; ++ls)
        for (const Word& v : words_of_length(ls)) {
          const auto claim = stated_clause(v);
          const Word w2 = cat(w1, v);
          const auto gt = ground_truth(v);
          const bool ok =
              equal(t1 * tv(w2), signed_tv(cat(w1, claim->v), claim->sign) * t1);
          auto& tally = rep.tallies[claim->clause];
          ++tally.checked;
          ++(ok ? tally.passed : tally.failed);
          if (ok) continue;
          AuditEntry e{claim->clause, w1, w2, claim->v, claim->sign, gt.value_or(ConjImage{{}, 0}), false};
          if (const auto pat = pattern_clause(v); pat && gt) e.truth_matches_pattern = pat->v == gt->v && pat->sign == gt->sign;
          rep.failures.push_back(std::move(e));
        }
    }

  std::vector<Word> all;
  for (int l = 1; l <= incomparable_len; ++l)
    for (auto& w : words_of_length(l)) all.push_back(std::move(w));
  auto& inc = rep.tallies["incomparable"];
  for (const Word& a : all)
    for (const Word& b : all) {
      if (!(a < b) || is_prefix(a, b) || is_prefix(b, a)) continue;
      ++inc.checked;
      if (tv(a) * tv(b) == tv(b) * tv(a)) {
        ++inc.passed;
      } else {
        ++inc.failed;
        rep.failures.push_back({"incomparable", a, b, {}, 1, {}, false});
      }
    }

  std::stable_sort(rep.failures.begin(), rep.failures.end(), [](const AuditEntry& x, const AuditEntry& y) {
    if (x.w1.size() != y.w1.size()) return x.w1.size() < y.w1.size();
    if (x.w1 != y.w1) return x.w1 < y.w1;
    if (x.w2.size() != y.w2.size()) return x.w2.size() < y.w2.size();
    return x.w2 < y.w2;
  });
  return rep;
}

FormalGenerator jmap(Letter i, const FormalGenerator& g) {
  if (i < 1 || i > 3) throw Error("jmap: index must be 1..3");
  return {cat({i}, g.v), g.exponent};
}

Relation normality_witness(const Word& v) {
  if (v.empty()) throw Error("normality_witness needs a nonempty word");
  const ConjImage img = conj_by_t(v, -1);
  return {v, img.v, img.sign, "normality", img.v.size() == v.size()};
}

bool conj_closure_check(int n, int kmax_len) {
  if (n < 0 || n > kmax_len) throw Error("conj_closure_check: need 0 <= n <= kmax_len");
  for (int l = 1; l <= n; ++l)
    for (const Word& v : words_of_length(l))
      for (int e : {1, -1}) {
        try {
          if (conj_by_t(v, e).v.size() != v.size()) return false;
        } catch (const Error&) {
          return false;
        }
      }
  return true;
}

std::string to_string(ProbeStatus s) {
  switch (s) {
    case ProbeStatus::Found: return "found";
    case ProbeStatus::NotFoundWithinBounds: return "not-found-within-bounds";
    case ProbeStatus::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

ProbeResult quotient_probe(int n, int kmax, int search_weight, bool include_t, std::size_t node_budget) {
  if (n < 0 || kmax < 0 || search_weight < 0) throw Error("quotient_probe: negative bound");
  if (kmax == 0) return {ProbeStatus::Found, 0, 0};

  std::vector<Element> gens;
  if (include_t) gens.push_back(tv({}));
  for (int l = 1; l <= n; ++l)
    for (const Word& v : words_of_length(l)) gens.push_back(tv(v));
  for (std::size_t i = 0, m = gens.size(); i < m; ++i) gens.push_back(inverse(gens[i]));

  std::vector<Element> targets;
  Element acc = Element::identity(3);
  for (int k = 1; k <= kmax; ++k) targets.push_back(acc = acc * tv({}));

  std::unordered_set<Element, ElementHash> seen{Element::identity(3)};
  std::vector<Element> frontier{Element::identity(3)};
  ProbeResult res;
  bool exhausted = false;
  for (int r = 1; r <= search_weight && !exhausted; ++r) {
    std::vector<Element> next;
    for (const auto& g : frontier) {
      for (const auto& s : gens) {
        Element h = g * s;
        if (!seen.insert(h).second) continue;
        next.push_back(std::move(h));
        if (seen.size() > node_budget) {
          exhausted = true;
          break;
        }
      }
      if (exhausted) break;
    }
    frontier.swap(next);
  }
  res.explored = seen.size();
  for (int k = 1; k <= kmax; ++k)
    if (seen.count(targets[static_cast<std::size_t>(k - 1)])) {
      res.status = ProbeStatus::Found;
      res.k = k;
      return res;
    }
  res.status = exhausted ? ProbeStatus::BudgetExhausted : ProbeStatus::NotFoundWithinBounds;
  return res;
}

}  // namespace wreathkit
