#include "wreathkit/embedder.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace wreathkit {

namespace {

std::vector<Word> all_words(int d, int n) {
  std::vector<Word> out{{}};
  for (int i = 0; i < n; ++i) {
    std::vector<Word> next;
    next.reserve(out.size() * static_cast<std::size_t>(d));
    for (const auto& w : out)
      for (Letter x = 1; x <= d; ++x) {
        Word wx = w;
        wx.push_back(x);
        next.push_back(std::move(wx));
      }
    out.swap(next);
  }
  return out;
}

int checked_power(int d, int l) {
  long long n = 1;
  for (int i = 0; i < l; ++i) {
    n *= d;
    if (n > (1 << 16)) throw Error("block alphabet too large (" + std::to_string(d) + "^" + std::to_string(l) + ")");
  }
  return static_cast<int>(n);
}

std::vector<Element> collect_states(const std::vector<Element>& gens) {
  if (gens.empty()) throw Error("no generators given");
  std::vector<Element> q;
  std::unordered_set<Element, ElementHash> seen;
  for (const auto& g : gens) {
    if (g.alphabet() != gens.front().alphabet()) throw Error("generators over different alphabets");
    for (const auto& s : states_of(g))
      if (seen.insert(s).second) q.push_back(s);
  }
  return q;
}

bool finitary_depth_at_most_1(const Element& g) {
  const auto k = classify(g);
  return k.finitary() && k.finitary_depth <= 1;
}

}  // namespace

EmbedAnalysis analyze(const std::vector<Element>& gens) {
  EmbedAnalysis a;
  a.Q = collect_states(gens);
  int max_depth = 0;
  for (std::size_t i = 0; i < a.Q.size(); ++i) {
    const auto k = classify(a.Q[i]);
    if (!k.bounded()) throw UnboundedGenerator("state " + std::to_string(i) + " of the generators is unbounded");
    if (k.finitary()) a.F.push_back(a.Q[i]);
    if (k.kind == Kind::Directed) a.l = std::lcm(a.l, k.period);
    max_depth = std::max(max_depth, k.depth());
    a.kinds.push_back(k);
  }
  a.m = max_depth + 1;
  return a;
}

std::vector<Element> restricted_set(const std::vector<Element>& gens, int m) {
  if (m < 0) throw Error("level must be >= 0");
  const auto q = collect_states(gens);
  if (m == 0) return q;
  std::vector<Element> out;
  std::unordered_set<Element, ElementHash> seen;
  const auto words = all_words(gens.front().alphabet(), m);
  for (const auto& s : q)
    for (const auto& w : words) {
      Element r = restrict(s, w);
      if (seen.insert(r).second) out.push_back(std::move(r));
    }
  return out;
}

Letter block_rank(const Word& w, int d) {
  Letter r = 0;
  for (Letter x : w) {
    if (x < 1 || x > d) throw Error("block letter out of range");
    r = r * d + (x - 1);
  }
  return r + 1;
}

Word block_word(Letter rank, int d, int l) {
  Word w(static_cast<std::size_t>(l));
  int r = rank - 1;
  for (int i = l - 1; i >= 0; --i) {
    w[static_cast<std::size_t>(i)] = r % d + 1;
    r /= d;
  }
  if (r != 0 || rank < 1) throw Error("block rank out of range");
  return w;
}

Element block_power(const Element& g, int l) {
  if (l < 1) throw Error("block length must be >= 1");
  if (l == 1) return canonicalize(g);
  const int d = g.alphabet();
  const int n = checked_power(d, l);
  const auto words = all_words(d, l);  // rank order

  std::vector<Element> todo{canonicalize(g)};
  std::unordered_map<Element, StateId, ElementHash> index{{todo[0], 0}};
  std::vector<MachineState> states;
  for (std::size_t i = 0; i < todo.size(); ++i) {
    const Element cur = todo[i];
    std::vector<Letter> images(static_cast<std::size_t>(n));
    std::vector<StateId> children(static_cast<std::size_t>(n));
    for (std::size_t r = 0; r < words.size(); ++r) {
      images[r] = block_rank(act(cur, words[r]), d);
      Element sec = restrict(cur, words[r]);
      auto [it, fresh] = index.try_emplace(sec, static_cast<StateId>(todo.size()));
      if (fresh) todo.push_back(std::move(sec));
      children[r] = it->second;
    }
    states.push_back({Perm::from_images(images), std::move(children)});
  }
  return canonicalize(Element::from_states(n, std::move(states), 0));
}

Perm zeta_power_to(const Perm& zeta, Letter o, Letter x) {
  Letter p = o;
  for (int k = 0; k < zeta.degree(); ++k, p = zeta(p))
    if (p == x) return zeta.pow(k);
  throw Error("zeta does not reach letter " + std::to_string(x));
}

Element build_delta(int alphabet, Letter o, const Perm& zeta) {
  if (zeta.degree() != alphabet) throw Error("zeta has the wrong degree");
  if (o < 1 || o > alphabet) throw Error("base letter out of range");
  std::vector<int> k(static_cast<std::size_t>(alphabet) + 1, -1);
  Letter p = o;
  for (int i = 0; i < alphabet; ++i, p = zeta(p)) k[static_cast<std::size_t>(p)] = i;
  if (p != o || std::count(k.begin() + 1, k.end(), -1) != 0) throw Error("zeta is not a transitive cycle");

  // state j is delta * zeta^-j
  std::vector<MachineState> states;
  for (int j = 0; j < alphabet; ++j) {
    MachineState s{zeta.pow(-j), {}};
    for (Letter x = 1; x <= alphabet; ++x) s.children.push_back(static_cast<StateId>(k[static_cast<std::size_t>(x)]));
    states.push_back(std::move(s));
  }
  return canonicalize(Element::from_states(alphabet, std::move(states), 0));
}

Element delta_conjugate(const Element& alpha, const Element& delta) {
  if (alpha.alphabet() != delta.alphabet()) throw Error("alphabet mismatch in delta_conjugate");
  return inverse(delta) * alpha * delta;
}

Element normalize_directed(const Element& alpha, const Element& delta, const Perm& zeta, Letter o) {
  const auto k = classify(alpha);
  if (k.kind != Kind::Directed || k.period != 1) throw Error("normalize_directed: element is not directed with period 1");
  const Letter z = k.spine.front();
  const Letter sz = alpha.root()(z);
  return Element::rootwise(zeta_power_to(zeta, o, z)) * delta_conjugate(alpha, delta) *
         Element::rootwise(zeta_power_to(zeta, o, sz).inverse());
}

MotherFormResult mother_form_check(const Element& g, Letter o) {
  if (o < 1 || o > g.alphabet()) return {false, o, "letter out of range"};
  if (g.root()(o) != o) return {false, o, "root moves the letter"};
  if (restrict(g, {o}) != g) return {false, o, "section at the letter is not the element itself"};
  for (Letter x = 1; x <= g.alphabet(); ++x) {
    if (x == o) continue;
    const auto k = classify(restrict(g, {x}));
    if (!k.finitary()) return {false, x, "section is " + to_string(k.kind)};
    if (k.finitary_depth > 1) return {false, x, "section has finitary depth " + std::to_string(k.finitary_depth)};
  }
  return {true, 0, ""};
}

bool recheck(const Certificate& c) {
  if (c.kind == "identity") return is_identity(c.element);
  if (c.kind == "finitary") return finitary_depth_at_most_1(c.element);
  if (c.kind == "directed") return mother_form_check(c.element, c.o).ok;
  return false;
}

bool EmbedReport::all_pass() const {
  return std::all_of(certificates.begin(), certificates.end(), [](const Certificate& c) { return c.pass; });
}

std::string EmbedReport::target() const {
  return "G_" + std::to_string(final_alphabet) + " wr " + std::to_string(input_alphabet) + "^" +
         std::to_string(analysis.m);
}

EmbedReport embed_pipeline_report(const std::vector<Element>& gens, const std::vector<std::string>& names) {
  if (!names.empty() && names.size() != gens.size()) throw Error("name count does not match generators");
  EmbedReport rep;
  rep.analysis = analyze(gens);
  const int d = gens.front().alphabet();
  rep.input_alphabet = d;
  rep.R = restricted_set(gens, rep.analysis.m);
  for (std::size_t i = 0; i < rep.R.size(); ++i) {
    std::string label = is_identity(rep.R[i]) ? "1" : "r" + std::to_string(i);
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (gens[j] == rep.R[i]) {
        label = names.empty() ? "g" + std::to_string(j) : names[j];
        break;
      }
    rep.r_labels.push_back(label);
  }

  const int n = checked_power(d, rep.analysis.l);
  rep.intermediate_alphabet = n;
  rep.zeta = Perm::cycle(n);
  rep.o_prime = 1;

  // Stage 1: read in blocks of l letters; directed elements get period 1.
  struct Out {
    Element e;
    Classification k;
    Letter o = 0;
  };
  std::vector<Out> outs;
  for (const auto& r : rep.R) {
    Element b = block_power(r, rep.analysis.l);
    auto k = classify(b);
    outs.push_back({std::move(b), std::move(k), 0});
  }

  // Stage 2: conjugate by delta only if some directed root moves its spine letter.
  for (const auto& o : outs)
    if (o.k.kind == Kind::Directed && o.k.period == 1 && o.e.root()(o.k.spine.front()) != o.k.spine.front())
      rep.delta_applied = true;
  if (rep.delta_applied) {
    const Element delta = build_delta(n, rep.o_prime, rep.zeta);
    for (auto& o : outs) {
      if (o.k.kind == Kind::Identity) continue;
      if (o.k.kind == Kind::Directed && o.k.period == 1) {
        o.e = normalize_directed(o.e, delta, rep.zeta, rep.o_prime);
        o.o = rep.o_prime;
      } else {
        o.e = delta_conjugate(o.e, delta);
      }
      o.k = classify(o.e);
    }
  } else {
    for (auto& o : outs)
      if (o.k.kind == Kind::Directed && o.k.period == 1) o.o = o.k.spine.front();
  }

  // Stage 3: the least m' bringing every companion and finitary output to depth <= 1.
  int mp = 1;
  for (const auto& o : outs) {
    if (o.k.finitary()) mp = std::max(mp, o.k.finitary_depth);
    if (o.o == 0) continue;
    for (Letter x = 1; x <= n; ++x) {
      if (x == o.o) continue;
      const auto k = classify(restrict(o.e, {x}));
      if (k.finitary()) mp = std::max(mp, k.finitary_depth);
    }
  }
  rep.m_prime = mp;
  rep.final_alphabet = checked_power(n, mp);
  rep.o_second = block_rank(Word(static_cast<std::size_t>(mp), rep.o_prime), n);

  for (std::size_t i = 0; i < outs.size(); ++i) {
    const auto& o = outs[i];
    Certificate c;
    c.label = rep.r_labels[i];
    c.element = block_power(o.e, mp);
    if (o.k.kind == Kind::Identity) {
      c.kind = "identity";
      c.pass = is_identity(c.element);
    } else if (o.k.finitary()) {
      c.kind = "finitary";
      c.depth = classify(c.element).finitary_depth;
      c.pass = finitary_depth_at_most_1(c.element);
      if (!c.pass) c.detail = "finitary depth " + std::to_string(c.depth);
    } else if (o.o != 0) {
      c.kind = "directed";
      c.o = block_rank(Word(static_cast<std::size_t>(mp), o.o), n);
      const auto mf = mother_form_check(c.element, c.o);
      c.pass = mf.ok;
      c.failing_coordinate = mf.failing_coordinate;
      c.detail = mf.reason;
    } else {
      c.kind = "directed";
      c.detail = "not directed with period 1 after blocking (" + to_string(o.k.kind) + ")";
    }
    rep.certificates.push_back(std::move(c));
  }
  return rep;
}

EmbedReport embed_pipeline(const std::vector<Element>& gens, const std::vector<std::string>& names) {
  EmbedReport rep = embed_pipeline_report(gens, names);
  for (const auto& c : rep.certificates)
    if (!c.pass) throw CertificateFailure(c.label, c.failing_coordinate, c.detail);
  return rep;
}

}  // namespace wreathkit
