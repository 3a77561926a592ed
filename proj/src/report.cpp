#include "wreathkit/report.hpp"

#include <cstdio>
#include <fstream>

#include "wreathkit/io.hpp"

namespace wreathkit::report {

json envelope(const std::string& command, json params, json results, json failures) {
  if (!results.is_array()) results = json::array({std::move(results)});
  if (failures.is_null()) failures = json::array();
  json out;
  out["command"] = command;
  out["params"] = params.is_null() ? json::object() : std::move(params);
  out["results"] = std::move(results);
  out["failures"] = std::move(failures);
  out["toolkit_version"] = kToolkitVersion;
  return out;
}

json element_json(const Element& g) {
  const AutomatonFile f{g.alphabet(), to_recursion(g, "s").states, {}};
  return json{{"alphabet", g.alphabet()}, {"automaton", print_automaton_file(f)}};
}

json to_json(const Classification& c) {
  json j{{"kind", to_string(c.kind)}};
  if (c.finitary()) j["finitary_depth"] = c.finitary_depth;
  if (c.kind == Kind::Directed) {
    j["period"] = c.period;
    j["spine"] = word_to_string(c.spine);
  }
  if (c.bounded() && !c.finitary()) j["bounded_depth"] = c.bounded_depth;
  if (c.bounded()) {
    j["depth"] = c.depth();
    j["max_activity"] = c.max_activity;
  }
  return j;
}

namespace {

std::string gen_string(const Word& v, int sign) { return to_string(FormalGenerator{v, sign}); }

}  // namespace

json to_json(const AuditEntry& e) {
  return json{{"clause", e.clause},
              {"w1", word_to_string(e.w1)},
              {"w2", word_to_string(e.w2)},
              {"predicted", gen_string(e.predicted, e.predicted_sign)},
              {"truth", gen_string(e.truth.v, e.truth.sign)},
              {"truth_matches_pattern", e.truth_matches_pattern},
              {"hard", e.clause != "contains-1"}};
}

json to_json(const AuditReport& r) {
  json tallies = json::object();
  for (const auto& [clause, t] : r.tallies)
    tallies[clause] = json{{"checked", t.checked}, {"passed", t.passed}, {"failed", t.failed}};
  return json{{"max_prefix", r.max_prefix},
              {"max_suffix", r.max_suffix},
              {"hard_failures", r.hard_failures()},
              {"soft_failures", r.failures.size() - r.hard_failures()},
              {"length_preserved", r.length_preserved},
              {"tallies", std::move(tallies)}};
}

json to_json(const GrowthTable& t) {
  return json{{"status", to_string(t.status)}, {"sizes", t.sizes}};
}

json to_json(const LengthResult& r) {
  json j{{"status", to_string(r.status)}, {"explored", r.explored}};
  if (r.status == SearchStatus::Complete) {
    j["length"] = r.length;
    j["witness"] = r.witness;
  }
  return j;
}

json to_json(const CosetReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back(json{{"w", word_to_string(e.w)}, {"verdict", e.verdict}, {"witness", e.witness}});
  return json{{"n", r.n}, {"enumerated", r.enumerated}, {"all_separated", r.all_separated()}, {"entries", entries}};
}

json to_json(const Eq7Solution& s) {
  return json{{"s1", s.s1.to_string()},     {"s1'", s.s1p.to_string()},    {"s2'", s.s2p.to_string()},
              {"a", s.a.to_string()},       {"s2", s.s2.to_string()},      {"s1''", s.s1pp.to_string()},
              {"s2''", s.s2pp.to_string()}, {"s1'''", s.s1ppp.to_string()}, {"s2'''", s.s2ppp.to_string()}};
}

json to_json(const Certificate& c) {
  json j{{"label", c.label}, {"kind", c.kind}, {"pass", c.pass}};
  if (c.kind == "directed") j["o"] = c.o;
  if (c.kind == "finitary") j["depth"] = c.depth;
  if (!c.pass) j["failing_coordinate"] = c.failing_coordinate;
  if (!c.detail.empty()) j["detail"] = c.detail;
  j["element"] = element_json(c.element);
  return j;
}

json to_json(const EmbedReport& r) {
  json certs = json::array();
  for (const auto& c : r.certificates) certs.push_back(to_json(c));
  return json{{"input_alphabet", r.input_alphabet},
              {"states", r.analysis.Q.size()},
              {"finitary_states", r.analysis.F.size()},
              {"m", r.analysis.m},
              {"l", r.analysis.l},
              {"restricted_set", r.r_labels},
              {"intermediate_alphabet", r.intermediate_alphabet},
              {"delta_applied", r.delta_applied},
              {"o'", r.o_prime},
              {"zeta", r.zeta.to_string()},
              {"m'", r.m_prime},
              {"final_alphabet", r.final_alphabet},
              {"o''", r.o_second},
              {"target", r.target()},
              {"all_pass", r.all_pass()},
              {"certificates", std::move(certs)}};
}

void write_file_atomically(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    out << text;
    if (!out.flush()) throw Error("cannot write " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error("cannot rename " + tmp + " to " + path);
  }
}

}  // namespace wreathkit::report
