#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "wreathkit/io.hpp"
#include "wreathkit/report.hpp"

using namespace fixtures;
using wreathkit::report::json;
namespace report = wreathkit::report;

TEST_CASE("envelope") {
  const json e = report::envelope("growth", json{{"radius", 3}}, json{{"x", 1}}, json());
  std::vector<std::string> keys;
  for (auto it = e.begin(); it != e.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"command", "params", "results", "failures", "toolkit_version"});
  CHECK(e["results"].is_array());
  CHECK(e["results"].size() == 1);
  CHECK(e["failures"] == json::array());
  CHECK(report::envelope("x", json(), json::array(), json::array())["params"] == json::object());
}

TEST_CASE("elements round-trip through reports") {
  std::mt19937 rng(2);
  const auto gens = mother_gens(3);
  for (int i = 0; i < 30; ++i) {
    const Element g = random_product(rng, gens, 3);
    const json j = report::element_json(g);
    CHECK(j["alphabet"] == 3);
    const auto f = parse_automaton_file(j["automaton"].get<std::string>());
    CHECK(build_element(f.recursion(), "s0") == g);
  }
}

TEST_CASE("result views") {
  const auto k = report::to_json(classify(grig("b")));
  CHECK(k["kind"] == "directed");
  CHECK(k["period"] == 3);
  CHECK(k["spine"] == "222");
  CHECK(report::to_json(classify(grig("a")))["finitary_depth"] == 1);

  const auto audit = audit_prop41(0, 3, 2);
  const json a = report::to_json(audit);
  CHECK(a["hard_failures"] == 0);
  CHECK(a["soft_failures"] == audit.failures.size());
  bool seen = false;
  for (const auto& e : audit.failures) {
    const json j = report::to_json(e);
    CHECK(j["hard"] == false);
    if (j["w2"] == "231") {
      seen = true;
      CHECK(j["truth"] == "t_221");
    }
  }
  CHECK(seen);

  const auto embed = report::to_json(embed_pipeline({special_elems().c}));
  CHECK(embed["final_alphabet"] == 3);
  CHECK(embed["all_pass"] == true);
  for (const auto& c : embed["certificates"]) {
    const auto f = parse_automaton_file(c["element"]["automaton"].get<std::string>());
    CHECK(f.alphabet == 3);
  }

  // key order is fixed, so dumps are reproducible
  CHECK(report::to_json(audit).dump() == a.dump());
}

TEST_CASE("atomic write") {
  const std::string path = "report_test_out.json";
  report::write_file_atomically(path, "first\n");
  report::write_file_atomically(path, "second\n");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "second\n");
  CHECK_FALSE(std::ifstream(path + ".tmp").good());
  std::remove(path.c_str());
  CHECK_THROWS_AS(report::write_file_atomically("/nonexistent-dir/x.json", "x"), Error);
}
