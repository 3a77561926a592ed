#pragma once

#include <functional>
#include <string>
#include <vector>

// The acceptance checks, each with a wall-clock limit. A criterion passes
// only if every check holds and it finishes within its limit.

namespace wreathkit {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool checks_ok = false;
  double seconds = 0;
  double limit_seconds = 0;
  std::string detail;

  bool pass() const { return checks_ok && seconds <= limit_seconds; }
};

/// Runs criteria 1..10 in order (or only `only`, if nonzero), calling
/// on_result after each.
std::vector<CriterionResult> run_acceptance(int only = 0,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS  3 eq7 solutions and A_3 preimages (0.004 s / limit 1 s)".
std::string format_line(const CriterionResult& r);

}  // namespace wreathkit
