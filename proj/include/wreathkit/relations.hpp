#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wreathkit/machine.hpp"

// Conjugation calculus for the family t_v inside G_3.
//
// Ground truth is always machine arithmetic. The clause table below is a
// hypothesis that the audit checks against it, never an assumption.

namespace wreathkit {

/// t_v^{exponent}.
struct FormalGenerator {
  Word v;
  int exponent = 1;

  friend bool operator==(const FormalGenerator&, const FormalGenerator&) = default;
};

Element to_element(const FormalGenerator& g);
std::string to_string(const FormalGenerator& g);

/// Hat map on letters: 2 <-> 3, and 1 -> 1 (the last one is our extension).
Letter hat(Letter a);

/// A clause of the commutation table, with the image it predicts for
/// t * t_v * t^-1 = t_{v'}^{sign}.
struct ClausePrediction {
  std::string clause;
  Word v;
  int sign = 1;
};

/// The pattern clause matching v, with the hat map extended by 1^ = 1.
/// Empty for |v| = 0.
std::optional<ClausePrediction> pattern_clause(const Word& v);

/// The clause the table actually assigns to v: words containing 1 are
/// declared to commute ("contains-1"), otherwise the pattern clause.
std::optional<ClausePrediction> stated_clause(const Word& v);

struct ConjImage {
  Word v;
  int sign = 1;

  friend bool operator==(const ConjImage&, const ConjImage&) = default;
};

/// t^e * t_v * t^-e written as t_{v'}^{sign}; verified by machine equality.
/// Throws Error if the conjugate is not a single generator.
ConjImage conj_by_t(const Word& v, int e);

/// Machine-verified relation t * t_v * t^-1 = t_{v'}^{sign}, annotated with
/// the table's claim for v.
struct Relation {
  Word input;
  Word output;
  int sign = 1;
  std::string paper_case;  // empty when no clause covers v
  bool agrees_with_paper = false;
};

Relation relation_for(const Word& v);

struct ClauseTally {
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
};

struct AuditEntry {
  std::string clause;
  Word w1;
  Word w2;
  Word predicted;  // t_{predicted}^{predicted_sign}, suffix form
  int predicted_sign = 1;
  ConjImage truth;  // ground truth of t * t_v * t^-1 for the suffix v
  bool truth_matches_pattern = false;
};

struct AuditReport {
  int max_prefix = 0;
  int max_suffix = 0;
  std::map<std::string, ClauseTally> tallies;
  std::vector<AuditEntry> failures;  // sorted by (|w1|, w1, |v|, v)

  /// Failures outside the "contains-1" clause.
  std::size_t hard_failures() const;
  /// Every ground truth was a single generator of the same length.
  bool length_preserved = true;
};

/// Checks t_{w1} t_{w1 v} = t_{w1 v'}^{e} t_{w1} for every w1 with
/// |w1| <= max_prefix and v with 1 <= |v| <= max_suffix, plus commutation of
/// all incomparable pairs of length <= incomparable_len.
AuditReport audit_prop41(int max_prefix, int max_suffix, int incomparable_len = 4);

/// j_i(t_v) = t_{iv}.
FormalGenerator jmap(Letter i, const FormalGenerator& g);

/// t^-1 * t_v * t as a single generator.
Relation normality_witness(const Word& v);

/// True iff conj_by_t(v, +-1) preserves length for every 1 <= |v| <= n.
bool conj_closure_check(int n, int kmax_len);

enum class ProbeStatus { Found, NotFoundWithinBounds, BudgetExhausted };
std::string to_string(ProbeStatus s);

struct ProbeResult {
  ProbeStatus status = ProbeStatus::NotFoundWithinBounds;
  int k = 0;
  std::size_t explored = 0;
};

/// Looks for the least 1 <= k <= kmax with t^k in the ball of word length
/// search_weight of <t_v : 1 <= |v| <= n> (t itself joins the generators if
/// include_t). kmax = 0 is answered trivially with k = 0.
ProbeResult quotient_probe(int n, int kmax, int search_weight, bool include_t = false,
                           std::size_t node_budget = 10'000'000);

}  // namespace wreathkit
