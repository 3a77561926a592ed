#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wreathkit/machine.hpp"
#include "wreathkit/sidki.hpp"

// Compiles a finite set of bounded automatic generators into generators of
// mother-group form over an enlarged alphabet:
//
//   analyze -> restrict to level m -> read the tree in blocks of l letters
//   -> (if needed) conjugate by the recoding automaton delta and normalize
//   directed elements -> block again by m' -> check mother form.

namespace wreathkit {

class UnboundedGenerator : public Error {
public:
  explicit UnboundedGenerator(const std::string& what) : Error(what) {}
};

class CertificateFailure : public Error {
public:
  CertificateFailure(const std::string& generator, int coordinate, const std::string& why)
      : Error("certificate failed for " + generator + " at coordinate " + std::to_string(coordinate) + ": " + why),
        generator(generator),
        coordinate(coordinate) {}
  std::string generator;
  int coordinate;
};

struct EmbedAnalysis {
  std::vector<Element> Q;  // all states of the generators, first-seen order
  std::vector<Classification> kinds;
  std::vector<Element> F;  // finitary members of Q
  int m = 1;               // strictly greater than every depth in Q
  int l = 1;               // lcm of directed periods (1 if none)
};

EmbedAnalysis analyze(const std::vector<Element>& gens);

/// {q|_w : q in Q, |w| = m}, deduplicated, first-seen order.
std::vector<Element> restricted_set(const std::vector<Element>& gens, int m);

/// Block letters: the word x_1..x_l has rank 1 + sum (x_i - 1) d^(l-i).
Letter block_rank(const Word& w, int d);
Word block_word(Letter rank, int d, int l);

/// g acting on X^l, read one block of l letters at a time.
Element block_power(const Element& g, int l);

/// delta = (delta * zeta_x^-1)_x with trivial root, where zeta_x = zeta^k and
/// zeta^k(o) = x. Throws unless zeta is a single cycle of full length.
Element build_delta(int alphabet, Letter o, const Perm& zeta);

/// zeta_x of the above: the power of zeta taking o to x.
Perm zeta_power_to(const Perm& zeta, Letter o, Letter x);

/// delta^-1 * alpha * delta.
Element delta_conjugate(const Element& alpha, const Element& delta);

/// beta = zeta_z * alpha^delta * zeta_{sigma(z)}^-1 for alpha directed with
/// period 1 and spine letter z. Then beta|_o = beta and beta's root fixes o.
Element normalize_directed(const Element& alpha, const Element& delta, const Perm& zeta, Letter o);

struct MotherFormResult {
  bool ok = false;
  int failing_coordinate = 0;  // letter where the check failed; 0 if ok
  std::string reason;
};

/// Root fixes o, g|_o = g, every other first-level section finitary of
/// depth <= 1.
MotherFormResult mother_form_check(const Element& g, Letter o);

struct Certificate {
  std::string label;
  std::string kind;  // "identity", "finitary" or "directed"
  Element element;   // over the final alphabet
  Letter o = 0;      // self-similar letter, directed only
  int depth = 0;     // finitary depth, finitary only
  bool pass = false;
  int failing_coordinate = 0;
  std::string detail;
};

/// Re-runs the certificate's check on its element.
bool recheck(const Certificate& c);

struct EmbedReport {
  int input_alphabet = 0;
  EmbedAnalysis analysis;
  std::vector<Element> R;
  std::vector<std::string> r_labels;
  int intermediate_alphabet = 0;  // d^l
  bool delta_applied = false;
  Letter o_prime = 1;
  Perm zeta;
  int m_prime = 1;
  int final_alphabet = 0;  // (d^l)^m'
  Letter o_second = 1;
  std::vector<Certificate> certificates;

  bool all_pass() const;
  std::string target() const;  // "G_N wr d^m"
};

/// Runs every stage; throws UnboundedGenerator, or CertificateFailure for
/// the first output that fails its check.
EmbedReport embed_pipeline(const std::vector<Element>& gens, const std::vector<std::string>& names = {});

/// Same stages, but failing certificates are left in the report.
EmbedReport embed_pipeline_report(const std::vector<Element>& gens, const std::vector<std::string>& names = {});

}  // namespace wreathkit
