#pragma once

#include <cstdint>
#include <string>

#include "wreathkit/machine.hpp"

namespace wreathkit {

enum class Kind { Identity, Finitary, Directed, BoundedOther, Unbounded };

std::string to_string(Kind k);

/// Structure of an automatic automorphism in Sidki's bounded hierarchy.
///
/// finitary_depth is meaningful for Identity/Finitary; period and spine for
/// Directed; bounded_depth (least m with every non-finitary level-m section
/// directed) for Directed and BoundedOther; max_activity for every kind
/// except Unbounded.
struct Classification {
  Kind kind = Kind::Identity;
  int finitary_depth = 0;
  int period = 0;
  Word spine;
  int bounded_depth = 0;
  std::uint64_t max_activity = 0;

  bool bounded() const { return kind != Kind::Unbounded; }
  bool finitary() const { return kind == Kind::Identity || kind == Kind::Finitary; }

  /// Finitary depth for finitary elements, bounded depth otherwise.
  int depth() const { return finitary() ? finitary_depth : bounded_depth; }
};

/// #{w in X^n : g|_w != 1}.
std::uint64_t activity(const Element& g, int level);

Classification classify(const Element& g);

}  // namespace wreathkit
