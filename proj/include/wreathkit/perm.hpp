#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wreathkit {

/// Base error for everything the toolkit reports as a recoverable failure.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Letters are 1-based everywhere in the public API.
using Letter = int;

/// A finite word over {1..d}. Also used as a tree vertex.
using Word = std::vector<Letter>;

/// Parses a bare digit string ("231") into a word. Empty string is the root.
Word parse_word(std::string_view digits);
std::string word_to_string(const Word& w);

/// Permutation of {1..d}.
///
/// Products read left to right: the left factor acts first, so
/// (p * q)(x) == q(p(x)). This is the only convention under which the
/// wreath-product component formula g_i h_{sigma(i)} holds for the
/// recursions used in this library.
class Perm {
public:
  Perm() : Perm(identity(1)) {}

  static Perm identity(int degree);

  /// Builds from a 1-based image table; throws Error if not a bijection.
  static Perm from_images(const std::vector<Letter>& images);

  /// Cycle notation: "()" or "(1 2 3)(4 5)" / "(1 2 3) (4 5)".
  static Perm parse(std::string_view text, int degree);

  /// The cycle (1 2 ... n) on n letters.
  static Perm cycle(int degree);

  /// All of S_d, ordered by canonical cycle string.
  static std::vector<Perm> all(int degree);

  int degree() const { return static_cast<int>(images_.size()); }

  Letter operator()(Letter x) const;

  /// Same as operator() but without range checks, 0-based.
  int image0(int x) const { return images_[static_cast<std::size_t>(x)]; }

  Perm inverse() const;
  bool is_identity() const;

  /// Power with integer exponent (negative allowed).
  Perm pow(long long e) const;

  /// Canonical cycle string: smallest point first in each cycle, cycles
  /// sorted by smallest point, fixed points omitted, identity "()".
  std::string to_string() const;

  /// 1-based image table.
  std::vector<Letter> images() const;

  /// Lift to S_{degree+extra}, fixing the new letters.
  Perm extend(int new_degree) const;

  /// The shift k -> k+1 used for the G_d -> G_{d+1} embedding.
  Perm shift_up() const;

  std::size_t hash() const;

  friend Perm operator*(const Perm& p, const Perm& q);
  friend Perm compose(const Perm& p, const Perm& q);
  friend bool operator==(const Perm&, const Perm&) = default;
  friend std::strong_ordering operator<=>(const Perm&, const Perm&) = default;

private:
  explicit Perm(std::vector<std::uint32_t> images) : images_(std::move(images)) {}

  std::vector<std::uint32_t> images_;  // 0-based
};

/// Left-to-right composite; throws Error on degree mismatch.
Perm compose(const Perm& p, const Perm& q);

}  // namespace wreathkit

template <>
struct std::hash<wreathkit::Perm> {
  std::size_t operator()(const wreathkit::Perm& p) const noexcept { return p.hash(); }
};
