#include "wreathkit/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace wreathkit {

Word parse_word(std::string_view digits) {
  Word w;
  w.reserve(digits.size());
  for (char ch : digits) {
    if (ch < '1' || ch > '9')
      throw Error("bad letter '" + std::string(1, ch) + "' in word \"" + std::string(digits) + "\"");
    w.push_back(ch - '0');
  }
  return w;
}

std::string word_to_string(const Word& w) {
  std::string out;
  for (Letter x : w) {
    if (x >= 1 && x <= 9) {
      out.push_back(static_cast<char>('0' + x));
    } else {
      // large alphabets (block letters) are written as [n]
      out += "[" + std::to_string(x) + "]";
    }
  }
  return out;
}

Perm Perm::identity(int degree) {
  if (degree < 1) throw Error("permutation degree must be positive");
  std::vector<std::uint32_t> id(static_cast<std::size_t>(degree));
  std::iota(id.begin(), id.end(), 0u);
  return Perm(std::move(id));
}

Perm Perm::from_images(const std::vector<Letter>& images) {
  const auto n = images.size();
  if (n == 0) throw Error("permutation degree must be positive");
  std::vector<std::uint32_t> img(n);
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const Letter y = images[i];
    if (y < 1 || static_cast<std::size_t>(y) > n)
      throw Error("image " + std::to_string(y) + " out of range 1.." + std::to_string(n));
    if (seen[static_cast<std::size_t>(y - 1)])
      throw Error("image table is not a bijection (repeated " + std::to_string(y) + ")");
    seen[static_cast<std::size_t>(y - 1)] = true;
    img[i] = static_cast<std::uint32_t>(y - 1);
  }
  return Perm(std::move(img));
}

Perm Perm::parse(std::string_view text, int degree) {
  Perm result = identity(degree);
  std::vector<bool> used(static_cast<std::size_t>(degree), false);
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& what) -> Error {
    return Error("cycle notation \"" + std::string(text) + "\": " + what);
  };

  skip_ws();
  if (pos == text.size()) throw fail("empty");
  bool saw_identity = false;
  int cycles = 0;
  while (true) {
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] != '(') throw fail("expected '(' at offset " + std::to_string(pos));
    ++pos;
    std::vector<int> cycle;
    while (true) {
      skip_ws();
      if (pos == text.size()) throw fail("unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos])))
        throw fail("unexpected character '" + std::string(1, text[pos]) + "'");
      long value = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + (text[pos] - '0');
        if (value > 1'000'000) throw fail("letter too large");
        ++pos;
      }
      if (value < 1 || value > degree)
        throw fail("letter " + std::to_string(value) + " out of range 1.." + std::to_string(degree));
      const auto idx = static_cast<std::size_t>(value - 1);
      if (used[idx]) throw fail("letter " + std::to_string(value) + " repeated");
      used[idx] = true;
      cycle.push_back(static_cast<int>(value - 1));
    }
    ++cycles;
    if (cycle.empty()) {
      saw_identity = true;
      continue;
    }
    if (cycle.size() == 1) throw fail("a cycle needs at least two letters");
    for (std::size_t i = 0; i < cycle.size(); ++i)
      result.images_[static_cast<std::size_t>(cycle[i])] =
          static_cast<std::uint32_t>(cycle[(i + 1) % cycle.size()]);
  }
  if (saw_identity && cycles > 1) throw fail("\"()\" cannot be combined with other cycles");
  return result;
}

Perm Perm::cycle(int degree) {
  std::vector<Letter> img(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) img[static_cast<std::size_t>(i)] = (i + 1) % degree + 1;
  return from_images(img);
}

std::vector<Perm> Perm::all(int degree) {
  std::vector<std::uint32_t> img(static_cast<std::size_t>(degree));
  std::iota(img.begin(), img.end(), 0u);
  std::vector<Perm> out;
  do {
    out.push_back(Perm(img));
  } while (std::next_permutation(img.begin(), img.end()));
  std::stable_sort(out.begin(), out.end(),
                   [](const Perm& a, const Perm& b) { return a.to_string() < b.to_string(); });
  return out;
}

Letter Perm::operator()(Letter x) const {
  if (x < 1 || x > degree())
    throw Error("letter " + std::to_string(x) + " out of range 1.." + std::to_string(degree()));
  return static_cast<Letter>(images_[static_cast<std::size_t>(x - 1)]) + 1;
}

Perm Perm::inverse() const {
  std::vector<std::uint32_t> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<std::uint32_t>(i);
  return Perm(std::move(inv));
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Perm Perm::pow(long long e) const {
  Perm base = e < 0 ? inverse() : *this;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1 : static_cast<unsigned long long>(e);
  Perm acc = identity(degree());
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

std::string Perm::to_string() const {
  std::string out;
  std::vector<bool> done(images_.size(), false);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (done[start] || images_[start] == start) continue;
    out += '(';
    std::size_t i = start;
    bool first = true;
    while (!done[i]) {
      done[i] = true;
      if (!first) out += ' ';
      out += std::to_string(i + 1);
      first = false;
      i = images_[i];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::vector<Letter> Perm::images() const {
  std::vector<Letter> out(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out[i] = static_cast<Letter>(images_[i]) + 1;
  return out;
}

Perm Perm::extend(int new_degree) const {
  if (new_degree < degree()) throw Error("cannot extend to a smaller degree");
  std::vector<std::uint32_t> img(static_cast<std::size_t>(new_degree));
  std::iota(img.begin(), img.end(), 0u);
  std::copy(images_.begin(), images_.end(), img.begin());
  return Perm(std::move(img));
}

Perm Perm::shift_up() const {
  std::vector<std::uint32_t> img(images_.size() + 1);
  img[0] = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) img[i + 1] = images_[i] + 1;
  return Perm(std::move(img));
}

std::size_t Perm::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto v : images_) h = (h ^ v) * 1099511628211ull;
  return h;
}

Perm operator*(const Perm& p, const Perm& q) { return compose(p, q); }

Perm compose(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree())
    throw Error("degree mismatch: " + std::to_string(p.degree()) + " vs " + std::to_string(q.degree()));
  std::vector<std::uint32_t> img(p.images_.size());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = q.images_[p.images_[i]];
  return Perm(std::move(img));
}

}  // namespace wreathkit
