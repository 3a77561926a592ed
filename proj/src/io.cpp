#include "wreathkit/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "wreathkit/mother.hpp"

namespace wreathkit {

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

bool valid_name(std::string_view s) {
  if (s.empty() || !is_name_start(s[0])) return false;
  for (char c : s)
    if (!is_name_char(c)) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits off the next whitespace-delimited token.
std::string_view next_token(std::string_view& s) {
  s = trim(s);
  std::size_t i = 0;
  while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  const auto tok = s.substr(0, i);
  s.remove_prefix(i);
  return tok;
}

int parse_positive(std::string_view s, int line, const char* what) {
  if (s.empty()) throw SyntaxError(line, std::string("missing ") + what);
  int v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw SyntaxError(line, std::string("bad ") + what + " '" + std::string(s) + "'");
    v = v * 10 + (c - '0');
    if (v > 1'000'000) throw SyntaxError(line, std::string(what) + " too large");
  }
  return v;
}

NamedState parse_state(std::string_view rest, int d, int line) {
  NamedState st;
  const auto name = next_token(rest);
  if (!valid_name(name)) throw SyntaxError(line, "bad state name '" + std::string(name) + "'");
  if (name == kIdentityName) throw SyntaxError(line, "state name '_' is reserved for the identity");
  st.name = std::string(name);
  if (next_token(rest) != "perm") throw SyntaxError(line, "state " + st.name + ": expected 'perm'");

  // cycle groups run until the first token that does not start with '('
  rest = trim(rest);
  std::size_t i = 0;
  while (i < rest.size() && rest[i] == '(') {
    const auto close = rest.find(')', i);
    if (close == std::string_view::npos) throw SyntaxError(line, "state " + st.name + ": unbalanced parenthesis");
    i = close + 1;
    while (i < rest.size() && rest[i] == ' ' && i + 1 < rest.size() && rest[i + 1] == '(') ++i;
  }
  if (i == 0) throw SyntaxError(line, "state " + st.name + ": missing permutation");
  try {
    st.root = Perm::parse(rest.substr(0, i), d);
  } catch (const Error& e) {
    throw SyntaxError(line, "state " + st.name + ": " + e.what());
  }
  rest.remove_prefix(i);

  std::vector<std::string> children(static_cast<std::size_t>(d));
  std::vector<bool> given(static_cast<std::size_t>(d), false);
  std::size_t count = 0;
  bool wildcard = false;
  for (auto tok = next_token(rest); !tok.empty(); tok = next_token(rest)) {
    const auto arrow = tok.find("->");
    if (arrow == std::string_view::npos) throw SyntaxError(line, "state " + st.name + ": expected K->TARGET, got '" + std::string(tok) + "'");
    const auto key = tok.substr(0, arrow);
    const auto target = tok.substr(arrow + 2);
    if (target != kIdentityName && !valid_name(target))
      throw SyntaxError(line, "state " + st.name + ": bad target '" + std::string(target) + "'");
    ++count;
    if (key == "*") {
      wildcard = true;
      for (auto& c : children) c = std::string(target);
      continue;
    }
    const int x = parse_positive(key, line, "letter");
    if (x < 1 || x > d) throw SyntaxError(line, "state " + st.name + ": letter " + std::to_string(x) + " out of range");
    if (given[static_cast<std::size_t>(x - 1)]) throw SyntaxError(line, "state " + st.name + ": letter " + std::to_string(x) + " given twice");
    given[static_cast<std::size_t>(x - 1)] = true;
    children[static_cast<std::size_t>(x - 1)] = std::string(target);
  }
  if (wildcard && count != 1) throw SyntaxError(line, "state " + st.name + ": '*->' must be the only child entry");
  if (!wildcard && count != static_cast<std::size_t>(d))
    throw SyntaxError(line, "state " + st.name + ": " + std::to_string(d) + " children required, got " + std::to_string(count));
  st.children = std::move(children);
  return st;
}

}  // namespace

AutomatonFile parse_automaton_file(std::string_view text) {
  AutomatonFile f;
  std::set<std::string> names;
  std::vector<int> state_lines;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto kw = next_token(line);
    if (kw == "alphabet") {
      if (f.alphabet != 0) throw SyntaxError(line_no, "alphabet given twice");
      f.alphabet = parse_positive(next_token(line), line_no, "alphabet size");
      if (f.alphabet < 1) throw SyntaxError(line_no, "alphabet size must be positive");
      if (!trim(line).empty()) throw SyntaxError(line_no, "trailing text after alphabet size");
    } else if (kw == "state") {
      if (f.alphabet == 0) throw SyntaxError(line_no, "'alphabet N' must come first");
      auto st = parse_state(line, f.alphabet, line_no);
      if (!names.insert(st.name).second) throw SyntaxError(line_no, "duplicate name '" + st.name + "'");
      f.states.push_back(std::move(st));
      state_lines.push_back(line_no);
    } else if (kw == "let") {
      if (f.alphabet == 0) throw SyntaxError(line_no, "'alphabet N' must come first");
      const auto name = next_token(line);
      if (!valid_name(name) || name == kIdentityName) throw SyntaxError(line_no, "bad binding name '" + std::string(name) + "'");
      if (next_token(line) != "=") throw SyntaxError(line_no, "expected '=' after binding name");
      if (trim(line).empty()) throw SyntaxError(line_no, "empty binding");
      if (!names.insert(std::string(name)).second) throw SyntaxError(line_no, "duplicate name '" + std::string(name) + "'");
      f.bindings.push_back({std::string(name), std::string(trim(line))});
    } else {
      throw SyntaxError(line_no, "unknown directive '" + std::string(kw) + "'");
    }
  }
  if (f.alphabet == 0) throw SyntaxError(0, "missing 'alphabet N'");
  std::set<std::string> state_names;
  for (const auto& s : f.states) state_names.insert(s.name);
  for (std::size_t i = 0; i < f.states.size(); ++i)
    for (const auto& c : f.states[i].children)
      if (c != kIdentityName && !state_names.count(c))
        throw SyntaxError(state_lines[i], "state " + f.states[i].name + ": unknown name '" + c + "'");
  return f;
}

AutomatonFile read_automaton_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_automaton_file(ss.str());
  } catch (const SyntaxError& e) {
    throw SyntaxError(0, path + ": " + e.what());
  }
}

std::string print_automaton_file(const AutomatonFile& f) {
  std::ostringstream os;
  os << "alphabet " << f.alphabet << '\n';
  for (const auto& s : f.states) {
    os << "state " << s.name << " perm " << s.root.to_string();
    const bool uniform = std::all_of(s.children.begin(), s.children.end(), [&](const std::string& c) { return c == s.children.front(); });
    if (uniform && !s.children.empty()) {
      os << " *->" << s.children.front();
    } else {
      for (std::size_t x = 0; x < s.children.size(); ++x) os << ' ' << x + 1 << "->" << s.children[x];
    }
    os << '\n';
  }
  for (const auto& b : f.bindings) os << "let " << b.name << " = " << b.expr << '\n';
  return os.str();
}

Scope::Scope(const AutomatonFile& file) : alphabet_(file.alphabet), spec_(file.recursion()) {
  for (const auto& s : spec_.states) bound_.emplace(s.name, build_element(spec_, s.name));
  for (const auto& b : file.bindings) {
    try {
      bind(b.name, parse_expression(b.expr, *this));
    } catch (const Error& e) {
      throw Error("binding " + b.name + ": " + e.what());
    }
  }
}

bool Scope::has(const std::string& name) const {
  return bound_.count(name) || name == "c" || name == "t" || name == "ctilde";
}

Element Scope::get(const std::string& name) const {
  if (auto it = bound_.find(name); it != bound_.end()) return it->second;
  const auto& sp = special_elems();
  if (name == "c") return sp.c;
  if (name == "t") return sp.t;
  if (name == "ctilde") return sp.c_tilde;
  throw Error("unknown name '" + name + "'");
}

namespace {

class ExprParser {
public:
  ExprParser(std::string_view text, const Scope& scope) : s_(text), scope_(scope) {}

  Element run() {
    Element g = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return g;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(0, "column " + std::to_string(pos_ + 1) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  Element expr() {
    std::optional<Element> acc;
    while (true) {
      skip();
      if (pos_ == s_.size() || s_[pos_] == ')') break;
      Element t = term();
      acc = acc ? compose(*acc, t) : t;
    }
    if (!acc) fail("empty expression");
    return *acc;
  }

  Element term() {
    Element g = atom();
    while (peek('^')) {
      ++pos_;
      skip();
      bool neg = false;
      if (pos_ < s_.size() && s_[pos_] == '-') {
        neg = true;
        ++pos_;
      }
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      if (pos_ - start > 9) fail("exponent too large");
      const long long k = std::stoll(std::string(s_.substr(start, pos_ - start)));
      g = power(g, neg ? -k : k);
    }
    return g;
  }

  // Text between a '(' at pos_ and its matching ')'.
  std::string_view balanced() {
    if (!peek('(')) fail("expected '('");
    int depth = 0;
    const std::size_t start = pos_ + 1;
    for (; pos_ < s_.size(); ++pos_) {
      if (s_[pos_] == '(') ++depth;
      if (s_[pos_] == ')' && --depth == 0) {
        ++pos_;
        return s_.substr(start, pos_ - 1 - start);
      }
    }
    fail("unbalanced parenthesis");
  }

  Element atom() {
    skip();
    if (pos_ == s_.size()) fail("unexpected end of expression");
    if (s_[pos_] == '(') {
      ++pos_;
      Element g = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return g;
    }
    if (s_[pos_] == '1' && (pos_ + 1 == s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      return Element::identity(scope_.alphabet());
    }
    if (!is_name_start(s_[pos_])) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    const std::size_t start = pos_;
    while (pos_ < s_.size() && is_name_char(s_[pos_])) ++pos_;
    const std::string name(s_.substr(start, pos_ - start));

    if (name == "perm" && peek('(')) {
      const auto body = trim(balanced());
      try {
        if (body.empty()) return Element::identity(scope_.alphabet());
        if (body.front() == '(') return Element::rootwise(Perm::parse(body, scope_.alphabet()));
        return Element::rootwise(Perm::parse("(" + std::string(body) + ")", scope_.alphabet()));
      } catch (const SyntaxError&) {
        throw;
      } catch (const Error& e) {
        fail(e.what());
      }
    }
    if (name == "tv" && peek('(')) {
      const auto body = trim(balanced());
      if (scope_.alphabet() != 3) fail("alphabet mismatch: tv(...) acts on 3 letters");
      try {
        return elem_tv(parse_word(body));
      } catch (const Error& e) {
        fail(e.what());
      }
    }
    if (name == "id" && !scope_.has("id")) return Element::identity(scope_.alphabet());
    if (!scope_.has(name)) fail("unknown name '" + name + "'");
    Element g = scope_.get(name);
    if (g.alphabet() != scope_.alphabet())
      fail("alphabet mismatch: '" + name + "' acts on " + std::to_string(g.alphabet()) + " letters, expected " +
           std::to_string(scope_.alphabet()));
    return g;
  }

  std::string_view s_;
  const Scope& scope_;
  std::size_t pos_ = 0;
};

}  // namespace

Element parse_expression(std::string_view text, const Scope& scope) { return ExprParser(text, scope).run(); }

std::string to_dot(const Element& g, const std::string& name) {
  const Element c = canonicalize(g);
  const auto rec = to_recursion(c, "s");
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n  node [shape=circle];\n  ordering=out;\n";
  bool uses_identity = false;
  for (const auto& st : rec.states) {
    os << "  " << st.name << " [label=\"" << st.root.to_string() << "\"];\n";
    for (const auto& ch : st.children) uses_identity = uses_identity || ch == kIdentityName;
  }
  if (uses_identity) os << "  id [label=\"1\"];\n";
  for (const auto& st : rec.states)
    for (std::size_t x = 0; x < st.children.size(); ++x) {
      const std::string target = st.children[x] == kIdentityName ? "id" : st.children[x];
      os << "  " << st.name << " -> " << target << " [label=\"" << x + 1 << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace wreathkit
