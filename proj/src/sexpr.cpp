#include "kpr/sexpr.hpp"

#include <cctype>

namespace kpr {

std::string_view SExpr::head() const {
  if (!is_list || items.empty() || items.front().is_list) return {};
  return items.front().atom;
}

std::string SExpr::render() const {
  if (!is_list) return atom;
  std::string out = "(";
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? " " : "") + items[i].render();
  return out + ")";
}

namespace {

class Reader {
 public:
  explicit Reader(std::string_view s) : s_(s) {}

  bool at_end() {
    skip();
    return pos_ >= s_.size();
  }

  SExpr read() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == ')') fail("unbalanced ')'");
    if (c == '(') {
      ++pos_;
      SExpr e;
      e.is_list = true;
      for (;;) {
        skip();
        if (pos_ >= s_.size()) fail("missing ')'");
        if (s_[pos_] == ')') {
          ++pos_;
          return e;
        }
        e.items.push_back(read());
      }
    }
    SExpr e;
    int braces = 0;
    while (pos_ < s_.size()) {
      char d = s_[pos_];
      if (d == '{') ++braces;
      if (d == '}') --braces;
      if (braces == 0 && (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')')) break;
      if (braces < 0) fail("unbalanced '}'");
      e.atom += d;
      ++pos_;
    }
    if (braces != 0) fail("unbalanced '{'");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("s-expression: " + what + " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      } else if (s_[pos_] == ';') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }
};

}  // namespace

std::vector<SExpr> parse_sexprs(std::string_view text) {
  Reader r(text);
  std::vector<SExpr> out;
  while (!r.at_end()) out.push_back(r.read());
  return out;
}

SExpr parse_sexpr(std::string_view text) {
  auto all = parse_sexprs(text);
  if (all.size() != 1) throw ParseError("expected exactly one s-expression");
  return all.front();
}

}  // namespace kpr
