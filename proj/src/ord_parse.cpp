#include <cctype>
#include <string>

#include "kpr/ord.hpp"

namespace kpr::ord {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  OrdCode parse_all() {
    OrdCode v = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return v;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("ordinal: " + what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  std::uint64_t number() {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected a natural number");
    std::uint64_t n = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      n = n * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
      ++pos_;
    }
    return n;
  }

  OrdCode expr() {
    OrdCode v = term();
    for (;;) {
      if (eat('+'))
        v = add(v, term());
      else if (eat('#'))
        v = nat_sum(v, term());
      else
        return v;
    }
  }

  OrdCode term() {
    OrdCode v = factor();
    while (eat('*')) v = mul_nat(v, number());
    return v;
  }

  OrdCode factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return OrdCode::nat(number());
    if (eat('(')) {
      OrdCode v = expr();
      expect(')');
      return v;
    }
    if (eat('W')) return OrdCode::omega();
    if (eat('w')) {
      if (pos_ < s_.size() && s_[pos_] == '_') {
        ++pos_;
        std::uint64_t n = number();
        expect('(');
        OrdCode base = expr();
        expect(')');
        return omega_tower(n, base);
      }
      if (eat('^')) return omega_exp(factor());
      return OrdCode::sub(Cnf::omega());
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

OrdCode parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace kpr::ord
