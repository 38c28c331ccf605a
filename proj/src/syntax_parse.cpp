#include <cctype>

#include "kpr/errors.hpp"
#include "kpr/sexpr.hpp"
#include "kpr/syntax.hpp"

namespace kpr {

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  return true;
}

[[noreturn]] void fail(const SExpr& e, const std::string& what) {
  throw ParseError("formula: " + what + " in " + e.render());
}

}  // namespace

Term parse_term(const SExpr& e) {
  if (e.is_list) fail(e, "expected a term");
  const std::string& a = e.atom;
  if (!a.empty() && (a[0] == '{' || a[0] == '@' || std::isdigit(static_cast<unsigned char>(a[0]))))
    return Term::name(parse_set(a));
  if (!is_identifier(a)) fail(e, "bad term '" + a + "'");
  return Term::var(a);
}

Formula parse_formula(const SExpr& e) {
  if (!e.is_list || e.items.empty()) fail(e, "expected a formula");
  const std::string head(e.head());
  auto arity = [&](std::size_t n) {
    if (e.items.size() != n + 1) fail(e, "'" + head + "' takes " + std::to_string(n) + " arguments");
  };
  auto var = [&](const SExpr& v) {
    if (v.is_list || !is_identifier(v.atom)) fail(e, "expected a variable");
    return v.atom;
  };
  if (head == "in" || head == "nin" || head == "eq") {
    arity(2);
    Term t = parse_term(e.items[1]), s = parse_term(e.items[2]);
    if (head == "eq") return Formula::eq(t, s);
    return head == "in" ? Formula::in(t, s) : Formula::not_in(t, s);
  }
  if (head == "ad" || head == "nad") {
    arity(1);
    Term t = parse_term(e.items[1]);
    return head == "ad" ? Formula::ad(t) : Formula::not_ad(t);
  }
  if (head == "or" || head == "and") {
    if (e.items.size() < 3) fail(e, "'" + head + "' takes at least 2 arguments");
    // n-ary forms associate to the right.
    Formula acc = parse_formula(e.items.back());
    for (std::size_t i = e.items.size() - 2; i >= 1; --i) {
      Formula f = parse_formula(e.items[i]);
      acc = head == "or" ? Formula::disj(f, acc) : Formula::conj(f, acc);
    }
    return acc;
  }
  if (head == "bex" || head == "ball") {
    arity(3);
    std::string x = var(e.items[1]);
    Term b = parse_term(e.items[2]);
    Formula body = parse_formula(e.items[3]);
    return head == "bex" ? Formula::bex(x, b, body) : Formula::ball(x, b, body);
  }
  if (head == "ex" || head == "all") {
    arity(2);
    std::string x = var(e.items[1]);
    Formula body = parse_formula(e.items[2]);
    return head == "ex" ? Formula::ex(x, body) : Formula::all(x, body);
  }
  if (head == "not" || head == "imp" || head == "neg")
    fail(e, "'" + head + "' is not allowed; formulas must be in negation normal form");
  fail(e, "unknown connective '" + head + "'");
}

Sequent parse_sequent(const SExpr& e) {
  if (e.head() != "seq") throw ParseError("sequent: expected (seq ...), got " + e.render());
  std::vector<Formula> fs;
  for (std::size_t i = 1; i < e.items.size(); ++i) fs.push_back(parse_formula(e.items[i]));
  return Sequent(std::move(fs));
}

Formula parse_formula(std::string_view text) { return parse_formula(parse_sexpr(text)); }
Sequent parse_sequent(std::string_view text) { return parse_sequent(parse_sexpr(text)); }

}  // namespace kpr
