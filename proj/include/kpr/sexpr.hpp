#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kpr/errors.hpp"

namespace kpr {

/// Minimal S-expression: an atom or a parenthesised list. Brace-balanced
/// chunks such as `{{},{}}` read as single atoms.
struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;

  bool is_atom(std::string_view a) const { return !is_list && atom == a; }
  /// Head atom of a non-empty list whose first item is an atom, else "".
  std::string_view head() const;
  std::string render() const;
};

std::vector<SExpr> parse_sexprs(std::string_view text);
SExpr parse_sexpr(std::string_view text);

}  // namespace kpr
