#pragma once

#include <stdexcept>
#include <string>

namespace kpr {

/// Input is not in normal form (ordinal codes) or otherwise malformed.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A Delta_0 evaluation reached something it cannot decide (an abstract
/// parameter, the opaque `ad` token, a quantifier over an infinite set).
struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A derivation-term constructor was called with arguments violating the
/// preconditions of the transformation it implements.
struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A premise was requested for an index outside the rule's index set.
struct IndexError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace kpr
