#pragma once

// Truth in the desk-scale universe and symbolic hulls P.

#include <optional>
#include <string>
#include <vector>

#include "kpr/desk_set.hpp"
#include "kpr/ord.hpp"
#include "kpr/syntax.hpp"

namespace kpr {

inline ord::OrdCode rank(const DeskSet& a) { return a.rank(); }

/// Three-valued evaluation of a closed Delta_0 sentence. Concrete sentences
/// always get a verdict; abstract names get one only when known members or
/// ranks force it. Depth-0 sentences mentioning ad are accepted and are
/// undecided unless the rest forces a verdict.
std::optional<bool> try_eval_delta0(const Formula& a);

/// Throws EvalError when the verdict depends on an abstract parameter, and
/// ValidationError when `a` is not a closed Delta_0 sentence.
bool eval_delta0(const Formula& a);

/// A hull P given by finitely many generators. Every hereditarily finite set
/// and every ordinal code is in every hull, so only abstract generators are
/// stored.
class HullDescriptor {
 public:
  HullDescriptor() = default;
  explicit HullDescriptor(const std::vector<DeskSet>& gens);

  const std::vector<DeskSet>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  std::string render() const;

  friend bool operator==(const HullDescriptor&, const HullDescriptor&) = default;

 private:
  friend HullDescriptor hull_extend(const HullDescriptor& p, const DeskSet& iota);
  std::vector<DeskSet> gens_;  // abstract, sorted, unique
};

HullDescriptor hull_extend(const HullDescriptor& p, const DeskSet& iota);
HullDescriptor hull_extend(const HullDescriptor& p, const std::vector<DeskSet>& iotas);
bool hull_contains(const HullDescriptor& p, const DeskSet& x);
/// Ordinal codes contain no set parameters, so every code is in every hull.
bool hull_contains(const HullDescriptor& p, const ord::OrdCode& a);
bool hull_contains_all(const HullDescriptor& p, const std::vector<DeskSet>& xs);
/// P is contained in Q.
bool hull_subset(const HullDescriptor& p, const HullDescriptor& q);

}  // namespace kpr
