#pragma once

// Set names of the desk-scale universe.
//
// A DeskSet is either a hereditarily finite set (Concrete) or an Abstract
// set: a declared parameter standing in for a set we cannot build, or a
// finite set literal with at least one abstract element. Both kinds are
// interned; two DeskSets are identical iff their handles compare equal.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kpr/errors.hpp"
#include "kpr/ord.hpp"

namespace kpr {

class DeskSet {
 public:
  enum class Kind : std::uint8_t { Concrete, Abstract };

  DeskSet() = default;  // the empty set

  static DeskSet empty() { return DeskSet(); }
  /// {e1, ..., en}. Concrete when every element is concrete.
  static DeskSet finite(std::vector<DeskSet> elems);
  static DeskSet pair(const DeskSet& a, const DeskSet& b) { return finite({a, b}); }
  /// von Neumann natural n.
  static DeskSet nat(std::uint64_t n);
  /// Declares (or re-fetches) an abstract parameter. Known members must all
  /// have rank below the declared rank; redeclaring with different data throws.
  static DeskSet param(const std::string& name, const ord::OrdCode& rank, std::vector<DeskSet> known = {});
  static std::optional<DeskSet> find_param(const std::string& name);

  Kind kind() const { return kind_; }
  bool is_concrete() const { return kind_ == Kind::Concrete; }
  bool is_param() const;
  std::uint32_t id() const { return id_; }

  /// Concrete: its elements. Abstract: the members known to belong to it.
  std::vector<DeskSet> members() const;
  /// Abstract finite literals know all their members.
  bool members_complete() const;
  ord::OrdCode rank() const;
  /// Finite rank of a concrete set.
  std::uint64_t finite_rank() const;
  std::string render() const;

  friend bool operator==(const DeskSet&, const DeskSet&) = default;
  /// Canonical order: concrete sets by (rank, size, elements), then abstract
  /// sets by rendering.
  friend std::strong_ordering operator<=>(const DeskSet& a, const DeskSet& b);

 private:
  DeskSet(Kind k, std::uint32_t id) : kind_(k), id_(id) {}
  Kind kind_ = Kind::Concrete;
  std::uint32_t id_ = 0;
};

/// Decides x in s when possible: exact for concrete sets, by known
/// membership or by rank for abstract ones.
std::optional<bool> member(const DeskSet& x, const DeskSet& s);

/// Transitive closure of the known membership relation, excluding s itself.
std::vector<DeskSet> transitive_members(const DeskSet& s);

/// All hereditarily finite sets of rank <= max_rank (max_rank <= 4), ordered
/// by rank, then size, then canonically.
std::vector<DeskSet> hf_sets_up_to_rank(std::uint64_t max_rank);

/// Parses `{}`, `{{},{{}}}`, naturals (von Neumann), and `@name` for
/// declared parameters. Elements may be abstract.
DeskSet parse_set(std::string_view text);

}  // namespace kpr
