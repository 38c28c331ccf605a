#pragma once

// Formulas of the set-theoretic language with set names, in negation normal
// form. Formulas are hash-consed: structurally equal formulas share one node,
// so equality and hashing are pointer operations.

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kpr/desk_set.hpp"

namespace kpr {

class Term {
 public:
  enum class Kind : std::uint8_t { Var, Name };

  static Term var(std::string name);
  static Term name(DeskSet s);
  /// The constant 0, i.e. the name of the empty set.
  static Term zero() { return name(DeskSet::empty()); }

  Kind kind() const { return kind_; }
  bool is_var() const { return kind_ == Kind::Var; }
  const std::string& var_name() const { return var_; }
  const DeskSet& set() const { return set_; }
  std::string render() const;

  friend bool operator==(const Term&, const Term&) = default;

 private:
  Kind kind_ = Kind::Name;
  std::string var_;
  DeskSet set_;
};

enum class Op : std::uint8_t { In, NotIn, Ad, NotAd, Or, And, BEx, BAll, Ex, All };

/// Syntactic complexity: the least n with the formula in Sigma_n, and the
/// least n with it in Pi_n. Delta_0 is sigma == pi == 0.
struct Level {
  int sigma = 0;
  int pi = 0;

  bool delta0() const { return sigma == 0 && pi == 0; }
  bool in_sigma(int n) const { return sigma <= n; }
  bool in_pi(int n) const { return pi <= n; }
  std::string render() const;
  friend bool operator==(const Level&, const Level&) = default;
};

struct FormulaNode;

class Formula {
 public:
  Formula() = default;

  static Formula in(Term t, Term s);
  static Formula not_in(Term t, Term s);
  /// The opaque relativised sentence ad^t and its negation.
  static Formula ad(Term t);
  static Formula not_ad(Term t);
  static Formula disj(Formula a, Formula b);
  static Formula conj(Formula a, Formula b);
  static Formula bex(std::string x, Term bound, Formula body);
  static Formula ball(std::string x, Term bound, Formula body);
  static Formula ex(std::string x, Formula body);
  static Formula all(std::string x, Formula body);
  /// s = t as the bounded abbreviation (all x in s. x in t) and (all x in t. x in s).
  static Formula eq(Term s, Term t);
  static Formula neq(Term s, Term t);

  bool valid() const { return n_ != nullptr; }
  Op op() const;
  bool is_atom() const;
  /// Atoms: the two terms (Ad/NotAd use only lhs).
  const Term& lhs() const;
  const Term& rhs() const;
  /// Quantifiers: the bound variable, bound term (bounded only), and body.
  const std::string& var() const;
  const Term& bound() const;
  Formula body() const;
  /// Binary connectives.
  Formula left() const;
  Formula right() const;

  /// Creation order; a deterministic total order for sequents.
  std::uint64_t serial() const;
  const Level& level() const;
  bool delta0() const { return level().delta0(); }
  /// 0 when there is no unbounded quantifier (ad counts as an atom).
  int depth() const;
  const std::vector<std::string>& free_vars() const;
  bool closed() const { return free_vars().empty(); }
  /// Set names occurring in the formula, sorted.
  const std::vector<DeskSet>& support() const;
  std::string render() const;

  friend bool operator==(const Formula& a, const Formula& b) { return a.n_ == b.n_; }
  friend bool operator<(const Formula& a, const Formula& b) { return a.serial() < b.serial(); }

 private:
  explicit Formula(const FormulaNode* n) : n_(n) {}
  static Formula make(Op op, Term t0, Term t1, std::string var, Formula a, Formula b);
  const FormulaNode* n_ = nullptr;
  friend struct FormulaHash;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return std::hash<const void*>()(f.n_); }
};

Formula negate(const Formula& a);
Level classify(const Formula& a);
int depth(const Formula& a);
std::vector<DeskSet> support(const Formula& a);
/// Replaces free occurrences of variable x by t. Throws ValidationError if t
/// is a variable that would be captured.
Formula subst(const Formula& a, const std::string& x, const Term& t);
/// Restricts every unbounded quantifier to the term c.
Formula relativize(const Formula& a, const Term& c);
/// Does the formula bind variable x anywhere?
bool binds(const Formula& a, const std::string& x);
/// All variable names occurring (free or bound).
std::vector<std::string> variables(const Formula& a);
/// First of z, z1, z2, ... not in `avoid`.
std::string fresh_var(const std::vector<std::string>& avoid, const std::string& stem = "z");

/// Finite set of formulas.
class Sequent {
 public:
  Sequent() = default;
  Sequent(std::initializer_list<Formula> fs);
  explicit Sequent(std::vector<Formula> fs);

  bool contains(const Formula& f) const;
  Sequent with(const Formula& f) const;
  Sequent without(const Formula& f) const;
  Sequent unite(const Sequent& other) const;
  bool subset_of(const Sequent& other) const;
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  const std::vector<Formula>& items() const { return items_; }
  std::vector<DeskSet> support() const;
  std::vector<std::string> free_vars() const;
  std::string render() const;

  friend bool operator==(const Sequent&, const Sequent&) = default;

 private:
  std::vector<Formula> items_;  // sorted by serial, unique
};

// ---------------------------------------------------------------------------
// Disjunction/conjunction assignment

enum class Polarity : std::uint8_t { Disjunctive, Conjunctive };

struct IndexSet {
  enum class Kind : std::uint8_t { Empty, Two, BoundedBy, Universe };
  Kind kind = Kind::Empty;
  DeskSet bound;  // BoundedBy only

  /// Decides whether i is an index, when possible.
  std::optional<bool> contains(const DeskSet& i) const;
  std::string render() const;
  friend bool operator==(const IndexSet&, const IndexSet&) = default;
};

/// A sentence read as a disjunction or conjunction of its instances.
/// For J = Two the indices are the von Neumann numerals 0 and 1.
class Decomposition {
 public:
  Decomposition(Formula source, Polarity p, IndexSet j) : source_(source), polarity_(p), index_(std::move(j)) {}

  const Formula& source() const { return source_; }
  Polarity polarity() const { return polarity_; }
  const IndexSet& index_set() const { return index_; }
  /// The iota-th instance. Throws IndexError when iota is not (or cannot be
  /// shown to be) in the index set.
  Formula instance(const DeskSet& iota) const;

 private:
  Formula source_;
  Polarity polarity_;
  IndexSet index_;
};

/// Throws EvalError when A is a Delta_0 sentence whose truth cannot be
/// decided, ValidationError when A is not a sentence.
Decomposition decompose(const Formula& a);

struct SExpr;

/// S-expression syntax: (in t s) (nin t s) (ad t) (nad t) (or A B ...)
/// (and A B ...) (bex x t A) (ball x t A) (ex x A) (all x A) (eq s t).
/// Terms are variables, set literals, naturals and declared @params.
Formula parse_formula(std::string_view text);
Formula parse_formula(const SExpr& e);
Term parse_term(const SExpr& e);
/// `(seq F1 ... Fn)`.
Sequent parse_sequent(std::string_view text);
Sequent parse_sequent(const SExpr& e);

}  // namespace kpr
