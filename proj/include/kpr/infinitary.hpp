#pragma once

// Finitary notations for infinitary operator-controlled derivations
// P |-^alpha_m Gamma.
//
// A DerivTerm carries its signature (hull, bound, cut rank, end sequent),
// computed when the term is built. Its last inference and premises are
// computed on demand by rule_of, so derivations with premises indexed by the
// whole universe are never materialised.
//
// Signatures are read up to weakening: a premise's sequent need only be
// contained in the parent's sequent plus the rule's side formula, and its
// hull in the hull the rule prescribes.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kpr/finitary.hpp"
#include "kpr/ord.hpp"
#include "kpr/syntax.hpp"
#include "kpr/universe.hpp"

namespace kpr {

struct Signature {
  HullDescriptor hull;
  ord::OrdCode bound;
  int rank = 0;
  Sequent sequent;

  std::string render() const;
};

enum class TermKind {
  Taut,
  Fund,
  AxEmb,
  Emb,
  Weak,
  Red,
  Elim,
  Inv,
  Drop,
  Vee,
  Wedge,
  Cut,
  Ref,
};

std::string_view term_kind_name(TermKind k);

struct TermNode;

class DerivTerm {
 public:
  DerivTerm() = default;

  TermKind kind() const;
  const Signature& sig() const;
  bool valid() const { return n_ != nullptr; }
  /// Kind and signature on one line.
  std::string describe() const;

  const TermNode& node() const { return *n_; }
  explicit DerivTerm(std::shared_ptr<const TermNode> n) : n_(std::move(n)) {}

 private:
  std::shared_ptr<const TermNode> n_;
};

// ---------------------------------------------------------------------------
// Rules

enum class RuleTag { Vee, Wedge, Cut, Ref, Pair };

std::string_view rule_tag_name(RuleTag t);

using Family = std::function<DerivTerm(const DeskSet&)>;

/// The last inference of a derivation.
struct RuleView {
  RuleTag tag = RuleTag::Wedge;
  Formula main;          // Vee, Wedge, Pair (the certified formula)
  IndexSet index_set;    // Wedge
  DeskSet iota;          // Vee
  Formula cut;           // Cut: the formula C, premises (not C) and C
  Formula ref_formula;   // Ref: A
  Term ref_term;         // Ref: c
  Formula ref_negated;   // Ref: all z (not ad^z or (c notin z or not A^z))
  std::vector<DerivTerm> fixed;  // Vee: 1, Cut/Ref: 2
  Family family;                 // Wedge

  std::string render() const;
};

RuleView rule_of(const DerivTerm& d);

/// The iota-th premise. Wedge: any index in J (IndexError otherwise).
/// Vee: the unique premise. Cut and Ref: iota is 0 or 1.
DerivTerm premise(const RuleView& v, const DeskSet& iota);

/// Side formula a premise may add, and the hull it lives in.
struct PremiseFrame {
  Sequent side;
  HullDescriptor hull;
};
PremiseFrame premise_frame(const RuleView& v, const Signature& parent, const DeskSet& iota);

// ---------------------------------------------------------------------------
// Constructors. Defined terms check their preconditions and throw
// ConstructionError; explicit inference nodes take a declared signature and
// are checked only by check_local.

/// P |-^{2 dp(A)}_0 Gamma, not A, A for a sentence A.
DerivTerm taut(const Formula& a, const HullDescriptor& p, const Sequent& gamma = {});

/// P |-^{2d # 3 rank(a)}_0 B, (all y in a) A(y) where B is the Foundation
/// premise for A(x), d = dp(A). A(x) may have only x free.
DerivTerm fund(const DeskSet& a, const std::string& x, const Formula& body, const HullDescriptor& p);

/// Cut-free derivation of a closed theory-axiom instance (not Infinity).
DerivTerm ax_emb(const ProofNode& axiom, const HullDescriptor& p);

/// Assignment of sets to proof variables. Later entries shadow earlier ones;
/// every entry counts towards the bound.
using Assignment = std::vector<std::pair<std::string, DeskSet>>;

/// Embedding of a checked finitary proof: P(a) |-^{(m,a)}_m Gamma(a) where
/// (m,a) = Omega*m + 3 rank(a_1) # ... # 3 rank(a_n). Unassigned free
/// variables become 0.
DerivTerm emb(std::shared_ptr<const FinitaryProof> proof, const Assignment& a = {}, const HullDescriptor& p = {});
/// The m that the embedding assigns to the root.
int embedding_rank(const FinitaryProof& proof);
/// (m, a) as above.
ord::OrdCode embedding_bound(int m, const Assignment& a);

DerivTerm weaken(const DerivTerm& d, const Sequent& delta, const ord::OrdCode& bound, int rank,
                 const HullDescriptor& hull);

/// From d0 |- Delta, not C and d1 |- C, Gamma with C disjunctive and
/// dp(C) <= m: P |-^{alpha+beta}_m Delta, Gamma.
DerivTerm reduce(const Formula& c, const DerivTerm& d0, const DerivTerm& d1);

/// From P |-^alpha_{m+1} Gamma: P |-^{omega^alpha}_m Gamma. A rank-0 input is
/// returned unchanged and a warning is stored when `warning` is given.
DerivTerm elim_cuts(const DerivTerm& d, std::string* warning = nullptr);

/// Inversion: from d |- Gamma, D with D conjunctive and iota in its index
/// set, P(iota) |-^alpha_m Gamma, D_iota.
DerivTerm invert(const DerivTerm& d, const Formula& conj, const DeskSet& iota);

/// Removes a false Delta_0 sentence from the end sequent.
DerivTerm drop(const DerivTerm& d, const Formula& false_atom);

DerivTerm make_vee(const Formula& main, const DeskSet& iota, const DerivTerm& sub, const Signature& s);
DerivTerm make_wedge(const Formula& main, const IndexSet& j, Family family, const Signature& s);
DerivTerm make_cut(const Formula& c, const DerivTerm& neg, const DerivTerm& pos, const Signature& s);
DerivTerm make_ref(const Formula& a, const Term& c, const Formula& negated, const DerivTerm& left, const DerivTerm& right,
                   const Signature& s);

// ---------------------------------------------------------------------------
// Checking and evaluation

/// Chooses indices for premises indexed by the universe.
using Sampler = std::function<std::vector<DeskSet>(const HullDescriptor&)>;

/// The first three sets by rank then size, plus the hull's generators.
Sampler default_sampler();
/// Three sets of rank <= 3 drawn from a seeded generator, plus the hull's
/// generators. Deterministic for a given seed and call sequence.
Sampler seeded_sampler(std::uint64_t seed);

struct TraceLine {
  int id = 0;
  int parent = -1;
  std::string rule;
  std::string main;
  std::string bound;
  int rank = 0;
  std::size_t hull_size = 0;
};

struct LocalReport {
  bool ok = true;
  int node = -1;          // trace id of the first violation
  std::string violation;  // condition name, then details
  std::size_t visited = 0;
  std::vector<TraceLine> trace;

  std::string render() const;
};

struct LocalOptions {
  int depth = 3;
  int n = 2;  // reflection class Pi_{N+1}
  Sampler sampler;  // default_sampler() when empty
  bool keep_trace = false;
};

/// Expands d to the given depth and checks, at every visited node, the
/// control condition, strict descent of bounds, and the side conditions of
/// the last inference. Stops at the first violation.
LocalReport check_local(const DerivTerm& d, const LocalOptions& opt = {});

/// `id rule main bound rank hull-size parent`, tab separated.
std::string render_trace(const std::vector<TraceLine>& trace);

enum class Verdict { VerifiedTrue, Inconclusive, Refuted };
std::string_view verdict_name(Verdict v);

struct EvalReport {
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
};

/// Truth of the end sequent certified by expanding to depth k. Universe
/// indices come from the sampler. Throws EvalError when the end sequent
/// names an abstract parameter.
EvalReport eval_cutfree(const DerivTerm& d, int k, const Sampler& sampler = {});

}  // namespace kpr
