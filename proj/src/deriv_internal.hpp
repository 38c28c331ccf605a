#pragma once

// Representation of derivation terms, shared by the infinitary sources.

#include "kpr/errors.hpp"
#include "kpr/infinitary.hpp"

namespace kpr {

struct EmbContext {
  std::shared_ptr<const FinitaryProof> proof;
  std::vector<int> m;  // embedding rank of each node
};

struct TermNode {
  TermKind kind = TermKind::Taut;
  Signature sig;

  Formula f;      // Taut: A. Red, Drop: C. Inv: D. Vee, Wedge: main. Cut: C. Ref: A. AxEmb: instance.
  Formula g;      // Ref: negated reflection formula
  Term term;      // Ref: c
  DeskSet set;    // Fund: a. Inv, Vee: iota
  IndexSet j;     // Wedge
  Family family;  // Wedge
  std::vector<DerivTerm> subs;  // Weak, Elim, Inv, Drop: 1. Red: d0, d1. Vee: 1. Cut, Ref: 2.
  Rule axiom = Rule::Ax;        // AxEmb
  axioms::FoundationParts parts;  // Fund, foundation AxEmb

  // Emb
  std::shared_ptr<const EmbContext> ctx;
  std::size_t index = 0;
  Assignment assign;
  HullDescriptor base;
};

DerivTerm make_term(TermNode n);

// Unchecked constructors used while unfolding; they keep the parent's rank
// where the checked ones would recompute it.
DerivTerm red_node(const Formula& c, const DerivTerm& d0, const DerivTerm& d1, int rank);
DerivTerm elim_node(const DerivTerm& d, int target);
DerivTerm inv_node(const DerivTerm& d, const Formula& conj, const DeskSet& iota);
DerivTerm drop_node(const DerivTerm& d, const Formula& c);
DerivTerm emb_node(std::shared_ptr<const EmbContext> ctx, std::size_t index, Assignment a, const HullDescriptor& base);
DerivTerm fund_node(const axioms::FoundationParts& parts, const DeskSet& a, const HullDescriptor& p);
DerivTerm ax_emb_instance(Rule r, const Formula& instance, const HullDescriptor& p);
/// A Wedge with no premises on a true Delta_0 sentence.
DerivTerm true_leaf(const Formula& a, const HullDescriptor& p);

/// Recovers the Foundation pieces from an instance B or all x A(x).
axioms::FoundationParts foundation_parts_of(const Formula& instance);
/// The derivation of B, A(b) used under the universal Wedge of Foundation
/// and the bounded Wedge of Fund.
DerivTerm foundation_step(const axioms::FoundationParts& parts, const DeskSet& b, const HullDescriptor& pb);

/// Substitutes assigned sets for free variables; unassigned ones become 0.
Formula instantiate(const Formula& f, const Assignment& a);
Sequent instantiate(const Sequent& s, const Assignment& a);
Term instantiate(const Term& t, const Assignment& a);

HullDescriptor hull_union(const HullDescriptor& a, const HullDescriptor& b);

RuleView map_premises(const RuleView& r, const std::function<DerivTerm(const DerivTerm&)>& f);

}  // namespace kpr
