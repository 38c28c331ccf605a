#pragma once

// One-sided sequent calculus for KP with Pi_{N+1}-reflection.
//
// Sequents may carry free variables. Weakening is built into every rule:
// a premise sequent need only be contained in the conclusion plus the
// rule's side formulas.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kpr/syntax.hpp"

namespace kpr {

enum class Rule {
  Ax,  // logical axiom
  Or,
  And,
  BEx,
  BAll,
  Ex,
  All,
  Cut,
  Extensionality,
  Pair,
  Union,
  Infinity,
  Separation,
  Collection,
  Foundation,
  Reflection,
};

std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view s);
bool is_theory_axiom(Rule r);

// ---------------------------------------------------------------------------
// Axiom schemata. Bound variables are chosen fresh for the inputs.

namespace axioms {

/// s = t -> (s in u -> t in u)
Formula extensionality(const Term& s, const Term& t, const Term& u);
/// exists z (s in z and t in z)
Formula pair(const Term& s, const Term& t);
/// exists z (all y in s)(all x in y) x in z
Formula union_of(const Term& s);
/// exists z (0 in z and (all x in z)(exists y in z) x in y)
Formula infinity();
/// exists z ((all x in z)(x in s and phi) and (all x in s)(phi -> x in z)),
/// phi Delta_0.
Formula separation(const std::string& x, const Formula& phi, const Term& s);
/// (all x in s)(exists y) phi -> exists z (all x in s)(exists y in z) phi,
/// phi Delta_0.
Formula collection(const std::string& x, const std::string& y, const Formula& phi, const Term& s);

/// The pieces of a Foundation instance for A(x):
///   premise  = exists x ((all y in x) A(y) and not A(x))
///   instance = premise or all x A(x)
struct FoundationParts {
  std::string x, y;
  Formula a;   // A(x)
  Formula ay;  // A(y)
  Formula premise;
  Formula conclusion;  // all x A(x)
  Formula instance;

  /// A(t)
  Formula at(const Term& t) const { return subst(a, x, t); }
  /// (all y in t) A(y)
  Formula below(const Term& t) const { return Formula::ball(y, t, ay); }
};
FoundationParts foundation_parts(const std::string& x, const Formula& a);
Formula foundation(const std::string& x, const Formula& a);

/// The pieces of a reflection instance for A(c):
///   instance = not A(c) or exists z (ad^z and (c in z and A^z))
///   negated  = all z (not ad^z or (c notin z or not A^z))
struct ReflectionParts {
  std::string z;
  Formula a;
  Term c;
  Formula reflected;  // exists z (ad^z and (c in z and A^z))
  Formula negated;
  Formula instance;
};
ReflectionParts reflection_parts(const Formula& a, const Term& c);
Formula reflection(const Formula& a, const Term& c);

}  // namespace axioms

// ---------------------------------------------------------------------------
// Proofs

struct ProofNode {
  std::string id;
  Rule rule = Rule::Ax;
  std::vector<std::size_t> premises;  // indices of earlier nodes
  Sequent conclusion;

  // Witnesses; which ones a rule needs is fixed by the rule.
  std::optional<Formula> main;     // logical rules and Ax
  std::optional<Term> term;        // BEx, Ex
  std::optional<std::string> eigen;  // BAll, All
  std::optional<Formula> cut;      // Cut
  std::optional<Formula> formula;  // schema formula of Separation, Collection, Foundation, Reflection
  std::vector<std::string> vars;   // schema variables
  std::vector<Term> terms;         // schema terms
};

/// Builds the instance a theory-axiom node asserts. Throws ValidationError
/// naming the violated condition.
Formula axiom_instance(const ProofNode& node, int n);

class FinitaryProof {
 public:
  /// Declared free variables of the end sequent.
  std::vector<std::string> vars;
  std::vector<ProofNode> nodes;

  std::size_t add(ProofNode node);
  std::size_t root() const { return nodes.size() - 1; }
  const ProofNode& node(std::size_t i) const { return nodes.at(i); }
  std::optional<std::size_t> find(const std::string& id) const;
};

struct CheckReport {
  bool ok = true;
  std::string node;     // id of the first failing node
  std::string message;  // names the violated side condition

  std::string render() const { return ok ? "ok" : "node " + node + ": " + message; }
};

/// Checks every node. N >= 2 fixes the reflection class Pi_{N+1}.
CheckReport check_proof(const FinitaryProof& p, int n);
const Sequent& end_sequent(const FinitaryProof& p);

/// Line-oriented script:
///   param NAME rank ORD [member SET]...
///   vars x y ...
///   ID RULE [PREMISE-ID]... (seq F...) [(main F)] [(term t)] [(eigen v)]
///        [(cut C)] [(formula F)] [(var x)] [(vars x y)] [(terms s t)]
/// The last node line is the root. `;` starts a comment.
FinitaryProof parse_proof(std::string_view script);
std::string render_proof(const FinitaryProof& p);

// ---------------------------------------------------------------------------
// Builders. Each returns a proof that check_proof accepts.

/// A single logical-axiom node proving {not A, A}.
FinitaryProof identity_proof(const Formula& a);
/// {not A, A} derived by the logical rules down to atoms.
FinitaryProof expanded_identity_proof(const Formula& a);
/// A single theory-axiom node with the given witnesses.
FinitaryProof axiom_proof(Rule r, ProofNode witnesses, std::vector<std::string> vars = {});
/// {exists z (0 in z)} from the Pair instance for (0, 0), by one cut.
FinitaryProof one_cut_proof();

}  // namespace kpr
