#include "kpr/finitary.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "kpr/errors.hpp"

namespace kpr {

namespace {

constexpr std::array<std::pair<Rule, std::string_view>, 16> kRuleNames{{
    {Rule::Ax, "ax"},
    {Rule::Or, "or"},
    {Rule::And, "and"},
    {Rule::BEx, "bex"},
    {Rule::BAll, "ball"},
    {Rule::Ex, "ex"},
    {Rule::All, "all"},
    {Rule::Cut, "cut"},
    {Rule::Extensionality, "extensionality"},
    {Rule::Pair, "pair"},
    {Rule::Union, "union"},
    {Rule::Infinity, "infinity"},
    {Rule::Separation, "separation"},
    {Rule::Collection, "collection"},
    {Rule::Foundation, "foundation"},
    {Rule::Reflection, "reflection"},
}};

std::vector<std::string> vars_of(std::initializer_list<Term> ts, std::initializer_list<Formula> fs = {}) {
  std::vector<std::string> out;
  for (const auto& t : ts)
    if (t.is_var()) out.push_back(t.var_name());
  for (const auto& f : fs) {
    auto v = variables(f);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

Term var(const std::string& x) { return Term::var(x); }

}  // namespace

std::string_view rule_name(Rule r) {
  for (const auto& [rule, name] : kRuleNames)
    if (rule == r) return name;
  return "?";
}

std::optional<Rule> rule_from_name(std::string_view s) {
  for (const auto& [rule, name] : kRuleNames)
    if (name == s) return rule;
  return std::nullopt;
}

bool is_theory_axiom(Rule r) { return r >= Rule::Extensionality; }

namespace axioms {

Formula extensionality(const Term& s, const Term& t, const Term& u) {
  return Formula::disj(Formula::neq(s, t), Formula::disj(Formula::not_in(s, u), Formula::in(t, u)));
}

Formula pair(const Term& s, const Term& t) {
  std::string z = fresh_var(vars_of({s, t}));
  return Formula::ex(z, Formula::conj(Formula::in(s, var(z)), Formula::in(t, var(z))));
}

Formula union_of(const Term& s) {
  auto avoid = vars_of({s});
  std::string z = fresh_var(avoid);
  avoid.push_back(z);
  std::string y = fresh_var(avoid, "y");
  avoid.push_back(y);
  std::string x = fresh_var(avoid, "x");
  return Formula::ex(z, Formula::ball(y, s, Formula::ball(x, var(y), Formula::in(var(x), var(z)))));
}

Formula infinity() {
  auto body = Formula::ball("x", var("z"), Formula::bex("y", var("z"), Formula::in(var("x"), var("y"))));
  return Formula::ex("z", Formula::conj(Formula::in(Term::zero(), var("z")), body));
}

Formula separation(const std::string& x, const Formula& phi, const Term& s) {
  if (!phi.delta0()) throw ValidationError("separation class violation: formula is not Delta_0");
  if (s.is_var() && s.var_name() == x) throw ValidationError("separation: bound term is the schema variable");
  auto avoid = vars_of({s}, {phi});
  avoid.push_back(x);
  std::string z = fresh_var(avoid);
  Term xv = var(x), zv = var(z);
  auto left = Formula::ball(x, zv, Formula::conj(Formula::in(xv, s), phi));
  auto right = Formula::ball(x, s, Formula::disj(negate(phi), Formula::in(xv, zv)));
  return Formula::ex(z, Formula::conj(left, right));
}

Formula collection(const std::string& x, const std::string& y, const Formula& phi, const Term& s) {
  if (!phi.delta0()) throw ValidationError("collection class violation: formula is not Delta_0");
  if (x == y) throw ValidationError("collection: schema variables must differ");
  if (s.is_var() && (s.var_name() == x || s.var_name() == y))
    throw ValidationError("collection: bound term is a schema variable");
  auto avoid = vars_of({s}, {phi});
  avoid.push_back(x);
  avoid.push_back(y);
  std::string z = fresh_var(avoid);
  auto hyp = Formula::bex(x, s, Formula::all(y, negate(phi)));
  auto concl = Formula::ex(z, Formula::ball(x, s, Formula::bex(y, var(z), phi)));
  return Formula::disj(hyp, concl);
}

FoundationParts foundation_parts(const std::string& x, const Formula& a) {
  FoundationParts p;
  p.x = x;
  p.a = a;
  auto avoid = variables(a);
  avoid.push_back(x);
  p.y = fresh_var(avoid, "y");
  p.ay = subst(a, x, var(p.y));
  p.premise = Formula::ex(x, Formula::conj(Formula::ball(p.y, var(x), p.ay), negate(a)));
  p.conclusion = Formula::all(x, a);
  p.instance = Formula::disj(p.premise, p.conclusion);
  return p;
}

Formula foundation(const std::string& x, const Formula& a) { return foundation_parts(x, a).instance; }

ReflectionParts reflection_parts(const Formula& a, const Term& c) {
  ReflectionParts p{"", a, c, {}, {}, {}};
  p.z = fresh_var(vars_of({c}, {a}));
  Term zv = var(p.z);
  p.reflected = Formula::ex(p.z, Formula::conj(Formula::ad(zv), Formula::conj(Formula::in(c, zv), relativize(a, zv))));
  p.negated = negate(p.reflected);
  p.instance = Formula::disj(negate(a), p.reflected);
  return p;
}

Formula reflection(const Formula& a, const Term& c) { return reflection_parts(a, c).instance; }

}  // namespace axioms

Formula axiom_instance(const ProofNode& node, int n) {
  auto need = [&](std::size_t nterms, std::size_t nvars, bool formula) {
    if (node.terms.size() != nterms)
      throw ValidationError(std::string(rule_name(node.rule)) + " needs " + std::to_string(nterms) + " terms");
    if (node.vars.size() != nvars)
      throw ValidationError(std::string(rule_name(node.rule)) + " needs " + std::to_string(nvars) + " schema variables");
    if (formula && !node.formula) throw ValidationError(std::string(rule_name(node.rule)) + " needs a schema formula");
  };
  const auto& t = node.terms;
  switch (node.rule) {
    case Rule::Extensionality:
      need(3, 0, false);
      return axioms::extensionality(t[0], t[1], t[2]);
    case Rule::Pair:
      need(2, 0, false);
      return axioms::pair(t[0], t[1]);
    case Rule::Union:
      need(1, 0, false);
      return axioms::union_of(t[0]);
    case Rule::Infinity:
      need(0, 0, false);
      return axioms::infinity();
    case Rule::Separation:
      need(1, 1, true);
      return axioms::separation(node.vars[0], *node.formula, t[0]);
    case Rule::Collection:
      need(1, 2, true);
      return axioms::collection(node.vars[0], node.vars[1], *node.formula, t[0]);
    case Rule::Foundation:
      need(0, 1, true);
      return axioms::foundation(node.vars[0], *node.formula);
    case Rule::Reflection:
      need(1, 0, true);
      if (!node.formula->level().in_pi(n + 1))
        throw ValidationError("reflection class violation: " + node.formula->level().render() + " formula is not Pi_" +
                              std::to_string(n + 1));
      return axioms::reflection(*node.formula, t[0]);
    default:
      throw ValidationError(std::string(rule_name(node.rule)) + " is not a theory axiom");
  }
}

std::size_t FinitaryProof::add(ProofNode node) {
  if (node.id.empty()) node.id = "n" + std::to_string(nodes.size());
  for (auto p : node.premises)
    if (p >= nodes.size()) throw ValidationError("premise index out of range in node " + node.id);
  nodes.push_back(std::move(node));
  return nodes.size() - 1;
}

std::optional<std::size_t> FinitaryProof::find(const std::string& id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].id == id) return i;
  return std::nullopt;
}

const Sequent& end_sequent(const FinitaryProof& p) {
  if (p.nodes.empty()) throw ValidationError("empty proof");
  return p.nodes.back().conclusion;
}

// ---------------------------------------------------------------------------
// Checker

namespace {

struct Failure {
  std::string message;
};

[[noreturn]] void fail(std::string m) { throw Failure{std::move(m)}; }

Formula main_of(const ProofNode& node, Op op) {
  if (!node.main) fail("missing witness (main F)");
  if (!node.conclusion.contains(*node.main)) fail("main formula not in conclusion");
  if (node.main->op() != op) fail("main formula has the wrong shape for rule " + std::string(rule_name(node.rule)));
  return *node.main;
}

const std::string& eigen_of(const ProofNode& node) {
  if (!node.eigen) fail("missing witness (eigen v)");
  const auto& fv = node.conclusion.free_vars();
  if (std::binary_search(fv.begin(), fv.end(), *node.eigen))
    fail("eigenvariable condition: " + *node.eigen + " occurs in the conclusion");
  return *node.eigen;
}

const Term& term_of(const ProofNode& node) {
  if (!node.term) fail("missing witness (term t)");
  return *node.term;
}

Formula instance(const Formula& body, const std::string& x, const Term& t) {
  try {
    return subst(body, x, t);
  } catch (const ValidationError& e) {
    fail(e.what());
  }
}

void check_premise(const FinitaryProof& p, const ProofNode& node, std::size_t k, const Sequent& side,
                   const std::optional<std::string>& eigen) {
  const ProofNode& prem = p.nodes[node.premises[k]];
  if (!prem.conclusion.subset_of(node.conclusion.unite(side))) {
    std::string what = node.rule == Rule::Cut ? "cut formula: premise " : "premise ";
    fail(what + prem.id + " is not covered by the conclusion and side formulas");
  }
  auto fv = node.conclusion.free_vars();
  if (eigen) fv.push_back(*eigen);
  for (const auto& v : prem.conclusion.free_vars())
    if (std::find(fv.begin(), fv.end(), v) == fv.end())
      fail("variable discipline: premise " + prem.id + " introduces free variable " + v);
}

void check_node(const FinitaryProof& p, const ProofNode& node, int n) {
  auto arity = [&](std::size_t k) {
    if (node.premises.size() != k) fail("expected " + std::to_string(k) + " premises");
  };
  switch (node.rule) {
    case Rule::Ax: {
      arity(0);
      if (!node.main) fail("missing witness (main F)");
      if (!node.conclusion.contains(*node.main) || !node.conclusion.contains(negate(*node.main)))
        fail("logical axiom: A and its negation must both occur");
      return;
    }
    case Rule::Or: {
      arity(1);
      auto a = main_of(node, Op::Or);
      check_premise(p, node, 0, Sequent{a.left(), a.right()}, {});
      return;
    }
    case Rule::And: {
      arity(2);
      auto a = main_of(node, Op::And);
      check_premise(p, node, 0, Sequent{a.left()}, {});
      check_premise(p, node, 1, Sequent{a.right()}, {});
      return;
    }
    case Rule::BEx: {
      arity(2);
      auto a = main_of(node, Op::BEx);
      const Term& t = term_of(node);
      check_premise(p, node, 0, Sequent{Formula::in(t, a.bound())}, {});
      check_premise(p, node, 1, Sequent{instance(a.body(), a.var(), t)}, {});
      return;
    }
    case Rule::BAll: {
      arity(1);
      auto a = main_of(node, Op::BAll);
      const auto& v = eigen_of(node);
      Term vt = Term::var(v);
      check_premise(p, node, 0, Sequent{Formula::not_in(vt, a.bound()), instance(a.body(), a.var(), vt)}, v);
      return;
    }
    case Rule::Ex: {
      arity(1);
      auto a = main_of(node, Op::Ex);
      check_premise(p, node, 0, Sequent{instance(a.body(), a.var(), term_of(node))}, {});
      return;
    }
    case Rule::All: {
      arity(1);
      auto a = main_of(node, Op::All);
      const auto& v = eigen_of(node);
      check_premise(p, node, 0, Sequent{instance(a.body(), a.var(), Term::var(v))}, v);
      return;
    }
    case Rule::Cut: {
      arity(2);
      if (!node.cut) fail("missing witness (cut C)");
      check_premise(p, node, 0, Sequent{negate(*node.cut)}, {});
      check_premise(p, node, 1, Sequent{*node.cut}, {});
      return;
    }
    default: {
      arity(0);
      Formula f;
      try {
        f = axiom_instance(node, n);
      } catch (const ValidationError& e) {
        fail(e.what());
      }
      if (!node.conclusion.contains(f)) fail("axiom instance not in conclusion: " + f.render());
      return;
    }
  }
}

}  // namespace

CheckReport check_proof(const FinitaryProof& p, int n) {
  CheckReport r;
  auto bad = [&](std::string node, std::string msg) {
    r.ok = false;
    r.node = std::move(node);
    r.message = std::move(msg);
    return r;
  };
  if (n < 2) return bad("-", "N must be at least 2");
  if (p.nodes.empty()) return bad("-", "empty proof");
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    for (auto k : p.nodes[i].premises)
      if (k >= i) return bad(p.nodes[i].id, "premise must precede its conclusion");
    try {
      check_node(p, p.nodes[i], n);
    } catch (const Failure& f) {
      return bad(p.nodes[i].id, f.message);
    }
  }
  for (const auto& v : end_sequent(p).free_vars())
    if (std::find(p.vars.begin(), p.vars.end(), v) == p.vars.end())
      return bad(p.nodes.back().id, "undeclared variable " + v + " in the end sequent");
  return r;
}

}  // namespace kpr
