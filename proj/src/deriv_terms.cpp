#include <algorithm>
#include <set>

#include "deriv_internal.hpp"

namespace kpr {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConstructionError(what);
}

ord::OrdCode nat(std::uint64_t n) { return ord::OrdCode::nat(n); }

ord::OrdCode two_dp(const Formula& a) { return nat(2 * static_cast<std::uint64_t>(a.depth())); }

void check_control(const Signature& s, const std::string& who) {
  for (const auto& x : s.sequent.support())
    require(hull_contains(s.hull, x), who + ": " + x.render() + " is not in the hull " + s.hull.render());
}

}  // namespace

std::string_view term_kind_name(TermKind k) {
  switch (k) {
    case TermKind::Taut: return "Taut";
    case TermKind::Fund: return "Fund";
    case TermKind::AxEmb: return "AxEmb";
    case TermKind::Emb: return "Emb";
    case TermKind::Weak: return "Weak";
    case TermKind::Red: return "Red";
    case TermKind::Elim: return "E";
    case TermKind::Inv: return "Inv";
    case TermKind::Drop: return "Drop";
    case TermKind::Vee: return "Vee";
    case TermKind::Wedge: return "Wedge";
    case TermKind::Cut: return "Cut";
    case TermKind::Ref: return "Ref";
  }
  return "?";
}

std::string Signature::render() const {
  return hull.render() + " |-^" + ord::render(bound) + "_" + std::to_string(rank) + " " + sequent.render();
}

TermKind DerivTerm::kind() const { return n_->kind; }
const Signature& DerivTerm::sig() const { return n_->sig; }
std::string DerivTerm::describe() const { return std::string(term_kind_name(kind())) + " " + sig().render(); }

DerivTerm make_term(TermNode n) { return DerivTerm(std::make_shared<const TermNode>(std::move(n))); }

// ---------------------------------------------------------------------------
// Helpers

Term instantiate(const Term& t, const Assignment& a) {
  if (!t.is_var()) return t;
  for (auto it = a.rbegin(); it != a.rend(); ++it)
    if (it->first == t.var_name()) return Term::name(it->second);
  return Term::zero();
}

Formula instantiate(const Formula& f, const Assignment& a) {
  Formula out = f;
  for (const auto& v : f.free_vars()) out = subst(out, v, instantiate(Term::var(v), a));
  return out;
}

Sequent instantiate(const Sequent& s, const Assignment& a) {
  std::vector<Formula> out;
  for (const auto& f : s) out.push_back(instantiate(f, a));
  return Sequent(std::move(out));
}

HullDescriptor hull_union(const HullDescriptor& a, const HullDescriptor& b) { return hull_extend(a, b.generators()); }

DerivTerm true_leaf(const Formula& a, const HullDescriptor& p) {
  return make_wedge(a, IndexSet{}, {}, Signature{p, ord::OrdCode::zero(), 0, Sequent{a}});
}

axioms::FoundationParts foundation_parts_of(const Formula& instance) {
  require(instance.op() == Op::Or && instance.left().op() == Op::Ex && instance.right().op() == Op::All,
          "not a Foundation instance: " + instance.render());
  axioms::FoundationParts p;
  p.premise = instance.left();
  p.conclusion = instance.right();
  p.instance = instance;
  p.x = p.conclusion.var();
  p.a = p.conclusion.body();
  const Formula below = p.premise.body().left();
  p.y = below.var();
  p.ay = below.body();
  return p;
}

namespace {

/// Least c in the transitive closure of {b} (b included) with A(c) false and
/// A true on the members of c.
std::optional<DeskSet> minimal_counterexample(const axioms::FoundationParts& parts, const DeskSet& b) {
  auto cands = transitive_members(b);
  cands.push_back(b);
  std::sort(cands.begin(), cands.end());
  for (const auto& c : cands) {
    if (eval_delta0(parts.at(Term::name(c)))) continue;
    if (eval_delta0(parts.below(Term::name(c)))) return c;
  }
  return std::nullopt;
}

/// B, derived by the witness c with B_c true.
DerivTerm premise_by_counterexample(const axioms::FoundationParts& parts, const DeskSet& c, const HullDescriptor& p) {
  const Formula bc = Formula::conj(parts.below(Term::name(c)), negate(parts.at(Term::name(c))));
  return make_vee(parts.premise, c, true_leaf(bc, p), Signature{p, nat(1), 0, Sequent{parts.premise}});
}

ord::OrdCode fund_bound(const axioms::FoundationParts& parts, const DeskSet& a) {
  return ord::nat_sum(two_dp(parts.a), ord::mul_left_sub(3, a.rank()));
}

}  // namespace

DerivTerm foundation_step(const axioms::FoundationParts& parts, const DeskSet& b, const HullDescriptor& pb) {
  const Term tb = Term::name(b);
  const Formula ab = parts.at(tb);
  if (parts.a.delta0()) {
    if (eval_delta0(ab)) return true_leaf(ab, pb);
    auto c = minimal_counterexample(parts, b);
    require(c.has_value(), "no minimal counterexample below " + b.render());
    return premise_by_counterexample(parts, *c, pb);
  }
  const ord::OrdCode base = fund_bound(parts, b);
  const Formula below = parts.below(tb);
  const Formula bb = Formula::conj(below, negate(ab));
  DerivTerm left = fund_node(parts, b, pb);
  DerivTerm right = taut(ab, pb);
  Family fam = [left, right](const DeskSet& i) -> DerivTerm {
    if (i == DeskSet::nat(0)) return left;
    if (i == DeskSet::nat(1)) return right;
    throw IndexError("index " + i.render() + " is not 0 or 1");
  };
  DerivTerm wedge = make_wedge(bb, IndexSet{IndexSet::Kind::Two, {}}, fam,
                               Signature{pb, ord::succ(base), 0, Sequent{parts.premise, ab, bb}});
  return make_vee(parts.premise, b, wedge,
                  Signature{pb, ord::succ(ord::succ(base)), 0, Sequent{parts.premise, ab}});
}

// ---------------------------------------------------------------------------
// Explicit inference nodes

DerivTerm make_vee(const Formula& main, const DeskSet& iota, const DerivTerm& sub, const Signature& s) {
  TermNode n;
  n.kind = TermKind::Vee;
  n.sig = s;
  n.f = main;
  n.set = iota;
  n.subs = {sub};
  return make_term(std::move(n));
}

DerivTerm make_wedge(const Formula& main, const IndexSet& j, Family family, const Signature& s) {
  TermNode n;
  n.kind = TermKind::Wedge;
  n.sig = s;
  n.f = main;
  n.j = j;
  n.family = std::move(family);
  return make_term(std::move(n));
}

DerivTerm make_cut(const Formula& c, const DerivTerm& neg, const DerivTerm& pos, const Signature& s) {
  TermNode n;
  n.kind = TermKind::Cut;
  n.sig = s;
  n.f = c;
  n.subs = {neg, pos};
  return make_term(std::move(n));
}

DerivTerm make_ref(const Formula& a, const Term& c, const Formula& negated, const DerivTerm& left,
                   const DerivTerm& right, const Signature& s) {
  TermNode n;
  n.kind = TermKind::Ref;
  n.sig = s;
  n.f = a;
  n.term = c;
  n.g = negated;
  n.subs = {left, right};
  return make_term(std::move(n));
}

// ---------------------------------------------------------------------------
// Defined terms

DerivTerm taut(const Formula& a, const HullDescriptor& p, const Sequent& gamma) {
  require(a.valid() && a.closed(), "taut: not a sentence");
  TermNode n;
  n.kind = TermKind::Taut;
  n.f = a;
  n.sig = Signature{p, two_dp(a), 0, gamma.with(a).with(negate(a))};
  check_control(n.sig, "taut");
  return make_term(std::move(n));
}

DerivTerm fund_node(const axioms::FoundationParts& parts, const DeskSet& a, const HullDescriptor& p) {
  require(hull_contains(p, a), "fund: " + a.render() + " is not in the hull");
  TermNode n;
  n.kind = TermKind::Fund;
  n.parts = parts;
  n.set = a;
  n.sig = Signature{p, fund_bound(parts, a), 0, Sequent{parts.premise, parts.below(Term::name(a))}};
  check_control(n.sig, "fund");
  return make_term(std::move(n));
}

DerivTerm fund(const DeskSet& a, const std::string& x, const Formula& body, const HullDescriptor& p) {
  for (const auto& v : body.free_vars()) require(v == x, "fund: A(x) has free variable " + v);
  return fund_node(axioms::foundation_parts(x, body), a, p);
}

namespace {

int reflection_bound(const Formula& a) { return std::max(2 * a.depth(), 2) + 1; }

ord::OrdCode ax_emb_bound(Rule r, const Formula& instance) {
  switch (r) {
    case Rule::Foundation: return ord::add(ord::OrdCode::omega(), nat(2));
    case Rule::Reflection: return nat(reflection_bound(negate(instance.left())) + 2);
    default: return nat(instance.depth());
  }
}

}  // namespace

DerivTerm ax_emb_instance(Rule r, const Formula& instance, const HullDescriptor& p) {
  require(is_theory_axiom(r), "ax_emb: not a theory axiom");
  require(r != Rule::Infinity, "ax_emb: Infinity has no cut-free derivation in the desk universe");
  require(instance.closed(), "ax_emb: instance is not closed");
  TermNode n;
  n.kind = TermKind::AxEmb;
  n.axiom = r;
  n.f = instance;
  n.sig = Signature{p, ax_emb_bound(r, instance), 0, Sequent{instance}};
  check_control(n.sig, "ax_emb");
  if (r == Rule::Foundation) n.parts = foundation_parts_of(instance);
  DerivTerm d = make_term(std::move(n));
  rule_of(d);  // witnesses are found now, so failures surface at construction
  return d;
}

DerivTerm ax_emb(const ProofNode& axiom, const HullDescriptor& p) {
  Formula f;
  try {
    f = axiom_instance(axiom, 1 << 20);
  } catch (const ValidationError& e) {
    throw ConstructionError(std::string("ax_emb: ") + e.what());
  }
  return ax_emb_instance(axiom.rule, f, p);
}

// ---------------------------------------------------------------------------
// Embedding

namespace {

std::vector<int> embedding_ranks(const FinitaryProof& proof) {
  std::vector<int> m(proof.nodes.size(), 0);
  for (std::size_t i = 0; i < proof.nodes.size(); ++i) {
    const auto& nd = proof.nodes[i];
    int best = 0;
    for (auto k : nd.premises) best = std::max(best, m.at(k));
    if (nd.rule == Rule::Ax) m[i] = 2 * nd.main->depth();
    else if (nd.rule == Rule::Foundation) m[i] = 2;
    else if (is_theory_axiom(nd.rule)) m[i] = 1;
    else if (nd.rule == Rule::Cut) m[i] = std::max(best, nd.cut->depth()) + 1;
    else m[i] = best + 1;
  }
  return m;
}

}  // namespace

int embedding_rank(const FinitaryProof& proof) {
  auto m = embedding_ranks(proof);
  return m.empty() ? 0 : m.back();
}

ord::OrdCode embedding_bound(int m, const Assignment& a) {
  ord::OrdCode tail = ord::OrdCode::zero();
  for (const auto& [v, s] : a) tail = ord::nat_sum(tail, ord::mul_left_sub(3, s.rank()));
  return ord::add(ord::omega_times(static_cast<std::uint64_t>(m)), tail);
}

DerivTerm emb_node(std::shared_ptr<const EmbContext> ctx, std::size_t index, Assignment a, const HullDescriptor& base) {
  const auto& nd = ctx->proof->nodes.at(index);
  const int m = ctx->m.at(index);
  TermNode n;
  n.kind = TermKind::Emb;
  std::vector<DeskSet> vals;
  for (const auto& [v, s] : a) vals.push_back(s);
  n.sig = Signature{hull_extend(base, vals), embedding_bound(m, a), m, instantiate(nd.conclusion, a)};
  n.ctx = std::move(ctx);
  n.index = index;
  n.assign = std::move(a);
  n.base = base;
  return make_term(std::move(n));
}

DerivTerm emb(std::shared_ptr<const FinitaryProof> proof, const Assignment& a, const HullDescriptor& p) {
  require(proof && !proof->nodes.empty(), "emb: empty proof");
  auto ctx = std::make_shared<EmbContext>();
  ctx->proof = proof;
  ctx->m = embedding_ranks(*proof);
  HullDescriptor base = p;
  for (std::size_t i = 0; i < proof->nodes.size(); ++i) {
    const auto& nd = proof->nodes[i];
    base = hull_extend(base, nd.conclusion.support());
    for (const auto& t : nd.terms)
      if (!t.is_var()) base = hull_extend(base, t.set());
    if (nd.term && !nd.term->is_var()) base = hull_extend(base, nd.term->set());
    for (const auto& f : {nd.main, nd.cut, nd.formula})
      if (f) base = hull_extend(base, f->support());
  }
  return emb_node(ctx, proof->root(), a, base);
}

// ---------------------------------------------------------------------------
// Operators

DerivTerm weaken(const DerivTerm& d, const Sequent& delta, const ord::OrdCode& bound, int rank,
                 const HullDescriptor& hull) {
  const Signature& s = d.sig();
  require(hull_subset(s.hull, hull), "weaken: hull " + s.hull.render() + " not contained in " + hull.render());
  require(ord::less_eq(s.bound, bound), "weaken: bound " + ord::render(bound) + " below " + ord::render(s.bound));
  require(s.rank <= rank, "weaken: rank " + std::to_string(rank) + " below " + std::to_string(s.rank));
  TermNode n;
  n.kind = TermKind::Weak;
  n.sig = Signature{hull, bound, rank, s.sequent.unite(delta)};
  check_control(n.sig, "weaken");
  n.subs = {d};
  return make_term(std::move(n));
}

DerivTerm red_node(const Formula& c, const DerivTerm& d0, const DerivTerm& d1, int rank) {
  TermNode n;
  n.kind = TermKind::Red;
  n.f = c;
  const Signature &s0 = d0.sig(), &s1 = d1.sig();
  n.sig = Signature{hull_union(s0.hull, s1.hull), ord::add(s0.bound, s1.bound), rank,
                    s0.sequent.without(negate(c)).unite(s1.sequent.without(c))};
  n.subs = {d0, d1};
  return make_term(std::move(n));
}

DerivTerm reduce(const Formula& c, const DerivTerm& d0, const DerivTerm& d1) {
  require(c.valid() && c.closed(), "reduce: C is not a sentence");
  require(d0.sig().sequent.contains(negate(c)), "reduce: first derivation does not end in not C");
  require(d1.sig().sequent.contains(c), "reduce: second derivation does not end in C");
  Polarity pol;
  try {
    pol = decompose(c).polarity();
  } catch (const std::exception& e) {
    throw ConstructionError(std::string("reduce: ") + e.what());
  }
  require(pol == Polarity::Disjunctive, "reduce: C is not disjunctive");
  const int m = std::max(d0.sig().rank, d1.sig().rank);
  require(c.depth() <= m, "reduce: dp(C) exceeds the cut rank");
  return red_node(c, d0, d1, m);
}

DerivTerm elim_node(const DerivTerm& d, int target) {
  TermNode n;
  n.kind = TermKind::Elim;
  const Signature& s = d.sig();
  n.sig = Signature{s.hull, ord::omega_exp(s.bound), target, s.sequent};
  n.subs = {d};
  return make_term(std::move(n));
}

DerivTerm elim_cuts(const DerivTerm& d, std::string* warning) {
  if (d.sig().rank == 0) {
    if (warning) *warning = "cut rank is already 0";
    return d;
  }
  return elim_node(d, d.sig().rank - 1);
}

DerivTerm inv_node(const DerivTerm& d, const Formula& conj, const DeskSet& iota) {
  const Signature& s = d.sig();
  Decomposition dec = decompose(conj);
  TermNode n;
  n.kind = TermKind::Inv;
  n.f = conj;
  n.set = iota;
  n.sig = Signature{hull_extend(s.hull, iota), s.bound, s.rank, s.sequent.without(conj).with(dec.instance(iota))};
  n.subs = {d};
  return make_term(std::move(n));
}

DerivTerm invert(const DerivTerm& d, const Formula& conj, const DeskSet& iota) {
  require(conj.valid() && conj.closed(), "invert: D is not a sentence");
  require(d.sig().sequent.contains(conj), "invert: D is not in the end sequent");
  try {
    Decomposition dec = decompose(conj);
    require(dec.polarity() == Polarity::Conjunctive, "invert: D is not conjunctive");
    auto in = dec.index_set().contains(iota);
    require(in.value_or(false), "invert: " + iota.render() + " is not an index of D");
  } catch (const EvalError& e) {
    throw ConstructionError(std::string("invert: ") + e.what());
  } catch (const IndexError& e) {
    throw ConstructionError(std::string("invert: ") + e.what());
  }
  return inv_node(d, conj, iota);
}

DerivTerm drop_node(const DerivTerm& d, const Formula& c) {
  const Signature& s = d.sig();
  TermNode n;
  n.kind = TermKind::Drop;
  n.f = c;
  n.sig = Signature{s.hull, s.bound, s.rank, s.sequent.without(c)};
  n.subs = {d};
  return make_term(std::move(n));
}

DerivTerm drop(const DerivTerm& d, const Formula& false_atom) {
  require(false_atom.valid() && false_atom.closed() && false_atom.delta0(), "drop: not a Delta_0 sentence");
  std::optional<bool> v = try_eval_delta0(false_atom);
  require(v.has_value(), "drop: truth of " + false_atom.render() + " is undecided");
  require(!*v, "drop: " + false_atom.render() + " is true");
  return drop_node(d, false_atom);
}

}  // namespace kpr
