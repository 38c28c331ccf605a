#include <algorithm>

#include "deriv_internal.hpp"

namespace kpr {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ConstructionError(what); }

ord::OrdCode nat(std::uint64_t n) { return ord::OrdCode::nat(n); }

const DeskSet& zero() {
  static const DeskSet z = DeskSet::nat(0);
  return z;
}
const DeskSet& one() {
  static const DeskSet o = DeskSet::nat(1);
  return o;
}

IndexSet two() { return IndexSet{IndexSet::Kind::Two, {}}; }

RuleView vee(const Formula& main, const DeskSet& iota, const DerivTerm& sub) {
  RuleView r;
  r.tag = RuleTag::Vee;
  r.main = main;
  r.iota = iota;
  r.fixed = {sub};
  return r;
}

RuleView wedge(const Formula& main, const IndexSet& j, Family fam) {
  RuleView r;
  r.tag = RuleTag::Wedge;
  r.main = main;
  r.index_set = j;
  r.family = std::move(fam);
  return r;
}

RuleView empty_wedge(const Formula& main) { return wedge(main, IndexSet{}, {}); }

RuleView cut(const Formula& c, const DerivTerm& neg, const DerivTerm& pos) {
  RuleView r;
  r.tag = RuleTag::Cut;
  r.cut = c;
  r.fixed = {neg, pos};
  return r;
}

Family pair_family(const DerivTerm& d0, const DerivTerm& d1) {
  return [d0, d1](const DeskSet& i) -> DerivTerm {
    if (i == zero()) return d0;
    if (i == one()) return d1;
    throw IndexError("index " + i.render() + " is not 0 or 1");
  };
}

bool truth(const Formula& a) {
  std::optional<bool> v = try_eval_delta0(a);
  if (!v) throw EvalError("truth of " + a.render() + " is undecided");
  return *v;
}

// ---------------------------------------------------------------------------
// Taut

RuleView taut_rule(const TermNode& n) {
  const Formula& a = n.f;
  const Signature& s = n.sig;
  const int d = a.depth();
  if (d == 0) {
    if (a.delta0()) {
      if (auto v = try_eval_delta0(a)) return empty_wedge(*v ? a : negate(a));
    }
    RuleView r;
    r.tag = RuleTag::Pair;
    r.main = a;
    return r;
  }
  Decomposition da = decompose(a);
  const Formula k = da.polarity() == Polarity::Conjunctive ? a : negate(a);
  const Formula l = negate(k);
  const Decomposition dk = decompose(k);
  const HullDescriptor hull = s.hull;
  const Sequent seq = s.sequent;
  const ord::OrdCode b = nat(2 * static_cast<std::uint64_t>(d) - 1);
  Family fam = [dk, l, hull, seq, b](const DeskSet& i) {
    const Formula ki = dk.instance(i);
    const HullDescriptor hi = hull_extend(hull, i);
    return make_vee(l, i, taut(ki, hi), Signature{hi, b, 0, seq.with(ki)});
  };
  return wedge(k, dk.index_set(), fam);
}

// ---------------------------------------------------------------------------
// Fund

RuleView fund_rule(const TermNode& n) {
  const auto& parts = n.parts;
  const DeskSet a = n.set;
  const Formula below = parts.below(Term::name(a));
  if (parts.a.delta0()) {
    if (truth(below)) return empty_wedge(below);
    auto cands = transitive_members(a);
    std::sort(cands.begin(), cands.end());
    for (const auto& c : cands) {
      const Term tc = Term::name(c);
      if (truth(parts.at(tc)) || !truth(parts.below(tc))) continue;
      const Formula bc = Formula::conj(parts.below(tc), negate(parts.at(tc)));
      return vee(parts.premise, c, true_leaf(bc, n.sig.hull));
    }
    fail("fund: no minimal counterexample below " + a.render());
  }
  const HullDescriptor hull = n.sig.hull;
  Family fam = [parts, hull](const DeskSet& b) { return foundation_step(parts, b, hull_extend(hull, b)); };
  return wedge(below, IndexSet{IndexSet::Kind::BoundedBy, a}, fam);
}

// ---------------------------------------------------------------------------
// Theory axioms

DeskSet known_set(const std::vector<DeskSet>& elems) { return DeskSet::finite(elems); }

std::vector<DeskSet> complete_members(const DeskSet& s, const std::string& who) {
  if (!s.members_complete()) fail(who + ": members of " + s.render() + " are not known");
  return s.members();
}

RuleView ax_rule(const TermNode& n) {
  const Formula& f = n.f;
  const HullDescriptor& p = n.sig.hull;
  switch (n.axiom) {
    case Rule::Extensionality: {
      if (!truth(f)) fail("extensionality instance is false: " + f.render());
      return empty_wedge(f);
    }
    case Rule::Pair: {
      // exists z (s in z and t in z)
      const Formula body = f.body();
      const DeskSet w = known_set({body.left().lhs().set(), body.right().lhs().set()});
      return vee(f, w, true_leaf(subst(body, f.var(), Term::name(w)), p));
    }
    case Rule::Union: {
      // exists z (all y in s)(all x in y) x in z
      const DeskSet s = f.body().bound().set();
      std::vector<DeskSet> all;
      for (const auto& m : complete_members(s, "union"))
        for (const auto& e : complete_members(m, "union")) all.push_back(e);
      const DeskSet w = known_set(all);
      return vee(f, w, true_leaf(subst(f.body(), f.var(), Term::name(w)), p));
    }
    case Rule::Separation: {
      // exists z ((all x in z)(x in s and phi) and (all x in s)(phi -> x in z))
      const Formula lower = f.body().left();
      const std::string x = lower.var();
      const Formula phi = lower.body().right();
      const DeskSet s = lower.body().left().rhs().set();
      std::vector<DeskSet> keep;
      for (const auto& m : complete_members(s, "separation"))
        if (truth(subst(phi, x, Term::name(m)))) keep.push_back(m);
      const DeskSet w = known_set(keep);
      return vee(f, w, true_leaf(subst(f.body(), f.var(), Term::name(w)), p));
    }
    case Rule::Collection: {
      // hyp or concl, hyp = (exists x in s)(all y) not phi,
      // concl = exists z (all x in s)(exists y in z) phi
      const Formula hyp = f.left(), concl = f.right();
      const DeskSet s = hyp.bound().set();
      const std::string x = hyp.var(), y = hyp.body().var();
      const Formula phi = negate(hyp.body().body());
      std::vector<DeskSet> cands = hf_sets_up_to_rank(3);
      for (const auto& t : transitive_members(s)) cands.push_back(t);
      for (const auto& t : f.support()) cands.push_back(t);
      std::vector<DeskSet> witnesses;
      for (const auto& m : complete_members(s, "collection")) {
        const Formula phx = subst(phi, x, Term::name(m));
        std::optional<DeskSet> found;
        for (const auto& c : cands)
          if (truth(subst(phx, y, Term::name(c)))) {
            found = c;
            break;
          }
        if (!found) {
          // Refute the hypothesis at m: every y fails phi(m, y).
          const Formula forall = subst(hyp.body(), x, Term::name(m));
          Family fam = [forall, p](const DeskSet& i) {
            const HullDescriptor hi = hull_extend(p, i);
            return true_leaf(subst(forall.body(), forall.var(), Term::name(i)), hi);
          };
          DerivTerm w = make_wedge(forall, IndexSet{IndexSet::Kind::Universe, {}}, fam,
                                   Signature{p, nat(1), 0, Sequent{forall}});
          DerivTerm h = make_vee(hyp, m, w, Signature{p, nat(2), 0, Sequent{f, hyp}});
          return vee(f, zero(), h);
        }
        witnesses.push_back(*found);
      }
      const DeskSet b = known_set(witnesses);
      const Formula cb = subst(concl.body(), concl.var(), Term::name(b));
      DerivTerm c = make_vee(concl, b, true_leaf(cb, p), Signature{p, nat(1), 0, Sequent{f, concl}});
      return vee(f, one(), c);
    }
    case Rule::Foundation: {
      const auto& parts = n.parts;
      Family fam = [parts, p](const DeskSet& a) { return foundation_step(parts, a, hull_extend(p, a)); };
      const ord::OrdCode w = ord::OrdCode::omega();
      DerivTerm all = make_wedge(parts.conclusion, IndexSet{IndexSet::Kind::Universe, {}}, fam,
                                 Signature{p, w, 0, Sequent{f, parts.conclusion, parts.premise}});
      DerivTerm left = make_vee(f, zero(), all, Signature{p, ord::succ(w), 0, Sequent{f, parts.conclusion}});
      return vee(f, one(), left);
    }
    case Rule::Reflection: {
      // not A or exists z (ad^z and (c in z and A^z))
      const Formula a = negate(f.left());
      const Formula reflected = f.right();
      const Term c = reflected.body().right().left().lhs();
      const int r = std::max(2 * a.depth(), 2) + 1;
      DerivTerm ref = make_ref(a, c, negate(reflected), taut(a, p), taut(reflected, p),
                               Signature{p, nat(r), 0, Sequent{f.left(), reflected}});
      DerivTerm inner = make_vee(f, zero(), ref, Signature{p, nat(r + 1), 0, Sequent{f, reflected}});
      return vee(f, one(), inner);
    }
    default:
      fail("no cut-free derivation for " + std::string(rule_name(n.axiom)));
  }
}

// ---------------------------------------------------------------------------
// Embedding

DerivTerm drop_false(DerivTerm d, std::initializer_list<Formula> fs) {
  for (const auto& f : fs)
    if (d.sig().sequent.contains(f)) d = drop_node(d, f);
  return d;
}

RuleView emb_rule(const TermNode& n) {
  const auto& ctx = n.ctx;
  const auto& nd = ctx->proof->nodes.at(n.index);
  const Assignment& a = n.assign;
  const HullDescriptor& base = n.base;
  auto sub = [&](std::size_t k, const Assignment& b) { return emb_node(ctx, nd.premises.at(k), b, base); };

  if (nd.rule == Rule::Ax) return rule_of(taut(instantiate(*nd.main, a), n.sig.hull));
  if (is_theory_axiom(nd.rule))
    return rule_of(ax_emb_instance(nd.rule, instantiate(axiom_instance(nd, 1 << 20), a), n.sig.hull));
  if (nd.rule == Rule::Cut) return cut(instantiate(*nd.cut, a), sub(0, a), sub(1, a));

  const Formula main = instantiate(*nd.main, a);
  if (main.delta0()) {
    if (truth(main)) return empty_wedge(main);
    switch (nd.rule) {
      case Rule::Or:
        return rule_of(drop_false(sub(0, a), {main.left(), main.right()}));
      case Rule::And:
        return rule_of(truth(main.left()) ? drop_false(sub(1, a), {main.right()}) : drop_false(sub(0, a), {main.left()}));
      case Rule::BEx: {
        const Term t = instantiate(*nd.term, a);
        const Formula tin = Formula::in(t, main.bound());
        if (!truth(tin)) return rule_of(drop_false(sub(0, a), {tin}));
        return rule_of(drop_false(sub(1, a), {subst(main.body(), main.var(), t)}));
      }
      case Rule::BAll: {
        for (const auto& b : main.bound().set().members()) {
          const Formula bb = subst(main.body(), main.var(), Term::name(b));
          if (truth(bb)) continue;
          Assignment ab = a;
          ab.emplace_back(*nd.eigen, b);
          return rule_of(drop_false(sub(0, ab), {Formula::not_in(Term::name(b), main.bound()), bb}));
        }
        fail("emb: no counterexample for " + main.render());
      }
      default:
        break;
    }
  }
  switch (nd.rule) {
    case Rule::Or: {
      const DerivTerm p = sub(0, a);
      const int mp = ctx->m.at(nd.premises[0]);
      DerivTerm right = make_vee(main, one(), p,
                                 Signature{n.sig.hull, ord::succ(embedding_bound(mp, a)), n.sig.rank,
                                           n.sig.sequent.with(main.left())});
      return vee(main, zero(), right);
    }
    case Rule::And:
      return wedge(main, two(), pair_family(sub(0, a), sub(1, a)));
    case Rule::BEx: {
      const Term t = instantiate(*nd.term, a);
      const Formula tin = Formula::in(t, main.bound());
      if (truth(tin)) return vee(main, t.set(), sub(1, a));
      return rule_of(drop_false(sub(0, a), {tin}));
    }
    case Rule::Ex:
      return vee(main, instantiate(*nd.term, a).set(), sub(0, a));
    case Rule::BAll:
    case Rule::All: {
      const bool bounded = nd.rule == Rule::BAll;
      const std::string v = *nd.eigen;
      const std::size_t k = nd.premises.at(0);
      const HullDescriptor b0 = base;
      auto c = ctx;
      const Term bound = bounded ? main.bound() : Term::zero();
      Family fam = [c, k, a, v, b0, bounded, bound](const DeskSet& i) {
        Assignment ai = a;
        ai.emplace_back(v, i);
        DerivTerm d = emb_node(c, k, ai, b0);
        return bounded ? drop_false(d, {Formula::not_in(Term::name(i), bound)}) : d;
      };
      return wedge(main, bounded ? IndexSet{IndexSet::Kind::BoundedBy, bound.set()} : IndexSet{IndexSet::Kind::Universe, {}},
                   fam);
    }
    default:
      fail("emb: unexpected rule " + std::string(rule_name(nd.rule)));
  }
}

// ---------------------------------------------------------------------------
// Operators

DerivTerm red_premise(const Formula& c, const DerivTerm& d0, const DerivTerm& p, int rank) {
  return p.sig().sequent.contains(c) ? red_node(c, d0, p, rank) : p;
}

DerivTerm inv_premise(const DerivTerm& p, const Formula& d, const DeskSet& iota) {
  return p.sig().sequent.contains(d) ? inv_node(p, d, iota) : p;
}

DerivTerm drop_premise(const DerivTerm& p, const Formula& c) {
  return p.sig().sequent.contains(c) ? drop_node(p, c) : p;
}

bool mentions(const RuleView& r, const Formula& f) {
  return (r.tag != RuleTag::Cut && r.tag != RuleTag::Ref && (r.main == f || r.main == negate(f)));
}

RuleView red_rule(const TermNode& n) {
  const Formula& c = n.f;
  const DerivTerm& d0 = n.subs[0];
  const DerivTerm& d1 = n.subs[1];
  const int rank = n.sig.rank;
  if (c.delta0()) return rule_of(drop_premise(d1, c));
  RuleView r = rule_of(d1);
  if (r.tag == RuleTag::Pair && mentions(r, c)) return rule_of(d0);
  if (r.tag == RuleTag::Vee && r.main == c) {
    const DeskSet iota = hull_contains(n.sig.hull, r.iota) ? r.iota : zero();
    const Formula ci = decompose(c).instance(iota);
    return cut(ci, inv_premise(d0, negate(c), iota), red_premise(c, d0, r.fixed[0], rank));
  }
  return map_premises(r, [c, d0, rank](const DerivTerm& p) { return red_premise(c, d0, p, rank); });
}

RuleView elim_rule(const TermNode& n) {
  const int m = n.sig.rank;
  RuleView r = rule_of(n.subs[0]);
  if (r.tag == RuleTag::Cut && r.cut.depth() >= m) {
    if (r.cut.depth() > m) fail("E: cut formula of depth " + std::to_string(r.cut.depth()) + " above rank " + std::to_string(m));
    const Formula c = r.cut;
    const DerivTerm neg = elim_node(r.fixed[0], m), pos = elim_node(r.fixed[1], m);
    if (!neg.sig().sequent.contains(negate(c))) return rule_of(neg);
    if (!pos.sig().sequent.contains(c)) return rule_of(pos);
    if (decompose(c).polarity() == Polarity::Disjunctive) return rule_of(red_node(c, neg, pos, m));
    return rule_of(red_node(negate(c), pos, neg, m));
  }
  return map_premises(r, [m](const DerivTerm& p) { return elim_node(p, m); });
}

RuleView inv_rule(const TermNode& n) {
  const Formula& d = n.f;
  const DeskSet& iota = n.set;
  RuleView r = rule_of(n.subs[0]);
  if (r.tag == RuleTag::Wedge && r.main == d) return rule_of(inv_premise(r.family(iota), d, iota));
  if (r.tag == RuleTag::Pair && mentions(r, d)) fail("Inv: cannot invert a complementary pair on " + d.render());
  return map_premises(r, [d, iota](const DerivTerm& p) { return inv_premise(p, d, iota); });
}

RuleView drop_rule(const TermNode& n) {
  const Formula& c = n.f;
  RuleView r = rule_of(n.subs[0]);
  if (r.tag != RuleTag::Cut && r.tag != RuleTag::Ref && r.main == c) fail("Drop: last inference introduces the false sentence " + c.render());
  return map_premises(r, [c](const DerivTerm& p) { return drop_premise(p, c); });
}

}  // namespace

RuleView map_premises(const RuleView& r, const std::function<DerivTerm(const DerivTerm&)>& f) {
  RuleView out = r;
  for (auto& p : out.fixed) p = f(p);
  if (r.family) {
    Family fam = r.family;
    auto g = f;
    out.family = [fam, g](const DeskSet& i) { return g(fam(i)); };
  }
  return out;
}

std::string_view rule_tag_name(RuleTag t) {
  switch (t) {
    case RuleTag::Vee: return "Vee";
    case RuleTag::Wedge: return "Wedge";
    case RuleTag::Cut: return "Cut";
    case RuleTag::Ref: return "Ref";
    case RuleTag::Pair: return "Pair";
  }
  return "?";
}

std::string RuleView::render() const {
  std::string out(rule_tag_name(tag));
  switch (tag) {
    case RuleTag::Vee: return out + " " + main.render() + " at " + iota.render();
    case RuleTag::Wedge: return out + " " + main.render() + " over " + index_set.render();
    case RuleTag::Cut: return out + " " + cut.render();
    case RuleTag::Ref: return out + " " + ref_formula.render() + " at " + ref_term.render();
    case RuleTag::Pair: return out + " " + main.render();
  }
  return out;
}

RuleView rule_of(const DerivTerm& d) {
  const TermNode& n = d.node();
  switch (n.kind) {
    case TermKind::Taut: return taut_rule(n);
    case TermKind::Fund: return fund_rule(n);
    case TermKind::AxEmb: return ax_rule(n);
    case TermKind::Emb: return emb_rule(n);
    case TermKind::Weak: return rule_of(n.subs[0]);
    case TermKind::Red: return red_rule(n);
    case TermKind::Elim: return elim_rule(n);
    case TermKind::Inv: return inv_rule(n);
    case TermKind::Drop: return drop_rule(n);
    case TermKind::Vee: return vee(n.f, n.set, n.subs[0]);
    case TermKind::Wedge: return wedge(n.f, n.j, n.family);
    case TermKind::Cut: return cut(n.f, n.subs[0], n.subs[1]);
    case TermKind::Ref: {
      RuleView r;
      r.tag = RuleTag::Ref;
      r.ref_formula = n.f;
      r.ref_term = n.term;
      r.ref_negated = n.g;
      r.fixed = n.subs;
      return r;
    }
  }
  fail("unknown term kind");
}

DerivTerm premise(const RuleView& v, const DeskSet& iota) {
  switch (v.tag) {
    case RuleTag::Vee: return v.fixed.at(0);
    case RuleTag::Cut:
    case RuleTag::Ref:
      if (iota == zero()) return v.fixed.at(0);
      if (iota == one()) return v.fixed.at(1);
      throw IndexError("premise index " + iota.render() + " is not 0 or 1");
    case RuleTag::Wedge: {
      auto in = v.index_set.contains(iota);
      if (!in.value_or(false)) throw IndexError(iota.render() + " is not an index of " + v.main.render());
      return v.family(iota);
    }
    case RuleTag::Pair: break;
  }
  throw IndexError("a pair certificate has no premises");
}

PremiseFrame premise_frame(const RuleView& v, const Signature& parent, const DeskSet& iota) {
  switch (v.tag) {
    case RuleTag::Vee:
      return {Sequent{Decomposition(v.main, Polarity::Disjunctive, decompose(v.main).index_set()).instance(v.iota)},
              parent.hull};
    case RuleTag::Wedge:
      return {Sequent{Decomposition(v.main, Polarity::Conjunctive, v.index_set).instance(iota)},
              hull_extend(parent.hull, iota)};
    case RuleTag::Cut:
      return {Sequent{iota == zero() ? negate(v.cut) : v.cut}, parent.hull};
    case RuleTag::Ref:
      return {Sequent{iota == zero() ? v.ref_formula : v.ref_negated}, parent.hull};
    case RuleTag::Pair: break;
  }
  throw IndexError("a pair certificate has no premises");
}

}  // namespace kpr
