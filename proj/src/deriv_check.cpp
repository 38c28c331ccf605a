#include <algorithm>
#include <random>
#include <sstream>

#include "deriv_internal.hpp"

namespace kpr {

// ---------------------------------------------------------------------------
// Samplers

namespace {

std::vector<DeskSet> with_generators(std::vector<DeskSet> base, const HullDescriptor& p) {
  for (const auto& g : p.generators())
    if (std::find(base.begin(), base.end(), g) == base.end()) base.push_back(g);
  return base;
}

}  // namespace

Sampler default_sampler() {
  return [](const HullDescriptor& p) {
    static const std::vector<DeskSet> small = [] {
      auto v = hf_sets_up_to_rank(2);
      v.resize(3);
      return v;
    }();
    return with_generators(small, p);
  };
}

Sampler seeded_sampler(std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [rng](const HullDescriptor& p) {
    static const std::vector<DeskSet> pool = hf_sets_up_to_rank(3);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::vector<DeskSet> out;
    while (out.size() < 3) {
      const DeskSet& s = pool[pick(*rng)];
      if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    }
    return with_generators(out, p);
  };
}

// ---------------------------------------------------------------------------
// Local checking

std::string LocalReport::render() const {
  std::ostringstream out;
  if (ok) out << "ok (" << visited << " nodes)";
  else out << "violation at node " << node << ": " << violation;
  return out.str();
}

std::string render_trace(const std::vector<TraceLine>& trace) {
  std::ostringstream out;
  for (const auto& t : trace)
    out << t.id << '\t' << t.rule << '\t' << t.main << '\t' << t.bound << '\t' << t.rank << '\t' << t.hull_size << '\t'
        << t.parent << '\n';
  return out.str();
}

namespace {

struct Violation {
  std::string what;
};

[[noreturn]] void violate(const std::string& what) { throw Violation{what}; }

std::vector<DeskSet> premise_indices(const RuleView& r, const Signature& s, const Sampler& sampler) {
  switch (r.tag) {
    case RuleTag::Vee: return {r.iota};
    case RuleTag::Cut:
    case RuleTag::Ref: return {DeskSet::nat(0), DeskSet::nat(1)};
    case RuleTag::Pair: return {};
    case RuleTag::Wedge:
      switch (r.index_set.kind) {
        case IndexSet::Kind::Empty: return {};
        case IndexSet::Kind::Two: return {DeskSet::nat(0), DeskSet::nat(1)};
        case IndexSet::Kind::BoundedBy: return r.index_set.bound.members();
        case IndexSet::Kind::Universe: return sampler(s.hull);
      }
  }
  return {};
}

std::string main_text(const RuleView& r) {
  switch (r.tag) {
    case RuleTag::Cut: return r.cut.render();
    case RuleTag::Ref: return r.ref_formula.render();
    default: return r.main.render();
  }
}

void check_rule(const RuleView& r, const Signature& s, int n) {
  switch (r.tag) {
    case RuleTag::Vee: {
      if (!s.sequent.contains(r.main)) violate("main formula: " + r.main.render() + " not in the end sequent");
      Decomposition d = decompose(r.main);
      if (d.polarity() != Polarity::Disjunctive) violate("polarity: " + r.main.render() + " is not disjunctive");
      if (!d.index_set().contains(r.iota).value_or(false))
        violate("index: " + r.iota.render() + " not shown to be in " + d.index_set().render());
      return;
    }
    case RuleTag::Wedge: {
      if (!s.sequent.contains(r.main)) violate("main formula: " + r.main.render() + " not in the end sequent");
      Decomposition d = decompose(r.main);
      if (d.polarity() != Polarity::Conjunctive) violate("polarity: " + r.main.render() + " is not conjunctive");
      if (!(d.index_set() == r.index_set))
        violate("index set: " + r.index_set.render() + " should be " + d.index_set().render());
      return;
    }
    case RuleTag::Cut:
      if (!r.cut.closed()) violate("cut formula: " + r.cut.render() + " is not a sentence");
      if (r.cut.depth() >= s.rank)
        violate("cut rank: dp(" + r.cut.render() + ") = " + std::to_string(r.cut.depth()) + " not below " +
                std::to_string(s.rank));
      return;
    case RuleTag::Ref: {
      const Formula& a = r.ref_formula;
      if (!a.closed()) violate("reflection formula: " + a.render() + " is not a sentence");
      if (!a.level().in_pi(n + 1))
        violate("reflection class: " + a.render() + " is " + a.level().render() + ", not in Pi_" + std::to_string(n + 1));
      const Formula& neg = r.ref_negated;
      if (!neg.valid() || neg.op() != Op::All) violate("reflection shape: malformed negated formula");
      const Term z = Term::var(neg.var());
      const Formula expect = negate(Formula::ex(
          neg.var(), Formula::conj(Formula::ad(z), Formula::conj(Formula::in(r.ref_term, z), relativize(a, z)))));
      if (!(expect == neg)) violate("reflection shape: " + neg.render() + " does not match " + a.render());
      return;
    }
    case RuleTag::Pair: {
      const Formula& x = r.main;
      if (!s.sequent.contains(x) || !s.sequent.contains(negate(x)))
        violate("pair certificate: " + x.render() + " and its negation are not both in the end sequent");
      if (x.depth() != 0) violate("pair certificate: " + x.render() + " has positive depth");
      if (x.delta0() && try_eval_delta0(x).has_value())
        violate("pair certificate: " + x.render() + " is decided and needs no certificate");
      return;
    }
  }
}

class LocalChecker {
 public:
  LocalChecker(const LocalOptions& opt, LocalReport& rep)
      : opt_(opt), sampler_(opt.sampler ? opt.sampler : default_sampler()), rep_(rep) {}

  void visit(const DerivTerm& d, int depth, int parent) {
    const int id = static_cast<int>(rep_.visited++);
    current_ = id;
    const Signature& s = d.sig();
    for (const auto& x : s.sequent.support())
      if (!hull_contains(s.hull, x)) violate("control: " + x.render() + " not in hull " + s.hull.render());
    RuleView r = expand(d);
    if (opt_.keep_trace)
      rep_.trace.push_back(TraceLine{id, parent, std::string(rule_tag_name(r.tag)), main_text(r), ord::render(s.bound),
                                     s.rank, s.hull.size()});
    guarded([&] { check_rule(r, s, opt_.n); });
    if (depth >= opt_.depth) return;
    std::vector<DeskSet> idx;
    guarded([&] { idx = premise_indices(r, s, sampler_); });
    for (const auto& i : idx) {
      DerivTerm p;
      PremiseFrame frame;
      guarded([&] {
        p = premise(r, i);
        frame = premise_frame(r, s, i);
      });
      const Signature& ps = p.sig();
      if (!ord::less(ps.bound, s.bound))
        violate("descent: premise " + i.render() + " has bound " + ord::render(ps.bound) + ", not below " +
                ord::render(s.bound));
      if (ps.rank > s.rank)
        violate("rank: premise " + i.render() + " has rank " + std::to_string(ps.rank) + " above " + std::to_string(s.rank));
      if (!hull_subset(ps.hull, frame.hull))
        violate("hull: premise " + i.render() + " hull " + ps.hull.render() + " not in " + frame.hull.render());
      if (!ps.sequent.subset_of(s.sequent.unite(frame.side)))
        violate("premise sequent: premise " + i.render() + " " + ps.sequent.render() + " not covered by " +
                s.sequent.unite(frame.side).render());
      visit(p, depth + 1, id);
      current_ = id;
    }
  }

  int current() const { return current_; }

 private:
  RuleView expand(const DerivTerm& d) {
    RuleView r;
    guarded([&] { r = rule_of(d); });
    return r;
  }

  template <class F>
  void guarded(F&& f) {
    try {
      f();
    } catch (const Violation&) {
      throw;
    } catch (const std::exception& e) {
      violate(std::string("expansion: ") + e.what());
    }
  }

  const LocalOptions& opt_;
  Sampler sampler_;
  LocalReport& rep_;
  int current_ = -1;
};

}  // namespace

LocalReport check_local(const DerivTerm& d, const LocalOptions& opt) {
  LocalReport rep;
  LocalChecker c(opt, rep);
  try {
    c.visit(d, 0, -1);
  } catch (const Violation& v) {
    rep.ok = false;
    rep.node = c.current();
    rep.violation = v.what;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Evaluation

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::VerifiedTrue: return "verified-true";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::Refuted: return "refuted";
  }
  return "?";
}

namespace {

class Evaluator {
 public:
  explicit Evaluator(Sampler s) : sampler_(std::move(s)) {}

  EvalReport eval(const DerivTerm& d, int depth, int k) {
    const Signature& s = d.sig();
    bool all_false_delta0 = true;
    for (const auto& f : s.sequent) {
      std::optional<bool> v = f.delta0() ? try_eval_delta0(f) : std::nullopt;
      if (v && *v) return {Verdict::VerifiedTrue, "true member " + f.render()};
      if (!v) all_false_delta0 = false;
    }
    if (all_false_delta0) return {Verdict::Refuted, "every member is a false Delta_0 sentence"};
    if (depth >= k) return {Verdict::Inconclusive, "depth limit reached"};
    RuleView r = rule_of(d);
    std::vector<DeskSet> idx;
    switch (r.tag) {
      case RuleTag::Ref: return {Verdict::Inconclusive, "reflection inference"};
      case RuleTag::Pair: return {Verdict::VerifiedTrue, "complementary pair " + r.main.render()};
      case RuleTag::Vee: idx = {r.iota}; break;
      case RuleTag::Cut: idx = {DeskSet::nat(0), DeskSet::nat(1)}; break;
      case RuleTag::Wedge:
        switch (r.index_set.kind) {
          case IndexSet::Kind::Empty:
            return {Verdict::Refuted, "empty conjunction on " + r.main.render() + " which is false"};
          case IndexSet::Kind::Two: idx = {DeskSet::nat(0), DeskSet::nat(1)}; break;
          case IndexSet::Kind::BoundedBy: idx = r.index_set.bound.members(); break;
          case IndexSet::Kind::Universe: idx = sampler_(s.hull); break;
        }
        break;
    }
    EvalReport out{Verdict::VerifiedTrue, "all premises verified"};
    for (const auto& i : idx) {
      EvalReport sub = eval(premise(r, i), depth + 1, k);
      if (sub.verdict == Verdict::Refuted) return sub;
      if (sub.verdict == Verdict::Inconclusive && out.verdict == Verdict::VerifiedTrue) out = sub;
    }
    return out;
  }

 private:
  Sampler sampler_;
};

}  // namespace

EvalReport eval_cutfree(const DerivTerm& d, int k, const Sampler& sampler) {
  for (const auto& x : d.sig().sequent.support())
    if (!x.is_concrete()) throw EvalError("end sequent names the abstract set " + x.render());
  Evaluator e(sampler ? sampler : default_sampler());
  return e.eval(d, 0, k);
}

}  // namespace kpr
