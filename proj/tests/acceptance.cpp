// Acceptance suite: one PASS/FAIL line per criterion with its time limit.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "corpus.hpp"
#include "hf_oracle.hpp"
#include "kpr/errors.hpp"
#include "kpr/infinitary.hpp"
#include "ord_oracle.hpp"

using namespace kpr;
using ord::Cmp;
using ord::OrdCode;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

/// Records the first failure; later ones only bump the count.
class Failures {
 public:
  void check(bool cond, const std::function<std::string()>& what) {
    ++checks_;
    if (cond) return;
    if (count_++ == 0) first_ = what();
  }
  Outcome outcome(const std::string& summary) const {
    if (count_ == 0) return {true, summary + ", " + std::to_string(checks_) + " checks"};
    return {false, std::to_string(count_) + " failures, first: " + first_};
  }

 private:
  std::size_t checks_ = 0, count_ = 0;
  std::string first_;
};

bool same(const OrdCode& a, const OrdCode& b) { return ord::cmp(a, b) == Cmp::Equal; }
Cmp flip(Cmp c) { return c == Cmp::Less ? Cmp::Greater : c == Cmp::Greater ? Cmp::Less : c; }

std::vector<DeskSet> indices(const RuleView& r, const HullDescriptor& hull) {
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
        case IndexSet::Kind::Universe: return default_sampler()(hull);
      }
  }
  return {};
}

int height(const DerivTerm& d) {
  RuleView r = rule_of(d);
  int h = 0;
  for (const auto& i : indices(r, d.sig().hull)) h = std::max(h, 1 + height(premise(r, i)));
  return h;
}

bool free_of(const DerivTerm& d, int k, RuleTag tag) {
  RuleView r = rule_of(d);
  if (r.tag == tag) return false;
  if (k == 0) return true;
  for (const auto& i : indices(r, d.sig().hull))
    if (!free_of(premise(r, i), k - 1, tag)) return false;
  return true;
}

std::vector<DerivTerm> elim_outputs(const DerivTerm& d) {
  std::vector<DerivTerm> out;
  DerivTerm t = d;
  for (int r = 0; r < d.sig().rank; ++r) out.push_back(t = elim_cuts(t));
  return out;
}

// ---------------------------------------------------------------------------

Outcome ordinal_laws() {
  Failures f;
  oracle::CodeGen gen(2024);
  const int n = 10000;
  std::vector<OrdCode> codes;
  for (int i = 0; i < n; ++i) codes.push_back(gen.next(10));
  for (int i = 0; i < n; ++i) {
    const OrdCode &a = codes[i], &b = codes[(i * 7 + 1) % n], &c = codes[(i * 13 + 5) % n];
    auto show = [&] { return ord::render(a) + " ; " + ord::render(b) + " ; " + ord::render(c); };
    // Trichotomy: exactly one relation, antisymmetric and agreeing with the oracle.
    const Cmp ab = ord::cmp(a, b);
    f.check(ab == oracle::cmp(a, b), [&] { return "cmp disagrees with oracle: " + show(); });
    f.check(flip(ab) == ord::cmp(b, a), [&] { return "cmp not antisymmetric: " + show(); });
    f.check((ab == Cmp::Equal) == (a == b), [&] { return "equality is not syntactic: " + show(); });
    // Transitivity over every ordering of the triple.
    const OrdCode* t[3] = {&a, &b, &c};
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y)
        for (int z = 0; z < 3; ++z)
          if (x != y && y != z && x != z && ord::less(*t[x], *t[y]) && ord::less(*t[y], *t[z]))
            f.check(ord::less(*t[x], *t[z]), [&] { return "transitivity: " + show(); });
    // add
    const OrdCode s = ord::add(a, b);
    f.check(ord::validate_nf(s), [&] { return "add not normal: " + show(); });
    f.check(oracle::big_cmp(oracle::value(s), oracle::big_add(oracle::value(a), oracle::value(b))) == 0,
            [&] { return "add disagrees with oracle: " + show(); });
    f.check(same(ord::add(ord::add(a, b), c), ord::add(a, ord::add(b, c))), [&] { return "add assoc: " + show(); });
    f.check(same(ord::add(a, OrdCode::zero()), a) && same(ord::add(OrdCode::zero(), a), a),
            [&] { return "add zero: " + show(); });
    f.check(ord::less_eq(a, s) && ord::less_eq(b, s), [&] { return "add not above its arguments: " + show(); });
    if (ord::less(b, c))
      f.check(ord::less(ord::add(a, b), ord::add(a, c)), [&] { return "add not strict on the right: " + show(); });
    if (ord::less_eq(a, b))
      f.check(ord::less_eq(ord::add(a, c), ord::add(b, c)), [&] { return "add not monotone on the left: " + show(); });
    // nat_sum
    const OrdCode ns = ord::nat_sum(a, b);
    f.check(ord::validate_nf(ns), [&] { return "nat_sum not normal: " + show(); });
    f.check(same(ns, ord::nat_sum(b, a)), [&] { return "nat_sum comm: " + show(); });
    f.check(same(ord::nat_sum(ns, c), ord::nat_sum(a, ord::nat_sum(b, c))), [&] { return "nat_sum assoc: " + show(); });
    f.check(same(ord::nat_sum(a, OrdCode::zero()), a), [&] { return "nat_sum zero: " + show(); });
    f.check(ord::less_eq(s, ns), [&] { return "add above nat_sum: " + show(); });
    if (ord::less(b, c))
      f.check(ord::less(ord::nat_sum(a, b), ord::nat_sum(a, c)) && ord::less(ord::nat_sum(b, a), ord::nat_sum(c, a)),
              [&] { return "nat_sum not strict: " + show(); });
    // w^b + w^b <= w^a for b < a
    const OrdCode &lo = ord::less(a, b) ? a : b, &hi = ord::less(a, b) ? b : a;
    if (ord::less(lo, hi)) {
      const OrdCode e = ord::omega_exp(lo);
      f.check(ord::less_eq(ord::add(e, e), ord::omega_exp(hi)), [&] { return "exponential inequality: " + show(); });
    }
  }
  return f.outcome(std::to_string(n) + " codes");
}

Outcome no_descending_chain() {
  Failures f;
  const auto codes = oracle::enumerate_codes(8);
  const std::size_t n = codes.size();
  for (const auto& c : codes) f.check(ord::validate_nf(c), [&] { return "not normal: " + ord::render(c); });
  // below[i] lists every j with codes[j] < codes[i].
  std::vector<std::vector<std::size_t>> below(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Cmp c = ord::cmp(codes[i], codes[j]);
      f.check(c == oracle::cmp(codes[i], codes[j]),
              [&] { return "cmp disagrees with oracle: " + ord::render(codes[i]) + " ; " + ord::render(codes[j]); });
      if (c == Cmp::Greater) below[i].push_back(j);
    }
  // A descending chain through a finite set revisits a code, so it shows up
  // as a cycle of the descent graph. Depth-first search with colours.
  std::vector<int> colour(n, 0), longest(n, 0);
  std::function<bool(std::size_t)> acyclic = [&](std::size_t i) {
    colour[i] = 1;
    for (std::size_t j : below[i]) {
      if (colour[j] == 1) return false;
      if (colour[j] == 0 && !acyclic(j)) return false;
      longest[i] = std::max(longest[i], longest[j] + 1);
    }
    colour[i] = 2;
    return true;
  };
  int max_chain = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (colour[i] == 0) f.check(acyclic(i), [&] { return "descending cycle through " + ord::render(codes[i]); });
    max_chain = std::max(max_chain, longest[i]);
  }
  return f.outcome(std::to_string(n) + " codes, longest chain " + std::to_string(max_chain + 1));
}

Outcome embedding_signatures(const std::vector<corpus::Entry>& entries) {
  Failures f;
  for (const auto& c : entries) {
    const DerivTerm d = emb(c.proof, c.assign);
    const int m = embedding_rank(*c.proof);
    OrdCode ranks = OrdCode::zero();
    for (const auto& [name, set] : c.assign) ranks = ord::nat_sum(ranks, ord::mul_left_sub(3, set.rank()));
    const OrdCode expect = ord::add(ord::omega_times(m), ranks);
    f.check(same(d.sig().bound, expect), [&] {
      return c.name + ": bound " + ord::render(d.sig().bound) + ", expected " + ord::render(expect);
    });
    f.check(same(embedding_bound(m, c.assign), expect), [&] { return c.name + ": embedding_bound"; });
    const Sequent end = end_sequent(*c.proof);
    if (std::all_of(end.begin(), end.end(), [](const Formula& x) { return x.closed(); }))
      f.check(same(d.sig().bound, ord::omega_times(m)), [&] { return c.name + ": closed bound is not W*m"; });
    f.check(hull_contains_all(d.sig().hull, d.sig().sequent.support()), [&] { return c.name + ": control"; });
  }
  return f.outcome(std::to_string(entries.size()) + " proofs");
}

Outcome cut_elimination_bound() {
  Failures f;
  auto proof = corpus::share(one_cut_proof());
  const int m = embedding_rank(*proof);
  DerivTerm d = emb(proof);
  for (int i = 0; i < m; ++i) d = elim_cuts(d);
  const OrdCode expect = ord::omega_tower(m, ord::omega_times(m));
  f.check(d.sig().rank == 0, [&] { return "rank " + std::to_string(d.sig().rank); });
  f.check(same(d.sig().bound, expect),
          [&] { return "bound " + ord::render(d.sig().bound) + ", expected " + ord::render(expect); });
  OrdCode by_hand = ord::omega_times(m);
  for (int i = 0; i < m; ++i) by_hand = ord::omega_exp(by_hand);
  f.check(same(expect, by_hand), [&] { return "omega_tower differs from iterated omega_exp"; });
  return f.outcome("m = " + std::to_string(m) + ", bound " + ord::render(d.sig().bound));
}

/// One mutated term per side condition of the local check.
std::vector<std::pair<std::string, DerivTerm>> mutations() {
  auto F = [](const char* s) { return parse_formula(s); };
  auto N = [](std::uint64_t n) { return OrdCode::nat(n); };
  auto S = [](std::uint64_t n) { return DeskSet::nat(n); };
  std::vector<std::pair<std::string, DerivTerm>> out;
  const auto c = F("(ex x (in x 2))");
  const auto leaf = taut(F("(in 1 2)"), {}, Sequent{c});
  out.emplace_back("descent", make_vee(c, S(1), leaf, Signature{{}, N(0), 0, Sequent{c}}));
  out.emplace_back("cut rank", make_cut(c, taut(c, {}), taut(c, {}), Signature{{}, N(3), 1, Sequent{c, negate(c)}}));
  const auto q = DeskSet::param("acc_q", N(2));
  out.emplace_back("control",
                   make_wedge(F("(nin @acc_q 0)"), {}, {}, Signature{{}, N(0), 0, Sequent{F("(nin @acc_q 0)")}}));
  out.emplace_back("main formula", make_vee(c, S(1), leaf, Signature{{}, N(1), 0, Sequent{F("(in 0 0)")}}));
  const auto all = F("(all x (in x 2))");
  out.emplace_back("polarity",
                   make_vee(all, S(1), taut(F("(in 1 2)"), {}, Sequent{all}), Signature{{}, N(1), 0, Sequent{all}}));
  const auto bex = F("(bex x 2 (ex y (in x y)))");
  out.emplace_back("index", make_vee(bex, S(5), taut(F("(ex y (in 5 y))"), {}, Sequent{bex}),
                                     Signature{{}, N(3), 0, Sequent{bex}}));
  out.emplace_back("premise sequent", make_vee(c, S(1), taut(F("(in 1 2)"), {}, Sequent{c, F("(in 0 0)")}),
                                               Signature{{}, N(1), 0, Sequent{c}}));
  const auto wq = F("(all x (nin x 0))");
  Family fam = [q](const DeskSet& i) {
    auto g = Formula::not_in(Term::name(i), Term::zero());
    return make_wedge(g, {}, {}, Signature{HullDescriptor({q}), OrdCode::zero(), 0, Sequent{g}});
  };
  out.emplace_back("hull", make_wedge(wq, IndexSet{IndexSet::Kind::Universe, {}}, fam, Signature{{}, N(1), 0, Sequent{wq}}));
  out.emplace_back("index set", make_wedge(wq, IndexSet{IndexSet::Kind::Two, {}}, fam, Signature{{}, N(1), 0, Sequent{wq}}));
  const auto a = F("(ex x (all y (ex z (in z y))))");
  const auto refl = axioms::reflection_parts(a, Term::name(S(1)));
  out.emplace_back("reflection class",
                   make_ref(a, Term::name(S(1)), refl.negated, taut(a, {}), taut(refl.reflected, {}),
                            Signature{{}, N(7), 0, Sequent{negate(a), refl.reflected}}));
  return out;
}

Outcome local_correctness(const std::vector<corpus::Entry>& entries) {
  Failures f;
  std::size_t terms = 0;
  for (const auto& c : entries) {
    const DerivTerm d = emb(c.proof, c.assign);
    std::vector<DerivTerm> all{d};
    for (const auto& t : elim_outputs(d)) all.push_back(t);
    for (std::size_t r = 0; r < all.size(); ++r) {
      ++terms;
      const LocalReport rep = check_local(all[r], {.depth = 3});
      f.check(rep.ok, [&] { return c.name + " after " + std::to_string(r) + " rounds: " + rep.render(); });
    }
  }
  const auto muts = mutations();
  for (const auto& [what, d] : muts) {
    const LocalReport rep = check_local(d, {.depth = 3});
    f.check(!rep.ok && rep.violation.rfind(what, 0) == 0,
            [&] { return "mutation " + what + " not caught: " + rep.render(); });
  }
  return f.outcome(std::to_string(terms) + " terms, " + std::to_string(muts.size()) + " mutations");
}

Outcome soundness(const std::vector<corpus::Entry>& entries) {
  Failures f;
  std::size_t evaluated = 0;
  for (const auto& c : entries) {
    for (const auto& [name, set] : c.assign)
      f.check(set.is_concrete() && set.finite_rank() <= 3, [&] { return c.name + ": parameter " + name; });
    const DerivTerm d = emb(c.proof, c.assign);
    std::vector<DerivTerm> all{d};
    for (const auto& t : elim_outputs(d)) all.push_back(t);
    for (const auto& t : all) {
      if (!free_of(t, 12, RuleTag::Cut) || !free_of(t, 12, RuleTag::Ref)) continue;
      ++evaluated;
      const EvalReport ev = eval_cutfree(t, 14);
      f.check(ev.verdict == Verdict::VerifiedTrue, [&] { return c.name + ": " + ev.reason; });
      f.check(hf::truth(t.sig().sequent) == std::optional<bool>(true),
              [&] { return c.name + ": oracle does not confirm " + t.sig().sequent.render(); });
    }
  }
  f.check(evaluated >= entries.size(), [&] { return "only " + std::to_string(evaluated) + " terms evaluated"; });
  return f.outcome(std::to_string(evaluated) + " cut-free terms");
}

Outcome reduction_equivalence() {
  Failures f;
  const auto cases = corpus::reduction_cases();
  f.check(cases.size() >= 20, [&] { return "only " + std::to_string(cases.size()) + " instances"; });
  for (const auto& rc : cases) {
    f.check(height(rc.d0) <= 4 && height(rc.d1) <= 4, [&] { return rc.name + ": inputs deeper than 4"; });
    const DerivTerm red = reduce(rc.c, rc.d0, rc.d1);
    const Sequent expect = rc.d0.sig().sequent.without(negate(rc.c)).unite(rc.d1.sig().sequent.without(rc.c));
    f.check(red.sig().sequent == expect, [&] { return rc.name + ": end sequent " + red.sig().sequent.render(); });
    f.check(same(red.sig().bound, ord::add(rc.d0.sig().bound, rc.d1.sig().bound)),
            [&] { return rc.name + ": bound " + ord::render(red.sig().bound); });
    f.check(check_local(red, {.depth = 6}).ok, [&] { return rc.name + ": local check"; });
    const EvalReport ev = eval_cutfree(red, 12);
    f.check(ev.verdict == Verdict::VerifiedTrue, [&] { return rc.name + ": " + ev.reason; });
    f.check(hf::truth(expect) == std::optional<bool>(true), [&] { return rc.name + ": oracle"; });
  }
  return f.outcome(std::to_string(cases.size()) + " instances");
}

}  // namespace

int main() {
  const auto entries = corpus::build();
  struct Criterion {
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"ordinal laws", 30, ordinal_laws},
      {"no descending chains", 60, no_descending_chain},
      {"embedding signatures", 10, [&] { return embedding_signatures(entries); }},
      {"cut elimination bound", 10, cut_elimination_bound},
      {"local correctness", 120, [&] { return local_correctness(entries); }},
      {"soundness", 60, [&] { return soundness(entries); }},
      {"reduction equivalence", 60, reduction_equivalence},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit) {
      o.ok = false;
      o.detail += ", over the time limit";
    }
    std::ostringstream line;
    line.precision(2);
    line << std::fixed << (o.ok ? "PASS" : "FAIL") << "  " << i + 1 << ". " << c.name << " (" << secs << " s / "
         << c.limit << " s): " << o.detail;
    std::cout << line.str() << std::endl;
    failed += !o.ok;
  }
  return failed ? 1 : 0;
}
