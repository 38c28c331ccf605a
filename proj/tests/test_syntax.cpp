#include "doctest.h"
#include "formula_gen.hpp"
#include "kpr/syntax.hpp"
#include "kpr/universe.hpp"

using namespace kpr;

namespace {
Formula F(const char* s) { return parse_formula(s); }
}  // namespace

TEST_CASE("negate") {
  CHECK(negate(F("(in 0 1)")) == F("(nin 0 1)"));
  CHECK(negate(F("(ball x 1 (in x 2))")) == F("(bex x 1 (nin x 2))"));
  testgen::FormulaGen gen(3);
  for (int i = 0; i < 500; ++i) {
    auto a = gen.sentence(4, false);
    CHECK(negate(negate(a)) == a);
    CHECK(depth(negate(a)) == depth(a));
  }
}

TEST_CASE("classify") {
  CHECK(classify(F("(ball x a (in x b))")).render() == "D0");
  CHECK(classify(F("(all x (ex y (in x y)))")).render() == "P2");
  CHECK(classify(F("(or (in a b) (ex x (in x a)))")).render() == "S1");
  CHECK(classify(F("(ex x (all y (in x y)))")).render() == "S2");
  CHECK(classify(F("(ball z 1 (ex x (in x z)))")).render() == "S1");
  CHECK(classify(F("(ad 1)")).render() == "P3");
}

TEST_CASE("depth") {
  CHECK(depth(F("(ball x 1 (in x 2))")) == 0);
  CHECK(depth(F("(ex x (in x 1))")) == 1);
  CHECK(depth(F("(or (ex x (in x 1)) (ex y (in y 2)))")) == 2);
  CHECK(depth(F("(and (in 0 1) (ex y (in y 2)))")) == 2);
  CHECK(depth(F("(bex u 2 (ex y (in y u)))")) == 2);
}

TEST_CASE("support") {
  auto a = F("(in 1 2)");
  CHECK(support(a) == std::vector<DeskSet>{DeskSet::nat(1), DeskSet::nat(2)});
  CHECK(support(F("(ex x (in x x))")).empty());
  auto b = F("(ex x (in x 3))");
  CHECK(Sequent{a, b}.support() == std::vector<DeskSet>{DeskSet::nat(1), DeskSet::nat(2), DeskSet::nat(3)});
}

TEST_CASE("hash-consing and sequent set semantics") {
  CHECK(F("(in 0 1)") == F("(in {} {{}})"));
  Sequent s{F("(in 0 1)"), F("(nin 0 1)"), F("(in 0 1)")};
  CHECK(s.size() == 2);
  CHECK(s.unite(s) == s);
  CHECK(s.with(F("(in 0 1)")) == s);
  CHECK(s.without(F("(in 0 1)")).size() == 1);
  CHECK(Sequent{F("(in 0 1)")}.subset_of(s));
}

TEST_CASE("subst and capture") {
  auto a = F("(ex y (in x y))");
  CHECK(subst(a, "x", Term::name(DeskSet::nat(1))) == F("(ex y (in 1 y))"));
  CHECK(subst(a, "y", Term::zero()) == a);
  CHECK_THROWS_AS(subst(a, "x", Term::var("y")), ValidationError);
}

TEST_CASE("relativize") {
  auto c = Term::name(DeskSet::nat(3));
  auto a = F("(all x (ex y (in x y)))");
  CHECK(relativize(a, c) == F("(ball x 3 (bex y 3 (in x y)))"));
  CHECK(relativize(a, c).delta0());
  auto p = DeskSet::param("rel_c", ord::OrdCode::sub(ord::Cnf::omega()));
  auto b = F("(ex x (in x 1))");
  auto sup = support(relativize(b, Term::name(p)));
  CHECK(sup == std::vector<DeskSet>{DeskSet::nat(1), p});
}

TEST_CASE("decompose") {
  auto d = decompose(F("(in 0 0)"));
  CHECK(d.polarity() == Polarity::Disjunctive);
  CHECK(d.index_set().kind == IndexSet::Kind::Empty);
  CHECK(decompose(F("(in 0 1)")).polarity() == Polarity::Conjunctive);

  auto a = DeskSet::param("dec_a", ord::OrdCode::sub(ord::Cnf::omega()), {DeskSet::nat(1)});
  auto e = decompose(Formula::bex("x", Term::name(a), F("(ex y (in x y))")));
  CHECK(e.polarity() == Polarity::Disjunctive);
  CHECK(e.index_set().kind == IndexSet::Kind::BoundedBy);
  CHECK(e.index_set().bound == a);
  CHECK(e.instance(DeskSet::nat(1)) == F("(ex y (in 1 y))"));
  CHECK_THROWS_AS(e.instance(DeskSet::nat(2)), IndexError);

  auto u = decompose(F("(all x (ex y (in x y)))"));
  CHECK(u.polarity() == Polarity::Conjunctive);
  CHECK(u.index_set().kind == IndexSet::Kind::Universe);
  CHECK(u.instance(DeskSet::nat(4)) == F("(ex y (in 4 y))"));

  auto t = decompose(F("(or (ex x (in x 1)) (ex x (in x 2)))"));
  CHECK(t.index_set().kind == IndexSet::Kind::Two);
  CHECK(t.instance(DeskSet::nat(1)) == F("(ex x (in x 2))"));
  CHECK_THROWS_AS(t.instance(DeskSet::nat(2)), IndexError);
  CHECK_THROWS_AS(decompose(F("(ad 1)")), EvalError);
}

TEST_CASE("decompose of a negation flips polarity") {
  testgen::FormulaGen gen(5);
  for (int i = 0; i < 300; ++i) {
    auto a = gen.sentence(4, false);
    auto d = decompose(a), n = decompose(negate(a));
    CHECK(d.polarity() != n.polarity());
    if (!a.delta0()) CHECK(d.index_set() == n.index_set());
  }
}

TEST_CASE("parser") {
  CHECK_THROWS_AS(F("(not (in 0 1))"), ParseError);
  CHECK_THROWS_AS(F("(imp (in 0 1) (in 0 1))"), ParseError);
  CHECK_THROWS_AS(F("(in 0)"), ParseError);
  CHECK_THROWS_AS(F("(in 0 @undeclared)"), ParseError);
  CHECK(F("(or (in 0 1) (in 0 2) (in 0 3))") == F("(or (in 0 1) (or (in 0 2) (in 0 3)))"));
  CHECK(F("(eq 1 1)").delta0());
  testgen::FormulaGen gen(9);
  for (int i = 0; i < 200; ++i) {
    auto a = gen.sentence(4, false);
    CHECK(parse_formula(a.render()) == a);
  }
  auto s = parse_sequent("(seq (in 0 1) (ex x (in x 1)))");
  CHECK(s.size() == 2);
  CHECK(parse_sequent(s.render()) == s);
}
