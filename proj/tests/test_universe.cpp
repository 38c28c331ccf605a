#include "doctest.h"
#include "formula_gen.hpp"
#include "kpr/universe.hpp"

using namespace kpr;

namespace {
Formula F(const char* s) { return parse_formula(s); }
const ord::OrdCode w = ord::OrdCode::sub(ord::Cnf::omega());
}  // namespace

TEST_CASE("desk sets") {
  CHECK(DeskSet::nat(2) == parse_set("{{},{{}}}"));
  CHECK(DeskSet::nat(2).render() == "{{},{{}}}");
  CHECK(DeskSet::pair(DeskSet::nat(0), DeskSet::nat(0)) == DeskSet::nat(1));
  CHECK(hf_sets_up_to_rank(2).size() == 4);
  CHECK(hf_sets_up_to_rank(3).size() == 16);
  CHECK(hf_sets_up_to_rank(4).size() == 65536);
  CHECK_THROWS_AS(DeskSet::param("bad", ord::OrdCode::omega()), ValidationError);
  CHECK_THROWS_AS(DeskSet::param("low", ord::OrdCode::nat(1), {DeskSet::nat(1)}), ValidationError);
  DeskSet::param("same", w);
  CHECK_NOTHROW(DeskSet::param("same", w));
  CHECK_THROWS_AS(DeskSet::param("same", ord::OrdCode::nat(5)), ValidationError);
}

TEST_CASE("rank") {
  CHECK(rank(DeskSet::empty()) == ord::OrdCode::zero());
  CHECK(rank(parse_set("{{},{{}}}")) == ord::OrdCode::nat(2));
  CHECK(rank(DeskSet::param("rk_p", w)) == w);
  for (const auto& a : hf_sets_up_to_rank(3))
    for (const auto& b : a.members()) CHECK(ord::less(rank(b), rank(a)));
}

TEST_CASE("membership with abstract sets") {
  auto p = DeskSet::param("mem_p", w, {DeskSet::nat(3)});
  CHECK(member(DeskSet::nat(3), p) == std::optional<bool>(true));
  CHECK(!member(DeskSet::nat(2), p).has_value());
  CHECK(member(p, p) == std::optional<bool>(false));
  CHECK(member(p, DeskSet::nat(3)) == std::optional<bool>(false));
  auto lit = DeskSet::finite({p});
  CHECK(!lit.is_concrete());
  CHECK(member(p, lit) == std::optional<bool>(true));
  CHECK(member(DeskSet::nat(0), lit) == std::optional<bool>(false));
}

TEST_CASE("eval_delta0") {
  CHECK(eval_delta0(F("(in 0 {{}})")));
  CHECK_FALSE(eval_delta0(F("(ball x {{}} (in x 0))")));
  CHECK(eval_delta0(F("(eq 2 {{},{{}}})")));
  CHECK_THROWS_AS(eval_delta0(F("(ex x (in x 1))")), ValidationError);
  auto p = DeskSet::param("ev_p", w, {DeskSet::nat(1)});
  CHECK(eval_delta0(Formula::bex("x", Term::name(p), F("(in 0 x)"))));
  CHECK_THROWS_AS(eval_delta0(Formula::in(Term::zero(), Term::name(p))), EvalError);
  testgen::FormulaGen gen(13);
  for (int i = 0; i < 500; ++i) {
    auto a = gen.sentence(4, true);
    CHECK(eval_delta0(a) != eval_delta0(negate(a)));
  }
}

TEST_CASE("hulls") {
  HullDescriptor empty;
  auto p = DeskSet::param("hull_p", w, {DeskSet::nat(1)});
  auto q = DeskSet::param("hull_q", ord::parse("w+1"), {p});
  CHECK(hull_contains(empty, DeskSet::nat(1)));
  CHECK(hull_contains(empty, ord::OrdCode::omega()));
  CHECK_FALSE(hull_contains(empty, p));
  auto hp = hull_extend(empty, p);
  CHECK(hull_contains(hp, p));
  CHECK(hull_extend(hp, p) == hp);
  CHECK(hull_extend(hp, DeskSet::nat(2)) == hp);
  auto hq = hull_extend(empty, q);
  CHECK(hull_contains(hq, p));  // transitive
  CHECK(hull_contains(hq, DeskSet::finite({p, q})));
  CHECK_FALSE(hull_contains(hp, DeskSet::finite({p, q})));
  CHECK(hull_extend(empty, std::vector<DeskSet>{p, q}) == hull_extend(hull_extend(empty, p), q));
  CHECK(hull_subset(hp, hull_extend(hp, q)));
  CHECK_FALSE(hull_subset(hq, hp));
}
