#include <random>

#include "doctest.h"
#include "kpr/ord.hpp"
#include "ord_oracle.hpp"

using namespace kpr::ord;

namespace {
const OrdCode W = OrdCode::omega();
OrdCode sub_w() { return OrdCode::sub(Cnf::omega()); }
OrdCode W_plus_1() { return OrdCode::sum({W, OrdCode::nat(1)}); }
}  // namespace

TEST_CASE("cmp examples") {
  CHECK(cmp(sub_w(), W) == Cmp::Less);
  CHECK(cmp(OrdCode::wpow(W_plus_1()), W) == Cmp::Greater);
  oracle::CodeGen gen(7);
  for (int i = 0; i < 1000; ++i) {
    auto a = gen.next();
    CHECK(cmp(a, a) == Cmp::Equal);
  }
}

TEST_CASE("cmp rejects non-normal input") {
  CHECK_THROWS_AS(cmp(OrdCode::sum({OrdCode::nat(1), W}), W), kpr::ValidationError);
  CHECK_THROWS_AS(cmp(OrdCode::wpow(OrdCode::nat(1)), W), kpr::ValidationError);
}

TEST_CASE("add examples") {
  CHECK(add(OrdCode::nat(3), W) == W);
  CHECK(add(W, W) == OrdCode::sum({W, W}));
  oracle::CodeGen gen(11);
  for (int i = 0; i < 200; ++i) {
    auto a = gen.next();
    CHECK(add(a, OrdCode::zero()) == a);
    CHECK(add(OrdCode::zero(), a) == a);
  }
}

TEST_CASE("nat_sum examples") {
  CHECK(nat_sum(OrdCode::sum({W, W}), W) == OrdCode::sum({W, W, W}));
  CHECK(nat_sum(OrdCode::nat(1), W) == OrdCode::sum({W, OrdCode::nat(1)}));
  oracle::CodeGen gen(13);
  for (int i = 0; i < 1000; ++i) {
    auto a = gen.next(), b = gen.next();
    CHECK(nat_sum(a, OrdCode::zero()) == a);
    CHECK(nat_sum(a, b) == nat_sum(b, a));
  }
}

TEST_CASE("omega_exp and towers") {
  CHECK(omega_exp(W) == W);
  CHECK(omega_exp(W_plus_1()) == OrdCode::wpow(W_plus_1()));
  CHECK(omega_exp(OrdCode::nat(2)) == OrdCode::sub(Cnf::power(Cnf::nat(2))));
  CHECK(omega_tower(0, W_plus_1()) == W_plus_1());
  CHECK(omega_tower(1, W_plus_1()) == OrdCode::wpow(W_plus_1()));
  CHECK(omega_tower(2, W_plus_1()) == OrdCode::wpow(OrdCode::wpow(W_plus_1())));
}

TEST_CASE("validate_nf") {
  CHECK_FALSE(validate_nf(OrdCode::sum({OrdCode::nat(1), W})));
  CHECK_FALSE(validate_nf(OrdCode::wpow(OrdCode::nat(1))));
  CHECK_FALSE(validate_nf(OrdCode::wpow(W)));
  CHECK_FALSE(validate_nf(OrdCode::sum({W})));
  CHECK_FALSE(validate_nf(OrdCode::sum({W, OrdCode::nat(2)})));
  CHECK(validate_nf(W));
  CHECK(validate_nf(OrdCode::sum({W, OrdCode::nat(1), OrdCode::nat(1)})));
}

TEST_CASE("cmp agrees with the base-Omega oracle") {
  oracle::CodeGen gen(17);
  for (int i = 0; i < 2000; ++i) {
    auto a = gen.next(), b = gen.next();
    REQUIRE(validate_nf(a));
    CHECK(cmp(a, b) == oracle::cmp(a, b));
    CHECK((cmp(a, b) == Cmp::Equal) == (a == b));
  }
}

TEST_CASE("arithmetic agrees with the base-Omega oracle") {
  oracle::CodeGen gen(19);
  for (int i = 0; i < 1000; ++i) {
    auto a = gen.next(), b = gen.next();
    auto s = add(a, b);
    CHECK(validate_nf(s));
    CHECK(oracle::big_cmp(oracle::value(s), oracle::big_add(oracle::value(a), oracle::value(b))) == 0);
  }
}

TEST_CASE("Omega multiples and left multiplication") {
  CHECK(omega_times(0) == OrdCode::zero());
  CHECK(omega_times(1) == W);
  CHECK(omega_times(3) == OrdCode::sum({W, W, W}));
  CHECK(mul_left_sub(3, OrdCode::nat(2)) == OrdCode::nat(6));
  CHECK(mul_left_sub(3, sub_w()) == sub_w());
  CHECK(mul_left_sub(3, add(sub_w(), OrdCode::nat(1))) == add(sub_w(), OrdCode::nat(3)));
  CHECK_THROWS_AS(mul_left_sub(3, W), kpr::ValidationError);
}

TEST_CASE("render and parse round-trip") {
  CHECK(render(W) == "W");
  CHECK(parse("w^(W+1)") == OrdCode::wpow(W_plus_1()));
  CHECK(parse("w_2(W+1)") == omega_tower(2, W_plus_1()));
  CHECK(parse("w_0(W+1)") == W_plus_1());
  CHECK(render(parse("W + W")) == "W*2");
  CHECK(render(parse("w^2*3+w+4")) == "w^2*3+w+4");
  CHECK(parse("1 # W") == OrdCode::sum({W, OrdCode::nat(1)}));
  CHECK_THROWS_AS(parse("W +"), kpr::ParseError);
  CHECK_THROWS_AS(parse("x"), kpr::ParseError);
  oracle::CodeGen gen(23);
  for (int i = 0; i < 1000; ++i) {
    auto a = gen.next();
    CHECK(parse(render(a)) == a);
  }
}
