#include "faircoin/caps.hpp"
#include "faircoin/spec_parser.hpp"

#include <doctest.h>

using namespace faircoin;
using Q = Rational;

TEST_SUITE("spec_parser") {

TEST_CASE("strategy specs round-trip through describe") {
  for (const char* spec : {"zero", "mulc:c=1/2", "addc:eps=1/2", "stopadd:eps=1/2", "oneside:N=3,dir=down",
                           "oneside:N=1,dir=up", "const:M=-3/4", "signforce:pay=neg"}) {
    CHECK(parse_strategy<Q>(spec)->describe() == spec);
  }
  CHECK(parse_strategy<Q>("addc:eps=2/4")->describe() == "addc:eps=1/2");
  CHECK(parse_strategy<Q>("oneside:N=2")->describe() == "oneside:N=2,dir=down");
}

TEST_CASE("mixtures with nested parameter lists") {
  auto m = parse_strategy<Q>("mix:[1/2@oneside:N=3,dir=down,1/4@mulc:c=1/2,1/4]");
  CHECK(m->describe() == "mix:[1/2@oneside:N=3,dir=down,1/4@mulc:c=1/2,1/4]");
  auto nested = parse_strategy<Q>("mix:[1/2@mix:[1@zero],1/2@addc:eps=1]");
  CHECK(nested->stake() == 0);
  CHECK_THROWS_AS(parse_strategy<Q>("mix:[1/2@zero,1/4]"), ParseError);
  CHECK_THROWS_AS(parse_strategy<Q>("mix:[1/2,1/2@zero]"), ParseError);
  CHECK_THROWS_AS(parse_strategy<Q>("mix:[]"), ParseError);
}

TEST_CASE("named mixtures") {
  auto q = parse_strategy<Q>("mixq:I=3");
  auto ref = truncated_q<Q>(3);
  q->observe(Move::up());
  ref->observe(Move::up());
  CHECK(q->stake() == ref->stake());
  CHECK_NOTHROW(parse_strategy<Q>("mixe3"));
}

TEST_CASE("errors carry positions") {
  try {
    parse_strategy<Q>("mulc:c=1/0");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position == 7);
  }
  try {
    parse_strategy<Q>("oneside:N=3,dir=sideways");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position == 16);
  }
  try {
    parse_strategy<Q>("mulc:k=1/2");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position == 0);  // missing c= is reported first
  }
  try {
    parse_strategy<Q>("zero:k=1");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position == 7);
  }
  CHECK_THROWS_AS(parse_strategy<Q>("bogus"), ParseError);
  CHECK_THROWS_AS(parse_strategy<Q>("mulc"), ParseError);
  CHECK_THROWS_AS(parse_strategy<Q>("mulc:c=3/4"), ParseError);
  CHECK_THROWS_AS(parse_strategy<Q>("stopadd:eps=3"), ParseError);
  CHECK_THROWS_AS(parse_strategy<Q>("mulc:c=1/2 "), ParseError);
  CHECK_THROWS_AS(parse_strategy<Q>(""), ParseError);
}

TEST_CASE("reality specs") {
  CHECK(parse_reality<Q>("fixed:+1-1+1")->describe() == "fixed:+1-1+1");
  CHECK(parse_reality<Q>("iid:seed=42")->describe() == "iid:seed=42");
  CHECK(parse_reality<Q>("iid", SpecContext{0, 7})->describe() == "iid:seed=7");
  CHECK(parse_reality<Q>("alt")->describe() == "alt");
  CHECK(parse_reality<Q>("greedy")->describe() == "greedy:tie=-1");
  CHECK(parse_reality<Q>("greedy:tie=+1")->describe() == "greedy:tie=+1");
  CHECK(parse_reality<Q>("minimax:depth=12")->describe() == "minimax:depth=12,tie=-1");
  CHECK_THROWS_AS(parse_reality<Q>("minimax:depth=0"), ParseError);
  CHECK_THROWS_AS(parse_reality<Q>("minimax:depth=30"), CapExceeded);
  CHECK_THROWS_AS(parse_reality<Q>("fixed:+2"), ParseError);
  CHECK_THROWS_AS(parse_reality<Q>("iid:seed=x"), ParseError);
  CHECK_THROWS_AS(parse_reality<Q>("greedy:tie=0"), ParseError);
  CHECK_THROWS_AS(parse_reality<Q>("alt:x=1"), ParseError);
}

}
