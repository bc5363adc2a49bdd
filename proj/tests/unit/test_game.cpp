#include "faircoin/game.hpp"
#include "faircoin/reality.hpp"
#include "faircoin/strategies.hpp"
#include "faircoin/verify.hpp"

#include <doctest.h>

using namespace faircoin;
using Q = Rational;

TEST_SUITE("game") {

TEST_CASE("moves are +-1 only") {
  CHECK(Move::from_int(1) == Move::up());
  CHECK(Move::from_int(-1) == Move::down());
  CHECK_THROWS_AS(Move::from_int(0), std::invalid_argument);
  CHECK_THROWS_AS(Move::from_int(2), std::invalid_argument);
  CHECK((-Move::up()) == Move::down());
}

TEST_CASE("situation parsing, negation and prefixes") {
  const Situation t = Situation::parse("+1-1+1");
  CHECK(t.length() == 3);
  CHECK(t.sum() == 1);
  CHECK(t.str() == "+1-1+1");
  CHECK(Situation::parse("+-+") == t);
  CHECK((-t).str() == "-1+1-1");
  CHECK(t.prefix(2).str() == "+1-1");
  CHECK(t.starts_with(Situation::parse("+1")));
  CHECK_FALSE(t.starts_with(Situation::parse("-1")));
  CHECK(Situation::parse("").empty());
  CHECK_THROWS_AS(Situation::parse("+2"), std::invalid_argument);
  CHECK_THROWS_AS(Situation::parse("x"), std::invalid_argument);
}

TEST_CASE("process values") {
  auto v = process_values(Situation::parse("+1+1-1"));
  CHECK(v.s == 1);
  CHECK(v.xbar == Q(1, 3));
  v = process_values(Situation());
  CHECK(v.n == 0);
  CHECK(v.s == 0);
  CHECK(v.xbar == 0);
  v = process_values(Situation::parse("-1-1"));
  CHECK(v.s == -2);
  CHECK(v.xbar == -1);
}

TEST_CASE("process values are prefix consistent") {
  for_each_situation(8, [](const Situation& t) {
    for (std::size_t n = 1; n <= t.length(); ++n) {
      const auto a = process_values(t.prefix(n - 1));
      const auto b = process_values(t.prefix(n));
      REQUIRE(b.s == a.s + t[n - 1].value());
      REQUIRE((b.s - static_cast<long>(n)) % 2 == 0);
      REQUIRE(b.xbar * static_cast<long>(n) == b.s);
    }
  });
}

TEST_CASE("play_round arithmetic") {
  GameTrace<Q> trace;
  play_round(trace, Q(1), Move::up());
  CHECK(trace.capital() == 1);
  play_round(trace, Q(-1, 2), Move::up());
  CHECK(trace.capital() == Q(1, 2));
  GameTrace<Q> zero;
  play_round(zero, Q(0), Move::down());
  CHECK(zero.capital() == 0);
  CHECK(zero.rounds.size() == 1);
  CHECK(zero.sum() == -1);
}

TEST_CASE("check_collateral") {
  GameTrace<Q> trace;
  play_round(trace, Q(1), Move::down());  // K = -1
  CHECK(check_collateral(trace, Q(1)));
  play_round(trace, Q(1, 4), Move::down());  // K = -5/4
  CHECK_FALSE(check_collateral(trace, Q(1)));
  GameTrace<Q> up;
  play_round(up, Q(1), Move::up());
  CHECK(check_collateral(up, Q(0)));
}

TEST_CASE("run_game basics") {
  auto zero = zero_strategy<Q>();
  auto iid = iid_reality<Q>(3);
  auto trace = run_game(*zero, *iid, 5, Q(1));
  REQUIRE(trace.length() == 5);
  for (const auto& r : trace.rounds) CHECK(r.capital == 0);

  auto one = constant_strategy<Q>(Q(1));
  auto ups = fixed_reality<Q>(Situation::parse("+++"));
  CHECK(run_game(*one, *ups, 3, Q(0)).capital() == 3);
}

TEST_CASE("run_game keeps K_n - K_{n-1} = M_n x_n and replays identically") {
  auto s1 = multiplicative_contrarian<Q>(Q(1, 2));
  auto r1 = iid_reality<Q>(11);
  const auto a = run_game(*s1, *r1, 40, Q(1));
  Q prev = 0;
  for (const auto& r : a.rounds) {
    CHECK(r.capital - prev == r.stake * r.x.value());
    prev = r.capital;
  }
  auto s2 = multiplicative_contrarian<Q>(Q(1, 2));
  auto r2 = fixed_reality<Q>(a.situation());
  const auto b = run_game(*s2, *r2, 40, Q(1));
  for (std::size_t i = 0; i < a.length(); ++i) CHECK(a.rounds[i].capital == b.rounds[i].capital);
}

TEST_CASE("multiplicative contrarian against alternating matches the product") {
  auto s = multiplicative_contrarian<Q>(Q(1, 2));
  auto alt = alternating_reality<Q>();
  const auto trace = run_game(*s, *alt, 4, Q(1));
  CHECK(Q(1) + trace.capital() == product_capital(trace.situation(), Q(1, 2)));
}

TEST_CASE("float64 overflow is reported") {
  struct Inflating : Strategy<double> {
    double k = 0, m = 1e300;
    double stake() const override { return m; }
    void observe(Move x) override { k += m * x.value(); m *= 1e10; }
    double capital() const override { return k; }
    std::unique_ptr<Strategy<double>> clone() const override { return std::make_unique<Inflating>(*this); }
    std::string describe() const override { return "inflate"; }
  } inflating;
  auto ups = fixed_reality<double>(Situation::parse("++++"));
  CHECK_THROWS_AS(run_game(inflating, *ups, 4, 1.0), CapitalOverflow);
}

}
