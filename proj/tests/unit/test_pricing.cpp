#include "faircoin/caps.hpp"
#include "faircoin/pricing.hpp"
#include "faircoin/verify.hpp"

#include <doctest.h>

using namespace faircoin;
using Q = Rational;

TEST_SUITE("pricing") {

TEST_CASE("eta table examples") {
  for (std::size_t h : {1u, 2u, 7u, 30u}) {
    EtaTable<Q> t({0, h, Tail::zero, Side::negative, 0});
    CHECK(t.value(0, 0) == Q(1, 2));
    CHECK(t.value(1, -1) == 1);
    CHECK(t.value(1, 1) == 0);
  }
  CHECK(EtaTable<Q>({4, 2, Tail::zero, Side::negative, 0}).value(0, 0) == Q(1, 4));
  CHECK(EtaTable<Q>({4, 4, Tail::zero, Side::negative, 0}).value(0, 0) == Q(3, 8));
  CHECK(EtaTable<Q>({4, 4, Tail::one, Side::negative, 0}).value(0, 0) == Q(5, 8));
}

TEST_CASE("eta table recurrence, dyadic denominators and errors") {
  const std::size_t h = 24;
  EtaTable<Q> t({4, h, Tail::zero, Side::negative, 0});
  for (std::size_t n = 0; n < h; ++n) {
    for (long s = -t.radius(n); s <= t.radius(n); ++s) {
      if (!t.live(n, s)) continue;
      REQUIRE(t.value(n, s) == (t.value(n + 1, s + 1) + t.value(n + 1, s - 1)) / 2);
      const BigInt den = boost::multiprecision::denominator(t.value(n, s));
      REQUIRE((den & (den - 1)) == 0);
      REQUIRE(den <= (BigInt(1) << static_cast<unsigned>(h - n)));
    }
  }
  CHECK_THROWS_AS(t.value(h + 1, 0), std::out_of_range);
  CHECK_THROWS_AS(t.value(2, 1), std::out_of_range);  // parity
}

TEST_CASE("checkpointed tables equal full tables") {
  EtaTable<Q> full({9, 300, Tail::one, Side::negative, 1});
  EtaTable<Q> sparse({9, 300, Tail::one, Side::negative, 17});
  for (std::size_t n : {0u, 1u, 16u, 17u, 18u, 150u, 299u, 300u}) {
    for (long s = -full.radius(n); s <= full.radius(n); ++s) {
      if (full.live(n, s)) REQUIRE(full.value(n, s) == sparse.value(n, s));
    }
  }
  EtaTable<double> f({9, 300, Tail::one, Side::negative, 1});
  CHECK(f.value(0, 0) == doctest::Approx(to_double(full.value(0, 0))));
}

TEST_CASE("mirror symmetry of the table") {
  EtaTable<Q> neg({4, 40, Tail::zero, Side::negative, 0});
  EtaTable<Q> pos({4, 40, Tail::zero, Side::positive, 0});
  for (std::size_t n = 0; n <= 40; ++n) {
    for (long s = -neg.radius(n); s <= neg.radius(n); ++s) {
      if (neg.live(n, s)) REQUIRE(neg.value(n, s) == pos.value(n, -s));
    }
  }
  const auto b = upper_price_bracket(4, 40);
  CHECK(neg.value(0, 0) + pos.value(0, 0) + b.live_mass() == 1);
}

TEST_CASE("tail half gives exactly 1/2 at the origin") {
  for (std::int64_t l : {0, 3, 10, 57}) {
    for (std::size_t h : {1u, 5u, 64u}) {
      CHECK(EtaTable<Q>({l, h, Tail::half, Side::negative, 0}).value(0, 0) == Q(1, 2));
    }
  }
}

TEST_CASE("price bracket examples") {
  for (std::size_t h : {1u, 8u, 33u}) {
    const auto b = upper_price_bracket(0, h);
    CHECK(b.lower == Q(1, 2));
    CHECK(b.upper == Q(1, 2));
  }
  auto b = upper_price_bracket(4, 2);
  CHECK(b.lower == Q(1, 4));
  CHECK(b.upper == Q(3, 4));
  CHECK(b.live_mass() == Q(1, 2));
  b = upper_price_bracket(4, 4);
  CHECK(b.lower == Q(3, 8));
  CHECK(b.upper == Q(5, 8));
}

TEST_CASE("forward masses agree with backward induction") {
  const auto masses = forward_masses(9, 200);
  REQUIRE(masses.size() == 200);
  for (std::size_t h : {1u, 2u, 9u, 50u, 123u, 200u}) {
    const auto fwd = masses[h - 1].bracket(9);
    const auto bwd = upper_price_bracket(9, h);
    CHECK(fwd.lower == bwd.lower);
    CHECK(fwd.upper == bwd.upper);
    CHECK(masses[h - 1].negative == masses[h - 1].positive);
    CHECK(masses[h - 1].negative + masses[h - 1].positive + masses[h - 1].live ==
          (BigInt(1) << static_cast<unsigned>(h)));
  }
}

TEST_CASE("delta hedge") {
  EtaTable<Q> t({0, 1, Tail::zero, Side::negative, 0});
  const Q m = delta_hedge_bet(t, 0, 0);
  CHECK(m == Q(-1, 2));
  CHECK(Q(1, 2) + m * -1 == 1);
  CHECK(Q(1, 2) + m * 1 == 0);

  EtaTable<Q> t4({4, 4, Tail::zero, Side::negative, 0});
  CHECK(delta_hedge_bet(t4, 2, 0) == (t4.value(3, 1) - t4.value(3, -1)) / 2);
  CHECK(delta_hedge_bet(t4, 2, 0) < 0);
  CHECK_THROWS_AS(delta_hedge_bet(t4, 4, 0), std::out_of_range);
}

TEST_CASE("census examples") {
  auto c = enumerate_absorption(0, 3);
  CHECK(c.a == std::vector<std::uint64_t>{1, 0, 0});
  CHECK(c.b_k() == 4);
  c = enumerate_absorption(4, 4);
  CHECK(c.a == std::vector<std::uint64_t>{0, 1, 0, 2});
  CHECK(c.b_k() == 6);
  CHECK(c.weighted_sum() == Q(3, 8));
  CHECK_THROWS_AS(enumerate_absorption(0, 30, 26), CapExceeded);
}

TEST_CASE("census agrees with brute force and the bound") {
  for (std::int64_t l : {0, 1, 2, 4, 9}) {
    const auto c = enumerate_absorption(l, 16);
    for (std::size_t k = 1; k <= 16; ++k) {
      REQUIRE(c.b(k) == brute_force_b_k(l, k));
      REQUIRE(c.b(k) <= (BigInt(1) << static_cast<unsigned>(k - 1)));
    }
    CHECK(c.weighted_sum() <= Q(1, 2));
    CHECK(c.a == c.a_positive);
  }
}

TEST_CASE("absorbed cylinders") {
  const auto cyl = absorbed_cylinders(4, 4, Side::negative);
  REQUIRE(cyl.size() == 3);
  CHECK(cyl[0].str() == "-1-1");
  for (const auto& t : cyl) CHECK(ticket_y(t, 4) == TicketStatus::paid_1);
}

TEST_CASE("replication") {
  auto r = replicate_and_verify(0, 1);
  CHECK(r.passed());
  CHECK(r.hedge_start == Q(1, 2));
  r = replicate_and_verify(4, 8);
  CHECK(r.passed());
  CHECK(r.paths_checked == 256);
  r = replicate_and_verify(4, 4);
  CHECK(r.portfolio_cost == Q(3, 8));
  CHECK(r.cylinders == 3);
  CHECK_THROWS_AS(replicate_and_verify(0, 21, 20), CapExceeded);
}

TEST_CASE("replicating hedge started from the zero-tail value pays the payoff exactly") {
  auto table = std::make_shared<const EtaTable<Q>>(EtaOptions{4, 10, Tail::zero, Side::negative, 0});
  for_each_situation(10, [&](const Situation& t) {
    ReplicatingHedge<Q> hedge(table, Q(1));
    Q wealth = table->value(0, 0);
    for (Move x : t.moves()) {
      wealth += hedge.stake() * x.value();
      hedge.observe(x);
    }
    const auto status = ticket_y(t, 4);
    const Q payoff = status == TicketStatus::paid_1 ? Q(1) : Q(0);
    REQUIRE(wealth == payoff);
  });
}

TEST_CASE("json shapes") {
  const auto j = to_json(upper_price_bracket(4, 4));
  CHECK(j["lower"] == "3/8");
  CHECK(j["upper"] == "5/8");
  CHECK(j["live_mass"] == "1/4");
  const auto c = to_json(enumerate_absorption(4, 4));
  CHECK(c["b_k"] == 6);
  CHECK(c["sum_ai_2^-i"] == "3/8");
}

}
