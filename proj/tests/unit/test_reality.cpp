#include "faircoin/caps.hpp"
#include "faircoin/reality.hpp"
#include "faircoin/strategies.hpp"

#include <doctest.h>

using namespace faircoin;
using Q = Rational;

namespace {

Move move_for(RealitySource<Q>& r, const Q& stake) {
  auto zero = zero_strategy<Q>();
  return r.next_move(Situation(), stake, *zero, 1);
}

Q min_over_paths(const Strategy<Q>& root, std::size_t depth) {
  std::optional<Q> best;
  for_each_prefix<Q>(root, depth, [&](const Situation& t, const Strategy<Q>& s, const Q&) {
    if (t.length() == depth || s.stopped()) {
      if (!best || s.capital() < *best) best = s.capital();
    }
    return !s.stopped();
  });
  return *best;
}

}  // namespace

TEST_SUITE("reality") {

TEST_CASE("fixed replays and then refuses") {
  auto r = fixed_reality<Q>(Situation::parse("+1-1"));
  auto s = zero_strategy<Q>();
  CHECK(run_game(*s, *r, 2, Q(1)).situation().str() == "+1-1");
  auto again = fixed_reality<Q>(Situation::parse("+1-1"));
  CHECK_THROWS_AS(run_game(*s, *again, 3, Q(1)), std::out_of_range);
}

TEST_CASE("iid is reproducible and not constant") {
  auto a = iid_reality<Q>(42);
  auto b = iid_reality<Q>(42);
  auto c = iid_reality<Q>(43);
  auto s = zero_strategy<Q>();
  const auto ta = run_game(*s, *a, 500, Q(1)).situation();
  const auto tb = run_game(*s, *b, 500, Q(1)).situation();
  const auto tc = run_game(*s, *c, 500, Q(1)).situation();
  CHECK(ta == tb);
  CHECK_FALSE(ta == tc);
  CHECK(std::abs(ta.sum()) < 100);
}

TEST_CASE("iid first bits for a pinned seed") {
  // mt19937_64 seeded with 42, most significant bit first
  std::mt19937_64 gen(42);
  const std::uint64_t word = gen();
  auto r = iid_reality<Q>(42);
  auto s = zero_strategy<Q>();
  const auto t = run_game(*s, *r, 64, Q(1)).situation();
  for (std::size_t i = 0; i < 64; ++i) {
    CHECK((t[i] == Move::up()) == (((word >> (63 - i)) & 1u) == 1u));
  }
}

TEST_CASE("alternating") {
  auto r = alternating_reality<Q>();
  auto s = zero_strategy<Q>();
  CHECK(run_game(*s, *r, 5, Q(1)).situation().str() == "+1-1+1-1+1");
}

TEST_CASE("greedy") {
  auto g = greedy_reality<Q>();
  CHECK(move_for(*g, Q(1, 4)) == Move::down());
  CHECK(move_for(*g, Q(-3)) == Move::up());
  CHECK(move_for(*g, Q(0)) == Move::down());
  auto up = greedy_reality<Q>(Move::up());
  CHECK(move_for(*up, Q(0)) == Move::up());
}

TEST_CASE("greedy never lets a round gain") {
  for (const char* spec : {"mulc", "addc", "oneside"}) {
    StrategyPtr<Q> s;
    if (std::string(spec) == "mulc") s = multiplicative_contrarian<Q>(Q(1, 2));
    if (std::string(spec) == "addc") s = additive_contrarian<Q>(Q(1));
    if (std::string(spec) == "oneside") s = one_sided<Q>(3, Direction::down);
    auto g = greedy_reality<Q>();
    const auto trace = run_game(*s, *g, 60, Q(1));
    for (const auto& r : trace.rounds) CHECK(r.stake * r.x.value() <= 0);
  }
}

TEST_CASE("minimax against one-sided N=1 plays -1 first") {
  auto s = one_sided<Q>(1, Direction::down);
  auto m = minimax_reality<Q>(4);
  const auto trace = run_game(*s, *m, 4, Q(1));
  CHECK(trace.rounds[0].x == Move::down());
  CHECK(trace.capital() == -1);
}

TEST_CASE("minimax at full depth finds the worst path") {
  for (int which = 0; which < 3; ++which) {
    auto make = [which]() -> StrategyPtr<Q> {
      if (which == 0) return multiplicative_contrarian<Q>(Q(1, 2));
      if (which == 1) return stopped_additive<Q>(Q(2, 4));
      return truncated_q<Q>(3);
    };
    const std::size_t depth = 10;
    auto root = make();
    const Q worst = min_over_paths(*root, depth);
    CHECK(minimax_value(*root, depth) == worst);

    auto played = make();
    auto m = minimax_reality<Q>(depth);
    const Q minimax_final = run_game(*played, *m, depth, Q(1)).capital();
    CHECK(minimax_final == worst);

    auto greedy_player = make();
    auto g = greedy_reality<Q>();
    CHECK(minimax_final <= run_game(*greedy_player, *g, depth, Q(1)).capital());
  }
}

TEST_CASE("minimax depth cap") {
  CHECK_THROWS_AS(minimax_reality<Q>(23, Move::down(), 22), CapExceeded);
  CHECK_THROWS_AS(minimax_reality<Q>(0), std::invalid_argument);
  CHECK(minimax_reality<Q>(12)->describe() == "minimax:depth=12,tie=-1");
}

}
