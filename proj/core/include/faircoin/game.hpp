#pragma once

// The fair-coin protocol: Skeptic announces a stake M_n, Reality answers with
// x_n in {-1, +1}, and Skeptic's capital moves by M_n * x_n.

#include "faircoin/rational.hpp"

#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace faircoin {

class Move {
 public:
  static constexpr Move up() { return Move(1); }
  static constexpr Move down() { return Move(-1); }

  /// Throws std::invalid_argument unless value is -1 or +1.
  static Move from_int(int value);

  constexpr int value() const { return value_; }
  constexpr Move operator-() const { return Move(-value_); }
  constexpr bool operator==(const Move&) const = default;

 private:
  constexpr explicit Move(int v) : value_(v) {}
  std::int8_t value_;
};

/// A finite move sequence: a node of the binary game tree. The sum is cached.
class Situation {
 public:
  Situation() = default;
  explicit Situation(std::vector<Move> moves);

  /// Accepts "+1-1+1", "+-+" or "" (the empty situation).
  static Situation parse(std::string_view text);

  std::size_t length() const { return moves_.size(); }
  bool empty() const { return moves_.empty(); }
  long sum() const { return sum_; }
  const std::vector<Move>& moves() const { return moves_; }
  Move operator[](std::size_t i) const { return moves_[i]; }

  void push_back(Move x) {
    moves_.push_back(x);
    sum_ += x.value();
  }
  void pop_back() {
    sum_ -= moves_.back().value();
    moves_.pop_back();
  }

  Situation operator-() const;
  Situation prefix(std::size_t n) const;
  bool starts_with(const Situation& other) const;

  /// "+1-1+1" form; the empty situation is "".
  std::string str() const;

  bool operator==(const Situation& other) const { return moves_ == other.moves_; }

 private:
  std::vector<Move> moves_;
  long sum_ = 0;
};

struct ProcessValues {
  std::size_t n = 0;
  long s = 0;
  Rational xbar;  // s / n, and 0 for the empty situation
};

ProcessValues process_values(const Situation& t);

template <class Num>
struct Round {
  Move x;
  Num stake;
  Num capital;
  long sum;
};

/// One play-out. Capital follows the zero-initial convention; total wealth is
/// initial_capital + capital.
template <class Num>
struct GameTrace {
  Num initial_capital{};
  std::vector<Round<Num>> rounds;

  std::size_t length() const { return rounds.size(); }
  Num capital() const { return rounds.empty() ? Num(0) : rounds.back().capital; }
  long sum() const { return rounds.empty() ? 0 : rounds.back().sum; }
  Num wealth() const { return initial_capital + capital(); }
  Situation situation() const;
};

template <class Num>
void play_round(GameTrace<Num>& trace, const Num& stake, Move move) {
  Num capital = trace.capital() + stake * move.value();
  long sum = trace.sum() + move.value();
  trace.rounds.push_back(Round<Num>{move, stake, std::move(capital), sum});
}

/// True iff initial_capital + K_n >= 0 for every n (including n = 0).
template <class Num>
bool check_collateral(const GameTrace<Num>& trace, const Num& initial_capital) {
  if (initial_capital < 0) return false;
  for (const auto& r : trace.rounds) {
    if (initial_capital + r.capital < 0) return false;
  }
  return true;
}

/// Skeptic. The stake for round n is a function of the state reached after
/// rounds 1..n-1; observe() commits round n.
template <class Num>
class Strategy {
 public:
  virtual ~Strategy() = default;

  virtual Num stake() const = 0;
  virtual void observe(Move x) = 0;
  /// The strategy's own capital process K^P (zero initial capital).
  virtual Num capital() const = 0;
  /// Once true, every later stake is zero.
  virtual bool stopped() const { return false; }
  virtual std::unique_ptr<Strategy> clone() const = 0;
  virtual std::string describe() const = 0;
};

/// Reality. Moves after Skeptic, so it sees the stake and Skeptic's state.
template <class Num>
class RealitySource {
 public:
  virtual ~RealitySource() = default;

  /// rounds_left counts the current round; it is 1 on the final round.
  virtual Move next_move(const Situation& history, const Num& stake,
                         const Strategy<Num>& skeptic, std::size_t rounds_left) = 0;
  virtual std::unique_ptr<RealitySource> clone() const = 0;
  virtual std::string describe() const = 0;
};

struct CapitalOverflow : std::overflow_error {
  using std::overflow_error::overflow_error;
};

template <class Num>
void check_finite(const Num& value, std::size_t round) {
  if constexpr (std::is_floating_point_v<Num>) {
    if (!std::isfinite(value)) {
      throw CapitalOverflow("capital left the float64 range at round " + std::to_string(round));
    }
  }
}

template <class Num>
GameTrace<Num> run_game(Strategy<Num>& strategy, RealitySource<Num>& reality,
                        std::size_t horizon, const Num& initial_capital) {
  GameTrace<Num> trace;
  trace.initial_capital = initial_capital;
  trace.rounds.reserve(horizon);
  Situation history;
  for (std::size_t n = 1; n <= horizon; ++n) {
    const Num stake = strategy.stake();
    check_finite(stake, n);
    const Move x = reality.next_move(history, stake, strategy, horizon - n + 1);
    strategy.observe(x);
    play_round(trace, stake, x);
    check_finite(trace.rounds.back().capital, n);
    history.push_back(x);
  }
  return trace;
}

/// Depth-first walk of every situation of length 1..depth. The visitor sees
/// the situation, the strategy state after it, and the stake just played.
/// Returning false from the visitor prunes the subtree below that node.
template <class Num, class Visitor>
void for_each_prefix(const Strategy<Num>& root, std::size_t depth, Visitor&& visit) {
  Situation path;
  auto recurse = [&](auto& self, const Strategy<Num>& node) -> void {
    if (path.length() == depth) return;
    for (Move x : {Move::down(), Move::up()}) {
      auto child = node.clone();
      const Num stake = child->stake();
      child->observe(x);
      path.push_back(x);
      if (visit(static_cast<const Situation&>(path), static_cast<const Strategy<Num>&>(*child),
                stake)) {
        self(self, *child);
      }
      path.pop_back();
    }
  };
  recurse(recurse, root);
}

/// Every situation of exactly the given length, in lexicographic order with
/// -1 before +1.
template <class Visitor>
void for_each_situation(std::size_t length, Visitor&& visit) {
  if (length > 62) throw std::invalid_argument("situation enumeration length too large");
  const std::uint64_t count = std::uint64_t{1} << length;
  Situation t;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    t = Situation();
    for (std::size_t i = 0; i < length; ++i) {
      const bool up = (mask >> (length - 1 - i)) & 1u;
      t.push_back(up ? Move::up() : Move::down());
    }
    visit(static_cast<const Situation&>(t));
  }
}

extern template struct GameTrace<Rational>;
extern template struct GameTrace<double>;

}  // namespace faircoin
