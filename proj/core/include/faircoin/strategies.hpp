#pragma once

// Skeptic strategies and the combinators used to assemble them. All factories
// take exact parameters and instantiate for either number type; each
// strategy bets from its own account and reports its zero-initial capital.

#include "faircoin/game.hpp"
#include "faircoin/pricing.hpp"
#include "faircoin/stopping.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace faircoin {

enum class Direction { down, up };

template <class Num>
using StrategyPtr = std::unique_ptr<Strategy<Num>>;

template <class Num>
StrategyPtr<Num> zero_strategy();

template <class Num>
StrategyPtr<Num> constant_strategy(const Rational& stake);

/// M_n = -c * xbar_{n-1} * W_{n-1}, with W the account wealth starting at 1.
/// Requires 0 < c <= 1/2.
template <class Num>
StrategyPtr<Num> multiplicative_contrarian(const Rational& c);

/// M_n = -eps * s_{n-1}, never stopped. Requires eps > 0.
template <class Num>
StrategyPtr<Num> additive_contrarian(const Rational& eps);

/// The additive contrarian bet while (|s_{i-1}| + 1)^2 <= i + m holds for every
/// i <= n, where eps = 2/m; zero forever once it fails.
template <class Num>
StrategyPtr<Num> stopped_additive(const Rational& eps);

/// down: bets 1/N while min_{i<n} s_i > -N. up: bets -1/N while max_{i<n} s_i < N.
template <class Num>
StrategyPtr<Num> one_sided(long level, Direction direction);

/// Bets the whole account (budget + K) on each move of the target, then stops.
template <class Num>
StrategyPtr<Num> path_bettor(Situation target, const Rational& budget);

template <class Num>
struct MixtureComponent {
  Rational weight;
  StrategyPtr<Num> strategy;
};

/// Weighted accounts plus idle cash; the weights and tail must sum to 1.
template <class Num>
struct MixtureSpec {
  std::vector<MixtureComponent<Num>> components;
  Rational tail_weight = 0;
};

template <class Num>
StrategyPtr<Num> mixture(MixtureSpec<Num> spec);

/// Plain sum of accounts, each with weight 1.
template <class Num>
StrategyPtr<Num> portfolio(std::vector<StrategyPtr<Num>> parts);

/// sum_{i <= depth} 2^-i multiplicative_contrarian(2^-i), tail 2^-depth.
template <class Num>
StrategyPtr<Num> truncated_q(int depth = 20);

/// sum_{i <= depth} 2^-i stopped_additive(2^-i), tail 2^-depth.
template <class Num>
StrategyPtr<Num> truncated_additive_mixture(int depth = 20);

/// One excursion as seen by the sign-forcing strategy.
template <class Num>
struct ExcursionRecord {
  std::size_t w = 0;
  std::optional<std::size_t> v;
  std::optional<Side> side;
  Num wealth_at_w{};
  std::optional<Num> wealth_at_v;
};

struct HedgeTruncated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SignForcingOptions {
  /// Last round the pricing tables must cover; hedges started at round w use
  /// a table of horizon `horizon - w`.
  std::size_t horizon = 0;
  Rational unit = 1;
  Side pays = Side::negative;
  std::size_t stride = 0;
};

/// At every return w_i of the sum to the origin, spends half the current
/// wealth on X_i at its price 1/2 and replicates the position by delta
/// hedging until the boundary hit v_i. Hedge tables use the symmetric tail,
/// so the price at s = 0 is exactly 1/2 at every horizon.
template <class Num>
class SignForcing final : public Strategy<Num> {
 public:
  explicit SignForcing(SignForcingOptions options);

  Num stake() const override;
  void observe(Move x) override;
  Num capital() const override { return capital_; }
  std::unique_ptr<Strategy<Num>> clone() const override;
  std::string describe() const override;

  Num wealth() const { return unit_ + capital_; }
  const std::vector<ExcursionRecord<Num>>& log() const { return log_; }

 private:
  bool hedging() const { return table_ != nullptr; }

  SignForcingOptions opt_;
  Num unit_;
  Num capital_{};
  std::size_t n_ = 0;
  long s_ = 0;
  std::size_t last_v_ = 0;
  Num quantity_{};
  std::shared_ptr<const EtaTable<Num>> table_;
  std::vector<ExcursionRecord<Num>> log_;
};

extern template class SignForcing<Rational>;
extern template class SignForcing<double>;

}  // namespace faircoin
