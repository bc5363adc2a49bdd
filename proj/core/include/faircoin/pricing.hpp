#pragma once

// Pricing of the boundary ticket Y_l on the fair-coin tree.
//
// Y_l pays 1 when the walk first leaves |s_n| <= sqrt(n + l) - 1 on the paying
// side and 0 on the other side. The ticket is Markov in (n, s), so its value
// function eta(n, s) is computed by backward induction over live states up to
// a finite horizon. States still live at the horizon take a tail value; the
// zero and one tails bracket the untruncated price.

#include "faircoin/game.hpp"
#include "faircoin/stopping.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace faircoin {

enum class Tail { zero, one, half };

std::string to_string(Tail tail);
Tail parse_tail(std::string_view text);

struct EtaOptions {
  std::int64_t l = 0;
  std::size_t horizon = 1;
  Tail tail = Tail::zero;
  Side pays = Side::negative;
  /// Levels kept in memory; 0 picks full storage for small horizons and
  /// sqrt(horizon) checkpoints otherwise. Skipped levels are recomputed on
  /// demand, one block at a time.
  std::size_t stride = 0;
};

namespace detail {

// Exact cells hold N(n, s) = eta(n, s) * 2^(horizon - n + 1), an integer.
template <class Num>
struct EtaCells;

template <>
struct EtaCells<Rational> {
  using Cell = BigInt;
};

template <>
struct EtaCells<double> {
  using Cell = double;
};

}  // namespace detail

template <class Num>
class EtaTable {
 public:
  using Cell = typename detail::EtaCells<Num>::Cell;

  explicit EtaTable(const EtaOptions& options);

  std::int64_t l() const { return opt_.l; }
  std::size_t horizon() const { return opt_.horizon; }
  Tail tail() const { return opt_.tail; }
  Side pays() const { return opt_.pays; }

  /// Absorbed at (n, s): the boundary is exceeded there (n >= 1).
  bool absorbed(std::size_t n, long s) const;
  /// Live and inside the table: not absorbed, n <= horizon, parity matches.
  bool live(std::size_t n, long s) const;

  /// Value of the ticket at (n, s): the table entry for live states, the
  /// payoff for absorbed ones. Throws std::out_of_range outside the table.
  Num value(std::size_t n, long s) const;

  /// Largest live |s| at round n, or -1.
  long radius(std::size_t n) const { return radius_[n]; }

 private:
  using Level = std::vector<Cell>;

  Cell payoff_cell(std::size_t n, Side side) const;
  Cell tail_cell() const;
  void step_down(std::size_t n, const Level& above, Level& out) const;
  const Level& level(std::size_t n) const;
  Num to_num(const Cell& cell, std::size_t n) const;

  EtaOptions opt_;
  std::vector<long> radius_;
  std::vector<Level> checkpoints_;  // level k * stride, k = 0, 1, ...
  mutable std::size_t block_start_ = static_cast<std::size_t>(-1);
  mutable std::vector<Level> block_;
};

extern template class EtaTable<Rational>;
extern template class EtaTable<double>;

/// (eta(n+1, s+1) - eta(n+1, s-1)) / 2, the self-financing bet per unit ticket.
template <class Num>
Num delta_hedge_bet(const EtaTable<Num>& table, std::size_t n, long s);

struct PriceBracket {
  std::int64_t l = 0;
  std::size_t horizon = 0;
  Rational lower;
  Rational upper;
  Rational live_mass() const { return upper - lower; }
};

/// Backward induction with zero and one tails.
PriceBracket upper_price_bracket(std::int64_t l, std::size_t horizon);

/// Path-count masses at one horizon, all scaled by 2^horizon.
struct HorizonMass {
  std::size_t horizon = 0;
  BigInt negative;  // absorbed on the negative side by the horizon
  BigInt positive;
  BigInt live;
  PriceBracket bracket(std::int64_t l) const;
};

/// Forward propagation of live path counts; one entry per horizon 1..max_horizon.
/// Independent of the backward induction in EtaTable.
std::vector<HorizonMass> forward_masses(std::int64_t l, std::size_t max_horizon);

/// Counts of absorbing situations, found by depth-first search over live prefixes.
struct AbsorptionCensus {
  std::int64_t l = 0;
  std::size_t k = 0;
  std::vector<std::uint64_t> a;           // a[i - 1]: negative absorptions at exactly round i
  std::vector<std::uint64_t> a_positive;  // same, positive side
  BigInt b_k() const { return b(k); }
  /// sum_{i <= j} a_i 2^(j - i)
  BigInt b(std::size_t j) const;
  /// sum_{i <= k} a_i 2^-i
  Rational weighted_sum() const;
};

std::size_t default_census_cap();

AbsorptionCensus enumerate_absorption(std::int64_t l, std::size_t k,
                                      std::size_t cap = default_census_cap());

/// Length-i situations t with u_l(t) = i on the given side, for i <= k.
std::vector<Situation> absorbed_cylinders(std::int64_t l, std::size_t k, Side side);

nlohmann::json to_json(const PriceBracket& bracket);
nlohmann::json to_json(const AbsorptionCensus& census);

/// Holds `quantity` units of Y_l replicated from its table, starting at the
/// root. Bets zero after absorption.
template <class Num>
class ReplicatingHedge final : public Strategy<Num> {
 public:
  ReplicatingHedge(std::shared_ptr<const EtaTable<Num>> table, Num quantity);

  Num stake() const override;
  void observe(Move x) override;
  Num capital() const override { return capital_; }
  bool stopped() const override { return absorbed_; }
  std::unique_ptr<Strategy<Num>> clone() const override;
  std::string describe() const override;

 private:
  std::shared_ptr<const EtaTable<Num>> table_;
  Num quantity_;
  Num capital_{};
  std::size_t n_ = 0;
  long s_ = 0;
  bool absorbed_ = false;
};

extern template class ReplicatingHedge<Rational>;
extern template class ReplicatingHedge<double>;

std::size_t default_replication_cap();

struct ReplicationReport {
  std::int64_t l = 0;
  std::size_t horizon = 0;
  Rational hedge_start;       // upper bracket value
  Rational hedge_min_wealth;  // over every node of the tree
  bool hedge_ok = true;
  Rational portfolio_cost;  // sum of path-bettor budgets
  std::size_t cylinders = 0;
  bool portfolio_ok = true;
  std::uint64_t paths_checked = 0;
  std::optional<Situation> counterexample;
  std::string failure;
  bool passed() const { return hedge_ok && portfolio_ok; }
};

/// Plays the delta hedge from the upper bracket value and the path-bettor
/// portfolio on every path of the given length and checks superreplication.
ReplicationReport replicate_and_verify(std::int64_t l, std::size_t horizon,
                                       std::size_t cap = default_replication_cap());

nlohmann::json to_json(const ReplicationReport& report);

}  // namespace faircoin
