#pragma once

// Stopping times and boundary events of the sum process. Every comparison
// against a square-root boundary is done in squared integer form.

#include "faircoin/game.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace faircoin {

enum class Side { negative, positive };

std::string to_string(Side side);

/// |s| > sqrt(n + offset) - 1, decided as (|s| + 1)^2 > n + offset.
constexpr bool boundary_exceeds(std::int64_t n, std::int64_t s, std::int64_t offset) {
  const std::int64_t a = (s < 0 ? -s : s) + 1;
  return a * a > n + offset;
}

/// Largest |s| that stays inside the boundary at round n, or -1 if none does.
std::int64_t boundary_radius(std::int64_t n, std::int64_t offset);

struct BoundaryHit {
  std::size_t round;
  Side side;
  bool operator==(const BoundaryHit&) const = default;
};

/// First round n >= 1 of the prefix with boundary_exceeds(n, s_n, offset).
std::optional<BoundaryHit> first_boundary_hit(const Situation& prefix, std::int64_t offset);

struct Excursion {
  std::size_t w;                 // return to the origin, s_w = 0
  std::optional<std::size_t> v;  // first boundary hit after w
  std::optional<Side> side;      // sign of s_v
};

/// w_i = first n > v_{i-1} with s_n = 0; v_i = first n > w_i with |s_n| > sqrt(n) - 1;
/// v_0 = 0. The last excursion may be left open.
struct ExcursionSchedule {
  std::vector<Excursion> pairs;
};

ExcursionSchedule excursions(const Situation& prefix);

enum class TicketStatus { paid_1, paid_0, undetermined };

std::string to_string(TicketStatus status);

/// Y_l: pays 1 if the walk first leaves |s_n| <= sqrt(n + l) - 1 on the
/// negative side, 0 on the positive side.
TicketStatus ticket_y(const Situation& prefix, std::int64_t l);

/// X_i: pays 1 if the i-th excursion (1-based) ends on the negative side.
TicketStatus ticket_x(const Situation& prefix, std::size_t i);

/// Finite-prefix counters standing in for the limit events. Nothing here
/// decides an i.o. or limsup statement; all fields are pure functions of the
/// prefix. Round indices are 1-based.
struct EventReport {
  std::size_t rounds = 0;
  // |s_n| > sqrt(n) - 1
  std::size_t boundary_count = 0;
  std::size_t boundary_first = 0;
  std::size_t boundary_last = 0;
  std::vector<std::size_t> boundary_rounds;
  // s_n > sqrt(n) - 1 and s_n < -sqrt(n) + 1
  std::size_t positive_count = 0;
  std::size_t positive_last = 0;
  std::size_t negative_count = 0;
  std::size_t negative_last = 0;
  // returns of s to the origin
  std::size_t zero_returns = 0;
  std::size_t last_zero_return = 0;
  long max_abs_s = 0;
  long max_s = 0;
  long min_s = 0;
  // running max of n * xbar_n^2 = s_n^2 / n, and how often it reached 1
  Rational max_n_xbar_sq;
  std::size_t max_n_xbar_sq_round = 0;
  std::size_t unit_deviation_count = 0;
};

EventReport event_report(const Situation& prefix);

nlohmann::json to_json(const EventReport& report);
nlohmann::json to_json(const ExcursionSchedule& schedule);

/// Incremental form of event_report for long simulations that never
/// materialize the prefix. Does not keep the round list.
class EventCounter {
 public:
  void push(Move x);
  const EventReport& report() const { return report_; }

 private:
  EventReport report_;
  long s_ = 0;
  std::int64_t best_num_ = 0;
  std::int64_t best_den_ = 1;
};

}  // namespace faircoin
