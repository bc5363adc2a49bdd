#include "faircoin/stopping.hpp"

#include <cmath>

namespace faircoin {

namespace {
__extension__ typedef __int128 wide_int;
}

std::string to_string(Side side) { return side == Side::negative ? "negative" : "positive"; }

std::string to_string(TicketStatus status) {
  switch (status) {
    case TicketStatus::paid_1: return "paid_1";
    case TicketStatus::paid_0: return "paid_0";
    case TicketStatus::undetermined: break;
  }
  return "undetermined";
}

std::int64_t boundary_radius(std::int64_t n, std::int64_t offset) {
  const std::int64_t limit = n + offset;
  if (limit < 1) return -1;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(limit)));
  while (r * r > limit) --r;
  while ((r + 1) * (r + 1) <= limit) ++r;
  // (|s| + 1)^2 <= limit  <=>  |s| <= isqrt(limit) - 1
  return r - 1;
}

std::optional<BoundaryHit> first_boundary_hit(const Situation& prefix, std::int64_t offset) {
  long s = 0;
  for (std::size_t n = 1; n <= prefix.length(); ++n) {
    s += prefix[n - 1].value();
    if (boundary_exceeds(static_cast<std::int64_t>(n), s, offset)) {
      return BoundaryHit{n, s < 0 ? Side::negative : Side::positive};
    }
  }
  return std::nullopt;
}

ExcursionSchedule excursions(const Situation& prefix) {
  ExcursionSchedule schedule;
  long s = 0;
  bool open = false;
  for (std::size_t n = 1; n <= prefix.length(); ++n) {
    s += prefix[n - 1].value();
    if (!open) {
      if (s == 0) {
        schedule.pairs.push_back(Excursion{n, std::nullopt, std::nullopt});
        open = true;
      }
    } else if (boundary_exceeds(static_cast<std::int64_t>(n), s, 0)) {
      auto& e = schedule.pairs.back();
      e.v = n;
      e.side = s < 0 ? Side::negative : Side::positive;
      open = false;
    }
  }
  return schedule;
}

TicketStatus ticket_y(const Situation& prefix, std::int64_t l) {
  const auto hit = first_boundary_hit(prefix, l);
  if (!hit) return TicketStatus::undetermined;
  return hit->side == Side::negative ? TicketStatus::paid_1 : TicketStatus::paid_0;
}

TicketStatus ticket_x(const Situation& prefix, std::size_t i) {
  if (i == 0) throw std::invalid_argument("excursions are numbered from 1");
  const auto schedule = excursions(prefix);
  if (schedule.pairs.size() < i || !schedule.pairs[i - 1].v) return TicketStatus::undetermined;
  return *schedule.pairs[i - 1].side == Side::negative ? TicketStatus::paid_1
                                                       : TicketStatus::paid_0;
}

void EventCounter::push(Move x) {
  auto& r = report_;
  s_ += x.value();
  const std::size_t n = ++r.rounds;
  const auto n64 = static_cast<std::int64_t>(n);

  if (boundary_exceeds(n64, s_, 0)) {
    ++r.boundary_count;
    if (r.boundary_first == 0) r.boundary_first = n;
    r.boundary_last = n;
    if (s_ > 0) {
      ++r.positive_count;
      r.positive_last = n;
    } else {
      ++r.negative_count;
      r.negative_last = n;
    }
  }
  if (s_ == 0) {
    ++r.zero_returns;
    r.last_zero_return = n;
  }
  const long abs_s = s_ < 0 ? -s_ : s_;
  if (abs_s > r.max_abs_s) r.max_abs_s = abs_s;
  if (s_ > r.max_s) r.max_s = s_;
  if (s_ < r.min_s) r.min_s = s_;

  // s^2 / n > best_num / best_den, compared without division
  const auto sq = static_cast<std::int64_t>(s_) * s_;
  if (r.max_n_xbar_sq_round == 0 ||
      static_cast<wide_int>(sq) * best_den_ > static_cast<wide_int>(best_num_) * n64) {
    best_num_ = sq;
    best_den_ = n64;
    r.max_n_xbar_sq = Rational(static_cast<long>(sq), static_cast<long>(n64));
    r.max_n_xbar_sq_round = n;
  }
  if (s_ * s_ >= static_cast<long>(n)) ++r.unit_deviation_count;
}

EventReport event_report(const Situation& prefix) {
  EventCounter counter;
  std::vector<std::size_t> rounds;
  long s = 0;
  for (std::size_t n = 1; n <= prefix.length(); ++n) {
    counter.push(prefix[n - 1]);
    s += prefix[n - 1].value();
    if (boundary_exceeds(static_cast<std::int64_t>(n), s, 0)) rounds.push_back(n);
  }
  EventReport report = counter.report();
  report.boundary_rounds = std::move(rounds);
  return report;
}

nlohmann::json to_json(const EventReport& r) {
  return nlohmann::json{
      {"rounds", r.rounds},
      {"boundary_count", r.boundary_count},
      {"boundary_first", r.boundary_first},
      {"boundary_last", r.boundary_last},
      {"boundary_rounds", r.boundary_rounds},
      {"positive_count", r.positive_count},
      {"positive_last", r.positive_last},
      {"negative_count", r.negative_count},
      {"negative_last", r.negative_last},
      {"zero_returns", r.zero_returns},
      {"last_zero_return", r.last_zero_return},
      {"max_abs_s", r.max_abs_s},
      {"max_s", r.max_s},
      {"min_s", r.min_s},
      {"max_n_xbar_sq", to_string(r.max_n_xbar_sq)},
      {"max_n_xbar_sq_round", r.max_n_xbar_sq_round},
      {"unit_deviation_count", r.unit_deviation_count},
  };
}

nlohmann::json to_json(const ExcursionSchedule& schedule) {
  auto pairs = nlohmann::json::array();
  for (const auto& e : schedule.pairs) {
    nlohmann::json j{{"w", e.w}};
    j["v"] = e.v ? nlohmann::json(*e.v) : nlohmann::json(nullptr);
    j["side"] = e.side ? nlohmann::json(to_string(*e.side)) : nlohmann::json(nullptr);
    pairs.push_back(std::move(j));
  }
  return nlohmann::json{{"pairs", std::move(pairs)}};
}

}  // namespace faircoin
