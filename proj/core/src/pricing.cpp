#include "faircoin/pricing.hpp"

#include "faircoin/caps.hpp"
#include "faircoin/strategies.hpp"

#include <cmath>
#include <cstdlib>

namespace faircoin {

std::size_t env_cap(const char* name, std::size_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || value == 0) {
    throw std::invalid_argument(std::string(name) + " must be a positive integer");
  }
  return static_cast<std::size_t>(value);
}

std::string to_string(Tail tail) {
  switch (tail) {
    case Tail::zero: return "zero";
    case Tail::one: return "one";
    case Tail::half: break;
  }
  return "half";
}

Tail parse_tail(std::string_view text) {
  if (text == "zero" || text == "0") return Tail::zero;
  if (text == "one" || text == "1") return Tail::one;
  if (text == "half" || text == "1/2") return Tail::half;
  throw std::invalid_argument("unknown tail '" + std::string(text) + "'");
}

namespace {

long level_radius(std::size_t n, std::int64_t l) {
  if (n == 0) return 0;
  auto r = static_cast<long>(boundary_radius(static_cast<std::int64_t>(n), l));
  if (r > static_cast<long>(n)) r = static_cast<long>(n);
  if (r >= 0 && ((static_cast<long>(n) - r) & 1) != 0) --r;
  return r;
}

inline long abs_long(long v) { return v < 0 ? -v : v; }

template <class Num>
typename EtaTable<Num>::Cell cell_sum(const typename EtaTable<Num>::Cell& a,
                                      const typename EtaTable<Num>::Cell& b) {
  if constexpr (std::is_same_v<Num, Rational>) {
    return a + b;
  } else {
    return 0.5 * (a + b);
  }
}

}  // namespace

template <class Num>
EtaTable<Num>::EtaTable(const EtaOptions& options) : opt_(options) {
  if (opt_.horizon < 1) throw std::invalid_argument("eta table horizon must be at least 1");
  if (opt_.l < 0) throw std::invalid_argument("ticket offset l must be nonnegative");
  const std::size_t H = opt_.horizon;
  if (opt_.stride == 0) {
    opt_.stride = H <= 2048 ? 1 : static_cast<std::size_t>(std::ceil(std::sqrt(double(H))));
  }

  radius_.resize(H + 1);
  for (std::size_t n = 0; n <= H; ++n) radius_[n] = level_radius(n, opt_.l);

  const std::size_t stride = opt_.stride;
  checkpoints_.resize((H - 1) / stride + 1);

  Level above(static_cast<std::size_t>(radius_[H] + 1), tail_cell());
  Level current;
  for (std::size_t n = H; n-- > 0;) {
    step_down(n, above, current);
    if (n % stride == 0) checkpoints_[n / stride] = current;
    std::swap(above, current);
  }
}

template <class Num>
typename EtaTable<Num>::Cell EtaTable<Num>::payoff_cell(std::size_t n, Side side) const {
  if constexpr (std::is_same_v<Num, Rational>) {
    if (side != opt_.pays) return BigInt(0);
    return BigInt(1) << static_cast<unsigned>(opt_.horizon - n + 1);
  } else {
    return side == opt_.pays ? 1.0 : 0.0;
  }
}

template <class Num>
typename EtaTable<Num>::Cell EtaTable<Num>::tail_cell() const {
  if constexpr (std::is_same_v<Num, Rational>) {
    switch (opt_.tail) {
      case Tail::zero: return BigInt(0);
      case Tail::one: return BigInt(2);
      case Tail::half: break;
    }
    return BigInt(1);
  } else {
    switch (opt_.tail) {
      case Tail::zero: return 0.0;
      case Tail::one: return 1.0;
      case Tail::half: break;
    }
    return 0.5;
  }
}

template <class Num>
void EtaTable<Num>::step_down(std::size_t n, const Level& above, Level& out) const {
  const long r = radius_[n];
  const long ra = radius_[n + 1];
  out.resize(r < 0 ? 0 : static_cast<std::size_t>(r + 1));
  if (r < 0) return;

  const Cell neg = payoff_cell(n + 1, Side::negative);
  const Cell pos = payoff_cell(n + 1, Side::positive);
  auto child = [&](long c) -> const Cell& {
    if (abs_long(c) <= ra) return above[static_cast<std::size_t>((c + ra) / 2)];
    return c < 0 ? neg : pos;
  };
  for (long k = 0; k <= r; ++k) {
    const long s = -r + 2 * k;
    out[static_cast<std::size_t>(k)] = cell_sum<Num>(child(s - 1), child(s + 1));
  }
}

template <class Num>
const typename EtaTable<Num>::Level& EtaTable<Num>::level(std::size_t n) const {
  const std::size_t H = opt_.horizon;
  const std::size_t stride = opt_.stride;
  if (n % stride == 0 && n < H) return checkpoints_[n / stride];

  const std::size_t start = (n / stride) * stride;
  if (block_start_ != start) {
    const std::size_t end = std::min(start + stride, H);
    block_.assign(end - start + 1, Level{});
    block_[end - start] = end == H ? Level(static_cast<std::size_t>(radius_[H] + 1), tail_cell())
                                   : checkpoints_[end / stride];
    for (std::size_t m = end; m-- > start + 1;) {
      step_down(m, block_[m + 1 - start], block_[m - start]);
    }
    block_start_ = start;
  }
  return block_[n - start];
}

template <class Num>
Num EtaTable<Num>::to_num(const Cell& cell, std::size_t n) const {
  if constexpr (std::is_same_v<Num, Rational>) {
    return Rational(cell, BigInt(1) << static_cast<unsigned>(opt_.horizon - n + 1));
  } else {
    return cell;
  }
}

template <class Num>
bool EtaTable<Num>::absorbed(std::size_t n, long s) const {
  return n >= 1 && boundary_exceeds(static_cast<std::int64_t>(n), s, opt_.l);
}

template <class Num>
bool EtaTable<Num>::live(std::size_t n, long s) const {
  if (n > opt_.horizon) return false;
  if (abs_long(s) > static_cast<long>(n) || ((static_cast<long>(n) + s) & 1) != 0) return false;
  return !absorbed(n, s);
}

template <class Num>
Num EtaTable<Num>::value(std::size_t n, long s) const {
  if (n > opt_.horizon || abs_long(s) > static_cast<long>(n) ||
      ((static_cast<long>(n) + s) & 1) != 0) {
    throw std::out_of_range("state (" + std::to_string(n) + ", " + std::to_string(s) +
                            ") is outside the eta table");
  }
  if (absorbed(n, s)) return (s < 0 ? Side::negative : Side::positive) == opt_.pays ? Num(1) : Num(0);
  const long r = radius_[n];
  return to_num(level(n)[static_cast<std::size_t>((s + r) / 2)], n);
}

template <class Num>
Num delta_hedge_bet(const EtaTable<Num>& table, std::size_t n, long s) {
  if (!table.live(n, s) || n + 1 > table.horizon()) {
    throw std::out_of_range("no hedge bet at (" + std::to_string(n) + ", " + std::to_string(s) +
                            "): state not live below the table horizon");
  }
  Num up = table.value(n + 1, s + 1);
  Num down = table.value(n + 1, s - 1);
  return (up - down) / 2;
}

template class EtaTable<Rational>;
template class EtaTable<double>;
template Rational delta_hedge_bet(const EtaTable<Rational>&, std::size_t, long);
template double delta_hedge_bet(const EtaTable<double>&, std::size_t, long);

PriceBracket upper_price_bracket(std::int64_t l, std::size_t horizon) {
  PriceBracket b;
  b.l = l;
  b.horizon = horizon;
  b.lower = EtaTable<Rational>({l, horizon, Tail::zero, Side::negative, 0}).value(0, 0);
  b.upper = EtaTable<Rational>({l, horizon, Tail::one, Side::negative, 0}).value(0, 0);
  return b;
}

PriceBracket HorizonMass::bracket(std::int64_t l) const {
  PriceBracket b;
  b.l = l;
  b.horizon = horizon;
  const BigInt scale = BigInt(1) << static_cast<unsigned>(horizon);
  b.lower = Rational(negative, scale);
  b.upper = Rational(negative + live, scale);
  return b;
}

std::vector<HorizonMass> forward_masses(std::int64_t l, std::size_t max_horizon) {
  if (l < 0) throw std::invalid_argument("ticket offset l must be nonnegative");
  std::vector<HorizonMass> out;
  out.reserve(max_horizon);
  std::vector<BigInt> counts{BigInt(1)};
  long r_prev = 0;
  BigInt negative = 0;
  BigInt positive = 0;
  for (std::size_t n = 1; n <= max_horizon; ++n) {
    const long r = level_radius(n, l);
    std::vector<BigInt> next(r < 0 ? 0 : static_cast<std::size_t>(r + 1));
    negative <<= 1;
    positive <<= 1;
    for (long k = 0; k <= r_prev; ++k) {
      const BigInt& c = counts[static_cast<std::size_t>(k)];
      if (c == 0) continue;
      const long s = -r_prev + 2 * k;
      for (long child : {s - 1, s + 1}) {
        if (abs_long(child) <= r) {
          next[static_cast<std::size_t>((child + r) / 2)] += c;
        } else if (child < 0) {
          negative += c;
        } else {
          positive += c;
        }
      }
    }
    HorizonMass m;
    m.horizon = n;
    m.negative = negative;
    m.positive = positive;
    m.live = 0;
    for (const auto& c : next) m.live += c;
    out.push_back(std::move(m));
    counts = std::move(next);
    r_prev = r;
  }
  return out;
}

std::size_t default_census_cap() { return env_cap("FAIRCOIN_CENSUS_CAP", 26); }
std::size_t default_replication_cap() { return env_cap("FAIRCOIN_REPLICATION_CAP", 20); }

BigInt AbsorptionCensus::b(std::size_t j) const {
  BigInt total = 0;
  for (std::size_t i = 1; i <= j && i <= a.size(); ++i) {
    total += BigInt(a[i - 1]) << static_cast<unsigned>(j - i);
  }
  return total;
}

Rational AbsorptionCensus::weighted_sum() const {
  Rational total = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) total += Rational(a[i - 1]) * pow2(-static_cast<int>(i));
  return total;
}

namespace {

void census_dfs(std::int64_t l, std::size_t k, std::int64_t n, std::int64_t s,
                AbsorptionCensus& census) {
  for (std::int64_t child : {s - 1, s + 1}) {
    if (boundary_exceeds(n + 1, child, l)) {
      auto& bucket = child < 0 ? census.a : census.a_positive;
      ++bucket[static_cast<std::size_t>(n)];
    } else if (static_cast<std::size_t>(n + 1) < k) {
      census_dfs(l, k, n + 1, child, census);
    }
  }
}

void cylinder_dfs(std::int64_t l, std::size_t k, Side side, Situation& path,
                  std::vector<Situation>& out) {
  for (Move x : {Move::down(), Move::up()}) {
    path.push_back(x);
    const auto n = static_cast<std::int64_t>(path.length());
    if (boundary_exceeds(n, path.sum(), l)) {
      if ((path.sum() < 0 ? Side::negative : Side::positive) == side) out.push_back(path);
    } else if (path.length() < k) {
      cylinder_dfs(l, k, side, path, out);
    }
    path.pop_back();
  }
}

}  // namespace

AbsorptionCensus enumerate_absorption(std::int64_t l, std::size_t k, std::size_t cap) {
  require_cap(k, cap, "census depth");
  if (l < 0) throw std::invalid_argument("ticket offset l must be nonnegative");
  AbsorptionCensus census;
  census.l = l;
  census.k = k;
  census.a.assign(k, 0);
  census.a_positive.assign(k, 0);
  if (k > 0) census_dfs(l, k, 0, 0, census);
  return census;
}

std::vector<Situation> absorbed_cylinders(std::int64_t l, std::size_t k, Side side) {
  std::vector<Situation> out;
  Situation path;
  if (k > 0) cylinder_dfs(l, k, side, path, out);
  return out;
}

nlohmann::json to_json(const PriceBracket& b) {
  return nlohmann::json{{"l", b.l},
                        {"horizon", b.horizon},
                        {"lower", to_string(b.lower)},
                        {"upper", to_string(b.upper)},
                        {"live_mass", to_string(b.live_mass())}};
}

nlohmann::json to_json(const AbsorptionCensus& c) {
  return nlohmann::json{{"l", c.l},
                        {"k", c.k},
                        {"a", c.a},
                        {"b_k", c.b_k().convert_to<std::uint64_t>()},
                        {"sum_ai_2^-i", to_string(c.weighted_sum())}};
}

template <class Num>
ReplicatingHedge<Num>::ReplicatingHedge(std::shared_ptr<const EtaTable<Num>> table, Num quantity)
    : table_(std::move(table)), quantity_(std::move(quantity)) {}

template <class Num>
Num ReplicatingHedge<Num>::stake() const {
  if (absorbed_ || n_ >= table_->horizon()) return Num(0);
  return quantity_ * delta_hedge_bet(*table_, n_, s_);
}

template <class Num>
void ReplicatingHedge<Num>::observe(Move x) {
  capital_ += stake() * x.value();
  ++n_;
  s_ += x.value();
  if (!absorbed_ && table_->absorbed(n_, s_)) absorbed_ = true;
}

template <class Num>
std::unique_ptr<Strategy<Num>> ReplicatingHedge<Num>::clone() const {
  return std::make_unique<ReplicatingHedge>(*this);
}

template <class Num>
std::string ReplicatingHedge<Num>::describe() const {
  return "hedge:l=" + std::to_string(table_->l()) + ",horizon=" +
         std::to_string(table_->horizon()) + ",tail=" + to_string(table_->tail());
}

template class ReplicatingHedge<Rational>;
template class ReplicatingHedge<double>;

ReplicationReport replicate_and_verify(std::int64_t l, std::size_t horizon, std::size_t cap) {
  require_cap(horizon, cap, "replication horizon");
  ReplicationReport report;
  report.l = l;
  report.horizon = horizon;

  auto fail = [&](bool& flag, const Situation& at, std::string why) {
    if (flag) {
      flag = false;
      if (!report.counterexample) {
        report.counterexample = at;
        report.failure = std::move(why);
      }
    }
  };

  // Delta hedge from the one-tail table.
  auto table = std::make_shared<const EtaTable<Rational>>(
      EtaOptions{l, horizon, Tail::one, Side::negative, 0});
  report.hedge_start = table->value(0, 0);
  report.hedge_min_wealth = report.hedge_start;
  ReplicatingHedge<Rational> hedge(table, Rational(1));
  for_each_prefix<Rational>(hedge, horizon, [&](const Situation& t, const Strategy<Rational>& st,
                                                const Rational&) {
    const Rational wealth = report.hedge_start + st.capital();
    if (wealth < report.hedge_min_wealth) report.hedge_min_wealth = wealth;
    if (wealth < 0) fail(report.hedge_ok, t, "hedge wealth negative");
    const auto n = static_cast<std::int64_t>(t.length());
    if (boundary_exceeds(n, t.sum(), l)) {
      const Rational payoff = t.sum() < 0 ? 1 : 0;
      if (wealth < payoff) fail(report.hedge_ok, t, "hedge below payoff at absorption");
      report.paths_checked += std::uint64_t{1} << (horizon - t.length());
      return false;
    }
    if (t.length() == horizon) ++report.paths_checked;
    return true;
  });

  // Path bettors on every negative-absorbing cylinder, budget 2^-i each.
  const auto cylinders = absorbed_cylinders(l, horizon, Side::negative);
  report.cylinders = cylinders.size();
  std::vector<std::unique_ptr<Strategy<Rational>>> bettors;
  bettors.reserve(cylinders.size());
  report.portfolio_cost = 0;
  for (const auto& t : cylinders) {
    Rational budget = pow2(-static_cast<int>(t.length()));
    report.portfolio_cost += budget;
    bettors.push_back(path_bettor<Rational>(t, budget));
  }
  auto book = portfolio<Rational>(std::move(bettors));
  for_each_prefix<Rational>(*book, horizon, [&](const Situation& t, const Strategy<Rational>& st,
                                                const Rational&) {
    const Rational wealth = report.portfolio_cost + st.capital();
    if (wealth < 0) fail(report.portfolio_ok, t, "portfolio wealth negative");
    const auto n = static_cast<std::int64_t>(t.length());
    if (boundary_exceeds(n, t.sum(), l)) {
      if (t.sum() < 0 && wealth != 1) fail(report.portfolio_ok, t, "portfolio does not pay 1");
      return false;
    }
    return true;
  });
  return report;
}

nlohmann::json to_json(const ReplicationReport& r) {
  nlohmann::json j{{"l", r.l},
                   {"horizon", r.horizon},
                   {"hedge_start", to_string(r.hedge_start)},
                   {"hedge_min_wealth", to_string(r.hedge_min_wealth)},
                   {"hedge_ok", r.hedge_ok},
                   {"portfolio_cost", to_string(r.portfolio_cost)},
                   {"cylinders", r.cylinders},
                   {"portfolio_ok", r.portfolio_ok},
                   {"paths_checked", r.paths_checked},
                   {"passed", r.passed()}};
  j["counterexample"] = r.counterexample ? nlohmann::json(r.counterexample->str()) : nlohmann::json(nullptr);
  if (!r.failure.empty()) j["failure"] = r.failure;
  return j;
}

}  // namespace faircoin
