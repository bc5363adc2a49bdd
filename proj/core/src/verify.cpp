#include "faircoin/verify.hpp"

#include "faircoin/caps.hpp"
#include "faircoin/pricing.hpp"
#include "faircoin/strategies.hpp"

#include <cmath>

namespace faircoin {

namespace {

Rational abs_rational(const Rational& r) { return r < 0 ? Rational(-r) : r; }

void record(IdentityReport& report, const Situation& at, const Rational& discrepancy,
            std::string detail = {}) {
  const Rational d = abs_rational(discrepancy);
  if (d > report.max_discrepancy) report.max_discrepancy = d;
  if (d != 0 && !report.counterexample) {
    report.counterexample = at;
    report.detail = std::move(detail);
  }
}

void flag(IdentityReport& report, const Situation& at, std::string detail) {
  if (!report.counterexample) {
    report.counterexample = at;
    report.detail = std::move(detail);
  }
}

// Shared bookkeeping for the inexact log bound.
void score_slack(IdentityReport& report, const Situation& at, long double lhs, long double rhs,
                 long double margin, std::size_t n) {
  const long double slack = lhs - rhs;
  if (!report.min_slack || slack < *report.min_slack) report.min_slack = slack;
  if (slack < -margin) {
    flag(report, at, "log bound violated at n=" + std::to_string(n));
  } else if (slack < margin) {
    ++report.near_boundary;
  }
}

}  // namespace

void IdentityReport::merge(const IdentityReport& other) {
  paths_checked += other.paths_checked;
  prefixes_checked += other.prefixes_checked;
  if (other.max_discrepancy > max_discrepancy) max_discrepancy = other.max_discrepancy;
  if (!counterexample && other.counterexample) {
    counterexample = other.counterexample;
    detail = other.detail;
  }
  near_boundary += other.near_boundary;
  if (other.min_slack && (!min_slack || *other.min_slack < *min_slack)) min_slack = other.min_slack;
}

nlohmann::json to_json(const IdentityReport& r) {
  nlohmann::json j{{"check", r.name},
                   {"passed", r.passed()},
                   {"paths_checked", r.paths_checked},
                   {"prefixes_checked", r.prefixes_checked},
                   {"max_discrepancy", to_string(r.max_discrepancy)},
                   {"near_boundary", r.near_boundary}};
  j["counterexample"] = r.counterexample ? nlohmann::json(r.counterexample->str()) : nlohmann::json(nullptr);
  j["min_slack"] = r.min_slack ? nlohmann::json(static_cast<double>(*r.min_slack)) : nlohmann::json(nullptr);
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

Rational product_capital(const Situation& prefix, const Rational& c) {
  Rational product = 1;
  long s = 0;
  for (std::size_t i = 1; i <= prefix.length(); ++i) {
    const int x = prefix[i - 1].value();
    if (i >= 2) product *= Rational(1) - c * Rational(s, static_cast<long>(i - 1)) * x;
    s += x;
  }
  return product;
}

SummationSides summation_identity_sides(const Situation& prefix) {
  const std::size_t n = prefix.length();
  Rational lhs = 0;
  Rational weighted_sq = 0;
  Rational harmonic = 0;
  long s = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    const int x = prefix[i - 1].value();
    const auto im1 = static_cast<long>(i - 1);
    if (i >= 2) lhs += Rational(s, im1) * x;
    s += x;
    if (i >= 2) {
      const Rational xbar(s, static_cast<long>(i));
      weighted_sq += Rational(static_cast<long>(i), im1) * xbar * xbar;
      harmonic += Rational(x * x, im1);
    }
  }
  Rational rhs = 0;
  if (n >= 1) {
    const Rational xbar_n(s, static_cast<long>(n));
    const int x1 = prefix[0].value();
    rhs = weighted_sq / 2 + Rational(static_cast<long>(n), 2) * xbar_n * xbar_n -
          (Rational(x1 * x1) + harmonic) / 2;
  }
  return {lhs, rhs};
}

IdentityReport summation_identity_check(const Situation& prefix) {
  IdentityReport report;
  report.name = "summation-identity";
  if (prefix.length() < 2) throw std::invalid_argument("summation identity needs length >= 2");
  const auto sides = summation_identity_sides(prefix);
  record(report, prefix, sides.lhs - sides.rhs, "lhs " + to_string(sides.lhs) + " rhs " + to_string(sides.rhs));
  report.paths_checked = 1;
  report.prefixes_checked = 1;
  return report;
}

IdentityReport log_capital_lower_bound_check(const Situation& prefix, const Rational& c,
                                             long double margin) {
  if (prefix.length() < 2) throw std::invalid_argument("log bound needs length >= 2");
  if (c <= 0 || c > Rational(1, 2)) throw std::invalid_argument("log bound needs 0 < c <= 1/2");
  IdentityReport report;
  report.name = "log-bound";
  const long double cc = static_cast<long double>(to_double(c));
  const std::size_t n = prefix.length();
  long double log_wealth = 0;
  long double weighted = 0;  // sum_{i=2}^n i/(i-1) xbar_i^2
  long double lagged = 0;    // sum_{i=2}^n xbar_{i-1}^2
  long s = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    const int x = prefix[i - 1].value();
    if (i >= 2) {
      const long double xbar_prev = static_cast<long double>(s) / static_cast<long double>(i - 1);
      log_wealth += std::log1p(-cc * xbar_prev * x);
      lagged += xbar_prev * xbar_prev;
    }
    s += x;
    if (i >= 2) {
      const long double xbar = static_cast<long double>(s) / static_cast<long double>(i);
      weighted += static_cast<long double>(i) / static_cast<long double>(i - 1) * xbar * xbar;
    }
  }
  const long double nn = static_cast<long double>(n);
  const long double xbar_n = static_cast<long double>(s) / nn;
  const long double rhs =
      cc / 2 * (1 + std::log(nn) - (weighted + 2 * cc * lagged + nn * xbar_n * xbar_n));
  score_slack(report, prefix, log_wealth, rhs, margin, n);
  report.paths_checked = 1;
  report.prefixes_checked = 1;
  return report;
}

IdentityReport log_bound_running_check(const Situation& path, double c, long double margin) {
  IdentityReport report;
  report.name = "log-bound";
  const long double cc = c;
  long double log_wealth = 0;
  long double weighted = 0;
  long double lagged = 0;
  long s = 0;
  for (std::size_t i = 1; i <= path.length(); ++i) {
    const int x = path[i - 1].value();
    if (i >= 2) {
      const long double xbar_prev = static_cast<long double>(s) / static_cast<long double>(i - 1);
      log_wealth += std::log1p(-cc * xbar_prev * x);
      lagged += xbar_prev * xbar_prev;
    }
    s += x;
    if (i < 2) continue;
    const long double ni = static_cast<long double>(i);
    const long double xbar = static_cast<long double>(s) / ni;
    weighted += ni / (ni - 1) * xbar * xbar;
    const long double rhs = cc / 2 * (1 + std::log(ni) - (weighted + 2 * cc * lagged + ni * xbar * xbar));
    const long double slack = log_wealth - rhs;
    ++report.prefixes_checked;
    if (!report.min_slack || slack < *report.min_slack) report.min_slack = slack;
    if (slack < -margin) {
      if (!report.counterexample) {
        report.counterexample = path.prefix(i);
        report.detail = "log bound violated at n=" + std::to_string(i);
      }
    } else if (slack < margin) {
      ++report.near_boundary;
    }
  }
  report.paths_checked = 1;
  return report;
}

IdentityReport additive_closed_form_check(const Situation& prefix, const Rational& eps) {
  IdentityReport report;
  report.name = "additive-closed-form";
  auto strategy = additive_contrarian<Rational>(eps);
  long s = 0;
  for (std::size_t n = 1; n <= prefix.length(); ++n) {
    strategy->observe(prefix[n - 1]);
    s += prefix[n - 1].value();
    const Rational formula = eps / 2 * (static_cast<long>(n) - s * s);
    record(report, prefix.prefix(n), strategy->capital() - formula);
    ++report.prefixes_checked;
  }
  report.paths_checked = 1;
  return report;
}

Rational one_sided_formula(const Situation& prefix, long level, bool down) {
  long s = 0;
  bool hit_before = false;  // some s_i with i <= n - 1 reached the level
  for (std::size_t i = 0; i < prefix.length(); ++i) {
    if (i > 0 && (down ? s <= -level : s >= level)) hit_before = true;
    s += prefix[i].value();
  }
  if (hit_before) return Rational(-1);
  return down ? Rational(s, level) : Rational(-s, level);
}

std::uint64_t brute_force_b_k(std::int64_t l, std::size_t k) {
  if (k > 40) throw std::invalid_argument("brute-force census limited to k <= 40");
  std::uint64_t count = 0;
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::int64_t s = 0;
    for (std::size_t n = 1; n <= k; ++n) {
      s += ((mask >> (k - n)) & 1u) ? 1 : -1;
      if (boundary_exceeds(static_cast<std::int64_t>(n), s, l)) {
        if (s < 0) ++count;
        break;
      }
    }
  }
  return count;
}

const std::vector<std::string>& identity_ids() {
  static const std::vector<std::string> ids{
      "summation-identity", "product-capital",   "log-bound",
      "additive-closed-form", "one-sided-capital", "stopped-additive-collateral",
      "census-count"};
  return ids;
}

std::size_t default_exhaustive_cap() { return env_cap("FAIRCOIN_EXHAUSTIVE_CAP", 22); }

namespace {

IdentityReport sweep_situations(std::size_t depth, const std::string& name,
                                const std::function<IdentityReport(const Situation&)>& check) {
  IdentityReport report;
  report.name = name;
  for (std::size_t len = 2; len <= depth; ++len) {
    for_each_situation(len, [&](const Situation& t) { report.merge(check(t)); });
  }
  report.paths_checked = depth >= 2 ? std::uint64_t{1} << depth : 0;
  return report;
}

IdentityReport sweep_product(std::size_t depth, const Rational& c) {
  IdentityReport report;
  auto engine = multiplicative_contrarian<Rational>(c);
  for_each_prefix<Rational>(*engine, depth, [&](const Situation& t, const Strategy<Rational>& st,
                                                const Rational&) {
    const Rational oracle = product_capital(t, c);
    record(report, t, Rational(1) + st.capital() - oracle, "c=" + to_string(c));
    // every factor positive
    long s = 0;
    for (std::size_t i = 1; i <= t.length(); ++i) {
      if (i >= 2 && Rational(1) - c * Rational(s, static_cast<long>(i - 1)) * t[i - 1].value() <= 0) {
        flag(report, t, "nonpositive factor at i=" + std::to_string(i));
      }
      s += t[i - 1].value();
    }
    ++report.prefixes_checked;
    return true;
  });
  report.paths_checked = std::uint64_t{1} << depth;
  return report;
}

IdentityReport sweep_additive(std::size_t depth, const Rational& eps) {
  IdentityReport report;
  auto engine = additive_contrarian<Rational>(eps);
  for_each_prefix<Rational>(*engine, depth, [&](const Situation& t, const Strategy<Rational>& st,
                                                const Rational&) {
    const long s = t.sum();
    const Rational formula = eps / 2 * (static_cast<long>(t.length()) - s * s);
    record(report, t, st.capital() - formula, "eps=" + to_string(eps));
    ++report.prefixes_checked;
    return true;
  });
  report.paths_checked = std::uint64_t{1} << depth;
  return report;
}

IdentityReport sweep_one_sided(std::size_t depth, long level, Direction dir) {
  IdentityReport report;
  auto engine = one_sided<Rational>(level, dir);
  const bool down = dir == Direction::down;
  for_each_prefix<Rational>(*engine, depth, [&](const Situation& t, const Strategy<Rational>& st,
                                                const Rational&) {
    record(report, t, st.capital() - one_sided_formula(t, level, down),
           "N=" + std::to_string(level) + (down ? " down" : " up"));
    if (Rational(1) + st.capital() < 0) flag(report, t, "wealth negative");
    ++report.prefixes_checked;
    return true;
  });
  report.paths_checked = std::uint64_t{1} << depth;
  return report;
}

IdentityReport sweep_stopped(std::size_t depth, long m) {
  IdentityReport report;
  const Rational eps(2, m);
  auto engine = stopped_additive<Rational>(eps);
  for_each_prefix<Rational>(*engine, depth, [&](const Situation& t, const Strategy<Rational>& st,
                                                const Rational&) {
    if (Rational(1) + st.capital() < 0) flag(report, t, "wealth negative for m=" + std::to_string(m));
    // unstopped through round n: the guard held at every i <= n
    bool running = true;
    long s = 0;
    for (std::size_t i = 1; i <= t.length() && running; ++i) {
      const long a = (s < 0 ? -s : s) + 1;
      if (a * a > static_cast<long>(i) + m) running = false;
      s += t[i - 1].value();
    }
    if (running) {
      const long sn = t.sum();
      record(report, t, st.capital() - eps / 2 * (static_cast<long>(t.length()) - sn * sn),
             "m=" + std::to_string(m));
    }
    ++report.prefixes_checked;
    return true;
  });
  report.paths_checked = std::uint64_t{1} << depth;
  return report;
}

IdentityReport sweep_census(std::size_t depth) {
  IdentityReport report;
  for (std::int64_t l : {0, 1, 4, 9}) {
    const auto census = enumerate_absorption(l, depth, std::max(depth, default_census_cap()));
    for (std::size_t k = 1; k <= depth; ++k) {
      const BigInt b_census = census.b(k);
      const BigInt b_brute = brute_force_b_k(l, k);
      Situation tag;
      if (b_census != b_brute) {
        record(report, tag, Rational(b_census - b_brute),
               "l=" + std::to_string(l) + " k=" + std::to_string(k) + " census " + b_census.str() +
                   " brute " + b_brute.str());
      }
      if (b_census > (BigInt(1) << static_cast<unsigned>(k - 1))) {
        flag(report, tag, "b_k above 2^(k-1) at l=" + std::to_string(l) + " k=" + std::to_string(k));
      }
      report.paths_checked += std::uint64_t{1} << k;
      ++report.prefixes_checked;
    }
    if (census.weighted_sum() > Rational(1, 2)) {
      flag(report, Situation(), "sum a_i 2^-i above 1/2 at l=" + std::to_string(l));
    }
  }
  return report;
}

}  // namespace

IdentityReport exhaustive(std::size_t depth, const std::string& id, std::size_t cap) {
  require_cap(depth, cap, "exhaustive depth");
  IdentityReport report;
  report.name = id;
  if (id == "summation-identity") {
    report = sweep_situations(depth, id, summation_identity_check);
  } else if (id == "log-bound") {
    for (const Rational c : {Rational(1, 2), Rational(1, 4), Rational(1, 8)}) {
      report.merge(sweep_situations(depth, id, [&](const Situation& t) {
        return log_capital_lower_bound_check(t, c);
      }));
    }
  } else if (id == "product-capital") {
    for (const Rational c : {Rational(1, 2), Rational(1, 4), Rational(1, 8)}) {
      report.merge(sweep_product(depth, c));
    }
  } else if (id == "additive-closed-form") {
    for (const Rational eps : {Rational(2), Rational(1), Rational(1, 2), Rational(2, 7)}) {
      report.merge(sweep_additive(depth, eps));
    }
  } else if (id == "one-sided-capital") {
    for (long level : {1L, 2L, 3L}) {
      report.merge(sweep_one_sided(depth, level, Direction::down));
      report.merge(sweep_one_sided(depth, level, Direction::up));
    }
  } else if (id == "stopped-additive-collateral") {
    for (long m : {1L, 2L, 4L, 8L}) report.merge(sweep_stopped(depth, m));
  } else if (id == "census-count") {
    report.merge(sweep_census(depth));
  } else {
    throw std::invalid_argument("unknown identity id '" + id + "'");
  }
  report.name = id;
  return report;
}

}  // namespace faircoin
