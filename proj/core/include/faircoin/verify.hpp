#pragma once

// Brute-force oracles for the closed forms and bounds the strategies rely on.
// The oracles work directly from the move sequence with their own arithmetic;
// they never call into the strategy engine except as the thing under test.

#include "faircoin/game.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace faircoin {

struct IdentityReport {
  std::string name;
  std::uint64_t paths_checked = 0;
  std::uint64_t prefixes_checked = 0;
  Rational max_discrepancy = 0;
  std::optional<Situation> counterexample;
  std::string detail;
  /// Cases inside the slack margin of an inexact check; not failures.
  std::uint64_t near_boundary = 0;
  /// Smallest (lhs - rhs) seen by an inexact check.
  std::optional<long double> min_slack;

  bool passed() const { return max_discrepancy == 0 && !counterexample; }
  void merge(const IdentityReport& other);
};

nlohmann::json to_json(const IdentityReport& report);

/// prod_{i=2}^n (1 - c * xbar_{i-1} * x_i), the wealth of the multiplicative
/// contrarian started from 1.
Rational product_capital(const Situation& prefix, const Rational& c);

/// Both sides of
///   sum_{i=2}^n xbar_{i-1} x_i
///     = 1/2 sum_{i=2}^n i/(i-1) xbar_i^2 + n/2 xbar_n^2 - 1/2 (x_1^2 + sum_{i=2}^n x_i^2/(i-1)).
struct SummationSides {
  Rational lhs;
  Rational rhs;
};
SummationSides summation_identity_sides(const Situation& prefix);

IdentityReport summation_identity_check(const Situation& prefix);

/// log W_n >= (c/2) {1 + log n - (sum_{i=2}^n i/(i-1) xbar_i^2 + 2c sum_{i=2}^n xbar_{i-1}^2 + n xbar_n^2)}
/// for the multiplicative contrarian wealth W_n. Evaluated in long double.
inline constexpr long double kLogBoundMargin = 1e-9L;

IdentityReport log_capital_lower_bound_check(const Situation& prefix, const Rational& c,
                                             long double margin = kLogBoundMargin);

/// The bound at every prefix length 2..n in one pass, optionally in double.
IdentityReport log_bound_running_check(const Situation& path, double c,
                                       long double margin = kLogBoundMargin);

/// Additive contrarian capital against (eps/2)(n - s_n^2).
IdentityReport additive_closed_form_check(const Situation& prefix, const Rational& eps);

/// One-sided capital against s_n/N before the hit and -1 from the hit on.
Rational one_sided_formula(const Situation& prefix, long level, bool down);

/// #{t of length k : u_l(t) <= k and s_{u_l}(t) < 0}, by scanning all 2^k situations.
std::uint64_t brute_force_b_k(std::int64_t l, std::size_t k);

/// Identity ids accepted by exhaustive().
const std::vector<std::string>& identity_ids();

std::size_t default_exhaustive_cap();

/// Runs the named check on every situation of length `depth` (and, for the
/// engine checks, every shorter prefix along the way).
///   summation-identity, product-capital, log-bound, additive-closed-form,
///   one-sided-capital, stopped-additive-collateral, census-count
IdentityReport exhaustive(std::size_t depth, const std::string& id,
                          std::size_t cap = default_exhaustive_cap());

}  // namespace faircoin
