#pragma once

// Subcommand drivers behind the faircoin tool. Each writes its report to the
// given stream and returns the process exit code.

#include "faircoin/rational.hpp"
#include "faircoin/serialize.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <ostream>
#include <string>

namespace faircoin {

struct RunConfig {
  std::string subcommand = "simulate";
  std::string strategy = "zero";
  std::string reality = "iid";
  std::size_t horizon = 100;
  NumericMode mode = NumericMode::exact;
  std::uint64_t seed = 0;
  TraceFormat format = TraceFormat::csv;
  std::string output = "-";
  Rational initial_capital = 1;
  bool summary_only = false;
  // price / census
  std::int64_t l = 0;
  std::size_t k = 0;
  bool replicate = false;
  // verify
  std::string check;
  std::size_t depth = 0;

  bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& config);
RunConfig run_config_from_json(const nlohmann::json& j);

/// Exit codes shared by the drivers.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCap = 3;

int run_simulate(const RunConfig& config, std::ostream& out);
int run_price(const RunConfig& config, std::ostream& out);
int run_census(const RunConfig& config, std::ostream& out);
int run_verify(const RunConfig& config, std::ostream& out);
int run_excursions(const RunConfig& config, std::ostream& out);

/// Dispatches on config.subcommand. Parse and cap errors are reported on
/// `err` and mapped to kExitUsage and kExitCap.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace faircoin
