#pragma once

// Trace output. CSV columns are fixed: n,x,M,K,s (round, move, stake,
// capital after the round, sum after the round). Exact numbers are written
// as "num/den" strings, floats as shortest round-trip decimals.

#include "faircoin/game.hpp"
#include "faircoin/stopping.hpp"

#include <nlohmann/json.hpp>

#include <ostream>
#include <string>

namespace faircoin {

enum class TraceFormat { csv, jsonl };

TraceFormat parse_trace_format(std::string_view text);
std::string to_string(TraceFormat format);

/// Streams rounds one at a time, then a closing summary record.
class TraceWriter {
 public:
  TraceWriter(std::ostream& out, TraceFormat format);

  void header();

  template <class Num>
  void row(std::size_t n, const Round<Num>& round);

  /// CSV: a final "# {...}" comment line; JSON lines: {"summary": {...}}.
  void summary(const nlohmann::json& summary);

 private:
  std::ostream& out_;
  TraceFormat format_;
};

template <class Num>
nlohmann::json number_json(const Num& value);

template <class Num>
nlohmann::json to_json(const GameTrace<Num>& trace);

}  // namespace faircoin
