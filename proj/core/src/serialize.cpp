#include "faircoin/serialize.hpp"

namespace faircoin {

TraceFormat parse_trace_format(std::string_view text) {
  if (text == "csv") return TraceFormat::csv;
  if (text == "jsonl") return TraceFormat::jsonl;
  throw std::invalid_argument("unknown trace format '" + std::string(text) + "' (csv or jsonl)");
}

std::string to_string(TraceFormat format) { return format == TraceFormat::csv ? "csv" : "jsonl"; }

template <>
nlohmann::json number_json<Rational>(const Rational& value) {
  return to_string(value);
}

template <>
nlohmann::json number_json<double>(const double& value) {
  return value;
}

TraceWriter::TraceWriter(std::ostream& out, TraceFormat format) : out_(out), format_(format) {}

void TraceWriter::header() {
  if (format_ == TraceFormat::csv) out_ << "n,x,M,K,s\n";
}

template <class Num>
void TraceWriter::row(std::size_t n, const Round<Num>& r) {
  if (format_ == TraceFormat::csv) {
    out_ << n << ',' << r.x.value() << ',' << format_number(r.stake) << ','
         << format_number(r.capital) << ',' << r.sum << '\n';
  } else {
    nlohmann::json j{{"n", n},
                     {"x", r.x.value()},
                     {"M", number_json(r.stake)},
                     {"K", number_json(r.capital)},
                     {"s", r.sum}};
    out_ << j.dump() << '\n';
  }
}

void TraceWriter::summary(const nlohmann::json& summary) {
  if (format_ == TraceFormat::csv) {
    out_ << "# " << summary.dump() << '\n';
  } else {
    out_ << nlohmann::json{{"summary", summary}}.dump() << '\n';
  }
}

template <class Num>
nlohmann::json to_json(const GameTrace<Num>& trace) {
  nlohmann::json rounds = nlohmann::json::array();
  for (std::size_t i = 0; i < trace.rounds.size(); ++i) {
    const auto& r = trace.rounds[i];
    rounds.push_back({{"n", i + 1},
                      {"x", r.x.value()},
                      {"M", number_json(r.stake)},
                      {"K", number_json(r.capital)},
                      {"s", r.sum}});
  }
  return {{"initial_capital", number_json(trace.initial_capital)}, {"rounds", std::move(rounds)}};
}

template void TraceWriter::row<Rational>(std::size_t, const Round<Rational>&);
template void TraceWriter::row<double>(std::size_t, const Round<double>&);
template nlohmann::json to_json<Rational>(const GameTrace<Rational>&);
template nlohmann::json to_json<double>(const GameTrace<double>&);

}  // namespace faircoin
