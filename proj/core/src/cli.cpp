#include "faircoin/cli.hpp"

#include "faircoin/caps.hpp"
#include "faircoin/pricing.hpp"
#include "faircoin/spec_parser.hpp"
#include "faircoin/stopping.hpp"
#include "faircoin/strategies.hpp"
#include "faircoin/verify.hpp"

namespace faircoin {

nlohmann::json to_json(const RunConfig& c) {
  return {{"subcommand", c.subcommand},
          {"strategy", c.strategy},
          {"reality", c.reality},
          {"horizon", c.horizon},
          {"mode", to_string(c.mode)},
          {"seed", c.seed},
          {"format", to_string(c.format)},
          {"output", c.output},
          {"initial_capital", to_string(c.initial_capital)},
          {"summary_only", c.summary_only},
          {"l", c.l},
          {"k", c.k},
          {"replicate", c.replicate},
          {"check", c.check},
          {"depth", c.depth}};
}

RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig c;
  c.subcommand = j.value("subcommand", c.subcommand);
  c.strategy = j.value("strategy", c.strategy);
  c.reality = j.value("reality", c.reality);
  c.horizon = j.value("horizon", c.horizon);
  if (j.contains("mode")) c.mode = parse_numeric_mode(j.at("mode").get<std::string>());
  c.seed = j.value("seed", c.seed);
  if (j.contains("format")) c.format = parse_trace_format(j.at("format").get<std::string>());
  c.output = j.value("output", c.output);
  if (j.contains("initial_capital")) c.initial_capital = parse_rational(j.at("initial_capital").get<std::string>());
  c.summary_only = j.value("summary_only", c.summary_only);
  c.l = j.value("l", c.l);
  c.k = j.value("k", c.k);
  c.replicate = j.value("replicate", c.replicate);
  c.check = j.value("check", c.check);
  c.depth = j.value("depth", c.depth);
  return c;
}

namespace {

template <class Num>
nlohmann::json excursion_log(const SignForcing<Num>& sf) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& rec : sf.log()) {
    nlohmann::json j{{"w", rec.w}, {"wealth_at_w", number_json(rec.wealth_at_w)}};
    if (rec.v) {
      j["v"] = *rec.v;
      j["side"] = to_string(*rec.side);
      j["wealth_at_v"] = number_json(*rec.wealth_at_v);
      j["multiplier"] = number_json(Num(*rec.wealth_at_v / rec.wealth_at_w));
    }
    out.push_back(std::move(j));
  }
  return out;
}

template <class Num>
int simulate(const RunConfig& config, std::ostream& out) {
  const SpecContext ctx{config.horizon, config.seed};
  auto strategy = parse_strategy<Num>(config.strategy, ctx);
  auto reality = parse_reality<Num>(config.reality, ctx);
  const Num a = from_rational<Num>(config.initial_capital);

  TraceWriter writer(out, config.format);
  if (!config.summary_only) writer.header();

  Situation history;
  EventCounter events;
  Round<Num> last{Move::up(), Num(0), Num(0), 0};
  Num min_wealth = a;
  std::size_t min_wealth_round = 0;
  for (std::size_t n = 1; n <= config.horizon; ++n) {
    const Num stake = strategy->stake();
    check_finite(stake, n);
    const Move x = reality->next_move(history, stake, *strategy, config.horizon - n + 1);
    strategy->observe(x);
    history.push_back(x);
    events.push(x);
    last = Round<Num>{x, stake, last.capital + stake * x.value(), history.sum()};
    check_finite(last.capital, n);
    if (a + last.capital < min_wealth) {
      min_wealth = a + last.capital;
      min_wealth_round = n;
    }
    if (!config.summary_only) writer.row(n, last);
  }

  nlohmann::json summary{{"strategy", strategy->describe()},
                         {"reality", reality->describe()},
                         {"horizon", config.horizon},
                         {"mode", to_string(config.mode)},
                         {"initial_capital", number_json(a)},
                         {"K", number_json(last.capital)},
                         {"strategy_K", number_json(strategy->capital())},
                         {"wealth", number_json(Num(a + last.capital))},
                         {"min_wealth", number_json(min_wealth)},
                         {"min_wealth_round", min_wealth_round},
                         {"collateral_ok", !(min_wealth < 0)},
                         {"events", to_json(events.report())}};
  if (const auto* sf = dynamic_cast<const SignForcing<Num>*>(strategy.get())) {
    summary["excursions"] = excursion_log(*sf);
  }
  writer.summary(summary);
  return kExitOk;
}

template <class Num>
int excursions_impl(const RunConfig& config, std::ostream& out) {
  const SpecContext ctx{config.horizon, config.seed};
  auto strategy = parse_strategy<Num>(config.strategy, ctx);
  auto reality = parse_reality<Num>(config.reality, ctx);
  Situation path;
  for (std::size_t n = 1; n <= config.horizon; ++n) {
    const Num stake = strategy->stake();
    const Move x = reality->next_move(path, stake, *strategy, config.horizon - n + 1);
    strategy->observe(x);
    path.push_back(x);
  }
  nlohmann::json j{{"reality", reality->describe()},
                   {"horizon", config.horizon},
                   {"schedule", to_json(excursions(path))},
                   {"events", to_json(event_report(path))}};
  if (const auto* sf = dynamic_cast<const SignForcing<Num>*>(strategy.get())) {
    j["strategy"] = sf->describe();
    j["log"] = excursion_log(*sf);
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run_simulate(const RunConfig& config, std::ostream& out) {
  return config.mode == NumericMode::exact ? simulate<Rational>(config, out)
                                           : simulate<double>(config, out);
}

int run_excursions(const RunConfig& config, std::ostream& out) {
  return config.mode == NumericMode::exact ? excursions_impl<Rational>(config, out)
                                           : excursions_impl<double>(config, out);
}

int run_price(const RunConfig& config, std::ostream& out) {
  const PriceBracket bracket = upper_price_bracket(config.l, config.horizon);
  nlohmann::json j = to_json(bracket);
  const Rational half(1, 2);
  bool ok = bracket.lower <= half && half <= bracket.upper;
  j["contains_half"] = ok;
  if (config.replicate) {
    const ReplicationReport rep = replicate_and_verify(config.l, config.horizon);
    j["replication"] = to_json(rep);
    ok = ok && rep.passed();
  }
  out << j.dump(2) << '\n';
  return ok ? kExitOk : kExitAssertion;
}

int run_census(const RunConfig& config, std::ostream& out) {
  const AbsorptionCensus census = enumerate_absorption(config.l, config.k);
  nlohmann::json j = to_json(census);
  const bool ok = (config.k == 0 || census.b_k() <= (BigInt(1) << static_cast<unsigned>(config.k - 1))) &&
                  census.weighted_sum() <= Rational(1, 2);
  j["bound_ok"] = ok;
  out << j.dump(2) << '\n';
  return ok ? kExitOk : kExitAssertion;
}

int run_verify(const RunConfig& config, std::ostream& out) {
  std::vector<std::string> ids;
  if (config.check.empty() || config.check == "all") {
    ids = identity_ids();
  } else {
    ids.push_back(config.check);
  }
  nlohmann::json reports = nlohmann::json::array();
  bool ok = true;
  for (const auto& id : ids) {
    const IdentityReport r = exhaustive(config.depth, id);
    ok = ok && r.passed();
    reports.push_back(to_json(r));
  }
  nlohmann::json j = ids.size() == 1 ? reports.front()
                                     : nlohmann::json{{"passed", ok}, {"checks", reports}};
  out << j.dump(2) << '\n';
  return ok ? kExitOk : kExitAssertion;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.subcommand == "simulate") return run_simulate(config, out);
    if (config.subcommand == "price") return run_price(config, out);
    if (config.subcommand == "census") return run_census(config, out);
    if (config.subcommand == "verify") return run_verify(config, out);
    if (config.subcommand == "excursions") return run_excursions(config, out);
    err << "error: unknown subcommand '" << config.subcommand << "'\n";
    return kExitUsage;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitCap;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitAssertion;
  }
}

}  // namespace faircoin
