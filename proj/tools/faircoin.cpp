// faircoin: simulate betting strategies on the fair-coin game, price the
// boundary ticket, count absorptions and run the exhaustive identity checks.

#include "faircoin/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

void add_common(CLI::App* cmd, faircoin::RunConfig& c, std::string& mode) {
  cmd->add_option("--mode", mode, "exact or float")->check(CLI::IsMember({"exact", "float", "float64"}));
  cmd->add_option("-o,--output", c.output, "output path, - for stdout");
}

}  // namespace

int main(int argc, char** argv) {
  faircoin::RunConfig c;
  std::string mode = "exact";
  std::string format = "csv";
  std::string initial = "1";
  std::string config_in;
  bool dump_config = false;

  CLI::App app{"Fair-coin betting game toolkit"};
  app.require_subcommand(1);
  app.add_option("--config", config_in, "read the run configuration from a JSON file");
  app.add_flag("--dump-config", dump_config, "print the resolved configuration as JSON and exit");

  auto* sim = app.add_subcommand("simulate", "play a strategy against a reality source");
  sim->add_option("--strategy", c.strategy, "strategy spec, e.g. mulc:c=1/2");
  sim->add_option("--reality", c.reality, "reality spec, e.g. iid:seed=42");
  sim->add_option("--horizon", c.horizon, "rounds to play");
  sim->add_option("--seed", c.seed, "seed for iid without an explicit seed");
  sim->add_option("--format", format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  sim->add_option("--capital", initial, "initial capital, a rational");
  sim->add_flag("--summary-only", c.summary_only, "skip per-round rows");
  add_common(sim, c, mode);

  auto* price = app.add_subcommand("price", "bracket the price of the boundary ticket");
  price->add_option("--l", c.l, "boundary offset")->required();
  price->add_option("--horizon", c.horizon, "truncation horizon")->required();
  price->add_flag("--replicate", c.replicate, "also check superreplication on every path");
  add_common(price, c, mode);

  auto* census = app.add_subcommand("census", "count absorbing situations");
  census->add_option("--l", c.l, "boundary offset")->required();
  census->add_option("--k", c.k, "depth")->required();
  add_common(census, c, mode);

  auto* verify = app.add_subcommand("verify", "run an exhaustive identity check");
  verify->add_option("--check", c.check, "check id, or all")->required();
  verify->add_option("--depth", c.depth, "path length")->required();
  add_common(verify, c, mode);

  auto* exc = app.add_subcommand("excursions", "excursion schedule of a generated path");
  exc->add_option("--strategy", c.strategy, "strategy the reality source plays against");
  exc->add_option("--reality", c.reality, "reality spec");
  exc->add_option("--horizon", c.horizon, "rounds");
  exc->add_option("--seed", c.seed, "seed for iid without an explicit seed");
  add_common(exc, c, mode);

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_in.empty()) {
      std::ifstream in(config_in);
      if (!in) throw std::runtime_error("cannot read " + config_in);
      c = faircoin::run_config_from_json(nlohmann::json::parse(in));
    } else {
      c.subcommand = app.get_subcommands().front()->get_name();
      c.mode = faircoin::parse_numeric_mode(mode);
      c.format = faircoin::parse_trace_format(format);
      c.initial_capital = faircoin::parse_rational(initial);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return faircoin::kExitUsage;
  }

  if (dump_config) {
    std::cout << faircoin::to_json(c).dump(2) << '\n';
    return faircoin::kExitOk;
  }
  if (c.output == "-") return faircoin::run(c, std::cout, std::cerr);
  std::ofstream file(c.output);
  if (!file) {
    std::cerr << "error: cannot write " << c.output << '\n';
    return faircoin::kExitUsage;
  }
  return faircoin::run(c, file, std::cerr);
}
