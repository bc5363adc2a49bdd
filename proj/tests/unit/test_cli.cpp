#include "faircoin/cli.hpp"
#include "faircoin/reality.hpp"
#include "faircoin/strategies.hpp"
#include "faircoin/verify.hpp"

#include <doctest.h>

#include <sstream>

using namespace faircoin;
using Q = Rational;

namespace {

struct Output {
  int code;
  std::string out;
  std::string err;
};

Output invoke(const RunConfig& c) {
  std::ostringstream out, err;
  const int code = run(c, out, err);
  return {code, out.str(), err.str()};
}

RunConfig simulate(const std::string& strategy, const std::string& reality, std::size_t horizon) {
  RunConfig c;
  c.subcommand = "simulate";
  c.strategy = strategy;
  c.reality = reality;
  c.horizon = horizon;
  return c;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

nlohmann::json summary_of(const std::string& csv) {
  const auto ls = lines(csv);
  REQUIRE(ls.back().rfind("# ", 0) == 0);
  return nlohmann::json::parse(ls.back().substr(2));
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("simulate stopadd on the alternating path") {
  // m = 2 never stops: K_100 = (1/2) * 100.
  auto r = invoke(simulate("stopadd:eps=1", "alt", 100));
  REQUIRE(r.code == 0);
  CHECK(summary_of(r.out)["K"] == "50/1");
  // m = 1 stops at round 2, where (1+1)^2 = 4 > 2 + 1.
  r = invoke(simulate("stopadd:eps=2/1", "alt", 100));
  CHECK(summary_of(r.out)["K"] == "0/1");
}

TEST_CASE("simulate mulc against greedy matches the product") {
  const auto r = invoke(simulate("mulc:c=1/2", "greedy", 20));
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 22);
  CHECK(ls[0] == "n,x,M,K,s");
  Situation path;
  for (std::size_t i = 1; i <= 20; ++i) {
    const auto row = ls[i];
    const auto first = row.find(',');
    const auto second = row.find(',', first + 1);
    path.push_back(Move::from_int(std::stoi(row.substr(first + 1, second - first - 1))));
  }
  CHECK(parse_rational(summary_of(r.out)["wealth"].get<std::string>()) == product_capital(path, Q(1, 2)));
}

TEST_CASE("simulate one-sided to the hit") {
  const auto r = invoke(simulate("oneside:N=2,dir=down", "fixed:-1-1", 2));
  CHECK(summary_of(r.out)["K"] == "-1/1");
  const auto ls = lines(r.out);
  CHECK(ls[1] == "1,-1,1/2,-1/2,-1");
  CHECK(ls[2] == "2,-1,1/2,-1/1,-2");
}

TEST_CASE("simulate is deterministic and jsonl is well formed") {
  RunConfig c = simulate("mixq:I=4", "iid:seed=5", 50);
  c.format = TraceFormat::jsonl;
  const auto a = invoke(c);
  const auto b = invoke(c);
  CHECK(a.out == b.out);
  const auto ls = lines(a.out);
  REQUIRE(ls.size() == 51);
  const auto row = nlohmann::json::parse(ls[0]);
  CHECK(row["n"] == 1);
  CHECK(row["M"].is_string());
  CHECK(nlohmann::json::parse(ls.back()).contains("summary"));

  c.mode = NumericMode::float64;
  const auto f = invoke(c);
  CHECK(nlohmann::json::parse(lines(f.out)[3])["K"].is_number());
}

TEST_CASE("price and census") {
  RunConfig c;
  c.subcommand = "price";
  c.l = 0;
  c.horizon = 8;
  auto r = invoke(c);
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["lower"] == "1/2");
  CHECK(j["upper"] == "1/2");

  c.subcommand = "census";
  c.l = 4;
  c.k = 4;
  r = invoke(c);
  j = nlohmann::json::parse(r.out);
  CHECK(j["a"] == nlohmann::json::array({0, 1, 0, 2}));
  CHECK(j["b_k"] == 6);
  CHECK(j["sum_ai_2^-i"] == "3/8");

  c.k = 40;
  CHECK(invoke(c).code == kExitCap);
}

TEST_CASE("verify exit codes") {
  RunConfig c;
  c.subcommand = "verify";
  c.check = "additive-closed-form";
  c.depth = 12;
  auto r = invoke(c);
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["passed"] == true);
  c.check = "nope";
  CHECK(invoke(c).code == kExitUsage);
  c.check = "summation-identity";
  c.depth = 40;
  CHECK(invoke(c).code == kExitCap);
}

TEST_CASE("excursions subcommand") {
  RunConfig c;
  c.subcommand = "excursions";
  c.reality = "fixed:-1+1-1";
  c.horizon = 3;
  const auto r = invoke(c);
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schedule"]["pairs"][0]["w"] == 2);
  CHECK(j["schedule"]["pairs"][0]["v"] == 3);
}

TEST_CASE("parse errors are reported with positions") {
  const auto r = invoke(simulate("mulc:c=", "alt", 3));
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("position 7") != std::string::npos);
}

TEST_CASE("run config round-trips") {
  RunConfig c = simulate("mix:[1/2@zero,1/2]", "minimax:depth=3", 17);
  c.mode = NumericMode::float64;
  c.format = TraceFormat::jsonl;
  c.seed = 99;
  c.initial_capital = Q(3, 2);
  c.l = 4;
  c.k = 9;
  c.check = "log-bound";
  c.depth = 5;
  c.replicate = true;
  CHECK(run_config_from_json(nlohmann::json::parse(to_json(c).dump())) == c);
}

}
