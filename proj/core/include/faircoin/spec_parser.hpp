#pragma once

// Text specs for strategies and reality sources.
//
//   strategy   := name [":" params] | "mix:[" item ("," item)* "]"
//   params     := key "=" value ("," key "=" value)*
//   item       := rational "@" strategy | rational          (bare weight: idle tail, last only)
//
//   zero                          no bets
//   const:M=<q>                   fixed stake
//   mulc:c=<q>                    multiplicative contrarian, 0 < c <= 1/2
//   addc:eps=<q>                  additive contrarian
//   stopadd:eps=<2/m>             stopped additive contrarian
//   oneside:N=<int>,dir=down|up   one-sided bet of 1/N
//   pathbet:target=<moves>,budget=<q>
//   mixq:I=<int>                  truncated mixture of mulc:c=2^-i
//   mixe3:I=<int>                 truncated mixture of stopadd:eps=2^-i
//   signforce:pay=neg|pos         excursion sign forcing (hedge tables sized to the run)
//
//   reality    := "fixed:" moves | "iid" [":seed=" int] | "alt"
//               | "greedy" [":tie=" move] | "minimax:depth=" int [",tie=" move]
//
// Rationals are "n" or "n/d". Moves are "+1-1..." or "+-...".

#include "faircoin/reality.hpp"
#include "faircoin/strategies.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace faircoin {

struct ParseError : std::invalid_argument {
  ParseError(std::size_t position, const std::string& message);
  std::size_t position;
};

/// Syntax tree of one spec; values are kept as text.
struct SpecNode {
  std::string name;
  std::size_t position = 0;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::size_t> param_positions;
  std::vector<std::pair<std::string, SpecNode>> items;  // mix only: weight, component
  std::optional<std::string> tail;
};

SpecNode parse_spec_tree(std::string_view text);

struct SpecContext {
  /// Rounds the game will run; sizes the sign-forcing hedge tables.
  std::size_t horizon = 0;
  /// Default seed for "iid" without an explicit seed.
  std::uint64_t seed = 0;
};

template <class Num>
StrategyPtr<Num> parse_strategy(std::string_view text, const SpecContext& context = {});

template <class Num>
RealityPtr<Num> parse_reality(std::string_view text, const SpecContext& context = {});

}  // namespace faircoin
