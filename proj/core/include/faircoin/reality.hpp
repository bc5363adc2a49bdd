#pragma once

#include "faircoin/game.hpp"

#include <cstdint>
#include <memory>
#include <random>

namespace faircoin {

template <class Num>
using RealityPtr = std::unique_ptr<RealitySource<Num>>;

/// Replays a path; throws std::out_of_range past its end.
template <class Num>
RealityPtr<Num> fixed_reality(Situation path);

/// Fair coin from a seeded mt19937_64, one bit per move. Reproducible across
/// runs and platforms for a given seed.
template <class Num>
RealityPtr<Num> iid_reality(std::uint64_t seed);

/// +1, -1, +1, ...
template <class Num>
RealityPtr<Num> alternating_reality();

/// -sign(stake); `tie` is played when the stake is zero.
template <class Num>
RealityPtr<Num> greedy_reality(Move tie = Move::down());

std::size_t default_minimax_cap();

/// Searches every move sequence to `depth` rounds (or the rounds left, if
/// fewer) against a clone of Skeptic and plays the first move of a sequence
/// minimizing Skeptic's capital at the end of the lookahead. Ties go to `tie`.
template <class Num>
RealityPtr<Num> minimax_reality(std::size_t depth, Move tie = Move::down(),
                                std::size_t cap = default_minimax_cap());

/// The minimum capital the minimax search finds from Skeptic's current state.
template <class Num>
Num minimax_value(const Strategy<Num>& skeptic, std::size_t depth);

}  // namespace faircoin
