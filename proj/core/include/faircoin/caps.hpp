#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace faircoin {

/// Reads a positive integer cap from the environment, or returns the fallback.
///   FAIRCOIN_CENSUS_CAP       census depth (26)
///   FAIRCOIN_REPLICATION_CAP  exhaustive replication horizon (20)
///   FAIRCOIN_EXHAUSTIVE_CAP   identity sweep depth (22)
///   FAIRCOIN_MINIMAX_CAP      adversary search depth (22)
std::size_t env_cap(const char* name, std::size_t fallback);

struct CapExceeded : std::length_error {
  using std::length_error::length_error;
};

inline void require_cap(std::size_t value, std::size_t cap, const std::string& what) {
  if (value > cap) {
    throw CapExceeded(what + " " + std::to_string(value) + " exceeds the cap of " +
                      std::to_string(cap));
  }
}

}  // namespace faircoin
