#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace decoh {

/// Deterministic named substream derived from a single scenario seed.
std::mt19937_64 substream(std::uint64_t seed, std::string_view name, std::uint64_t index = 0);

}  // namespace decoh
