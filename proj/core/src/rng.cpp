#include "decoh/rng.hpp"

namespace decoh {

namespace {

// FNV-1a, then splitmix64 finalization for avalanche.
std::uint64_t mix(std::uint64_t h) {
  h += 0x9e3779b97f4a7c15ull;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ull;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebull;
  return h ^ (h >> 31);
}

}  // namespace

std::mt19937_64 substream(std::uint64_t seed, std::string_view name, std::uint64_t index) {
  std::uint64_t h = 14695981039346656037ull;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return std::mt19937_64(mix(mix(h ^ seed) ^ index));
}

}  // namespace decoh
