#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mimic {

// splitmix64; used to derive independent streams from one experiment seed.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stable stream id from a base seed, a purpose tag and an index. Every
// stochastic site gets its own stream so thread scheduling cannot change
// the numbers drawn anywhere.
inline std::uint64_t stream_seed(std::uint64_t base, std::string_view tag, std::uint64_t k = 0) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return mix64(base ^ mix64(h) ^ mix64(k * 0x9e3779b97f4a7c15ULL + 0x5bf03635ULL));
}

inline std::mt19937_64 make_rng(std::uint64_t base, std::string_view tag, std::uint64_t k = 0) {
  return std::mt19937_64(stream_seed(base, tag, k));
}

}  // namespace mimic
