#pragma once

#include <cstdint>
#include <random>

namespace semitherm {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream per (root seed, sample index); results do not depend
// on how samples are spread over threads.
inline std::mt19937_64 stream_for(std::uint64_t root, std::uint64_t index) {
  return std::mt19937_64(splitmix64(root ^ splitmix64(index)));
}

}  // namespace semitherm
