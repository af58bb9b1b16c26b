#pragma once

#include <cstdint>
#include <random>

namespace wgm {

// mt19937_64 output is fixed by the standard; the std:: distributions are
// not, so draws are derived from raw engine output to keep every seeded
// result identical across standard libraries.
using Engine = std::mt19937_64;

// Uniform integer in [0, bound), bound >= 1. Lemire's multiply-shift with
// rejection of the biased low region.
inline std::uint64_t uniform_below(Engine& engine, std::uint64_t bound) {
  unsigned __int128 product = static_cast<unsigned __int128>(engine()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<unsigned __int128>(engine()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

// Uniform real in [0, 1) with 53 random bits.
inline double uniform_unit(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace wgm
