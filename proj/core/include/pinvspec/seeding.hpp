#pragma once

#include <cstdint>

namespace pinvspec {

// splitmix64 finalizer (Steele, Lea, Flood 2014). Used as the one mixing
// function for all replicate seed derivation, see README for the contract.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Per-replicate seed: mix(master, index). Stable across schedulers, so a
// replicate's stream does not depend on which worker runs it.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 0x9e3779b97f4a7c15ULL));
}

}  // namespace pinvspec
