#pragma once

#include <cstdint>

namespace probo {

// Independent random streams derived from one master seed. Each component of
// a run draws from its own stream so swapping one component does not shift
// the randomness seen by the others.
enum class Stream : std::uint64_t {
  InitialDesign = 1,
  Infill = 2,
  Hyperparameters = 3,
  Perturbation = 4,
  Repetition = 5,
};

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, Stream stream, std::uint64_t index = 0) {
  return mix64(mix64(mix64(master) ^ static_cast<std::uint64_t>(stream)) ^ index);
}

}  // namespace probo
