#pragma once

#include <cstdint>

namespace fpl {

// Stateless counter-based uniform stream. Every output is a pure function of
// (seed, stream, counter), so replicates can be computed in any order and on
// any number of workers with bit-identical results.
//
// Outputs are SplitMix64 values: finalizer applied to key + counter * gamma.
// Changing this algorithm is a breaking change for every pinned seed; the
// identifier below is written into simulation sidecar files.
class CounterRng {
 public:
  static constexpr const char* kVersion = "splitmix64-fy/1";

  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t bits(std::uint64_t counter) const;

  // Uniform on the open interval (0, 1).
  double uniform01(std::uint64_t counter) const {
    return ((bits(counter) >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform on {0, ..., bound-1} via 128-bit multiply-shift.
  std::uint64_t bounded(std::uint64_t counter, std::uint64_t bound) const {
    using u128 = unsigned __int128;
    return static_cast<std::uint64_t>((u128(bits(counter)) * u128(bound)) >> 64);
  }

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
};

// Tagged sub-seed derivation: one master seed reproduces a whole run.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag);

// Stream tags used by the CLI orchestration.
inline constexpr std::uint64_t kSeedTagPopulation = 1;
inline constexpr std::uint64_t kSeedTagSigma = 2;
inline constexpr std::uint64_t kSeedTagSimulation = 3;

}  // namespace fpl
