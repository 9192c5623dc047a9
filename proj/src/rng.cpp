#include "fpl/rng.hpp"

namespace fpl {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix(mix(seed + kGamma) ^ mix(stream * kGamma + 1))) {}

std::uint64_t CounterRng::bits(std::uint64_t counter) const {
  return mix(key_ + counter * kGamma);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) {
  return mix(mix(master + kGamma) ^ mix(tag * kGamma + 0x6a09e667f3bcc909ULL));
}

}  // namespace fpl
