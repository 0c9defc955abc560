#include "lindley/numerics.hpp"

#include <cmath>

namespace lindley::numerics {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Increment derivation as in SplittableRandom: odd, and with enough bit
// transitions to avoid weak Weyl sequences.
constexpr std::uint64_t mix_increment(std::uint64_t z) {
  z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
  z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
  z = (z ^ (z >> 33)) | 1ULL;
  const int transitions = __builtin_popcountll(z ^ (z >> 1));
  return transitions < 24 ? z ^ 0xaaaaaaaaaaaaaaaaULL : z;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed),
      stream_id_(stream_id),
      key_(mix64(seed + kGolden) ^ mix64(mix64(stream_id) + 2 * kGolden)),
      increment_(mix_increment(mix64(seed ^ 0x6a09e667f3bcc909ULL) + mix64(stream_id + kGolden))) {}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t out = mix64(key_ + counter_ * increment_);
  ++counter_;
  return out;
}

double RngStream::uniform() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double normal_draw(RngStream& stream) {
  const double u1 = stream.uniform();
  const double u2 = stream.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

}  // namespace lindley::numerics
