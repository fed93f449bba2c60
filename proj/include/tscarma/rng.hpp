#pragma once

// Counter-based Philox4x32-10 generator. A stream is fully determined by
// (seed, stream_index); no state is shared between streams, so independent
// replications can run on any thread in any order.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace tscarma {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// One Philox4x32 block with 10 rounds.
inline PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += 0x9E3779B9u;
      key[1] += 0xBB67AE85u;
    }
    const std::uint64_t p0 = static_cast<std::uint64_t>(0xD2511F53u) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(0xCD9E8D57u) * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
  }
  return ctr;
}

class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_index)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream_index) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (pos_ >= 4) refill();
    const std::uint64_t lo = block_[pos_++];
    const std::uint64_t hi = block_[pos_++];
    return (hi << 32) | lo;
  }

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() {
    const std::uint64_t bits = (*this)() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard exponential variate.
  double exponential() { return -std::log(uniform()); }

  std::uint64_t seed() const {
    return (static_cast<std::uint64_t>(key_[1]) << 32) | key_[0];
  }
  std::uint64_t stream_index() const { return stream_; }

 private:
  void refill() {
    block_ = philox4x32_10({static_cast<std::uint32_t>(counter_),
                            static_cast<std::uint32_t>(counter_ >> 32),
                            static_cast<std::uint32_t>(stream_),
                            static_cast<std::uint32_t>(stream_ >> 32)},
                           key_);
    pos_ = 0;
    ++counter_;
  }

  PhiloxKey key_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  PhiloxCounter block_{};
  int pos_ = 4;
};

}  // namespace tscarma
