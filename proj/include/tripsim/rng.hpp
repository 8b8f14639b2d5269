#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace tripsim {

// Counter-based PRNG (Philox 4x32, 10 rounds). A generator is keyed by
// (seed, stream); the stream id is meant to be a trajectory index, so every
// trajectory draws from its own reproducible sequence no matter which worker
// thread runs it or in which order.
class Philox4x32 {
 public:
  Philox4x32(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_lo_(static_cast<std::uint32_t>(stream)),
        stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

  // One application of the keyed bijection; exposed for known-answer tests.
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key) noexcept {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
      }
      const std::uint64_t p0 = 0xD2511F53ull * ctr[0];
      const std::uint64_t p1 = 0xCD9E8D57ull * ctr[2];
      const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }

  // Uniform double in [0, 1), 53 random bits.
  double u01() noexcept {
    if (avail_ == 0) refill();
    --avail_;
    const std::uint64_t bits = buf_[avail_];
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

  // Standard normal pair, Marsaglia polar method.
  void normal_pair(double& z0, double& z1) noexcept {
    double u, v, s;
    do {
      u = 2.0 * u01() - 1.0;
      v = 2.0 * u01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    z0 = u * f;
    z1 = v * f;
  }

  // Complex Wiener increment with E[dW conj(dW)] = dt and E[dW^2] = 0.
  std::complex<double> wiener(double dt) noexcept {
    double z0, z1;
    normal_pair(z0, z1);
    const double h = std::sqrt(0.5 * dt);
    return {z0 * h, z1 * h};
  }

 private:
  void refill() noexcept {
    const auto out = block({static_cast<std::uint32_t>(block_index_),
                            static_cast<std::uint32_t>(block_index_ >> 32),
                            stream_lo_, stream_hi_},
                           key_);
    ++block_index_;
    buf_[0] = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
    buf_[1] = (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
    avail_ = 2;
  }

  std::array<std::uint32_t, 2> key_;
  std::uint32_t stream_lo_, stream_hi_;
  std::uint64_t block_index_ = 0;
  std::array<std::uint64_t, 2> buf_{};
  int avail_ = 0;
};

}  // namespace tripsim
