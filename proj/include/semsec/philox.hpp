#pragma once

// Counter-based Philox4x32-10 generator. A draw is a pure function of
// (key, counter), so parallel streams are reproducible regardless of how work
// is scheduled.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace semsec {

class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit constexpr Philox4x32(std::uint64_t seed) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}
  explicit constexpr Philox4x32(Key key) noexcept : key_(key) {}

  constexpr Counter operator()(Counter ctr) const noexcept {
    Key k = key_;
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        k[0] += kWeyl0;
        k[1] += kWeyl1;
      }
      ctr = single_round(ctr, k);
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static constexpr Counter single_round(const Counter& c, const Key& k) noexcept {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
    return {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0], static_cast<std::uint32_t>(p1),
            static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1], static_cast<std::uint32_t>(p0)};
  }

  Key key_;
};

/// Uniform double in (0, 1] from 64 random bits (53-bit resolution).
constexpr double uniform_open0(std::uint32_t hi, std::uint32_t lo) noexcept {
  const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

/// Two independent standard normals from one Philox block (Box-Muller).
inline std::pair<double, double> normal_pair(const Philox4x32::Counter& block) noexcept {
  const double u1 = uniform_open0(block[0], block[1]);
  const double u2 = uniform_open0(block[2], block[3]);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

/// Sequential view over a counter stream identified by (stream_hi, stream_lo).
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint32_t stream_hi, std::uint32_t stream_lo) noexcept
      : gen_(seed), hi_(stream_hi), lo_(stream_lo) {}

  double uniform() noexcept {
    refill_if_needed();
    const double u = uniform_open0(block_[pos_], block_[pos_ + 1]);
    pos_ += 2;
    return u;
  }

  std::pair<double, double> normal_pair() noexcept {
    const auto block = gen_({static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32), lo_, hi_});
    ++counter_;
    return semsec::normal_pair(block);
  }

 private:
  void refill_if_needed() noexcept {
    if (pos_ < 4) return;
    block_ = gen_({static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32), lo_, hi_});
    ++counter_;
    pos_ = 0;
  }

  Philox4x32 gen_;
  std::uint32_t hi_;
  std::uint32_t lo_;
  std::uint64_t counter_ = 0;
  Philox4x32::Counter block_{};
  int pos_ = 4;
};

}  // namespace semsec
