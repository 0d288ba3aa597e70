#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace threehalves {

// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
// easy as 1, 2, 3", SC 2011). A pure function of (counter, key).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter counter, Key key) noexcept;
};

// Mixes a master seed with a salt (repetition index, scheme tag, ...) into a new
// 64-bit seed using the SplitMix64 finalizer.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) noexcept;

// Inverse of the standard normal CDF (Wichura, AS 241 PPND16), p in (0, 1).
double inverse_normal_cdf(double p) noexcept;

// Random stream owned by a single path. The stream is a stateless function of
// (seed, path index, draw counter): draw k of path j is the same no matter how
// many other paths exist or which worker simulates them. Every draw consumes
// exactly one 64-bit word.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t path_index) noexcept;

  std::uint64_t next_u64() noexcept;

  // Uniform on the open interval (0, 1), 52-bit resolution.
  double uniform() noexcept;

  // Standard normal by inversion of uniform().
  double normal() noexcept { return inverse_normal_cdf(uniform()); }

  void fill_normal(std::span<double> out) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t path_index() const noexcept { return path_; }
  // Number of 64-bit words consumed so far.
  std::uint64_t draws() const noexcept { return draws_; }

private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t path_;
  std::uint64_t block_ = 0;
  std::uint64_t draws_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
};

}  // namespace threehalves
