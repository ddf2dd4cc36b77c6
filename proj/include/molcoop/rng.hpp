#pragma once

#include <array>
#include <cstdint>

namespace molcoop {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3", SC'11). Maps a 128-bit counter and 64-bit key to
/// 128 random bits.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Random stream dedicated to one Monte Carlo trial.
///
/// Determinism contract: the values drawn by trial k depend only on
/// (seed, k). The seed is the Philox key; the counter is
/// (k low, k high, block index, stream tag). Trials may therefore be run in
/// any order on any number of threads without changing a single draw.
class TrialStream {
 public:
  TrialStream(std::uint64_t seed, std::uint64_t trial, std::uint32_t stream_tag = 0);

  std::uint32_t next_u32();
  /// Uniform on (0, 1) with 53 random bits; never returns 0 or 1.
  double uniform();
  /// Standard normal via the Box-Muller transform; pairs are cached.
  double gaussian();
  /// 1 with probability p.
  int bernoulli(double p);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
  double spare_gaussian_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace molcoop
