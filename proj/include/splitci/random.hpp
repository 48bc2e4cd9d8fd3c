#pragma once

#include <cstdint>

namespace splitci {

// Deterministic random streams used for test-input generation and the demo.
//
// The exact algorithm is fixed so that fixtures can be reproduced by other
// implementations:
//
//   SplitMix64:  state += 0x9E3779B97F4A7C15
//                z = state
//                z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//                z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//                return z ^ (z >> 31)
//
//   uniform01:   (next() >> 11) * 2^-53, a double in [0, 1)
//
//   normal:      Box-Muller on two uniforms drawn in order (a, b):
//                  u1 = 1 - a   (in (0, 1])
//                  u2 = b
//                  r  = sqrt(-2 ln u1)
//                  returns r cos(2 pi u2) first, then r sin(2 pi u2) on the
//                  following call.
//
//   derive_seed: SplitMix64 seeded with base ^ (stream * 0xD1B54A32D192ED03),
//                first output.

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double uniform01() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) noexcept : uniform_(seed) {}

  double next() noexcept;

 private:
  SplitMix64 uniform_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Independent seed for sub-stream `stream` of a run seeded with `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept;

}  // namespace splitci
