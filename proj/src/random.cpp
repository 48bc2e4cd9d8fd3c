#include "splitci/random.hpp"

#include <cmath>
#include <numbers>

namespace splitci {

double NormalStream::next() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform_.uniform01();
  const double u2 = uniform_.uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept {
  SplitMix64 mix(base ^ (stream * 0xD1B54A32D192ED03ULL));
  return mix.next();
}

}  // namespace splitci
