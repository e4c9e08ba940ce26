#include "sumopt/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sumopt {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t counter) {
  state_ = mix64(mix64(seed ^ 0x2545f4914f6cdd1dull) + counter);
}

std::uint64_t CounterRng::next_u64() {
  state_ += 0x9e3779b97f4a7c15ull;
  return mix64(state_);
}

double CounterRng::next_uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

double CounterRng::next_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = double((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
  double u2 = double(next_u64() >> 11) * 0x1.0p-53;        // [0, 1)
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

std::uint64_t CounterRng::next_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("next_below: n must be positive");
  return std::uint64_t((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
}

}  // namespace sumopt
