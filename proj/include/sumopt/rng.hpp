#pragma once

#include <cstdint>

namespace sumopt {

// Counter-addressed PRNG. The stream for (seed, counter) is a pure function
// of both, so replaying iteration k of a run always sees identical
// randomness, independent of call order. Generation is splitmix64 over a
// well-mixed per-stream state; normals come from Box-Muller.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t counter);

  std::uint64_t next_u64();
  double next_uniform();                      // [0, 1)
  double next_normal();                       // N(0, 1)
  std::uint64_t next_below(std::uint64_t n);  // uniform in [0, n), n >= 1

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// splitmix64 finalizer; useful for deriving sub-seeds.
std::uint64_t mix64(std::uint64_t x);

}  // namespace sumopt
