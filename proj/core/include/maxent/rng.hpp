#pragma once

#include <cstdint>
#include <random>

namespace maxent {

/// Seedable generator with a platform-independent output stream.
///
/// The engine is std::mt19937_64, whose output sequence the standard fixes
/// bit for bit. The standard distributions are not portable, so uniform and
/// normal variates are derived here directly from the raw 64-bit words:
/// uniform() takes the top 53 bits, normal() is Box-Muller on two uniforms.
/// Independent substreams are obtained by seeding through std::seed_seq with
/// (seed, stream) split into 32-bit words, which is also fully specified.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  /// Exp(1) variate.
  double exponential();

 private:
  std::mt19937_64 engine_;
};

}  // namespace maxent
