#ifndef SMALLWORLD_RNG_HPP
#define SMALLWORLD_RNG_HPP

#include <cstdint>
#include <random>

namespace smallworld {

/// splitmix64 finalizer; used to derive independent child seeds.
std::uint64_t mix64(std::uint64_t x);

/// Seedable 64-bit generator with platform-independent derived draws.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The std:: distributions are not (their algorithms differ between
/// standard libraries), so uniform integers and reals are derived here.
/// Child streams are keyed by (seed, stream id) through mix64, so a stream's
/// content never depends on how many other streams were used before it.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}
  static Rng stream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound). bound must be > 0.
  std::uint64_t uniform_below(std::uint64_t bound);
  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform01() < p; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return next(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace smallworld

#endif  // SMALLWORLD_RNG_HPP
