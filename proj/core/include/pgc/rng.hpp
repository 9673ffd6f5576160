#pragma once
// rng.hpp — hand-rolled, platform-independent random streams. Standard
// library distributions are implementation-defined, so reproducible output
// across compilers needs explicit sampling code. Streams are keyed by
// (seed, stream id) so parallel trials stay bit-identical in any order.

#include <cstdint>

namespace pgc {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s = a ^ (0xD1B54A32D192ED03ULL * (stream_id + 1));
    splitmix64(s);
    return Rng(s);
  }

  std::uint64_t next_u64() { return splitmix64(state_); }

  // uniform in (0,1), 53-bit mantissa
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double gaussian();                     // Box-Muller, one spare cached
  double rademacher();                   // +-1
  double uniform_ternary();              // {-1,0,1} scaled to unit variance
  double signed_weibull(double shape);   // sign * Weibull, unit variance
  bool bernoulli(double p);

 private:
  std::uint64_t state_;
  double spare_ = 0;
  bool has_spare_ = false;
};

}  // namespace pgc
