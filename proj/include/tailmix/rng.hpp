#ifndef TAILMIX_RNG_HPP
#define TAILMIX_RNG_HPP

#include <cstdint>

namespace tailmix {

// Counter-based generator: state is (key, counter) and every draw is a pure
// hash of them, so streams derived from (seed, stream) are reproducible no
// matter how work is scheduled across threads.  The mixer is splitmix64.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1)))) {}

  std::uint64_t next_u64() {
    return mix(key_ + 0x9E3779B97F4A7C15ULL * ++counter_);
  }

  // Uniform on the open interval (0,1); never returns 0 or 1.
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace tailmix

#endif
