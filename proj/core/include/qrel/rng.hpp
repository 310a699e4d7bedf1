#pragma once

#include <cstdint>
#include <vector>

namespace qrel {

/// SplitMix64: tiny deterministic generator.  Used instead of <random>
/// engines so that seeded runs produce identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform value in [0, n).  n must be positive.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  int index(std::size_t n) { return static_cast<int>(below(n)); }

  bool flip() { return (next() & 1) != 0; }

  /// True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }

  /// Independent stream for a sub-task; mixing is itself a SplitMix step.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    Rng r(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    return r.next();
  }

 private:
  std::uint64_t state_;
};

}  // namespace qrel
