#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace tightham {

// Seeded generator with portable derived operations. std::uniform_*_distribution
// output differs between standard libraries, so outputs that must be
// reproducible bit-for-bit go through these helpers instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  // Uniform in [0, 1) with 53 random bits.
  double uniform01();
  bool chance(double p) { return uniform01() < p; }

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

  // Child stream for sub-tasks; independent of how much of this stream was used.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t tag);

 private:
  std::mt19937_64 engine_;
};

}  // namespace tightham
