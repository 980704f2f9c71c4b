#include "tightham/rng.hpp"

#include "tightham/error.hpp"

namespace tightham {

std::uint64_t Rng::below(std::uint64_t bound) {
  require(bound > 0, ErrorKind::invalid_argument, "Rng::below(0)");
  // Rejection sampling keeps the result unbiased and library-independent.
  std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

double Rng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t tag) {
  // splitmix64 finaliser over the combined value.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace tightham
