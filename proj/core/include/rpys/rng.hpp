#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace rpys {

/// Seeded generator used for every random draw in the project.
///
/// Engine: std::mt19937_64 seeded with the 64-bit seed, whose output sequence
/// is fixed by the C++ standard. Bounded integers use rejection sampling and
/// reals take the top 53 bits, so streams do not depend on the standard
/// library's distribution implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  // Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

  // Uniform in [0, 1).
  double unit();

  // Number of failures before the first success, success probability p in (0, 1].
  std::uint64_t geometric(double p);

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace rpys
