#pragma once

// Deterministic sampling on top of mt19937_64. Only the raw engine output
// is used (reduced by %), so sequences are identical on every platform;
// the std distributions are implementation-defined and avoided here.

#include "eeinv/rational.hpp"

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace eeinv {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform-ish integer in [lo, hi].
  Integer between(Integer lo, Integer hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<Integer>(engine_() % span);
  }
  bool chance(int num, int den) { return between(0, den - 1) < num; }
  /// num/den with num in [0, max_num], den in [1, max_den].
  Rational small_rational(Integer max_num, Integer max_den) {
    const Integer num = between(0, max_num);
    return Rational(num, between(1, max_den));
  }
  Rational positive_rational(Integer max_num, Integer max_den) {
    const Integer num = between(1, max_num);
    return Rational(num, between(1, max_den));
  }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(between(0, static_cast<Integer>(i) - 1))]);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace eeinv
