#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace uts {

// mt19937_64 with hand-rolled value mapping. std::uniform_*_distribution is
// implementation-defined, which would break bitwise reproducibility of seeded
// runs; the raw engine sequence is pinned by the standard.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next_u64() { return eng_(); }

  // [0, 1) with 53 bits.
  double next_double() {
    return static_cast<double>(eng_() >> 11) * (1.0 / 9007199254740992.0);
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // [0, n) without modulo bias.
  uint64_t next_below(uint64_t n) {
    if (n == 0) return 0;
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % n;
  }

  long uniform_int(long lo, long hi) {  // inclusive range
    return lo + static_cast<long>(next_below(static_cast<uint64_t>(hi - lo + 1)));
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  template <class T>
  const T& choice(const std::vector<T>& v) {
    return v[static_cast<size_t>(next_below(v.size()))];
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace uts
