#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace rcjsu {

// Seeded random source used throughout the solver. mt19937_64 output is fully
// specified by the standard, and the scalings below avoid the implementation-
// defined behaviour of <random> distributions, so streams are reproducible
// across compilers and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // uniform in [0, 1)
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // uniform in [0, 1]
  double uniform01_closed() {
    return static_cast<double>(gen_() >> 11) /
           static_cast<double>((std::uint64_t{1} << 53) - 1);
  }

  // uniform integer in [0, n); n must be positive
  std::uint64_t below(std::uint64_t n) { return gen_() % n; }

  int index(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

  // Fisher-Yates
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

// FNV-1a, used to derive per-cell seeds from experiment coordinates.
inline std::uint64_t fnv1a(const std::string& data, std::uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace rcjsu
