#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace ribbonzeta {

// Deterministic random stream. All floating draws are built from raw
// mt19937_64 output so sequences are reproducible across platforms;
// std::*_distribution is avoided on purpose.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  // Parallel stream i uses seed ^ i (documented derivation; see README).
  static Rng stream(std::uint64_t base_seed, std::uint64_t index) {
    return Rng(base_seed ^ index);
  }

  std::uint64_t bits() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(bits() >> 11) * 0x1.0p-53;
  }

  // Uniform in (0, 1]; safe as a log argument.
  double uniform_pos() { return 1.0 - uniform(); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t below(std::uint64_t n) {
    // Rejection keeps the draw unbiased.
    std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
    std::uint64_t x;
    do { x = bits(); } while (x >= limit);
    return x % n;
  }

  double exponential() { return -std::log(uniform_pos()); }

  double normal() {
    // Box-Muller, one value per call for determinism.
    double u = uniform_pos();
    double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925286766559 * v);
  }

  // Flat Dirichlet; with n entries this is uniform on the (n-1)-simplex.
  std::vector<double> dirichlet(std::size_t n) {
    std::vector<double> w(n);
    double total = 0.0;
    for (auto& x : w) { x = exponential(); total += x; }
    for (auto& x : w) x /= total;
    return w;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ribbonzeta
