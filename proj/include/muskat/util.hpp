#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace muskat {

// Pairwise (tree) reduction: summation order depends only on the element
// count, so results are reproducible regardless of how the terms were
// produced.
inline double pairwise_sum(const double* v, size_t count) {
  if (count == 0) return 0.0;
  if (count == 1) return v[0];
  if (count <= 8) {
    double acc = v[0];
    for (size_t i = 1; i < count; ++i) acc += v[i];
    return acc;
  }
  const size_t half = count / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, count - half);
}

inline double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(v.data(), v.size());
}

// Sums a list of equally sized arrays (e.g. per-ring quadrature partials)
// pairwise into `out`.
inline void pairwise_sum_arrays(std::vector<std::vector<double>>& parts,
                                std::vector<double>& out) {
  size_t m = parts.size();
  while (m > 1) {
    const size_t half = (m + 1) / 2;
    for (size_t i = 0; i + half < m; ++i) {
      auto& a = parts[i];
      const auto& b = parts[i + half];
      for (size_t k = 0; k < a.size(); ++k) a[k] += b[k];
    }
    m = half;
  }
  out = parts.empty() ? std::vector<double>(out.size(), 0.0) : parts[0];
}

// Deterministic RNG with explicit output functions (no reliance on
// std::distribution implementations).
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  uint64_t next_u64() {
    // splitmix64
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  double gaussian() {
    // Box-Muller; draws until the radius is usable
    double u1 = uniform01();
    while (u1 <= 1e-300) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

private:
  uint64_t state_;
};

// 17 significant digits round-trip doubles exactly.
inline std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace muskat
