#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "muskat/fft.hpp"

namespace muskat {

// Square periodic grid [0,L)^2 with n samples per axis (n a power of two).
struct GridSpec {
  int n = 0;
  double L = 2.0 * std::numbers::pi;

  double dx() const { return L / n; }
  size_t size() const { return static_cast<size_t>(n) * n; }
  size_t idx(int i, int j) const {
    return static_cast<size_t>(i) * n + j;
  }
  double x1(int i) const { return L * i / n; }
  double x2(int j) const { return L * j / n; }

  bool operator==(const GridSpec&) const = default;
};

inline void validate_grid(const GridSpec& g) {
  if (g.n < 4 || (g.n & (g.n - 1)) != 0)
    throw std::invalid_argument("grid: n must be a power of two >= 4");
  if (!(g.L > 0.0) || !std::isfinite(g.L))
    throw std::invalid_argument("grid: period L must be positive");
}

// Signed integer frequencies for the r2c half-spectrum layout
// (rows kx in [-n/2, n/2], columns ky in [0, n/2]) and physical
// wavenumbers xi = 2*pi*k/L. Multiplier tables built from |xi| are even
// in xi by construction, so the Nyquist row needs no special casing for
// even symbols.
struct WaveVectorTable {
  int n;
  double L;

  explicit WaveVectorTable(const GridSpec& g) : n(g.n), L(g.L) {}

  int cols() const { return n / 2 + 1; }
  int kx(int i) const { return i <= n / 2 ? i : i - n; }
  int ky(int j) const { return j; }
  bool nyquist_x(int i) const { return i == n / 2; }
  bool nyquist_y(int j) const { return j == n / 2; }
  double xi_x(int i) const { return 2.0 * std::numbers::pi * kx(i) / L; }
  double xi_y(int j) const { return 2.0 * std::numbers::pi * ky(j) / L; }
  double xi_abs(int i, int j) const { return std::hypot(xi_x(i), xi_y(j)); }
  // Parseval weight: interior columns stand for their conjugate mirror too.
  double parseval_weight(int j) const {
    return (j == 0 || j == n / 2) ? 1.0 : 2.0;
  }
};

using Spectrum = std::vector<std::complex<double>>;

// Graph samples f(x) on the periodic grid, plus an optional cached set of
// Fourier coefficients (normalized so f = sum c_k e^{i xi_k . x}).
struct InterfaceField {
  GridSpec grid;
  std::vector<double> values;
  std::optional<Spectrum> spectral;

  InterfaceField() = default;
  InterfaceField(GridSpec g, double fill = 0.0)
      : grid(g), values(g.size(), fill) {
    validate_grid(g);
  }

  double& at(int i, int j) { return values[grid.idx(i, j)]; }
  double at(int i, int j) const { return values[grid.idx(i, j)]; }
  void drop_cache() { spectral.reset(); }
};

inline void require_finite(const InterfaceField& f, const char* who) {
  for (int i = 0; i < f.grid.n; ++i)
    for (int j = 0; j < f.grid.n; ++j)
      if (!std::isfinite(f.at(i, j)))
        throw std::runtime_error(std::string(who) + ": non-finite value at node (" +
                                 std::to_string(i) + "," + std::to_string(j) + ")");
}

inline double mean(const InterfaceField& f) {
  double acc = 0.0;
  for (double v : f.values) acc += v;
  return acc / static_cast<double>(f.values.size());
}

inline double linf_norm(const InterfaceField& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

// L^2 over [0,L)^2 (trapezoid == rectangle rule on the periodic grid)
inline double l2_norm(const InterfaceField& f) {
  double acc = 0.0;
  for (double v : f.values) acc += v * v;
  return std::sqrt(acc * f.grid.dx() * f.grid.dx());
}

inline double l2_distance(const InterfaceField& a, const InterfaceField& b) {
  if (a.grid != b.grid) throw std::invalid_argument("l2_distance: grid mismatch");
  double acc = 0.0;
  for (size_t m = 0; m < a.values.size(); ++m) {
    const double d = a.values[m] - b.values[m];
    acc += d * d;
  }
  return std::sqrt(acc * a.grid.dx() * a.grid.dx());
}

inline double linf_distance(const InterfaceField& a, const InterfaceField& b) {
  if (a.grid != b.grid) throw std::invalid_argument("linf_distance: grid mismatch");
  double m = 0.0;
  for (size_t k = 0; k < a.values.size(); ++k)
    m = std::max(m, std::abs(a.values[k] - b.values[k]));
  return m;
}

}  // namespace muskat
