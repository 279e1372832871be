#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "muskat/norms.hpp"
#include "muskat/spectral.hpp"
#include "muskat/util.hpp"

namespace muskat {

// Deterministic initial-data factory. Parameters are keyword-style; every
// profile validates its own set and rejects unknown keys.
//
//   zero
//   single_mode        amplitude, kx, ky          A cos(kx x1 + ky x2)
//   gaussian_bump      amplitude, width, cx, cy   periodized Gaussian
//   steep_ridge        k_target, width, amplitude_scale
//                      x2-invariant smooth ramp whose max slope is
//                      k_target * amplitude_scale; H^2 falls as width grows
//   random_bandlimited kmax, decay, target_slope  seeded random field
using ProfileParams = std::map<std::string, double>;

namespace detail {

inline double take(ProfileParams& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  const double v = it->second;
  p.erase(it);
  return v;
}

inline void reject_leftovers(const ProfileParams& p, const std::string& name) {
  if (!p.empty())
    throw std::invalid_argument("builtin_profile(" + name +
                                "): unknown parameter '" + p.begin()->first + "'");
}

}  // namespace detail

inline InterfaceField builtin_profile(const std::string& name,
                                      ProfileParams params, const GridSpec& g,
                                      uint64_t seed = 7) {
  validate_grid(g);
  InterfaceField f(g);
  if (name == "zero") {
    detail::reject_leftovers(params, name);
    return f;
  }
  if (name == "single_mode") {
    const double a = detail::take(params, "amplitude", 1e-3);
    const int kx = static_cast<int>(detail::take(params, "kx", 1.0));
    const int ky = static_cast<int>(detail::take(params, "ky", 0.0));
    detail::reject_leftovers(params, name);
    if (std::abs(kx) > g.n / 3 || std::abs(ky) > g.n / 3)
      throw std::invalid_argument("single_mode: wavenumber beyond n/3");
    if (kx == 0 && ky == 0)
      throw std::invalid_argument("single_mode: zero wavevector");
    const double w = 2.0 * std::numbers::pi / g.L;
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        f.at(i, j) = a * std::cos(w * (kx * g.x1(i) + ky * g.x2(j)));
    return f;
  }
  if (name == "gaussian_bump") {
    const double a = detail::take(params, "amplitude", 1.0);
    const double w = detail::take(params, "width", 0.5);
    const double cx = detail::take(params, "cx", g.L / 2.0);
    const double cy = detail::take(params, "cy", g.L / 2.0);
    detail::reject_leftovers(params, name);
    if (!(w > 0.0) || w > g.L / 4.0)
      throw std::invalid_argument("gaussian_bump: width must lie in (0, L/4]");
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) {
        double acc = 0.0;
        for (int px = -2; px <= 2; ++px)
          for (int py = -2; py <= 2; ++py) {
            const double dx = g.x1(i) - cx + px * g.L;
            const double dy = g.x2(j) - cy + py * g.L;
            acc += std::exp(-(dx * dx + dy * dy) / (2.0 * w * w));
          }
        f.at(i, j) = a * acc;
      }
    return f;
  }
  if (name == "steep_ridge") {
    const double kt = detail::take(params, "k_target", 5.0);
    const double w = detail::take(params, "width", 0.5);
    const double scale = detail::take(params, "amplitude_scale", 1.0);
    detail::reject_leftovers(params, name);
    if (!(kt > 0.0)) throw std::invalid_argument("steep_ridge: k_target must be positive");
    if (!(w > 0.02 * g.L) || w > g.L)
      throw std::invalid_argument("steep_ridge: width outside (0.02 L, L]");
    // slope profile: a von Mises bump minus its mean (so f is periodic);
    // integrate spectrally and normalize the measured max slope
    const double kappa = 1.0 / (w * w);
    for (int i = 0; i < g.n; ++i) {
      const double u = 2.0 * std::numbers::pi * (g.x1(i) - g.L / 2.0) / g.L;
      const double s = std::exp(kappa * (std::cos(u) - 1.0));
      for (int j = 0; j < g.n; ++j) f.at(i, j) = s;
    }
    Spectrum spec = to_spectral(f);
    WaveVectorTable wv{g};
    const int cols = wv.cols();
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < cols; ++j) {
        const size_t idx = static_cast<size_t>(i) * cols + j;
        if (wv.kx(i) == 0 || wv.nyquist_x(i) || j != 0)
          spec[idx] = 0.0;  // x2-invariant; drop mean and Nyquist
        else
          spec[idx] /= std::complex<double>(0.0, wv.xi_x(i));
      }
    f = from_spectral(g, spec);
    const double kraw = lipschitz_seminorm(f);
    if (!(kraw > 0.0)) throw std::runtime_error("steep_ridge: degenerate profile");
    const double factor = kt * scale / kraw;
    for (double& v : f.values) v *= factor;
    return f;
  }
  if (name == "random_bandlimited") {
    const int kmax = static_cast<int>(detail::take(params, "kmax", g.n / 8.0));
    const double decay = detail::take(params, "decay", 3.0);
    const double target = detail::take(params, "target_slope", 1.0);
    detail::reject_leftovers(params, name);
    if (kmax < 1 || kmax > g.n / 3)
      throw std::invalid_argument("random_bandlimited: kmax outside [1, n/3]");
    Rng rng(seed);
    const double w = 2.0 * std::numbers::pi / g.L;
    // half-plane of modes, summed as real cosines: kx > 0, or kx == 0 && ky > 0
    for (int kx = 0; kx <= kmax; ++kx)
      for (int ky = (kx == 0 ? 1 : -kmax); ky <= kmax; ++ky) {
        if (kx * kx + ky * ky > kmax * kmax) continue;
        const double amp =
            rng.gaussian() / std::pow(1.0 + std::hypot(kx, ky), decay);
        const double ph = rng.uniform(0.0, 2.0 * std::numbers::pi);
        for (int i = 0; i < g.n; ++i) {
          const double px = w * kx * g.x1(i);
          for (int j = 0; j < g.n; ++j)
            f.at(i, j) += amp * std::cos(px + w * ky * g.x2(j) + ph);
        }
      }
    const double kraw = lipschitz_seminorm(f);
    if (kraw > 0.0)
      for (double& v : f.values) v *= target / kraw;
    return f;
  }
  throw std::invalid_argument("builtin_profile: unknown profile '" + name + "'");
}

}  // namespace muskat
