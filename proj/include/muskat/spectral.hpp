#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <utility>

#include "muskat/field.hpp"

namespace muskat {

// Fourier coefficients c_k of f (DFT scaled by 1/n^2), half-spectrum layout.
inline Spectrum to_spectral(const InterfaceField& f) {
  require_finite(f, "to_spectral");
  const int n = f.grid.n;
  Spectrum out(FftEngine::spectral_size(n));
  FftEngine::instance().forward(n, f.values.data(), out.data());
  const double scale = 1.0 / (static_cast<double>(n) * n);
  for (auto& c : out) c *= scale;
  return out;
}

inline InterfaceField from_spectral(const GridSpec& g, const Spectrum& spec) {
  InterfaceField f(g);
  FftEngine::instance().inverse(g.n, spec.data(), f.values.data());
  return f;
}

// Populates (and returns) the cached coefficients.
inline const Spectrum& ensure_spectral(InterfaceField& f) {
  if (!f.spectral) f.spectral = to_spectral(f);
  return *f.spectral;
}

inline Spectrum spectral_of(const InterfaceField& f) {
  if (f.spectral) return *f.spectral;
  return to_spectral(f);
}

// Applies a real multiplier m(kx, ky, |xi|) entry-wise; kx, ky are signed
// integer frequencies.
template <typename M>
Spectrum apply_multiplier(const GridSpec& g, const Spectrum& spec, M&& m) {
  WaveVectorTable wv{g};
  Spectrum out(spec.size());
  const int cols = wv.cols();
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < cols; ++j) {
      const size_t idx = static_cast<size_t>(i) * cols + j;
      out[idx] = spec[idx] * m(wv.kx(i), wv.ky(j), wv.xi_abs(i, j));
    }
  return out;
}

// (-Laplace)^s as the spectral multiplier |xi|^{2s}; the zero mode maps to 0
// (homogeneous semi-norm convention: the operator acts modulo constants).
// For s < 0 the inverse is undefined on constants, so a nonzero-mean input
// is rejected.
inline InterfaceField fractional_laplacian(const InterfaceField& f, double s) {
  if (s < -1.0 || s > 3.0)
    throw std::invalid_argument("fractional_laplacian: order s outside [-1,3]");
  const Spectrum spec = spectral_of(f);
  if (s < 0.0) {
    const double m = std::abs(spec[0].real());
    if (m > 1e-10 * (1.0 + linf_norm(f)))
      throw std::invalid_argument(
          "fractional_laplacian: s < 0 requires zero-mean input");
  }
  Spectrum out = apply_multiplier(f.grid, spec, [s](int, int, double xi) {
    return xi == 0.0 ? 0.0 : std::pow(xi, 2.0 * s);
  });
  return from_spectral(f.grid, out);
}

namespace detail {
// d/dx symbol i*xi is odd, so the Nyquist line (where +n/2 and -n/2 alias)
// has no consistent real derivative; its multiplier is set to zero.
inline Spectrum derivative_spectrum(const GridSpec& g, const Spectrum& spec,
                                    int axis) {
  WaveVectorTable wv{g};
  Spectrum out(spec.size());
  const int cols = wv.cols();
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < cols; ++j) {
      const size_t idx = static_cast<size_t>(i) * cols + j;
      double xi;
      bool nyq;
      if (axis == 0) {
        xi = wv.xi_x(i);
        nyq = wv.nyquist_x(i);
      } else {
        xi = wv.xi_y(j);
        nyq = wv.nyquist_y(j);
      }
      out[idx] = nyq ? 0.0 : spec[idx] * std::complex<double>(0.0, xi);
    }
  return out;
}
}  // namespace detail

inline std::pair<InterfaceField, InterfaceField> gradient(const InterfaceField& f) {
  const Spectrum spec = spectral_of(f);
  return {from_spectral(f.grid, detail::derivative_spectrum(f.grid, spec, 0)),
          from_spectral(f.grid, detail::derivative_spectrum(f.grid, spec, 1))};
}

inline InterfaceField laplacian(const InterfaceField& f) {
  const Spectrum spec = spectral_of(f);
  Spectrum out = apply_multiplier(f.grid, spec,
                                  [](int, int, double xi) { return -xi * xi; });
  return from_spectral(f.grid, out);
}

// Phase tables for evaluating f(x - shift) spectrally. The 2D phase
// factorizes per axis; Nyquist components use the cosine of the phase so
// the result stays real.
inline void shift_phase_inplace(const GridSpec& g, Spectrum& spec, double sx,
                                double sy) {
  WaveVectorTable wv{g};
  const int cols = wv.cols();
  thread_local std::vector<std::complex<double>> px, py;
  px.resize(g.n);
  py.resize(cols);
  for (int i = 0; i < g.n; ++i) {
    const double a = wv.xi_x(i) * sx;
    px[i] = wv.nyquist_x(i) ? std::complex<double>(std::cos(a), 0.0)
                            : std::complex<double>(std::cos(a), -std::sin(a));
  }
  for (int j = 0; j < cols; ++j) {
    const double a = wv.xi_y(j) * sy;
    py[j] = wv.nyquist_y(j) ? std::complex<double>(std::cos(a), 0.0)
                            : std::complex<double>(std::cos(a), -std::sin(a));
  }
  for (int i = 0; i < g.n; ++i) {
    const std::complex<double> pxi = px[i];
    std::complex<double>* row = spec.data() + static_cast<size_t>(i) * cols;
    for (int j = 0; j < cols; ++j) row[j] *= pxi * py[j];
  }
}

enum class ShiftMethod { spectral, bilinear };

// f(x - shift) sampled at every grid node; shift is any real 2-vector,
// interpreted modulo the period.
inline InterfaceField sample_shifted(const InterfaceField& f, double sx,
                                     double sy,
                                     ShiftMethod method = ShiftMethod::spectral) {
  if (!std::isfinite(sx) || !std::isfinite(sy))
    throw std::invalid_argument("sample_shifted: non-finite shift");
  const GridSpec& g = f.grid;
  if (method == ShiftMethod::spectral) {
    Spectrum spec = spectral_of(f);
    shift_phase_inplace(g, spec, sx, sy);
    InterfaceField out(g);
    FftEngine::instance().inverse_destructive(g.n, spec.data(),
                                              out.values.data());
    return out;
  }
  // bilinear with periodic wrap
  InterfaceField out(g);
  const int n = g.n;
  const double h = g.dx();
  const double ux = sx / h, uy = sy / h;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double pi_ = i - ux, pj = j - uy;
      double fi = std::floor(pi_), fj = std::floor(pj);
      const double ai = pi_ - fi, aj = pj - fj;
      const int i0 = ((static_cast<int>(fi)) % n + n) % n;
      const int j0 = ((static_cast<int>(fj)) % n + n) % n;
      const int i1 = (i0 + 1) % n, j1 = (j0 + 1) % n;
      out.at(i, j) = (1 - ai) * (1 - aj) * f.at(i0, j0) +
                     ai * (1 - aj) * f.at(i1, j0) +
                     (1 - ai) * aj * f.at(i0, j1) + ai * aj * f.at(i1, j1);
    }
  return out;
}

}  // namespace muskat
