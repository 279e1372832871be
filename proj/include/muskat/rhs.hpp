#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "muskat/finite_diff.hpp"
#include "muskat/quadrature.hpp"
#include "muskat/spectral.hpp"
#include "muskat/util.hpp"

namespace muskat {

// Dimensionless kernel factor fields for a fixed offset y.
struct KernelFactors {
  InterfaceField slope_back;  // Delta_y f
  InterfaceField slope_fwd;   // Delta-bar_y f
  InterfaceField sym_sum;     // S_y f = Delta + Delta-bar
  InterfaceField sym_diff;    // D_y f = Delta - Delta-bar
  InterfaceField k_back;      // K_y f = 1/(1+Delta^2)
  InterfaceField k_fwd;       // K-bar_y f
};

// Computes all six factor fields and enforces the pointwise bounds
// K, K-bar in (0,1], |K + K-bar| <= 2, |S D K K-bar| <= 2. A violation can
// only come from corrupted inputs, so it throws.
inline KernelFactors kernel_factors(const InterfaceField& f,
                                    const OffsetStencil& y) {
  require_offset(y, "kernel_factors");
  const GridSpec& g = f.grid;
  KernelFactors out{InterfaceField(g), InterfaceField(g), InterfaceField(g),
                    InterfaceField(g), InterfaceField(g), InterfaceField(g)};
  InterfaceField back = sample_shifted(f, y.y1, y.y2);
  InterfaceField fwd = sample_shifted(f, -y.y1, -y.y2);
  for (size_t k = 0; k < f.values.size(); ++k) {
    const double d = (f.values[k] - back.values[k]) / y.abs;
    const double db = (f.values[k] - fwd.values[k]) / y.abs;
    const double kk = 1.0 / (1.0 + d * d);
    const double kkb = 1.0 / (1.0 + db * db);
    out.slope_back.values[k] = d;
    out.slope_fwd.values[k] = db;
    out.sym_sum.values[k] = d + db;
    out.sym_diff.values[k] = d - db;
    out.k_back.values[k] = kk;
    out.k_fwd.values[k] = kkb;
    if (!(kk > 0.0 && kk <= 1.0) || !(kkb > 0.0 && kkb <= 1.0) ||
        std::abs(kk + kkb) > 2.0 + 1e-12 ||
        std::abs((d + db) * (d - db) * kk * kkb) > 2.0 + 1e-12)
      throw std::runtime_error("kernel_factors: pointwise bound violated at node " +
                               std::to_string(k));
  }
  return out;
}

enum class RhsForm {
  m1,           // (1 + Delta^2)^{-3/2} kernel, gradient form
  integrated,   // integrated-by-parts kernel with 1/|y|^3 weight
  m2_analytic,  // cos(arctan u) * closed-form k-integral
  m2_laguerre,  // cos(arctan u) * Gauss-Laguerre k-integral
};

struct RhsDiagnostics {
  // L2 size of the ring compensation of the integrated form (the radial
  // integration-by-parts flux on the two boundary circles)
  double ring_term_l2 = 0.0;
};

namespace detail {

inline void shifted_into(const GridSpec& g, const Spectrum& spec, double sx,
                         double sy, Spectrum& scratch, InterfaceField& out) {
  scratch = spec;
  shift_phase_inplace(g, scratch, sx, sy);
  FftEngine::instance().inverse_destructive(g.n, scratch.data(),
                                            out.values.data());
}

// i (xi . e) with the odd symbol zeroed on Nyquist lines, matching gradient().
inline Spectrum directional_derivative_spectrum(const GridSpec& g,
                                                const Spectrum& spec,
                                                double e1, double e2) {
  WaveVectorTable wv{g};
  Spectrum out(spec.size());
  const int cols = wv.cols();
  for (int i = 0; i < g.n; ++i) {
    const double xx = wv.nyquist_x(i) ? 0.0 : wv.xi_x(i);
    for (int j = 0; j < cols; ++j) {
      const double yy = wv.nyquist_y(j) ? 0.0 : wv.xi_y(j);
      out[static_cast<size_t>(i) * cols + j] =
          spec[static_cast<size_t>(i) * cols + j] *
          std::complex<double>(0.0, e1 * xx + e2 * yy);
    }
  }
  return out;
}

inline void throw_rhs_nonfinite(const GridSpec& g,
                                const std::vector<double>& ringsum, double rr,
                                double th) {
  for (size_t k = 0; k < ringsum.size(); ++k)
    if (!std::isfinite(ringsum[k])) {
      const int i = static_cast<int>(k) / g.n, j = static_cast<int>(k) % g.n;
      throw std::runtime_error(
          "rhs: non-finite quadrature value at x=(" + format17(g.x1(i)) + "," +
          format17(g.x2(j)) + "), |y|=" + format17(rr) + ", theta=" + format17(th));
    }
}

}  // namespace detail

// Principal-value polar quadrature of the contour-equation right-hand side.
//
// The y-integral runs over the annulus [r_min, L/2]. The kernel mass outside
// (inner disk and far field) is restored by the linearized completion
// multiplier (exact per mode for vanishing amplitude); without it the bare
// truncation biases the mode-1 decay rate by several percent. The integrand
// is summed over symmetric angle pairs, cancelling the odd kernel part
// analytically. Normalization: for rho = 2*pi a vanishing-amplitude mode
// decays at rate |xi| (half-Laplacian linearization).
//
// The integrated form keeps the flux terms that the radial integration by
// parts leaves on the two boundary circles; subtracting them restores
// agreement with the gradient form up to quadrature error. Their size is
// reported via `diag`.
inline InterfaceField rhs_quadrature(const InterfaceField& f, double rho,
                                     const PolarRule& quad, RhsForm form,
                                     int laguerre_nodes = 32,
                                     RhsDiagnostics* diag = nullptr,
                                     bool truncation_completion = true) {
  if (!(rho > 0.0))
    throw std::invalid_argument("rhs: rho must be positive (stable regime)");
  require_finite(f, "rhs");
  const GridSpec& g = f.grid;
  const size_t nn = g.size();
  const Spectrum spec = spectral_of(f);
  const double pi = std::numbers::pi;

  QuadratureRule lag;
  if (form == RhsForm::m2_laguerre) {
    if (laguerre_nodes < 4 || laguerre_nodes > 64)
      throw std::invalid_argument("rhs_m2: laguerre nodes must lie in [4,64]");
    lag = gauss_laguerre(laguerre_nodes);
  }

  auto weight = [&](double u) -> double {
    const double one_u2 = 1.0 + u * u;
    switch (form) {
      case RhsForm::m1:
      case RhsForm::integrated:
        return 1.0 / (one_u2 * std::sqrt(one_u2));
      case RhsForm::m2_analytic:
        // cos(arctan u) = 1/sqrt(1+u^2) and int_0^inf e^-k cos(ku) dk = 1/(1+u^2)
        return (1.0 / std::sqrt(one_u2)) * (1.0 / one_u2);
      case RhsForm::m2_laguerre: {
        double acc = 0.0;
        for (size_t i = 0; i < lag.nodes.size(); ++i)
          acc += lag.weights[i] * std::cos(lag.nodes[i] * u);
        return (1.0 / std::sqrt(one_u2)) * acc;
      }
    }
    return 0.0;
  };

  const bool gradient_form = (form != RhsForm::integrated);
  const int nr = quad.n_radial(), na = quad.n_angular();
  const int nloop = quad.symmetrize ? na / 2 : na;

  InterfaceField gx(g), gy(g);
  if (!gradient_form) {
    auto grads = gradient(f);
    gx = std::move(grads.first);
    gy = std::move(grads.second);
  }

  Spectrum scratch(spec.size());
  InterfaceField back(g), fwd(g), gback(g), gfwd(g), gzero(g);
  std::vector<double> pair_buf(nn);

  // per-ring partials, later combined by a fixed pairwise tree (deterministic
  // regardless of how a parallel ring loop would schedule)
  std::vector<std::vector<double>> ring(nr, std::vector<double>(nn, 0.0));

  for (int a = 0; a < nloop; ++a) {
    const double th = quad.angular_nodes[a];
    const double e1 = std::cos(th), e2 = std::sin(th);
    Spectrum gdir;
    if (gradient_form) {
      gdir = detail::directional_derivative_spectrum(g, spec, e1, e2);
      FftEngine::instance().inverse(g.n, gdir.data(), gzero.values.data());
    }
    for (int r = 0; r < nr; ++r) {
      const double rr = quad.radial_nodes[r];
      const double sx = rr * e1, sy = rr * e2;
      const double inv_r = 1.0 / rr, inv_r2 = inv_r * inv_r;
      detail::shifted_into(g, spec, sx, sy, scratch, back);
      if (quad.symmetrize) detail::shifted_into(g, spec, -sx, -sy, scratch, fwd);
      if (gradient_form) {
        detail::shifted_into(g, gdir, sx, sy, scratch, gback);
        if (quad.symmetrize)
          detail::shifted_into(g, gdir, -sx, -sy, scratch, gfwd);
      }
      if (gradient_form) {
        if (quad.symmetrize) {
          for (size_t k = 0; k < nn; ++k) {
            const double db = (f.values[k] - back.values[k]) * inv_r;
            const double dfw = (f.values[k] - fwd.values[k]) * inv_r;
            pair_buf[k] =
                ((gzero.values[k] - gback.values[k]) * weight(db) -
                 (gzero.values[k] - gfwd.values[k]) * weight(dfw)) * inv_r2;
          }
        } else {
          for (size_t k = 0; k < nn; ++k) {
            const double db = (f.values[k] - back.values[k]) * inv_r;
            pair_buf[k] =
                (gzero.values[k] - gback.values[k]) * weight(db) * inv_r2;
          }
        }
      } else {
        if (quad.symmetrize) {
          for (size_t k = 0; k < nn; ++k) {
            const double gk = e1 * gx.values[k] + e2 * gy.values[k];
            const double db = (f.values[k] - back.values[k]) * inv_r;
            const double dfw = (f.values[k] - fwd.values[k]) * inv_r;
            pair_buf[k] =
                ((gk - db) * weight(db) - (gk + dfw) * weight(dfw)) * inv_r2;
          }
        } else {
          for (size_t k = 0; k < nn; ++k) {
            const double gk = e1 * gx.values[k] + e2 * gy.values[k];
            const double db = (f.values[k] - back.values[k]) * inv_r;
            pair_buf[k] = (gk - db) * weight(db) * inv_r2;
          }
        }
      }
      const double w = quad.radial_weights[r] * rr * quad.angular_weight;
      double* dst = ring[r].data();
      for (size_t k = 0; k < nn; ++k) dst[k] += w * pair_buf[k];
    }
  }
  for (int r = 0; r < nr; ++r) {
    bool ok = true;
    for (double v : ring[r])
      if (!std::isfinite(v)) {
        ok = false;
        break;
      }
    if (!ok)
      detail::throw_rhs_nonfinite(g, ring[r], quad.radial_nodes[r],
                                  quad.angular_nodes[0]);
  }

  InterfaceField out(g);
  pairwise_sum_arrays(ring, out.values);
  const double prefactor = rho / (4.0 * pi * pi);
  for (double& v : out.values) v *= prefactor;

  if (form == RhsForm::integrated) {
    // boundary flux of the integration by parts: V(Delta_y f) integrated over
    // the circles |y| = r_max and |y| = r_min, V(u) = u / sqrt(1+u^2)
    std::vector<double> ring_term(nn, 0.0);
    for (int a = 0; a < na; ++a) {
      const double e1 = std::cos(quad.angular_nodes[a]);
      const double e2 = std::sin(quad.angular_nodes[a]);
      for (const double rr : {quad.r_max, quad.r_min}) {
        const double sign = (rr == quad.r_max) ? 1.0 : -1.0;
        detail::shifted_into(g, spec, rr * e1, rr * e2, scratch, back);
        for (size_t k = 0; k < nn; ++k) {
          const double u = (f.values[k] - back.values[k]) / rr;
          ring_term[k] +=
              sign * quad.angular_weight * u / std::sqrt(1.0 + u * u);
        }
      }
    }
    double l2 = 0.0;
    for (size_t k = 0; k < nn; ++k) {
      const double t = prefactor * ring_term[k];
      out.values[k] -= t;
      l2 += t * t;
    }
    if (diag) diag->ring_term_l2 = std::sqrt(l2 * g.dx() * g.dx());
  } else if (diag) {
    diag->ring_term_l2 = 0.0;
  }

  if (truncation_completion) {
    auto table = truncation_completion_table(g, quad.r_min, quad.r_max);
    Spectrum comp(spec.size());
    for (size_t k = 0; k < spec.size(); ++k)
      comp[k] = spec[k] * ((rho / (2.0 * pi)) * (*table)[k]);
    InterfaceField cf(g);
    FftEngine::instance().inverse_destructive(g.n, comp.data(),
                                              cf.values.data());
    for (size_t k = 0; k < nn; ++k) out.values[k] += cf.values[k];
  }
  return out;
}

inline InterfaceField rhs_m1(const InterfaceField& f, double rho,
                             const PolarRule& quad,
                             RhsDiagnostics* diag = nullptr) {
  return rhs_quadrature(f, rho, quad, RhsForm::m1, 32, diag);
}

inline InterfaceField rhs_integrated(const InterfaceField& f, double rho,
                                     const PolarRule& quad,
                                     RhsDiagnostics* diag = nullptr) {
  return rhs_quadrature(f, rho, quad, RhsForm::integrated, 32, diag);
}

enum class KIntegralMode { analytic, laguerre };

inline InterfaceField rhs_m2(const InterfaceField& f, double rho,
                             const PolarRule& quad,
                             KIntegralMode mode = KIntegralMode::analytic,
                             int laguerre_nodes = 32,
                             RhsDiagnostics* diag = nullptr) {
  return rhs_quadrature(f, rho, quad,
                        mode == KIntegralMode::analytic ? RhsForm::m2_analytic
                                                        : RhsForm::m2_laguerre,
                        laguerre_nodes, diag);
}

// m2(analytic) + eps * (spectral Laplacian)
inline InterfaceField rhs_regularized(const InterfaceField& f, double rho,
                                      double eps, const PolarRule& quad) {
  if (eps < 0.0) throw std::invalid_argument("rhs_regularized: eps must be >= 0");
  InterfaceField out = rhs_m2(f, rho, quad);
  if (eps > 0.0) {
    InterfaceField lap = laplacian(f);
    for (size_t k = 0; k < out.values.size(); ++k)
      out.values[k] += eps * lap.values[k];
  }
  return out;
}

// The linearization used as a validation oracle and by the integrating-factor
// scheme: -(rho/2pi) Lambda + eps Laplacian, as an exact spectral multiplier.
// (Decaying sign: the stable regime dissipates.)
inline double linear_symbol(double xi, double rho, double eps) {
  return -(rho / (2.0 * std::numbers::pi)) * xi - eps * xi * xi;
}

inline InterfaceField linearized_rhs(const InterfaceField& f, double rho,
                                     double eps = 0.0) {
  const Spectrum spec = spectral_of(f);
  Spectrum out = apply_multiplier(f.grid, spec, [&](int, int, double xi) {
    return linear_symbol(xi, rho, eps);
  });
  return from_spectral(f.grid, out);
}

}  // namespace muskat
