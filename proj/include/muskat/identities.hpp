#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "muskat/quadrature.hpp"
#include "muskat/rhs.hpp"
#include "muskat/spectral.hpp"
#include "muskat/util.hpp"

namespace muskat {

struct IdentityReport {
  std::string id;
  double max_residual = 0.0;
  int samples = 0;
  double tolerance = 0.0;
  bool pass() const { return max_residual < tolerance; }
};

struct IdentitySample {
  int ix = 0, iy = 0;  // grid node for x
  double y1 = 0.0, y2 = 0.0;
};

struct IdentitySampleSpec {
  int count = 200;
  uint64_t seed = 7;
  double r_min = 0.0;  // <= 0: max(8*fd_step, L/64)
  double r_max = 0.0;  // <= 0: L/4
};

inline std::vector<IdentitySample> make_identity_samples(
    const GridSpec& g, const IdentitySampleSpec& spec, double fd_step) {
  const double rmin =
      spec.r_min > 0.0 ? spec.r_min : std::max(8.0 * fd_step, g.L / 64.0);
  const double rmax = spec.r_max > 0.0 ? spec.r_max : g.L / 4.0;
  Rng rng(spec.seed);
  std::vector<IdentitySample> out(spec.count);
  for (auto& s : out) {
    s.ix = static_cast<int>(rng.uniform01() * g.n) % g.n;
    s.iy = static_cast<int>(rng.uniform01() * g.n) % g.n;
    const double r = std::exp(rng.uniform(std::log(rmin), std::log(rmax)));
    const double th = rng.uniform(0.0, 2.0 * std::numbers::pi);
    s.y1 = r * std::cos(th);
    s.y2 = r * std::sin(th);
  }
  return out;
}

namespace detail {

// Scalars of f and the slope quotients at one grid node for offset z.
struct PointSlopes {
  double d = 0.0;      // Delta_z f
  double dbar = 0.0;   // Delta-bar_z f
  double syf = 0.0;    // s_z f (unnormalized)
};

inline PointSlopes point_slopes(const InterfaceField& f, const Spectrum& spec,
                                int ix, int iy, double z1, double z2) {
  const GridSpec& g = f.grid;
  Spectrum scratch;
  InterfaceField tmp(g);
  shifted_into(g, spec, z1, z2, scratch, tmp);
  const double back = tmp.at(ix, iy);
  shifted_into(g, spec, -z1, -z2, scratch, tmp);
  const double fwd = tmp.at(ix, iy);
  const double f0 = f.at(ix, iy);
  const double az = std::hypot(z1, z2);
  PointSlopes p;
  p.d = (f0 - back) / az;
  p.dbar = (f0 - fwd) / az;
  p.syf = 2.0 * f0 - back - fwd;
  return p;
}

// Point value of g(x - z) for a scalar field given by its spectrum.
inline double point_shifted(const GridSpec& g, const Spectrum& spec, int ix,
                            int iy, double z1, double z2) {
  Spectrum scratch;
  InterfaceField tmp(g);
  shifted_into(g, spec, z1, z2, scratch, tmp);
  return tmp.at(ix, iy);
}

// The y-gradient blow-up of the slope quotients scales like 1/|y|, so the
// central-difference step has to shrink with the offset to keep the
// truncation error in check.
inline double effective_fd(double fd_step, double r) {
  return std::min(fd_step, r / 256.0);
}

}  // namespace detail

// Both sides of the two arctan-pair gradient identities:
//   grad_y {arctan D + arctan D-bar} = -1/2 S D K K-bar grad_y(D_y)
//                                      + 1/2 (K + K-bar) grad_y(S_y)
// and the mirrored version with grad_y(S_y), grad_y(D_y) swapped. The LHS is
// produced by central differences in y, the RHS from the kernel factors, so
// the comparison crosses two independent evaluation paths.
inline std::pair<IdentityReport, IdentityReport> check_arctan_gradients(
    const InterfaceField& f, const std::vector<IdentitySample>& samples,
    double fd_step, double tolerance = 1e-4) {
  const GridSpec& g = f.grid;
  const Spectrum spec = spectral_of(f);
  double worst_sum = 0.0, worst_diff = 0.0;
  for (const auto& s : samples) {
    const double r = std::hypot(s.y1, s.y2);
    const double h = detail::effective_fd(fd_step, r);
    double arcsum[4], arcdiff[4], dd[4], ss[4];
    int slot = 0;
    for (int axis = 0; axis < 2; ++axis)
      for (double sign : {1.0, -1.0}) {
        const double z1 = s.y1 + (axis == 0 ? sign * h : 0.0);
        const double z2 = s.y2 + (axis == 1 ? sign * h : 0.0);
        const auto p = detail::point_slopes(f, spec, s.ix, s.iy, z1, z2);
        arcsum[slot] = std::atan(p.d) + std::atan(p.dbar);
        arcdiff[slot] = std::atan(p.d) - std::atan(p.dbar);
        dd[slot] = p.d - p.dbar;
        ss[slot] = p.d + p.dbar;
        ++slot;
      }
    auto grad2 = [&](const double* v) {
      return std::array<double, 2>{(v[0] - v[1]) / (2.0 * h),
                                   (v[2] - v[3]) / (2.0 * h)};
    };
    const auto gsum = grad2(arcsum), gdiff = grad2(arcdiff);
    const auto gD = grad2(dd), gS = grad2(ss);
    const auto c = detail::point_slopes(f, spec, s.ix, s.iy, s.y1, s.y2);
    const double K = 1.0 / (1.0 + c.d * c.d), Kb = 1.0 / (1.0 + c.dbar * c.dbar);
    const double S = c.d + c.dbar, D = c.d - c.dbar;
    for (int d0 = 0; d0 < 2; ++d0) {
      const double rhs_sum = -0.5 * S * D * K * Kb * gD[d0] + 0.5 * (K + Kb) * gS[d0];
      const double rhs_diff = -0.5 * S * D * K * Kb * gS[d0] + 0.5 * (K + Kb) * gD[d0];
      worst_sum = std::max(worst_sum, std::abs(gsum[d0] - rhs_sum));
      worst_diff = std::max(worst_diff, std::abs(gdiff[d0] - rhs_diff));
    }
  }
  IdentityReport a{"arctan_sum_gradient", worst_sum,
                   static_cast<int>(samples.size()), tolerance};
  IdentityReport b{"arctan_diff_gradient", worst_diff,
                   static_cast<int>(samples.size()), tolerance};
  return {a, b};
}

inline IdentityReport check_arctan_sum_gradient(
    const InterfaceField& f, const std::vector<IdentitySample>& samples,
    double fd_step, double tolerance = 1e-4) {
  return check_arctan_gradients(f, samples, fd_step, tolerance).first;
}

inline IdentityReport check_arctan_diff_gradient(
    const InterfaceField& f, const std::vector<IdentitySample>& samples,
    double fd_step, double tolerance = 1e-4) {
  return check_arctan_gradients(f, samples, fd_step, tolerance).second;
}

// Radial identity for the centered quotient:
//   y . grad_y (D_y f) = (1/|y|) int_0^1 y . s_{(r-1)y} grad f dr
//                        - (y/|y|) . grad_x (s_y f)
// LHS by central differences in y, the r-integral by Gauss-Legendre.
// (The second term enters with a minus sign: grad_x s_y f is
// 2 grad f(x) - grad f(x-y) - grad f(x+y), and the direct expansion of
// y . grad_y D_y f produces its negative.)
inline IdentityReport check_d_operator_radial(
    const InterfaceField& f, const std::vector<IdentitySample>& samples,
    double fd_step, int legendre_nodes = 16, double tolerance = 1e-4) {
  const GridSpec& g = f.grid;
  const Spectrum spec = spectral_of(f);
  const QuadratureRule gl = gauss_legendre_on(0.0, 1.0, legendre_nodes);
  double worst = 0.0;
  for (const auto& s : samples) {
    const double r = std::hypot(s.y1, s.y2);
    const double h = detail::effective_fd(fd_step, r);
    // w = y . grad f as a field
    const Spectrum wspec =
        detail::directional_derivative_spectrum(g, spec, s.y1, s.y2);
    double lhs_parts[4];
    int slot = 0;
    for (int axis = 0; axis < 2; ++axis)
      for (double sign : {1.0, -1.0}) {
        const double z1 = s.y1 + (axis == 0 ? sign * h : 0.0);
        const double z2 = s.y2 + (axis == 1 ? sign * h : 0.0);
        const auto p = detail::point_slopes(f, spec, s.ix, s.iy, z1, z2);
        lhs_parts[slot++] = p.d - p.dbar;
      }
    const double lhs = s.y1 * (lhs_parts[0] - lhs_parts[1]) / (2.0 * h) +
                       s.y2 * (lhs_parts[2] - lhs_parts[3]) / (2.0 * h);
    const double w0 = detail::point_shifted(g, wspec, s.ix, s.iy, 0.0, 0.0);
    double acc = 0.0;
    for (int q = 0; q < legendre_nodes; ++q) {
      const double hb1 = (gl.nodes[q] - 1.0) * s.y1;
      const double hb2 = (gl.nodes[q] - 1.0) * s.y2;
      const double wm = detail::point_shifted(g, wspec, s.ix, s.iy, hb1, hb2);
      const double wp = detail::point_shifted(g, wspec, s.ix, s.iy, -hb1, -hb2);
      acc += gl.weights[q] * (2.0 * w0 - wm - wp);
    }
    const double wmy = detail::point_shifted(g, wspec, s.ix, s.iy, s.y1, s.y2);
    const double wpy = detail::point_shifted(g, wspec, s.ix, s.iy, -s.y1, -s.y2);
    const double rhs = acc / r - (2.0 * w0 - wmy - wpy) / r;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return {"d_operator_radial", worst, static_cast<int>(samples.size()),
          tolerance};
}

// Radial identity for the symmetric quotient:
//   y . grad_y (S_y f) = -(1/|y|) s_y f
//                        + (y/|y|) . (grad_x dbar_y f - grad_x delta_y f)
// (The s_y f term carries a minus sign, from y . grad_y(1/|y|) = -1/|y|.)
inline IdentityReport check_s_operator_radial(
    const InterfaceField& f, const std::vector<IdentitySample>& samples,
    double fd_step, double tolerance = 1e-4) {
  const GridSpec& g = f.grid;
  const Spectrum spec = spectral_of(f);
  double worst = 0.0;
  for (const auto& s : samples) {
    const double r = std::hypot(s.y1, s.y2);
    const double h = detail::effective_fd(fd_step, r);
    const Spectrum wspec =
        detail::directional_derivative_spectrum(g, spec, s.y1, s.y2);
    double parts[4];
    int slot = 0;
    for (int axis = 0; axis < 2; ++axis)
      for (double sign : {1.0, -1.0}) {
        const double z1 = s.y1 + (axis == 0 ? sign * h : 0.0);
        const double z2 = s.y2 + (axis == 1 ? sign * h : 0.0);
        const auto p = detail::point_slopes(f, spec, s.ix, s.iy, z1, z2);
        parts[slot++] = p.d + p.dbar;
      }
    const double lhs = s.y1 * (parts[0] - parts[1]) / (2.0 * h) +
                       s.y2 * (parts[2] - parts[3]) / (2.0 * h);
    const auto c = detail::point_slopes(f, spec, s.ix, s.iy, s.y1, s.y2);
    const double wmy = detail::point_shifted(g, wspec, s.ix, s.iy, s.y1, s.y2);
    const double wpy = detail::point_shifted(g, wspec, s.ix, s.iy, -s.y1, -s.y2);
    // (y/|y|) . (grad dbar - grad delta) = (w(x-y) - w(x+y)) / |y|
    const double rhs = -c.syf / r + (wmy - wpy) / r;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return {"s_operator_radial", worst, static_cast<int>(samples.size()),
          tolerance};
}

// |div (x/|x|^r)| equals |2 - r| / |x|^r in two dimensions; confirms the
// closed form against a finite-difference divergence at the sample points.
inline IdentityReport check_kernel_divergence_bound(
    const std::vector<double>& r_exponents, int sample_points = 64,
    uint64_t seed = 7, double tolerance = 1e-6) {
  Rng rng(seed);
  double worst = 0.0;
  int count = 0;
  for (double rexp : r_exponents) {
    for (int s = 0; s < sample_points; ++s) {
      const double rad = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
      const double th = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double x1 = rad * std::cos(th), x2 = rad * std::sin(th);
      const double h = 1e-5 * rad;
      auto comp = [&](double a, double b, int axis) {
        const double rr = std::hypot(a, b);
        return (axis == 0 ? a : b) / std::pow(rr, rexp);
      };
      const double div_fd = (comp(x1 + h, x2, 0) - comp(x1 - h, x2, 0) +
                             comp(x1, x2 + h, 1) - comp(x1, x2 - h, 1)) /
                            (2.0 * h);
      const double ratio_fd = std::abs(div_fd) * std::pow(rad, rexp);
      const double ratio_exact = std::abs(2.0 - rexp);
      worst = std::max(worst, std::abs(ratio_fd - ratio_exact));
      ++count;
    }
  }
  return {"kernel_divergence_bound", worst, count, tolerance};
}

struct TrigCheckReport {
  IdentityReport cos_arctan;   // cos(arctan u) vs (1+u^2)^{-1/2}
  IdentityReport k_integral;   // Gauss-Laguerre vs 1/(1+u^2)
  std::vector<std::pair<double, double>> error_profile;  // (u, |GL - exact|)
};

inline TrigCheckReport check_trig_substitutions(
    const std::vector<double>& u_samples, int laguerre_nodes = 32,
    double tol_cos = 1e-12, double tol_lag = 1e-6, double lag_check_umax = 2.0) {
  const QuadratureRule lag = gauss_laguerre(laguerre_nodes);
  TrigCheckReport rep;
  double worst_cos = 0.0, worst_lag = 0.0;
  for (double u : u_samples) {
    const double exact_cos = 1.0 / std::sqrt(1.0 + u * u);
    worst_cos = std::max(worst_cos, std::abs(std::cos(std::atan(u)) - exact_cos));
    double gl = 0.0;
    for (size_t i = 0; i < lag.nodes.size(); ++i)
      gl += lag.weights[i] * std::cos(lag.nodes[i] * u);
    const double err = std::abs(gl - 1.0 / (1.0 + u * u));
    rep.error_profile.emplace_back(u, err);
    if (std::abs(u) <= lag_check_umax) worst_lag = std::max(worst_lag, err);
  }
  rep.cos_arctan = {"cos_arctan_substitution", worst_cos,
                    static_cast<int>(u_samples.size()), tol_cos};
  rep.k_integral = {"laplace_cos_k_integral", worst_lag,
                    static_cast<int>(u_samples.size()), tol_lag};
  return rep;
}

// Least-squares slope of log(residual) against log(fd_step); used to confirm
// the second-order convergence of the finite-difference sides.
inline double fit_convergence_order(const std::vector<double>& fd_steps,
                                    const std::vector<double>& residuals) {
  const size_t m = fd_steps.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < m; ++i) {
    const double x = std::log(fd_steps[i]), y = std::log(residuals[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace muskat
