#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "muskat/finite_diff.hpp"
#include "muskat/quadrature.hpp"
#include "muskat/spectral.hpp"
#include "muskat/util.hpp"

namespace muskat {

// ||f||_{H^s homogeneous} = sqrt( L^2 sum_{k!=0} |xi_k|^{2s} |c_k|^2 ),
// the zero mode excluded.
inline double sobolev_seminorm(const InterfaceField& f, double s) {
  if (s < 0.0 || s > 3.0)
    throw std::invalid_argument("sobolev_seminorm: s outside [0,3]");
  const Spectrum spec = spectral_of(f);
  WaveVectorTable wv{f.grid};
  const int cols = wv.cols();
  std::vector<double> terms;
  terms.reserve(spec.size());
  for (int i = 0; i < f.grid.n; ++i)
    for (int j = 0; j < cols; ++j) {
      const double xi = wv.xi_abs(i, j);
      if (xi == 0.0) continue;
      const double a2 = std::norm(spec[static_cast<size_t>(i) * cols + j]);
      terms.push_back(wv.parseval_weight(j) * std::pow(xi, 2.0 * s) * a2);
    }
  return f.grid.L * std::sqrt(pairwise_sum(terms));
}

// K = max over grid nodes of |grad f| (spectral gradient).
inline double lipschitz_seminorm(const InterfaceField& f) {
  auto [gx, gy] = gradient(f);
  double m = 0.0;
  for (size_t k = 0; k < gx.values.size(); ++k)
    m = std::max(m, std::hypot(gx.values[k], gy.values[k]));
  return m;
}

struct BesovEntry {
  double s, p, q;  // infinity encoded as INFINITY
  double value;
};

// Besov quadrature resolution; the y-integral is truncated to
// r in [L/(4n), L/2] (fine-scale floor at a quarter cell, half period cap).
struct BesovQuad {
  int n_radial = 64;
  int n_angular = 32;
};

// Homogeneous Besov semi-norm by finite differences:
//   || || D(y) f ||_{L^p(dx)} / |y|^s ||_{L^q(|y|^{-2} dy)}
// with D = delta_y for s in (0,1) and the second difference s_y (i.e.
// delta_y + delta-bar_y) for s in [1,2). p or q = infinity take grid/node
// maxima. Polar form of the outer measure: dtheta dr / r.
inline double besov_seminorm(const InterfaceField& f, double s, double p,
                             double q, const BesovQuad& quad = {}) {
  if (!(s > 0.0 && s < 2.0))
    throw std::invalid_argument("besov_seminorm: s must lie in (0,2)");
  if (!(p >= 1.0) || !(q >= 1.0))
    throw std::invalid_argument("besov_seminorm: p,q must be >= 1 (or inf)");
  const GridSpec& g = f.grid;
  PolarRule rule = make_polar_rule(g, quad.n_radial, quad.n_angular);
  const Spectrum spec = spectral_of(f);
  const bool second = (s >= 1.0);
  const double h2 = g.dx() * g.dx();
  const size_t nn = g.size();

  std::vector<double> work(nn);
  InterfaceField shifted(g), shifted_fwd(g);
  const int nr = rule.n_radial(), na = rule.n_angular();
  std::vector<double> radial_part(nr, 0.0);
  double running_max = 0.0;
  for (int a = 0; a < na; ++a) {
    const double th = rule.angular_nodes[a];
    const double cth = std::cos(th), sth = std::sin(th);
    for (int r = 0; r < nr; ++r) {
      const double rr = rule.radial_nodes[r];
      Spectrum sh = spec;
      shift_phase_inplace(g, sh, rr * cth, rr * sth);
      FftEngine::instance().inverse_destructive(g.n, sh.data(),
                                                shifted.values.data());
      if (second) {
        Spectrum sh2 = spec;
        shift_phase_inplace(g, sh2, -rr * cth, -rr * sth);
        FftEngine::instance().inverse_destructive(g.n, sh2.data(),
                                                  shifted_fwd.values.data());
        for (size_t k = 0; k < nn; ++k)
          work[k] = 2.0 * f.values[k] - shifted.values[k] - shifted_fwd.values[k];
      } else {
        for (size_t k = 0; k < nn; ++k)
          work[k] = f.values[k] - shifted.values[k];
      }
      double lp;
      if (std::isinf(p)) {
        lp = 0.0;
        for (double v : work) lp = std::max(lp, std::abs(v));
      } else {
        double acc = 0.0;
        for (double v : work) acc += std::pow(std::abs(v), p);
        lp = std::pow(acc * h2, 1.0 / p);
      }
      const double val = lp / std::pow(rr, s);
      if (std::isinf(q))
        running_max = std::max(running_max, val);
      else
        radial_part[r] += std::pow(val, q) * rule.angular_weight;
    }
  }
  if (std::isinf(q)) return running_max;
  std::vector<double> terms(nr);
  for (int r = 0; r < nr; ++r)
    terms[r] = radial_part[r] * rule.radial_weights[r] / rule.radial_nodes[r];
  return std::pow(pairwise_sum(terms), 1.0 / q);
}

// One time-instant bundle of the monitored functionals.
struct NormReport {
  double time = 0.0;
  double h2 = 0.0;         // ||f||_{H^2}
  double h52 = 0.0;        // ||f||_{H^{5/2}}
  double lipschitz = 0.0;  // K = || |grad f| ||_{L^inf}
  std::vector<BesovEntry> besov_entries;
};

inline NormReport make_norm_report(const InterfaceField& f, double t) {
  NormReport r;
  r.time = t;
  r.h2 = sobolev_seminorm(f, 2.0);
  r.h52 = sobolev_seminorm(f, 2.5);
  r.lipschitz = lipschitz_seminorm(f);
  return r;
}

// Smallness checks on the initial data, parameterized by the (unspecified)
// theorem constant C:
//   theorem form:  ||f0||_{H^2} < C (1 + K0^2)^{-3/2}
//   condition 1:   C (h2 + h2^2) < (2 + K0^2)^{-3/2}
//   condition 2:   h2^2 (2+K0^2)^{3/2} / (1 - C (h2+h2^2)(2+K0^2)^{3/2}) < 1
// Margins are (bound - value); condition 2's margin is 1 - ratio.
struct SmallnessReport {
  double h2 = 0.0;
  double k0 = 0.0;
  double c = 0.0;
  bool theorem_pass = false;
  double theorem_margin = 0.0;
  bool cond1_pass = false;
  double cond1_margin = 0.0;
  bool cond2_pass = false;
  double cond2_margin = 0.0;
  // amplitude of the theorem bound and condition-1 sides, for reporting
  double cond1_lhs = 0.0, cond1_rhs = 0.0, cond2_ratio = 0.0;

  bool pass() const { return theorem_pass && cond1_pass && cond2_pass; }
};

inline SmallnessReport smallness_criterion(const InterfaceField& f0, double c) {
  if (!(c > 0.0))
    throw std::invalid_argument("smallness_criterion: C must be positive");
  SmallnessReport rep;
  rep.c = c;
  rep.h2 = sobolev_seminorm(f0, 2.0);
  rep.k0 = lipschitz_seminorm(f0);
  const double h2 = rep.h2, k2 = rep.k0 * rep.k0;

  const double thm_bound = c * std::pow(1.0 + k2, -1.5);
  rep.theorem_pass = h2 < thm_bound;
  rep.theorem_margin = thm_bound - h2;

  rep.cond1_lhs = c * (h2 + h2 * h2);
  rep.cond1_rhs = std::pow(2.0 + k2, -1.5);
  rep.cond1_pass = rep.cond1_lhs < rep.cond1_rhs;
  rep.cond1_margin = rep.cond1_rhs - rep.cond1_lhs;

  const double pw = std::pow(2.0 + k2, 1.5);
  const double denom = 1.0 - rep.cond1_lhs * pw;
  if (denom > 0.0) {
    rep.cond2_ratio = h2 * h2 * pw / denom;
    rep.cond2_pass = rep.cond2_ratio < 1.0;
  } else {
    rep.cond2_ratio = std::numeric_limits<double>::infinity();
    rep.cond2_pass = false;
  }
  rep.cond2_margin = 1.0 - rep.cond2_ratio;
  return rep;
}

}  // namespace muskat
