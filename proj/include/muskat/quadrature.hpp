#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "muskat/field.hpp"

namespace muskat {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration.
inline QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
  QuadratureRule q;
  q.nodes.resize(n);
  q.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    q.nodes[i] = -z;
    q.nodes[n - 1 - i] = z;
    q.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    q.weights[n - 1 - i] = q.weights[i];
  }
  return q;
}

inline QuadratureRule gauss_legendre_on(double a, double b, int n) {
  QuadratureRule q = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    q.nodes[i] = mid + half * q.nodes[i];
    q.weights[i] *= half;
  }
  return q;
}

// Gauss-Laguerre nodes/weights for integrals of e^{-x} g(x) over [0, inf).
inline QuadratureRule gauss_laguerre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_laguerre: n >= 1 required");
  QuadratureRule q;
  q.nodes.resize(n);
  q.weights.resize(n);
  double z = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == 0)
      z = 3.0 / (1.0 + 2.4 * n);
    else if (i == 1)
      z += 15.0 / (1.0 + 2.5 * n);
    else {
      const double ai = i - 1;
      z += ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - q.nodes[i - 2]);
    }
    double p1 = 0.0, pp = 0.0, p2 = 0.0;
    for (int it = 0; it < 200; ++it) {
      p1 = 1.0;
      p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0 - z) * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (p1 - p2) / z;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-14 * z) break;
    }
    q.nodes[i] = z;
    q.weights[i] = -1.0 / (pp * n * p2);
  }
  return q;
}

// Composite Gauss-Legendre in log space for radial integrals
// int_a^b g(r) dr whose integrand varies on multiplicative scales.
inline QuadratureRule log_radial_rule(double a, double b, int n_nodes) {
  if (!(0.0 < a && a < b))
    throw std::invalid_argument("log_radial_rule: need 0 < a < b");
  const int per = 6;
  const int panels = std::max(1, n_nodes / per);
  const double la = std::log(a), lb = std::log(b);
  QuadratureRule gl = gauss_legendre(per);
  QuadratureRule q;
  q.nodes.reserve(panels * per);
  q.weights.reserve(panels * per);
  for (int p = 0; p < panels; ++p) {
    const double u0 = la + (lb - la) * p / panels;
    const double u1 = la + (lb - la) * (p + 1) / panels;
    const double mid = 0.5 * (u0 + u1), half = 0.5 * (u1 - u0);
    for (int i = 0; i < per; ++i) {
      const double u = mid + half * gl.nodes[i];
      const double r = std::exp(u);
      q.nodes.push_back(r);
      q.weights.push_back(gl.weights[i] * half * r);  // dr = r du
    }
  }
  return q;
}

// Polar product rule for the principal-value y-integrals: log-spaced radial
// nodes on [r_min, L/2] and uniform angles arranged so the node set is
// invariant under y -> -y (theta_j + pi is again a node). The pv is realized
// by summing the integrand over such symmetric pairs.
struct PolarRule {
  std::vector<double> radial_nodes;
  std::vector<double> radial_weights;  // for plain dr integration
  std::vector<double> angular_nodes;   // m angles, m divisible by 4
  double angular_weight = 0.0;         // uniform; m * w = 2*pi
  double r_min = 0.0;
  double r_max = 0.0;
  bool symmetrize = true;

  int n_radial() const { return static_cast<int>(radial_nodes.size()); }
  int n_angular() const { return static_cast<int>(angular_nodes.size()); }
};

// r_min_override <= 0 selects the quarter-cell policy r_min = L/(4n).
inline PolarRule make_polar_rule(const GridSpec& g, int n_radial = 48,
                                 int n_angular = 32,
                                 double r_min_override = 0.0) {
  if (n_angular < 4 || n_angular % 4 != 0)
    throw std::invalid_argument("make_polar_rule: angular count must be a positive multiple of 4");
  if (n_radial < 6)
    throw std::invalid_argument("make_polar_rule: need at least 6 radial nodes");
  PolarRule rule;
  rule.r_min = r_min_override > 0.0 ? r_min_override : g.L / (4.0 * g.n);
  rule.r_max = g.L / 2.0;
  if (!(rule.r_min < rule.r_max))
    throw std::invalid_argument("make_polar_rule: r_min must be below L/2");
  QuadratureRule rad = log_radial_rule(rule.r_min, rule.r_max, n_radial);
  rule.radial_nodes = std::move(rad.nodes);
  rule.radial_weights = std::move(rad.weights);
  rule.angular_nodes.resize(n_angular);
  for (int j = 0; j < n_angular; ++j)
    rule.angular_nodes[j] = 2.0 * std::numbers::pi * (j + 0.5) / n_angular;
  rule.angular_weight = 2.0 * std::numbers::pi / n_angular;
  return rule;
}

// ---- Bessel-integral helpers for the truncated-kernel completion ----
//
// cin(z)  = int_0^z J1(t)/t dt
// cout(z) = int_z^inf J1(t)/t dt = 1 - cin(z)
// computed through int_0^z J0 dt via J1/t = J0 - J1'.
class BesselJ0Integral {
public:
  // int_0^z J0(t) dt to near machine accuracy
  double operator()(double z) {
    if (z <= 0.0) return 0.0;
    const size_t full = static_cast<size_t>(z / kStep);
    extend(full);
    double acc = prefix_[full];
    acc += panel(full * kStep, z);
    return acc;
  }

private:
  static constexpr double kStep = 2.0;

  double panel(double a, double b) {
    static const QuadratureRule gl = gauss_legendre(24);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (size_t i = 0; i < gl.nodes.size(); ++i)
      acc += gl.weights[i] * half * std::cyl_bessel_j(0.0, mid + half * gl.nodes[i]);
    return acc;
  }

  void extend(size_t upto) {
    while (prefix_.size() <= upto) {
      const size_t k = prefix_.size();
      prefix_.push_back(prefix_[k - 1] + panel((k - 1) * kStep, k * kStep));
    }
  }

  std::vector<double> prefix_{0.0};
};

inline double cin_j1_over_t(double z) {
  if (z <= 0.0) return 0.0;
  thread_local BesselJ0Integral j0int;
  return j0int(z) - std::cyl_bessel_j(1.0, z);
}

inline double cout_j1_over_t(double z) { return 1.0 - cin_j1_over_t(z); }

// Per-mode completion multiplier for the kernel mass outside [r_min, L/2]:
// the annular quadrature misses the inner disk and the far field, whose
// linearized contribution is exactly -|xi| (cin + cout) per mode. Cached per
// (n, L, r_min) since the table costs many Bessel evaluations.
inline std::shared_ptr<const std::vector<double>> truncation_completion_table(
    const GridSpec& g, double r_min, double r_max) {
  struct Key {
    int n;
    double L, a, b;
    bool operator<(const Key& o) const {
      if (n != o.n) return n < o.n;
      if (L != o.L) return L < o.L;
      if (a != o.a) return a < o.a;
      return b < o.b;
    }
  };
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const std::vector<double>>> cache;
  const Key key{g.n, g.L, r_min, r_max};
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  WaveVectorTable wv{g};
  const int cols = wv.cols();
  auto table = std::make_shared<std::vector<double>>(
      static_cast<size_t>(g.n) * cols, 0.0);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < cols; ++j) {
      const double xi = wv.xi_abs(i, j);
      if (xi == 0.0) continue;
      (*table)[static_cast<size_t>(i) * cols + j] =
          -xi * (cin_j1_over_t(xi * r_min) + cout_j1_over_t(xi * r_max));
    }
  cache.emplace(key, table);
  return table;
}

}  // namespace muskat
