#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "muskat/spectral.hpp"

namespace muskat {

// Real offset y for the finite-difference operators; |y| > 0 whenever a
// slope quotient divides by it.
struct OffsetStencil {
  double y1 = 0.0;
  double y2 = 0.0;
  double abs = 0.0;

  OffsetStencil(double a, double b) : y1(a), y2(b), abs(std::hypot(a, b)) {}
};

inline void require_offset(const OffsetStencil& y, const char* who) {
  if (!(y.abs > 0.0))
    throw std::invalid_argument(std::string(who) + ": |y| must be positive");
}

// delta_y f = f(x) - f(x-y)
inline InterfaceField delta(const InterfaceField& f, const OffsetStencil& y,
                            ShiftMethod m = ShiftMethod::spectral) {
  InterfaceField shifted = sample_shifted(f, y.y1, y.y2, m);
  for (size_t k = 0; k < shifted.values.size(); ++k)
    shifted.values[k] = f.values[k] - shifted.values[k];
  return shifted;
}

// delta-bar_y f = f(x) - f(x+y)
inline InterfaceField delta_bar(const InterfaceField& f, const OffsetStencil& y,
                                ShiftMethod m = ShiftMethod::spectral) {
  return delta(f, OffsetStencil(-y.y1, -y.y2), m);
}

// Delta_y f = delta_y f / |y|
inline InterfaceField slope(const InterfaceField& f, const OffsetStencil& y,
                            ShiftMethod m = ShiftMethod::spectral) {
  require_offset(y, "slope");
  InterfaceField d = delta(f, y, m);
  for (double& v : d.values) v /= y.abs;
  return d;
}

// Delta-bar_y f = delta-bar_y f / |y|
inline InterfaceField slope_bar(const InterfaceField& f, const OffsetStencil& y,
                                ShiftMethod m = ShiftMethod::spectral) {
  require_offset(y, "slope_bar");
  InterfaceField d = delta_bar(f, y, m);
  for (double& v : d.values) v /= y.abs;
  return d;
}

// s_y f = 2f(x) - f(x-y) - f(x+y); normalized variant S_y f = s_y f / |y|
inline InterfaceField second_diff(const InterfaceField& f,
                                  const OffsetStencil& y, bool normalized,
                                  ShiftMethod m = ShiftMethod::spectral) {
  if (normalized) require_offset(y, "second_diff");
  InterfaceField back = sample_shifted(f, y.y1, y.y2, m);
  InterfaceField fwd = sample_shifted(f, -y.y1, -y.y2, m);
  const double scale = normalized ? 1.0 / y.abs : 1.0;
  for (size_t k = 0; k < back.values.size(); ++k)
    back.values[k] = (2.0 * f.values[k] - back.values[k] - fwd.values[k]) * scale;
  return back;
}

// d_y f = f(x+y) - f(x-y); normalized variant D_y f = d_y f / |y|
inline InterfaceField centered_diff(const InterfaceField& f,
                                    const OffsetStencil& y, bool normalized,
                                    ShiftMethod m = ShiftMethod::spectral) {
  if (normalized) require_offset(y, "centered_diff");
  InterfaceField back = sample_shifted(f, y.y1, y.y2, m);
  InterfaceField fwd = sample_shifted(f, -y.y1, -y.y2, m);
  const double scale = normalized ? 1.0 / y.abs : 1.0;
  for (size_t k = 0; k < back.values.size(); ++k)
    back.values[k] = (fwd.values[k] - back.values[k]) * scale;
  return back;
}

// (arctan Delta_y f + arctan Delta-bar_y f, arctan Delta_y f - arctan Delta-bar_y f);
// both components are bounded by pi in magnitude.
inline std::pair<InterfaceField, InterfaceField> arctan_slope_pair(
    const InterfaceField& f, const OffsetStencil& y,
    ShiftMethod m = ShiftMethod::spectral) {
  require_offset(y, "arctan_slope_pair");
  InterfaceField back = sample_shifted(f, y.y1, y.y2, m);
  InterfaceField fwd = sample_shifted(f, -y.y1, -y.y2, m);
  InterfaceField sum(f.grid), diff(f.grid);
  for (size_t k = 0; k < f.values.size(); ++k) {
    const double a = std::atan((f.values[k] - back.values[k]) / y.abs);
    const double b = std::atan((f.values[k] - fwd.values[k]) / y.abs);
    sum.values[k] = a + b;
    diff.values[k] = a - b;
  }
  return {std::move(sum), std::move(diff)};
}

}  // namespace muskat
