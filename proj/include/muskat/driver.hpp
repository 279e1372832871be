#pragma once

#include <cmath>
#include <string>

#include "muskat/config.hpp"
#include "muskat/io.hpp"
#include "muskat/norms.hpp"
#include "muskat/stepper.hpp"

namespace muskat {

struct RunResult {
  EnergyLedger ledger;
  InterfaceField final_field;
  double t_end = 0.0;
};

inline InterfaceField initial_field_from_config(const SimConfig& cfg) {
  const GridSpec g{cfg.n, cfg.L};
  if (cfg.profile == "file") {
    SnapshotData snap = read_snapshot(cfg.initial_file);
    if (snap.field.grid.n != cfg.n || snap.field.grid.L != cfg.L)
      throw std::runtime_error("initial snapshot grid does not match [grid]");
    return snap.field;
  }
  return builtin_profile(cfg.profile, cfg.profile_params, g, cfg.seed);
}

// Advances the configured simulation to t_final (or abort), recording a
// NormReport row at the report cadence. D(t) accumulates every step by the
// trapezoid rule, abort checks run every step, and the monitor columns are
// filled in after the run. No file I/O happens here.
inline RunResult run_simulation(const SimConfig& cfg) {
  validate_config(cfg);
  const GridSpec g{cfg.n, cfg.L};
  PolarRule quad =
      make_polar_rule(g, cfg.quad_radial, cfg.quad_angular, cfg.quad_r_min);

  StepperState st;
  st.f = initial_field_from_config(cfg);
  st.t = 0.0;
  st.scheme = cfg.scheme;
  st.eps = cfg.eps;
  st.rho = cfg.rho;
  st.nonlinear = cfg.nonlinear;

  const double dt_policy = stable_dt(g, cfg.rho, cfg.eps, cfg.cfl);
  const long nsteps = std::max(1L, std::lround(std::ceil(cfg.t_final / dt_policy)));
  st.dt = cfg.t_final / static_cast<double>(nsteps);
  const long report_every = std::max(
      1L, std::lround(config_report_interval(cfg) / st.dt));

  RunResult res;
  EnergyLedger& led = res.ledger;

  double d_of_t = 0.0;
  double h52sq_prev = 0.0;
  const double h2_initial = sobolev_seminorm(st.f, 2.0);

  auto record = [&](const StepperState& s) {
    LedgerRow row;
    row.t = s.t;
    row.norms = make_norm_report(s.f, s.t);
    row.d_of_t = d_of_t;
    row.dissipation_budget = dissipation_coefficient(row.norms.lipschitz) *
                             row.norms.h52 * row.norms.h52;
    led.rows.push_back(row);
  };

  {
    const double h52 = sobolev_seminorm(st.f, 2.5);
    h52sq_prev = h52 * h52;
  }
  record(st);

  for (long k = 1; k <= nsteps; ++k) {
    try {
      st = step(st, quad);
    } catch (const StepAbort& e) {
      led.aborted = true;
      led.abort_reason = e.what();
      break;
    }
    led.dt_history.push_back(st.dt);

    const double h52 = sobolev_seminorm(st.f, 2.5);
    const double h52sq = h52 * h52;
    d_of_t += 0.5 * (h52sq_prev + h52sq) * st.dt;
    h52sq_prev = h52sq;

    const double h2 = sobolev_seminorm(st.f, 2.0);
    const double kslope = lipschitz_seminorm(st.f);
    if (kslope > 1e4 || (h2_initial > 0.0 && h2 > 1e6 * h2_initial)) {
      led.aborted = true;
      led.abort_reason = kslope > 1e4 ? "slope K exceeded 1e4"
                                      : "H^2 semi-norm grew by 1e6x";
      record(st);
      break;
    }
    if (k % report_every == 0 || k == nsteps) record(st);
  }

  if (led.rows.size() >= 3)
    energy_rate_monitor(led, 0, led.rows.size() - 1);
  if (!led.rows.empty()) slope_monitor(led);

  res.final_field = st.f;
  res.t_end = st.t;
  return res;
}

// run + persistence: ledger CSV/JSON and the final snapshot land in the
// output directory. The snapshot is written even after an abort.
inline RunResult run_and_emit(const SimConfig& cfg) {
  RunResult res = run_simulation(cfg);
  const uint64_t h = config_hash(cfg);
  std::filesystem::create_directories(cfg.output_dir);
  emit_ledger(res.ledger, cfg.output_dir, h);
  write_snapshot(cfg.output_dir + "/final.snap", res.final_field, res.t_end, h);
  atomic_write(cfg.output_dir + "/config.ini", serialize_config(cfg));
  return res;
}

}  // namespace muskat
