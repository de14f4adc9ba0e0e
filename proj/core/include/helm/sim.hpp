#pragma once

#include <array>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "helm/feasibility.hpp"
#include "helm/scenario.hpp"

namespace helm {

/// Classical fixed-step 4th-order Runge-Kutta step. Deterministic: the
/// same state and dt always produce bitwise-identical results.
template <std::size_t N, class F>
std::array<double, N> rk4_step(F&& f, const std::array<double, N>& y, double t, double dt) {
  std::array<double, N> k1 = f(t, y);
  std::array<double, N> tmp;
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
  std::array<double, N> k2 = f(t + 0.5 * dt, tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
  std::array<double, N> k3 = f(t + 0.5 * dt, tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + dt * k3[i];
  std::array<double, N> k4 = f(t + dt, tmp);
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i)
    out[i] = y[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

constexpr std::size_t kStateSize = 11;  // x y psi u_r v_r r x_hat y_hat Vx_hat Vy_hat theta

struct FaultRecord {
  double t = 0.0;
  std::string what;
};

/// Runtime monitors realizing the boundedness and well-posedness conditions.
/// A run is clean when no fault fired, the parametrisation margin stayed at
/// or above sigma, and |C_r| never dropped below c_min.
struct MonitorReport {
  double condition1_margin_min = 1.0;  // min of 1 - kappa*y_bp
  double Cr_min = 0.0;                 // min of |C_r|
  double v_r_max = 0.0;                // max |v_r|
  double V3_max = 0.0;                 // max of v_r^2/2
  double tau_u_max_abs = 0.0;
  double tau_r_max_abs = 0.0;
  bool tube_excursion = false;
  bool degraded = false;  // C_r guard engaged at least once
  bool aborted = false;
  double sigma_used = 0.0;
  double c_min_used = 0.0;
  std::vector<FaultRecord> faults;

  bool clean() const {
    return !aborted && !degraded && faults.empty() && condition1_margin_min >= sigma_used &&
           Cr_min >= c_min_used;
  }
};

struct TimeSeries {
  static constexpr std::array<const char*, 25> columns = {
      "t",        "x",     "y",      "psi",    "u_r",    "v_r",    "r",
      "theta",    "x_bp",  "y_bp",   "psi_d",  "psi_tilde", "r_d", "r_tilde",
      "C_r",      "g",     "G1",     "x_hat",  "y_hat",  "Vx_hat", "Vy_hat",
      "VT_hat",   "VN_hat", "tau_u", "tau_r"};
  std::vector<std::array<double, 25>> rows;
};

struct RunResult {
  TimeSeries series;
  MonitorReport monitor;
  FeasibilityReport feasibility;
};

/// Integrates the coupled plant + observer + path-variable states at a fixed
/// step. Controls are recomputed at every integrator stage. Throws
/// FeasibilityError when the scenario is refused at admission (unless
/// cfg.force). A mid-run fault flushes the partial log and sets
/// monitor.aborted instead of throwing.
RunResult run_scenario(const ScenarioConfig& cfg);

void write_csv(const TimeSeries& ts, std::ostream& out);
std::string monitor_to_json(const MonitorReport& m);

}  // namespace helm
