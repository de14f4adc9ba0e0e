#pragma once

#include <cmath>
#include <random>

#include "helm/scenario.hpp"
#include "helm/sim.hpp"

namespace helm::test {

/// The shipped supply-vessel parameter set (kept in sync with
/// configs/vessels/fredriksen.toml).
inline VesselParams test_vessel() {
  VesselParams p;
  p.m11 = 120000.0;
  p.m22 = 180000.0;
  p.m23 = 90000.0;
  p.m33 = 3.0e6;
  p.d11 = 20000.0;
  p.d22 = 80000.0;
  p.d23 = 15000.0;
  p.d32 = 15000.0;
  p.d33 = 2.4e6;
  return p;
}

/// Circular case-study scenario built inline (no file dependencies).
inline ScenarioConfig case_study_config() {
  ScenarioConfig cfg;
  cfg.vessel = test_vessel();
  cfg.environment.Vx = -1.0;
  cfg.environment.Vy = 1.2;
  cfg.environment.Vmax = cfg.environment.speed();
  cfg.path.kind = PathGeometry::Kind::circle;
  cfg.path.radius = 400.0;
  cfg.path.center_x = 0.0;
  cfg.path.center_y = 0.0;
  cfg.guidance.Delta = 40.0;
  cfg.guidance.k_delta = 0.1;
  cfg.control.k_u = 0.1;
  cfg.control.k1 = 25.0;
  cfg.control.k2 = 40.0;
  cfg.observer.gains = ObserverGains{1.0, 1.0, 0.1, 0.1};
  cfg.reference.constant = 5.0;
  cfg.initial = InitialState{0.0, 0.0, 0.0, 700.0, 10.0, 1.5707963267948966};
  cfg.dt = 0.01;
  cfg.t_end = 1000.0;
  cfg.log_every = 1;
  return cfg;
}

/// Central difference with one Richardson extrapolation step: O(h^4).
template <class F>
double richardson_derivative(F&& f, double x, double h) {
  const double d_h = (f(x + h) - f(x - h)) / (2.0 * h);
  const double d_h2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
  return (4.0 * d_h2 - d_h) / 3.0;
}

/// Relative agreement with an absolute floor of 1.
inline bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Least-squares fit of y = a + b*x; returns (a, b, r_squared).
struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r2 = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LineFit f;
  const double denom = n * sxx - sx * sx;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double mean = sy / n;
  for (size_t i = 0; i < n; ++i) {
    const double fit = f.intercept + f.slope * x[i];
    ss_res += (y[i] - fit) * (y[i] - fit);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

inline size_t column_index(const char* name) {
  for (size_t i = 0; i < TimeSeries::columns.size(); ++i)
    if (std::string_view(TimeSeries::columns[i]) == name) return i;
  throw std::runtime_error(std::string("no column ") + name);
}

/// Random state inside the certified tube of the case-study circle, in the
/// operating envelope the feasibility checks admit.
inline RdArgsD random_in_tube_args(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const auto uni = [&](double lo, double hi) { return lo + (hi - lo) * u01(rng); };
  RdArgsD a;
  a.theta = uni(0.0, 2.0 * 3.14159265358979 * 400.0);
  a.v_r = uni(-1.0, 1.0);
  a.u_r = uni(3.5, 6.0);
  a.u_rd = 5.0;
  a.du_rd = uni(-0.1, 0.1);
  a.VT_hat = uni(-1.6, 1.6);
  a.VN_hat = uni(-1.6, 1.6);
  a.y_bp = uni(-250.0, 250.0);
  a.x_bp = uni(-5.0, 5.0);
  a.psi_tilde = uni(-0.6, 0.6);
  a.x_tilde = uni(-3.0, 3.0);
  a.y_tilde = uni(-3.0, 3.0);
  return a;
}

}  // namespace helm::test
