#include "helm/sim.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include <json.hpp>

#include "helm/errors.hpp"

namespace helm {

namespace {

// State layout inside the integrated vector.
enum : std::size_t { iX, iY, iPsi, iUr, iVr, iR, iXh, iYh, iVxh, iVyh, iTheta };

struct Runtime {
  const ScenarioConfig* cfg = nullptr;
  PathGeometry path;
  HydroCoeffs hydro;
  RdContext rd_ctx;
  double sigma_floor = 0.0;
  double tube_sigma = 0.0;

  // measurement held over the current step
  double meas_off_x = 0.0;
  double meas_off_y = 0.0;

  // Condition 2 fault policy: hold the last valid yaw command
  double last_tau_r = 0.0;
  bool tau_exceeded = false;
  MonitorReport monitor;
};

/// Everything derived from one (t, state) point; shared by the integrator
/// stages and the logger.
struct ControlPoint {
  FrameError fe;
  double gamma_p = 0.0;
  double VT_hat = 0.0, VN_hat = 0.0, dVT_hat = 0.0, dVN_hat = 0.0;
  double u_rd = 0.0, du_rd = 0.0;
  double psi_d = 0.0, psi_tilde = 0.0, r_tilde = 0.0;
  RdEval<double> eval;
  double tau_u = 0.0, tau_r = 0.0;
  bool cr_fault = false;
};

ControlPoint compute_control(double t, const std::array<double, kStateSize>& y, Runtime& rt) {
  const ScenarioConfig& cfg = *rt.cfg;
  ControlPoint cp;

  const double meas_x = y[iX] + rt.meas_off_x;
  const double meas_y = y[iY] + rt.meas_off_y;
  const double x_tilde = meas_x - y[iXh];
  const double y_tilde = meas_y - y[iYh];

  cp.fe = frame_error(rt.path, y[iTheta], meas_x, meas_y);
  cp.gamma_p = rt.path.tangent_angle(y[iTheta]);
  const double kappa = rt.path.curvature(y[iTheta]);

  const double margin = 1.0 - kappa * cp.fe.y_bp;
  rt.monitor.condition1_margin_min = std::min(rt.monitor.condition1_margin_min, margin);
  if (margin < std::max(rt.sigma_floor, 1e-12))
    throw SimFault("parametrisation singularity: 1 - kappa*y_bp = " + std::to_string(margin), t);
  if (std::abs(cp.fe.y_bp) > rt.tube_sigma) rt.monitor.tube_excursion = true;

  cp.u_rd = cfg.reference.u_rd(t);
  cp.du_rd = cfg.reference.du_rd(t);

  const double cg = std::cos(cp.gamma_p);
  const double sg = std::sin(cp.gamma_p);
  cp.VT_hat = y[iVxh] * cg + y[iVyh] * sg;
  cp.VN_hat = -y[iVxh] * sg + y[iVyh] * cg;

  const double u_td2 = cp.u_rd * cp.u_rd + y[iVr] * y[iVr];
  if (!(u_td2 - cp.VN_hat * cp.VN_hat > 0.0))
    throw SimFault("guidance infeasible: current exceeds speed", t);

  RdArgsD args;
  args.theta = y[iTheta];
  args.v_r = y[iVr];
  args.u_r = y[iUr];
  args.u_rd = cp.u_rd;
  args.du_rd = cp.du_rd;
  args.VT_hat = cp.VT_hat;
  args.VN_hat = cp.VN_hat;
  args.y_bp = cp.fe.y_bp;
  args.x_bp = cp.fe.x_bp;
  args.x_tilde = x_tilde;
  args.y_tilde = y_tilde;

  // psi_tilde needs psi_d, which needs the compensation offset.
  const auto goff = detail::solve_g_t<double>(std::sqrt(u_td2), cp.VN_hat, cp.fe.y_bp, cfg.guidance.Delta);
  cp.psi_d = desired_heading(cp.gamma_p, y[iVr], cp.u_rd, cp.fe.y_bp, goff.g, cfg.guidance.Delta);
  cp.psi_tilde = y[iPsi] - cp.psi_d;
  args.psi_tilde = cp.psi_tilde;

  cp.eval = eval_rd(args, rt.rd_ctx);
  cp.r_tilde = y[iR] - cp.eval.r_d;

  const double abs_cr = std::abs(cp.eval.C_r);
  rt.monitor.Cr_min = rt.monitor.Cr_min < 0.0 ? abs_cr : std::min(rt.monitor.Cr_min, abs_cr);

  VesselState s{y[iX], y[iY], y[iPsi], y[iUr], y[iVr], y[iR]};
  cp.tau_u = surge_control(cfg.vessel, s, cp.u_rd, cp.du_rd, cfg.control.k_u);

  const PathFrameEstimates pfe = path_frame_estimates(
      ObserverState{y[iXh], y[iYh], y[iVxh], y[iVyh]}, cp.gamma_p, cp.eval.gamma_dot, x_tilde,
      y_tilde, cfg.observer.gains);
  cp.dVT_hat = pfe.dVT_hat;
  cp.dVN_hat = pfe.dVN_hat;

  if (abs_cr < cfg.monitors.c_min) {
    cp.cr_fault = true;
    if (!rt.monitor.degraded) {
      rt.monitor.degraded = true;
      rt.monitor.faults.push_back({t, "Condition 2 violated: |C_r| below c_min"});
    }
    cp.tau_r = rt.last_tau_r;
  } else {
    const RdPartials partials = rd_partials(args, rt.rd_ctx);
    HDot hdot;
    hdot.theta_dot = cp.eval.theta_dot;
    hdot.dv_r = rt.hydro.X(y[iUr]) * y[iR] + rt.hydro.Y(y[iUr]) * y[iVr];
    hdot.du_r = surge_coupling(cfg.vessel, y[iVr], y[iR]) - (cfg.vessel.d11 / cfg.vessel.m11) * y[iUr] + cp.tau_u;
    hdot.du_rd = cp.du_rd;
    hdot.ddu_rd = 0.0;  // reference profiles are piecewise linear
    hdot.dVT_hat = cp.dVT_hat;
    hdot.dVN_hat = cp.dVN_hat;
    cp.tau_r = yaw_control(cfg.vessel, s, args, cp.eval, partials, hdot, cfg.control,
                           cfg.observer.gains, cfg.guidance.k_delta);
    rt.last_tau_r = cp.tau_r;
  }

  rt.monitor.v_r_max = std::max(rt.monitor.v_r_max, std::abs(y[iVr]));
  rt.monitor.V3_max = std::max(rt.monitor.V3_max, 0.5 * y[iVr] * y[iVr]);
  rt.monitor.tau_u_max_abs = std::max(rt.monitor.tau_u_max_abs, std::abs(cp.tau_u));
  rt.monitor.tau_r_max_abs = std::max(rt.monitor.tau_r_max_abs, std::abs(cp.tau_r));
  if (!rt.tau_exceeded && (std::abs(cp.tau_u) > cfg.monitors.tau_u_max ||
                           std::abs(cp.tau_r) > cfg.monitors.tau_r_max)) {
    rt.tau_exceeded = true;
    rt.monitor.faults.push_back({t, "actuator sanity bound exceeded"});
  }
  return cp;
}

std::array<double, kStateSize> closed_loop_deriv(double t, const std::array<double, kStateSize>& y,
                                                 Runtime& rt) {
  const ScenarioConfig& cfg = *rt.cfg;
  const ControlPoint cp = compute_control(t, y, rt);

  const VesselState s{y[iX], y[iY], y[iPsi], y[iUr], y[iVr], y[iR]};
  const VesselDerivatives vd = dynamics(cfg.vessel, cfg.environment, s, cp.tau_u, cp.tau_r);
  const ObserverDerivatives od =
      observer_derivatives(ObserverState{y[iXh], y[iYh], y[iVxh], y[iVyh]}, cfg.observer.gains, s,
                           y[iX] + rt.meas_off_x, y[iY] + rt.meas_off_y);

  std::array<double, kStateSize> d;
  d[iX] = vd.dx;
  d[iY] = vd.dy;
  d[iPsi] = vd.dpsi;
  d[iUr] = vd.du_r;
  d[iVr] = vd.dv_r;
  d[iR] = vd.dr;
  d[iXh] = od.dx_hat;
  d[iYh] = od.dy_hat;
  d[iVxh] = od.dVx_hat;
  d[iVyh] = od.dVy_hat;
  d[iTheta] = cp.eval.theta_dot;

  for (double v : d)
    if (!std::isfinite(v)) throw SimFault("non-finite derivative", t);
  return d;
}

std::array<double, 25> make_row(double t, const std::array<double, kStateSize>& y,
                                const ControlPoint& cp) {
  return {t,          y[iX],        y[iY],     y[iPsi],      y[iUr],    y[iVr],
          y[iR],      y[iTheta],    cp.fe.x_bp, cp.fe.y_bp,  cp.psi_d,  cp.psi_tilde,
          cp.eval.r_d, cp.r_tilde,  cp.eval.C_r, cp.eval.goff.g, cp.eval.G1, y[iXh],
          y[iYh],     y[iVxh],      y[iVyh],   cp.VT_hat,    cp.VN_hat, cp.tau_u,
          cp.tau_r};
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg) {
  validate(cfg.vessel);
  validate(cfg.guidance);
  validate(cfg.control);
  validate(cfg.observer.gains);

  RunResult result;
  result.feasibility = check_scenario(cfg);

  Runtime rt;
  rt.cfg = &cfg;
  rt.path = cfg.path.build();
  rt.hydro = hydro_coeffs(cfg.vessel);
  rt.rd_ctx.path = &rt.path;
  rt.rd_ctx.hydro = rt.hydro;
  rt.rd_ctx.Delta = cfg.guidance.Delta;
  rt.rd_ctx.k_delta = cfg.guidance.k_delta;
  rt.rd_ctx.kx2 = cfg.observer.gains.kx2;
  rt.rd_ctx.ky2 = cfg.observer.gains.ky2;
  rt.sigma_floor = cfg.monitors.sigma_floor.value_or(
      std::isfinite(result.feasibility.sigma) ? result.feasibility.sigma : 0.0);
  rt.tube_sigma = result.feasibility.tube_radius_sigma;
  rt.monitor.sigma_used = rt.sigma_floor;
  rt.monitor.c_min_used = cfg.monitors.c_min;
  rt.monitor.Cr_min = -1.0;  // sentinel until the first evaluation

  const double theta0 = project_initial_theta(rt.path, cfg.initial.x, cfg.initial.y);
  const FrameError fe0 = frame_error(rt.path, theta0, cfg.initial.x, cfg.initial.y);
  if (!cfg.force) {
    if (!result.feasibility.pass())
      throw FeasibilityError("scenario refused: feasibility checks failed (use force to override)");
    if (std::abs(fe0.y_bp) >= result.feasibility.tube_radius_sigma)
      throw FeasibilityError("scenario refused: initial cross-track error outside certified tube");
  }

  std::array<double, kStateSize> y{};
  y[iX] = cfg.initial.x;
  y[iY] = cfg.initial.y;
  y[iPsi] = cfg.initial.psi;
  y[iUr] = cfg.initial.u_r;
  y[iVr] = cfg.initial.v_r;
  y[iR] = cfg.initial.r;
  y[iXh] = cfg.initial.x;  // estimator starts at the measured position
  y[iYh] = cfg.initial.y;
  y[iVxh] = cfg.observer.Vx_hat0;
  y[iVyh] = cfg.observer.Vy_hat0;
  y[iTheta] = theta0;

  std::mt19937_64 rng(cfg.observer.noise_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const long n_steps = std::lround(cfg.t_end / cfg.dt);
  result.series.rows.reserve(static_cast<size_t>(n_steps / cfg.log_every) + 2);

  const auto f = [&rt](double t, const std::array<double, kStateSize>& s) {
    return closed_loop_deriv(t, s, rt);
  };

  try {
    for (long k = 0; k <= n_steps; ++k) {
      const double t = static_cast<double>(k) * cfg.dt;
      if (cfg.observer.noise_std > 0.0) {
        rt.meas_off_x = cfg.observer.noise_std * gauss(rng);
        rt.meas_off_y = cfg.observer.noise_std * gauss(rng);
      }
      if (k % cfg.log_every == 0 || k == n_steps) {
        const ControlPoint cp = compute_control(t, y, rt);
        result.series.rows.push_back(make_row(t, y, cp));
      }
      if (k == n_steps) break;
      y = rk4_step(f, y, t, cfg.dt);
      for (double v : y)
        if (!std::isfinite(v)) throw SimFault("non-finite state", t + cfg.dt);
    }
  } catch (const SimFault& fault) {
    rt.monitor.aborted = true;
    rt.monitor.faults.push_back({fault.time(), fault.what()});
  }

  result.monitor = rt.monitor;
  if (result.monitor.Cr_min < 0.0) result.monitor.Cr_min = 0.0;
  return result;
}

void write_csv(const TimeSeries& ts, std::ostream& out) {
  for (size_t i = 0; i < ts.columns.size(); ++i) out << (i ? "," : "") << ts.columns[i];
  out << "\n";
  char buf[40];
  for (const auto& row : ts.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
      if (i) out << ',';
      out << buf;
    }
    out << "\n";
  }
}

std::string monitor_to_json(const MonitorReport& m) {
  nlohmann::json j;
  j["condition1_margin_min"] = m.condition1_margin_min;
  j["Cr_min"] = m.Cr_min;
  j["v_r_max"] = m.v_r_max;
  j["V3_max"] = m.V3_max;
  j["tau_u_max_abs"] = m.tau_u_max_abs;
  j["tau_r_max_abs"] = m.tau_r_max_abs;
  j["tube_excursion"] = m.tube_excursion;
  j["degraded"] = m.degraded;
  j["aborted"] = m.aborted;
  j["sigma_used"] = m.sigma_used;
  j["c_min_used"] = m.c_min_used;
  j["clean"] = m.clean();
  j["faults"] = nlohmann::json::array();
  for (const auto& f : m.faults) j["faults"].push_back({{"t", f.t}, {"what", f.what}});
  return j.dump(2);
}

}  // namespace helm
