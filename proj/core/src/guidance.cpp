#include "helm/guidance.hpp"

#include <cmath>

namespace helm {

void validate(const GuidanceGains& g) {
  if (!(g.Delta > 0.0)) throw ConfigError("guidance: Delta must be positive");
  if (!(g.k_delta > 0.0)) throw ConfigError("guidance: k_delta must be positive");
}

GOffset solve_g(double u_td, double VN_hat, double y_bp, double Delta) {
  if (!(u_td * u_td - VN_hat * VN_hat > 0.0))
    throw SimFault("guidance infeasible: current exceeds speed", 0.0);
  const auto o = detail::solve_g_t<double>(u_td, VN_hat, y_bp, Delta);
  GOffset out;
  out.g = o.g;
  out.a = o.a;
  out.b = o.b;
  out.c = o.c;
  out.sqrt_disc = o.sqrt_disc;
  out.dg_da = o.dg_da;
  out.dg_db = o.dg_db;
  out.dg_dc = o.dg_dc;
  out.clamped = o.clamped;
  return out;
}

double desired_heading(double gamma_p, double v_r, double u_rd, double y_bp, double g,
                       double Delta) {
  return gamma_p - std::atan(v_r / u_rd) - std::atan((y_bp + g) / Delta);
}

double perturbation_g1(double psi_tilde, double u_tilde, double x_bp, double psi, double gamma_p,
                       double y_bp, double g, double Delta, double u_td, double gamma_dot) {
  const double y_g = y_bp + g;
  const double depth = std::sqrt(Delta * Delta + y_g * y_g);
  return u_td * (1.0 - std::cos(psi_tilde)) * (y_g / depth) +
         u_tilde * std::sin(psi - gamma_p) + u_td * (Delta / depth) * std::sin(psi_tilde) -
         x_bp * gamma_dot;
}

double coefficient_cr(double u_r, double u_rd, double v_r, double y_bp, const GOffset& goff,
                      double Delta, const HydroCoeffs& hydro) {
  const double X_u = hydro.X(u_r);
  const double y_g = y_bp + goff.g;
  const double depth2 = Delta * Delta + y_g * y_g;
  return 1.0 + X_u * u_rd / (u_rd * u_rd + v_r * v_r) -
         goff.dg_da * 2.0 * v_r * X_u * Delta / depth2;
}

GuidanceOutput desired_yaw_rate(const RdArgsD& args, const RdContext& ctx) {
  if (!(args.u_rd * args.u_rd + args.v_r * args.v_r - args.VN_hat * args.VN_hat > 0.0))
    throw SimFault("guidance infeasible: current exceeds speed", 0.0);
  const RdEval<double> e = eval_rd(args, ctx);
  GuidanceOutput out;
  out.psi_d = e.psi_d;
  out.r_d = e.r_d;
  out.C_r = e.C_r;
  out.G1 = e.G1;
  out.g.g = e.goff.g;
  out.g.a = e.goff.a;
  out.g.b = e.goff.b;
  out.g.c = e.goff.c;
  out.g.sqrt_disc = e.goff.sqrt_disc;
  out.g.dg_da = e.goff.dg_da;
  out.g.dg_db = e.goff.dg_db;
  out.g.dg_dc = e.goff.dg_dc;
  out.g.clamped = e.goff.clamped;
  return out;
}

}  // namespace helm
