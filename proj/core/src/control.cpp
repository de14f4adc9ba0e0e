#include "helm/control.hpp"

namespace helm {

void validate(const ControlGains& g) {
  if (!(g.k_u > 0.0) || !(g.k1 > 0.0) || !(g.k2 > 0.0))
    throw ConfigError("control: k_u, k1, k2 must be strictly positive");
}

double surge_control(const VesselParams& p, const VesselState& s, double u_rd, double du_rd,
                     double k_u) {
  return -surge_coupling(p, s.v_r, s.r) + du_rd + (p.d11 / p.m11) * u_rd - k_u * (s.u_r - u_rd);
}

RdPartials rd_partials(const RdArgsD& args, const RdContext& ctx) {
  RdArgs<Dual> d;
  d.theta = args.theta;
  d.v_r = args.v_r;
  d.u_r = args.u_r;
  d.u_rd = args.u_rd;
  d.du_rd = args.du_rd;
  d.VT_hat = args.VT_hat;
  d.VN_hat = args.VN_hat;
  d.y_bp = args.y_bp;
  d.x_bp = args.x_bp;
  d.psi_tilde = args.psi_tilde;
  d.x_tilde = args.x_tilde;
  d.y_tilde = args.y_tilde;

  Dual* channels[kRdArgCount] = {&d.theta, &d.v_r,       &d.u_r,     &d.u_rd,
                                 &d.du_rd, &d.VT_hat,    &d.VN_hat,  &d.y_bp,
                                 &d.x_bp,  &d.psi_tilde, &d.x_tilde, &d.y_tilde};

  RdPartials out;
  double* slots[kRdArgCount] = {&out.dh[0], &out.dh[1],      &out.dh[2],   &out.dh[3],
                                &out.dh[4], &out.dh[5],      &out.dh[6],   &out.dy_bp,
                                &out.dx_bp, &out.dpsi_tilde, &out.dx_tilde, &out.dy_tilde};

  for (int i = 0; i < kRdArgCount; ++i) {
    channels[i]->d = 1.0;
    *slots[i] = eval_rd(d, ctx).r_d.d;
    channels[i]->d = 0.0;
  }
  return out;
}

double yaw_control(const VesselParams& p, const VesselState& s, const RdArgsD& args,
                   const RdEval<double>& eval, const RdPartials& partials, const HDot& hdot,
                   const ControlGains& cg, const ObserverGains& og, double k_delta) {
  const double r_tilde = s.r - eval.r_d;

  double ff = 0.0;  // partials of r_d contracted with the known derivatives
  const double hdots[kRdHCount] = {hdot.theta_dot, hdot.dv_r,    hdot.du_r, hdot.du_rd,
                                   hdot.ddu_rd,    hdot.dVT_hat, hdot.dVN_hat};
  for (int i = 0; i < kRdHCount; ++i) ff += partials.dh[i] * hdots[i];

  const double known_ydot = -eval.u_td * args.y_bp / eval.los_depth + eval.G1;

  return -yaw_coupling(p, s.u_r, s.v_r, s.r) + ff + partials.dy_bp * known_ydot +
         partials.dx_bp * (-k_delta * args.x_bp) + partials.dpsi_tilde * eval.C_r * r_tilde -
         partials.dx_tilde * og.kx1 * args.x_tilde - partials.dy_tilde * og.ky1 * args.y_tilde -
         cg.k1 * r_tilde - cg.k2 * args.psi_tilde;
}

}  // namespace helm
