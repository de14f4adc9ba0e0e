#pragma once

#include "helm/dual.hpp"
#include "helm/errors.hpp"
#include "helm/path.hpp"
#include "helm/vessel.hpp"

namespace helm {

struct GuidanceGains {
  double Delta = 40.0;    // look-ahead distance, m
  double k_delta = 0.1;   // along-track restoring gain, 1/s
};

void validate(const GuidanceGains& g);

/// Current-compensation offset g and the coefficients of the quadratic it
/// solves: a*q^2 + 2*b*q + c = 0 with q = g/VN_hat, a = VN_hat^2 - u_td^2,
/// b = y_bp*VN_hat, c = Delta^2 + y_bp^2. The stored partials are the exact
/// derivatives of the closed-form root with respect to (a, b, c).
struct GOffset {
  double g = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double sqrt_disc = 0.0;  // sqrt(b^2 - a*c)
  double dg_da = 0.0;
  double dg_db = 0.0;
  double dg_dc = 0.0;
  bool clamped = false;  // discriminant hit the floor (degenerate input)
};

/// Everything the yaw-rate construction produces at one state. C_r is the
/// coefficient multiplying the yaw rate in the heading-error dynamics.
struct GuidanceOutput {
  double psi_d = 0.0;
  double r_d = 0.0;
  double C_r = 0.0;
  GOffset g;
  double G1 = 0.0;
};

namespace detail {

constexpr double kDiscFloor = 1e-12;

template <class T>
struct GOffsetT {
  T a{}, b{}, c{}, sqrt_disc{}, g{}, dg_da{}, dg_db{}, dg_dc{};
  bool clamped = false;
};

// Positive root of the compensation quadratic, with the same sign as VN_hat.
// Assumption 3 keeps u_td^2 - VN_hat^2 > 0; the caller guards it.
template <class T>
GOffsetT<T> solve_g_t(const T& u_td, const T& VN_hat, const T& y_bp, double delta) {
  GOffsetT<T> o;
  o.a = VN_hat * VN_hat - u_td * u_td;
  o.b = y_bp * VN_hat;
  o.c = T(delta * delta) + y_bp * y_bp;
  T disc = o.b * o.b - o.a * o.c;
  if (value_of(disc) < kDiscFloor) {
    disc = T(kDiscFloor);
    o.clamped = true;
  }
  o.sqrt_disc = sqrt(disc);
  o.g = VN_hat * (o.b + o.sqrt_disc) / (-o.a);
  o.dg_da = VN_hat * o.c / (T(2.0) * o.a * o.sqrt_disc) + VN_hat * (o.b + o.sqrt_disc) / (o.a * o.a);
  o.dg_db = VN_hat * (o.b + o.sqrt_disc) / (-o.a * o.sqrt_disc);
  o.dg_dc = VN_hat / (T(2.0) * o.sqrt_disc);
  return o;
}

}  // namespace detail

/// Solves the compensation offset for the normal current component.
/// Throws SimFault when u_td^2 <= VN_hat^2 (current exceeds achievable speed).
GOffset solve_g(double u_td, double VN_hat, double y_bp, double Delta);

/// Three-term steering law: path tangent feedforward, desired sideslip
/// compensation, and the current-compensated line-of-sight term.
double desired_heading(double gamma_p, double v_r, double u_rd, double y_bp, double g,
                       double Delta);

/// Perturbing term of the cross-track error dynamics; vanishes with
/// (psi_tilde, u_tilde, x_bp) and grows at most linearly in them.
double perturbation_g1(double psi_tilde, double u_tilde, double x_bp, double psi, double gamma_p,
                       double y_bp, double g, double Delta, double u_td, double gamma_dot);

/// Yaw-rate coefficient of the heading-error dynamics (must stay away from
/// zero for the yaw controller to exist).
double coefficient_cr(double u_r, double u_rd, double v_r, double y_bp, const GOffset& goff,
                      double Delta, const HydroCoeffs& hydro);

/// Argument bundle of the desired yaw rate. The first seven entries form the
/// group whose time derivatives contain no estimation-error terms.
template <class T>
struct RdArgs {
  T theta{};      // path variable, m
  T v_r{};        // m/s
  T u_r{};        // m/s
  T u_rd{};       // m/s
  T du_rd{};      // m/s^2
  T VT_hat{};     // m/s
  T VN_hat{};     // m/s
  T y_bp{};       // m
  T x_bp{};       // m
  T psi_tilde{};  // rad
  T x_tilde{};    // m
  T y_tilde{};    // m
};

using RdArgsD = RdArgs<double>;

constexpr int kRdArgCount = 12;
constexpr int kRdHCount = 7;

/// Constants captured by the yaw-rate evaluator.
struct RdContext {
  const PathGeometry* path = nullptr;
  HydroCoeffs hydro;
  double Delta = 40.0;
  double k_delta = 0.1;
  double kx2 = 0.1;  // observer current gains, used for the innovation terms
  double ky2 = 0.1;
};

/// Full evaluation bundle at one point. All members are closed-form in the
/// twelve arguments, which is what makes the dual-channel partials exact.
template <class T>
struct RdEval {
  T gamma_p{}, kappa{}, theta_dot{}, gamma_dot{};
  T u_td{};
  detail::GOffsetT<T> goff;
  T psi_d{}, psi{};
  T G1{};
  T C_r{};
  T big_bracket{};  // 1 + dg_dc*2*y_bp + dg_db*VN_hat
  T vn_hat_dot{};   // reconstructed d(VN_hat)/dt
  T los_depth{};    // sqrt(Delta^2 + (y_bp + g)^2)
  T r_d{};
};

/// Desired yaw rate as a single closed-form expression of its arguments.
/// The expansion u_t*cos(chi - gamma_p) = u_r*cos(psi - gamma_p) -
/// v_r*sin(psi - gamma_p) keeps the function smooth at zero speed.
template <class T>
RdEval<T> eval_rd(const RdArgs<T>& in, const RdContext& ctx) {
  RdEval<T> e;
  e.gamma_p = path_tangent_angle(*ctx.path, in.theta);
  e.kappa = path_curvature(*ctx.path, in.theta);

  const T u_td2 = in.u_rd * in.u_rd + in.v_r * in.v_r;
  e.u_td = sqrt(u_td2);
  e.goff = detail::solve_g_t(e.u_td, in.VN_hat, in.y_bp, ctx.Delta);

  const T y_g = in.y_bp + e.goff.g;
  const T depth2 = T(ctx.Delta * ctx.Delta) + y_g * y_g;
  e.los_depth = sqrt(depth2);

  e.psi_d = e.gamma_p - atan(in.v_r / in.u_rd) - atan(y_g / T(ctx.Delta));
  e.psi = in.psi_tilde + e.psi_d;

  const T cpg = cos(e.psi - e.gamma_p);
  const T spg = sin(e.psi - e.gamma_p);
  e.theta_dot = (in.u_r * cpg - in.v_r * spg + in.VT_hat + ctx.k_delta * in.x_bp) /
                (T(1.0) - e.kappa * in.y_bp);
  e.gamma_dot = e.kappa * e.theta_dot;

  const T sg = sin(e.gamma_p);
  const T cg = cos(e.gamma_p);
  e.vn_hat_dot = -ctx.kx2 * in.x_tilde * sg + ctx.ky2 * in.y_tilde * cg - in.VT_hat * e.gamma_dot;

  const T X_u = ctx.hydro.ax * in.u_r + T(ctx.hydro.bx);
  const T Y_u = ctx.hydro.ay * in.u_r + T(ctx.hydro.by);

  e.C_r = T(1.0) + X_u * in.u_rd / u_td2 -
          e.goff.dg_da * T(2.0) * in.v_r * X_u * T(ctx.Delta) / depth2;

  const T u_tilde = in.u_r - in.u_rd;
  e.G1 = e.u_td * (T(1.0) - cos(in.psi_tilde)) * (y_g / e.los_depth) + u_tilde * spg +
         e.u_td * (T(ctx.Delta) / e.los_depth) * sin(in.psi_tilde) - in.x_bp * e.gamma_dot;

  e.big_bracket = T(1.0) + e.goff.dg_dc * T(2.0) * in.y_bp + e.goff.dg_db * in.VN_hat;

  const T sideslip_rate = (Y_u * in.v_r * in.u_rd - in.du_rd * in.v_r) / u_td2;
  const T adot_known = T(2.0) * in.VN_hat * e.vn_hat_dot - T(2.0) * in.u_rd * in.du_rd -
                       T(2.0) * in.v_r * Y_u * in.v_r;
  const T known_ydot = -e.u_td * in.y_bp / e.los_depth + e.G1;
  const T inner = e.vn_hat_dot * (e.goff.b + e.goff.sqrt_disc) / (-e.goff.a) +
                  e.goff.dg_da * adot_known + e.goff.dg_db * (e.vn_hat_dot * in.y_bp) +
                  e.big_bracket * known_ydot;

  e.r_d = (e.kappa * e.theta_dot - sideslip_rate - (T(ctx.Delta) / depth2) * inner) / e.C_r;
  return e;
}

/// Convenience double-typed wrapper returning the public output bundle.
GuidanceOutput desired_yaw_rate(const RdArgsD& args, const RdContext& ctx);

}  // namespace helm
