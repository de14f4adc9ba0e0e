#pragma once

#include <array>

#include "helm/guidance.hpp"
#include "helm/observer.hpp"
#include "helm/vessel.hpp"

namespace helm {

struct ControlGains {
  double k_u = 0.1;  // surge P gain, 1/s
  double k1 = 25.0;  // yaw-rate gain, 1/s
  double k2 = 40.0;  // heading gain, 1/s^2
};

void validate(const ControlGains& g);

/// Feedback-linearising surge controller tracking u_rd. The damping
/// compensation uses the reference velocity, so the closed loop decays at
/// rate k_u + d11/m11.
double surge_control(const VesselParams& p, const VesselState& s, double u_rd, double du_rd,
                     double k_u);

/// Partial derivatives of the desired yaw rate, one dual pass per argument.
struct RdPartials {
  std::array<double, kRdHCount> dh{};  // (theta, v_r, u_r, u_rd, du_rd, VT_hat, VN_hat)
  double dy_bp = 0.0;
  double dx_bp = 0.0;
  double dpsi_tilde = 0.0;
  double dx_tilde = 0.0;
  double dy_tilde = 0.0;
};

RdPartials rd_partials(const RdArgsD& args, const RdContext& ctx);

/// Time derivatives of the h bundle, all built from known signals.
struct HDot {
  double theta_dot = 0.0;
  double dv_r = 0.0;
  double du_r = 0.0;
  double du_rd = 0.0;
  double ddu_rd = 0.0;
  double dVT_hat = 0.0;
  double dVN_hat = 0.0;
};

/// Yaw-moment controller: coupling cancellation, feedforward of the known
/// part of d(r_d)/dt, and PD feedback on (psi_tilde, r_tilde). The unknown
/// estimation-error contributions are exactly the terms left out.
double yaw_control(const VesselParams& p, const VesselState& s, const RdArgsD& args,
                   const RdEval<double>& eval, const RdPartials& partials, const HDot& hdot,
                   const ControlGains& cg, const ObserverGains& og, double k_delta);

}  // namespace helm
