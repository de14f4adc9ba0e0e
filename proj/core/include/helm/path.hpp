#pragma once

#include <array>
#include <limits>
#include <vector>

#include "helm/dual.hpp"

namespace helm {

/// Along-track / cross-track error of a point relative to the frame at theta.
struct FrameError {
  double x_bp = 0.0;   // m, deviation along the tangent
  double y_bp = 0.0;   // m, deviation along the normal
  double theta = 0.0;  // m, arc length of the frame origin
};

/// Arc-length parametrised planar curve. The parametrisation is unit speed,
/// so the tangent angle satisfies d(gamma_p)/d(theta) = curvature exactly.
/// Evaluators are immutable after construction and safe to share across threads.
class PathGeometry {
public:
  enum class Kind { line, circle, sine };

  static PathGeometry line(double origin_x, double origin_y, double heading);
  /// Counter-clockwise circle; curvature is +1/radius.
  static PathGeometry circle(double center_x, double center_y, double radius);
  /// y = amplitude * sin(wavenumber * x) for x in [0, length], extended by
  /// straight tangents outside. Arc length is tabulated numerically.
  static PathGeometry sine(double amplitude, double wavenumber, double length);

  Kind kind() const { return kind_; }
  std::array<double, 2> position(double theta) const;
  double tangent_angle(double theta) const;  // continuous in theta, not wrapped
  double curvature(double theta) const;
  double curvature_deriv(double theta) const;  // d(kappa)/d(theta)
  double kappa_max() const { return kappa_max_; }

  /// Usable theta range. Lines and circles are unbounded.
  double theta_min() const { return theta_min_; }
  double theta_max() const { return theta_max_; }

  /// 1/kappa_max; +infinity for straight lines.
  double tube_radius() const {
    return kappa_max_ > 0.0 ? 1.0 / kappa_max_ : std::numeric_limits<double>::infinity();
  }

  // Construction parameters (used for config round-trips and plotting).
  double p0 = 0.0, p1 = 0.0, p2 = 0.0;  // line: ox,oy,heading; circle: cx,cy,R;
                                        // sine: A,omega,length

  PathGeometry() = default;  // a line through the origin

private:
  double sine_x_of_theta(double theta) const;
  double sine_arc_from(double x_lo, double s_lo, double x) const;

  Kind kind_ = Kind::line;
  double kappa_max_ = 0.0;
  double theta_min_ = -std::numeric_limits<double>::infinity();
  double theta_max_ = std::numeric_limits<double>::infinity();

  // sine arc-length table: cumulative arc length at uniform x samples
  std::vector<double> sx_;  // x samples
  std::vector<double> ss_;  // arc length at sx_
  double arc_total_ = 0.0;
};

/// Rotation of (pos - position(theta)) into the path-tangential frame.
FrameError frame_error(const PathGeometry& path, double theta, double pos_x, double pos_y);

/// Arc-length parameter of the closest path point; the returned theta zeroes
/// the along-track error. Throws FeasibilityError when the closest approach
/// lies outside the validity tube.
double project_initial_theta(const PathGeometry& path, double pos_x, double pos_y);

/// Frame propagation rate. chi is the course angle, u_t the total speed.
/// Throws SimFault when the denominator 1 - kappa*y_bp falls below sigma_floor.
double theta_dot(const PathGeometry& path, const FrameError& fe, double u_t, double chi,
                 double VT_hat, double k_delta, double sigma_floor = 0.0);

/// Dual-aware path evaluation: d(gamma_p)/d(theta) = kappa and
/// d(kappa)/d(theta) = curvature_deriv, composed with the seed of theta.
inline double path_tangent_angle(const PathGeometry& p, double theta) {
  return p.tangent_angle(theta);
}
inline Dual path_tangent_angle(const PathGeometry& p, Dual theta) {
  return {p.tangent_angle(theta.v), p.curvature(theta.v) * theta.d};
}
inline double path_curvature(const PathGeometry& p, double theta) { return p.curvature(theta); }
inline Dual path_curvature(const PathGeometry& p, Dual theta) {
  return {p.curvature(theta.v), p.curvature_deriv(theta.v) * theta.d};
}

}  // namespace helm
