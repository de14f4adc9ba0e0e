#include "helm/path.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "helm/errors.hpp"

namespace helm {

namespace {

constexpr double kPi = std::numbers::pi;

// 5-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlNode[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                               0.5384693101056831, 0.9061798459386640};
constexpr double kGlWeight[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                 0.4786286704993665, 0.2369268850561891};

struct SineShape {
  double A, w;
  double yp(double x) const { return A * w * std::cos(w * x); }
  double ypp(double x) const { return -A * w * w * std::sin(w * x); }
  double yppp(double x) const { return -A * w * w * w * std::cos(w * x); }
  double speed(double x) const {
    const double t = yp(x);
    return std::sqrt(1.0 + t * t);
  }
};

double golden_minimize(double a, double b, int iters, const auto& f) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

PathGeometry PathGeometry::line(double origin_x, double origin_y, double heading) {
  PathGeometry p;
  p.kind_ = Kind::line;
  p.p0 = origin_x;
  p.p1 = origin_y;
  p.p2 = heading;
  p.kappa_max_ = 0.0;
  return p;
}

PathGeometry PathGeometry::circle(double center_x, double center_y, double radius) {
  if (!(radius > 0.0)) throw ConfigError("path: circle radius must be positive");
  PathGeometry p;
  p.kind_ = Kind::circle;
  p.p0 = center_x;
  p.p1 = center_y;
  p.p2 = radius;
  p.kappa_max_ = 1.0 / radius;
  return p;
}

PathGeometry PathGeometry::sine(double amplitude, double wavenumber, double length) {
  if (!(length > 0.0) || !(wavenumber > 0.0)) throw ConfigError("path: sine needs positive wavenumber and length");
  PathGeometry p;
  p.kind_ = Kind::sine;
  p.p0 = amplitude;
  p.p1 = wavenumber;
  p.p2 = length;
  // |kappa| grows monotonically toward a crest, so the in-domain maximum is
  // A*w^2 once a crest is covered and the endpoint value otherwise.
  if (wavenumber * length >= kPi / 2.0) {
    p.kappa_max_ = std::abs(amplitude) * wavenumber * wavenumber;
  } else {
    const double s = std::sin(wavenumber * length);
    const double c = std::cos(wavenumber * length);
    const double v2 = 1.0 + amplitude * amplitude * wavenumber * wavenumber * c * c;
    p.kappa_max_ = std::abs(amplitude) * wavenumber * wavenumber * s / (v2 * std::sqrt(v2));
  }

  // Cumulative arc length on a uniform x grid, each cell integrated with
  // 5-point Gauss-Legendre. Table density: >= 64 samples per wave period.
  const SineShape sh{amplitude, wavenumber};
  const double period = 2.0 * kPi / wavenumber;
  const size_t n = std::max<size_t>(1024, static_cast<size_t>(64.0 * length / period) + 1);
  p.sx_.resize(n + 1);
  p.ss_.resize(n + 1);
  const double dx = length / static_cast<double>(n);
  p.sx_[0] = 0.0;
  p.ss_[0] = 0.0;
  for (size_t i = 1; i <= n; ++i) {
    const double x0 = static_cast<double>(i - 1) * dx;
    const double x1 = static_cast<double>(i) * dx;
    double cell = 0.0;
    for (int k = 0; k < 5; ++k) {
      const double x = 0.5 * (x0 + x1) + 0.5 * (x1 - x0) * kGlNode[k];
      cell += kGlWeight[k] * sh.speed(x);
    }
    cell *= 0.5 * (x1 - x0);
    p.sx_[i] = x1;
    p.ss_[i] = p.ss_[i - 1] + cell;
  }
  p.arc_total_ = p.ss_[n];
  p.theta_min_ = 0.0;
  p.theta_max_ = p.arc_total_;
  return p;
}

double PathGeometry::sine_arc_from(double x_lo, double s_lo, double x) const {
  const SineShape sh{p0, p1};
  double acc = 0.0;
  for (int k = 0; k < 5; ++k) {
    const double xx = 0.5 * (x_lo + x) + 0.5 * (x - x_lo) * kGlNode[k];
    acc += kGlWeight[k] * sh.speed(xx);
  }
  return s_lo + acc * 0.5 * (x - x_lo);
}

double PathGeometry::sine_x_of_theta(double theta) const {
  // Bracket in the table, then Newton-refine s(x) = theta; ds/dx is the
  // local speed, so the iteration converges in a few steps to ~1e-14.
  const SineShape sh{p0, p1};
  const auto it = std::upper_bound(ss_.begin(), ss_.end(), theta);
  size_t i = static_cast<size_t>(std::max<std::ptrdiff_t>(1, it - ss_.begin())) - 1;
  i = std::min(i, ss_.size() - 2);
  double x = sx_[i] + (theta - ss_[i]) / std::max(sh.speed(sx_[i]), 1e-12);
  x = std::clamp(x, sx_.front(), sx_.back());
  for (int iter = 0; iter < 6; ++iter) {
    const double err = sine_arc_from(sx_[i], ss_[i], x) - theta;
    x -= err / sh.speed(x);
  }
  return x;
}

std::array<double, 2> PathGeometry::position(double theta) const {
  switch (kind_) {
    case Kind::line:
      return {p0 + theta * std::cos(p2), p1 + theta * std::sin(p2)};
    case Kind::circle:
      return {p0 + p2 * std::cos(theta / p2), p1 + p2 * std::sin(theta / p2)};
    case Kind::sine: {
      if (theta < theta_min_ || theta > theta_max_) {
        const double end = theta < theta_min_ ? theta_min_ : theta_max_;
        const double over = theta - end;
        const auto base = position(end);
        const double ang = tangent_angle(end);
        return {base[0] + over * std::cos(ang), base[1] + over * std::sin(ang)};
      }
      const double x = sine_x_of_theta(theta);
      return {x, p0 * std::sin(p1 * x)};
    }
  }
  return {0.0, 0.0};
}

double PathGeometry::tangent_angle(double theta) const {
  switch (kind_) {
    case Kind::line:
      return p2;
    case Kind::circle:
      return theta / p2 + kPi / 2.0;
    case Kind::sine: {
      const double x = sine_x_of_theta(std::clamp(theta, theta_min_, theta_max_));
      const SineShape sh{p0, p1};
      return std::atan(sh.yp(x));
    }
  }
  return 0.0;
}

double PathGeometry::curvature(double theta) const {
  switch (kind_) {
    case Kind::line:
      return 0.0;
    case Kind::circle:
      return 1.0 / p2;
    case Kind::sine: {
      if (theta < theta_min_ || theta > theta_max_) return 0.0;
      const double x = sine_x_of_theta(theta);
      const SineShape sh{p0, p1};
      const double v = sh.speed(x);
      return sh.ypp(x) / (v * v * v);
    }
  }
  return 0.0;
}

double PathGeometry::curvature_deriv(double theta) const {
  switch (kind_) {
    case Kind::line:
    case Kind::circle:
      return 0.0;
    case Kind::sine: {
      if (theta < theta_min_ || theta > theta_max_) return 0.0;
      const double x = sine_x_of_theta(theta);
      const SineShape sh{p0, p1};
      const double v = sh.speed(x);
      const double v2 = v * v;
      // d(kappa)/d(theta) = (1/v) * d/dx [ypp / v^3]
      return sh.yppp(x) / (v2 * v2) - 3.0 * sh.yp(x) * sh.ypp(x) * sh.ypp(x) / (v2 * v2 * v2);
    }
  }
  return 0.0;
}

FrameError frame_error(const PathGeometry& path, double theta, double pos_x, double pos_y) {
  const auto p = path.position(theta);
  const double g = path.tangent_angle(theta);
  const double dx = pos_x - p[0];
  const double dy = pos_y - p[1];
  const double cg = std::cos(g);
  const double sg = std::sin(g);
  FrameError fe;
  fe.x_bp = cg * dx + sg * dy;
  fe.y_bp = -sg * dx + cg * dy;
  fe.theta = theta;
  return fe;
}

double project_initial_theta(const PathGeometry& path, double pos_x, double pos_y) {
  double theta_star = 0.0;
  switch (path.kind()) {
    case PathGeometry::Kind::line: {
      const double cg = std::cos(path.p2);
      const double sg = std::sin(path.p2);
      theta_star = cg * (pos_x - path.p0) + sg * (pos_y - path.p1);
      break;
    }
    case PathGeometry::Kind::circle: {
      const double dx = pos_x - path.p0;
      const double dy = pos_y - path.p1;
      double ang = std::atan2(dy, dx);
      if (ang < 0.0) ang += 2.0 * kPi;
      theta_star = path.p2 * ang;
      break;
    }
    case PathGeometry::Kind::sine: {
      const auto dist2 = [&](double th) {
        const auto p = path.position(th);
        const double ddx = pos_x - p[0];
        const double ddy = pos_y - p[1];
        return ddx * ddx + ddy * ddy;
      };
      // Coarse scan, then golden-section refinement of the best bracket.
      const size_t n = 2048;
      const double lo = path.theta_min(), hi = path.theta_max();
      double best = lo, best_d = dist2(lo);
      for (size_t i = 1; i <= n; ++i) {
        const double th = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
        const double d = dist2(th);
        if (d < best_d) {
          best_d = d;
          best = th;
        }
      }
      const double h = (hi - lo) / static_cast<double>(n);
      theta_star = golden_minimize(std::max(lo, best - h), std::min(hi, best + h), 80, dist2);
      break;
    }
  }
  const FrameError fe = frame_error(path, theta_star, pos_x, pos_y);
  if (std::abs(fe.y_bp) >= path.tube_radius())
    throw FeasibilityError("initial position outside the parametrisation tube");
  return theta_star;
}

double theta_dot(const PathGeometry& path, const FrameError& fe, double u_t, double chi,
                 double VT_hat, double k_delta, double sigma_floor) {
  const double kappa = path.curvature(fe.theta);
  const double denom = 1.0 - kappa * fe.y_bp;
  if (denom < std::max(sigma_floor, 1e-12))
    throw SimFault("parametrisation singularity: 1 - kappa*y_bp = " + std::to_string(denom), 0.0);
  double d_ang = chi - path.tangent_angle(fe.theta);
  d_ang = std::remainder(d_ang, 2.0 * kPi);  // wrapped to (-pi, pi]
  return (u_t * std::cos(d_ang) + VT_hat + k_delta * fe.x_bp) / denom;
}

}  // namespace helm
