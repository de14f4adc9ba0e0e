#pragma once

#include <cmath>

namespace helm {

/// Forward-mode derivative scalar with a single infinitesimal channel.
/// Seed exactly one input with d = 1 to obtain the partial derivative of
/// any smooth composition of the overloaded operations.
struct Dual {
  double v = 0.0;  // value
  double d = 0.0;  // derivative channel

  constexpr Dual() = default;
  constexpr Dual(double value) : v(value), d(0.0) {}
  constexpr Dual(double value, double deriv) : v(value), d(deriv) {}
};

constexpr Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
constexpr Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
constexpr Dual operator-(Dual a) { return {-a.v, -a.d}; }
constexpr Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }

inline Dual operator/(Dual a, Dual b) {
  const double inv = 1.0 / b.v;
  const double q = a.v * inv;
  return {q, (a.d - q * b.d) * inv};
}

constexpr bool operator<(Dual a, Dual b) { return a.v < b.v; }
constexpr bool operator>(Dual a, Dual b) { return a.v > b.v; }
constexpr bool operator<=(Dual a, Dual b) { return a.v <= b.v; }
constexpr bool operator>=(Dual a, Dual b) { return a.v >= b.v; }

inline Dual sin(Dual a) { return {std::sin(a.v), std::cos(a.v) * a.d}; }
inline Dual cos(Dual a) { return {std::cos(a.v), -std::sin(a.v) * a.d}; }

inline Dual atan(Dual a) { return {std::atan(a.v), a.d / (1.0 + a.v * a.v)}; }

inline Dual atan2(Dual y, Dual x) {
  const double r2 = x.v * x.v + y.v * y.v;
  return {std::atan2(y.v, x.v), (x.v * y.d - y.v * x.d) / r2};
}

inline Dual sqrt(Dual a) {
  const double s = std::sqrt(a.v);
  return {s, a.d / (2.0 * s)};
}

// Bring the cmath names into scope so generic code can call sin(x) for both
// double and Dual arguments.
using std::atan;
using std::atan2;
using std::cos;
using std::sin;
using std::sqrt;

inline double value_of(double x) { return x; }
inline double value_of(Dual x) { return x.v; }

}  // namespace helm
