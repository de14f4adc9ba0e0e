#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "helm/dual.hpp"
#include "helpers.hpp"

using namespace helm;

namespace {

// Random smooth probe built from {+, *, /, sin, cos, atan, atan2, sqrt};
// every denominator and sqrt argument is kept strictly positive.
template <class T>
T probe(const std::array<double, 10>& c, T x) {
  const T s = sin(c[0] * x + T(c[1]));
  const T q = cos(c[2] * x) * s + atan(c[3] * x + T(c[4]));
  const T root = sqrt(T(1.0) + (c[5] * x) * (c[5] * x));
  const T ratio = (c[6] * x + T(1.5)) / (T(2.0) + cos(x));
  const T angle = atan2(c[7] * x + T(0.3), T(1.7) + x * x);
  return q * root + ratio + angle * (T(c[8]) + c[9] * x);
}

}  // namespace

TEST_CASE("dual arithmetic obeys the product and quotient rules") {
  const Dual x{1.3, 1.0};
  const Dual f = x * x * x;
  CHECK(f.v == doctest::Approx(1.3 * 1.3 * 1.3));
  CHECK(f.d == doctest::Approx(3.0 * 1.3 * 1.3));
  const Dual g = Dual{1.0} / x;
  CHECK(g.d == doctest::Approx(-1.0 / (1.3 * 1.3)));
  const Dual h = sin(x) * cos(x);
  CHECK(h.d == doctest::Approx(std::cos(2.0 * 1.3)));
}

TEST_CASE("unseeded inputs give zero derivatives") {
  const Dual x{0.7, 0.0};
  const Dual f = probe<Dual>({1, 2, 3, 0.5, 0.1, 1.2, 0.4, 0.9, 0.3, 1.1}, x);
  CHECK(f.d == 0.0);
}

TEST_CASE("1000 random probes match Richardson finite differences") {
  std::mt19937_64 rng(211);
  std::uniform_real_distribution<double> uc(-2.0, 2.0);
  std::uniform_real_distribution<double> ux(-2.0, 2.0);
  int worst_failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::array<double, 10> c;
    for (double& v : c) v = uc(rng);
    const double x0 = ux(rng);

    const Dual d = probe<Dual>(c, Dual{x0, 1.0});
    const double fd = test::richardson_derivative(
        [&](double x) { return probe<double>(c, x); }, x0, 1e-3 * (1.0 + std::abs(x0)));
    if (!test::close_rel(d.d, fd, 1e-8)) ++worst_failures;
    CHECK(test::close_rel(d.d, fd, 1e-8));
  }
  CHECK(worst_failures == 0);
}

TEST_CASE("atan2 derivative covers all quadrants") {
  std::mt19937_64 rng(223);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double a = u(rng), b = u(rng), x0 = u(rng);
    if (std::abs(a * x0 + b) < 0.1) continue;  // keep away from the branch cut
    const Dual d = atan2(Dual{a * x0 + b, a}, Dual{1.3, 0.0});
    const double fd = test::richardson_derivative(
        [&](double x) { return std::atan2(a * x + b, 1.3); }, x0, 1e-4);
    CHECK(test::close_rel(d.d, fd, 1e-8));
  }
}
