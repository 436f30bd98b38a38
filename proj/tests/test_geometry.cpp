#include <doctest.h>

#include <numbers>

#include "scatter/geometry.hpp"
#include "scatter/specfun.hpp"

using namespace scatter;
using geometry::Vec2;

namespace {

// trapezoid of a smooth periodic integrand with the curve's weights
double integrate(const geometry::DiscretizedCurve& c,
                 double (*f)(double)) {
  double acc = 0.0;
  for (size_t i = 0; i < c.t.size(); ++i)
    acc += f(c.t[i]) * c.w[i];
  return acc;
}

}  // namespace

TEST_CASE("trapezoid rule is spectrally accurate on the circle") {
  // oint e^{cos t} ds on the unit circle = 2 pi I_0(1); with I_0(1) via the
  // J series at imaginary argument replaced by the direct power series
  long double i0 = 0.0L, t = 1.0L;
  for (int j = 0; j < 40; ++j) {
    i0 += t;
    t *= 0.25L / ((j + 1.0L) * (j + 1.0L));
  }
  const double exact = 2.0 * std::numbers::pi * static_cast<double>(i0);
  auto f = +[](double t) { return std::exp(std::cos(t)); };
  double coarse = integrate(geometry::make_circle({0, 0}, 1.0, 16), f);
  double fine = integrate(geometry::make_circle({0, 0}, 1.0, 32), f);
  CHECK(std::abs(fine - exact) < 1e-13);
  CHECK(std::abs(fine - exact) <= std::abs(coarse - exact));
}

TEST_CASE("normals are unit and outward") {
  for (auto curve : {geometry::make_circle({0.5, -0.2}, 0.7, 64),
                     geometry::make_kite(64),
                     geometry::make_ellipse({0, 0}, {1.0, 0.5}, 64)}) {
    double area = geometry::signed_area(curve);
    for (size_t i = 0; i < curve.x.size(); ++i)
      CHECK(curve.normal[i].norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(area > 0.0);  // positively oriented, so (x2', -x1')/|x'| is outward
  }
}

TEST_CASE("circle normals point away from the center") {
  auto c = geometry::make_circle({0.5, -0.2}, 0.7, 64);
  for (size_t i = 0; i < c.x.size(); ++i) {
    Vec2 radial = c.x[i] - Vec2{0.5, -0.2};
    CHECK(radial.dot(c.normal[i]) > 0.69);
  }
}

TEST_CASE("signed area and circumference") {
  auto c = geometry::make_circle({1, 1}, 2.0, 256);
  // shoelace over the inscribed polygon: O(n^-2) accurate, not spectral
  CHECK(geometry::signed_area(c) ==
        doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-3));
  double len = 0.0;
  for (double w : c.w) len += w;
  CHECK(len == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("kite curve matches its closed form") {
  auto kite = geometry::make_kite(32);
  const double t = kite.t[5];
  CHECK(kite.x[5].x == doctest::Approx(std::cos(t) + 0.65 * std::cos(2 * t) -
                                       0.65).epsilon(1e-14));
  CHECK(kite.x[5].y == doctest::Approx(1.5 * std::sin(t)).epsilon(1e-14));
}

TEST_CASE("scene validation accepts disjoint curves and rejects overlap") {
  auto obstacle = geometry::make_circle({0, 0}, 1.0, 64);
  auto source = geometry::make_circle({2, 0}, 0.3, 32);
  auto scene = geometry::validate_scene(obstacle, source);
  CHECK(scene.separation > 0.6);
  CHECK(scene.obstacle_radius == doctest::Approx(1.0));

  auto bad = geometry::make_circle({1.05, 0}, 0.3, 32);
  CHECK_THROWS_AS(geometry::validate_scene(obstacle, bad),
                  geometry::OverlapError);
}

TEST_CASE("discretize rejects odd and tiny node counts") {
  CHECK_THROWS_AS(geometry::make_circle({0, 0}, 1.0, 15), std::invalid_argument);
  CHECK_THROWS_AS(geometry::make_circle({0, 0}, 1.0, 4), std::invalid_argument);
}
