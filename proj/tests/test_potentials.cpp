#include <doctest.h>

#include <numbers>

#include "scatter/potentials.hpp"
#include "scatter/specfun.hpp"

using namespace scatter;
using geometry::Vec2;
using potentials::Complex;

namespace {
const potentials::WaveContext kCtx{4.0};  // k = 2
}

TEST_CASE("green2d is symmetric and solves Helmholtz off the diagonal") {
  Vec2 x{0.3, 0.8}, y{-1.1, 0.4};
  CHECK(std::abs(potentials::green2d(2.0, x, y) -
                 potentials::green2d(2.0, y, x)) < 1e-15);
  // 5-point stencil in x
  const double h = 1e-3, k = 2.0;
  auto g = [&](double dx, double dy) {
    return potentials::green2d(k, {x.x + dx, x.y + dy}, y);
  };
  Complex lap = (g(h, 0) + g(-h, 0) + g(0, h) + g(0, -h) - 4.0 * g(0, 0)) /
                (h * h);
  CHECK(std::abs(lap + k * k * g(0, 0)) < 1e-5);
}

TEST_CASE("single-layer operator has the circle Fourier symbol") {
  const double a = 1.0, k = kCtx.k;
  for (int n : {64, 128}) {
    auto circ = geometry::make_circle({0, 0}, a, n);
    auto ops = potentials::assemble_singular_ops(circ, kCtx);
    for (int m = 0; m <= 4; ++m) {
      Eigen::VectorXcd e(n);
      for (int q = 0; q < n; ++q)
        e[q] = std::exp(Complex(0, m * circ.t[q]));
      Complex sym = Complex(0, 0.5) * std::numbers::pi * a *
                    specfun::bessel_j(m, k * a) * specfun::hankel1(m, k * a);
      CHECK(((ops.S * e) - sym * e).norm() / std::sqrt(double(n)) < 1e-10);
    }
  }
}

TEST_CASE("double-layer operator has the circle Fourier symbol") {
  const double a = 1.0, k = kCtx.k, x = k * a;
  const int n = 128;
  auto circ = geometry::make_circle({0, 0}, a, n);
  auto ops = potentials::assemble_singular_ops(circ, kCtx);
  for (int m = 0; m <= 4; ++m) {
    Eigen::VectorXcd e(n);
    for (int q = 0; q < n; ++q) e[q] = std::exp(Complex(0, m * circ.t[q]));
    // principal-value double layer on the circle:
    //   K e_m = (i pi x / 2) J_m(x) H_m'(x) e_m + e_m/2 - e_m/2,
    // i.e. the jump-symmetric symbol without the +1/2 identity part
    Complex sym = Complex(0, 0.5) * std::numbers::pi * x *
                      specfun::bessel_j(m, x) * specfun::deriv_hankel1(m, x) +
                  0.5;
    CHECK(((ops.K * e) - sym * e).norm() / std::sqrt(double(n)) < 1e-9);
    Complex symp = Complex(0, 0.5) * std::numbers::pi * x *
                       specfun::deriv_j(m, x) * specfun::hankel1(m, x) -
                   0.5;
    CHECK(((ops.Kp * e) - symp * e).norm() / std::sqrt(double(n)) < 1e-9);
  }
}

TEST_CASE("single-layer jump relation: exterior minus interior is -mu") {
  auto circ = geometry::make_circle({0, 0}, 1.0, 1024);
  Eigen::VectorXcd mu(1024);
  for (int q = 0; q < 1024; ++q) mu[q] = 1.0 + 0.3 * std::cos(circ.t[q]);
  const size_t q0 = 200;
  auto dnu = [&](double off) {
    const double h = 1e-4;
    std::vector<Vec2> pts{circ.x[q0] + circ.normal[q0] * (off - h),
                          circ.x[q0] + circ.normal[q0] * (off + h)};
    auto v = potentials::eval_single_layer(circ, mu, kCtx, pts);
    return (v[1] - v[0]) / (2.0 * h);
  };
  Complex jump = dnu(2e-2) - dnu(-2e-2);
  CHECK(std::abs(jump + mu[q0]) < 5e-2 * std::abs(mu[q0]));
}

TEST_CASE("probing and emission kernels are entrywise conjugates") {
  auto target = geometry::make_circle({0, 0}, 1.0, 32);
  auto source = geometry::make_circle({2, 0}, 0.3, 16);
  auto l = potentials::assemble_L_between(target, source, kCtx);
  auto ls = potentials::assemble_Lstar_between(target, source, kCtx);
  CHECK((l - ls.conjugate()).norm() < 1e-15 * ls.norm());
}

TEST_CASE("assembly rejects touching curves") {
  // tangent circles sharing the node at (1, 0)
  auto a = geometry::make_circle({0, 0}, 1.0, 64);
  auto b = geometry::make_circle({1.3, 0}, 0.3, 32);
  CHECK_THROWS(potentials::assemble_L_between(a, b, kCtx));
}

TEST_CASE("single-layer field solves Helmholtz away from the curve") {
  auto circ = geometry::make_circle({0, 0}, 1.0, 128);
  Eigen::VectorXcd mu(128);
  for (int q = 0; q < 128; ++q)
    mu[q] = std::exp(Complex(0, 2.0 * circ.t[q]));
  const double h = 1e-3, k = kCtx.k;
  Vec2 p{1.9, 0.7};
  std::vector<Vec2> pts{p,
                        {p.x + h, p.y},
                        {p.x - h, p.y},
                        {p.x, p.y + h},
                        {p.x, p.y - h}};
  auto v = potentials::eval_single_layer(circ, mu, kCtx, pts);
  Complex lap = (v[1] + v[2] + v[3] + v[4] - 4.0 * v[0]) / (h * h);
  CHECK(std::abs(lap + k * k * v[0]) < 1e-5);
}

TEST_CASE("kress log weights integrate the log kernel") {
  // int_0^{2pi} ln(4 sin^2(t/2)) cos(m t) dt = -2 pi / m (0 for m = 0)
  const int n = 64;
  auto r = potentials::kress_log_weights(n);
  for (int m : {0, 1, 3, 7}) {
    double acc = 0.0;
    for (int l = 0; l < n; ++l) acc += r[std::abs(l) % n] * std::cos(m * l * 2.0 * std::numbers::pi / n);
    double exact = m == 0 ? 0.0 : -2.0 * std::numbers::pi / m;
    CHECK(std::abs(acc - exact) < 1e-12);
  }
}
