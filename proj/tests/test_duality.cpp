#include <doctest.h>

#include <numbers>
#include <random>

#include "scatter/duality.hpp"
#include "scatter/nearfield.hpp"

using namespace scatter;
using potentials::Complex;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("phase floor of trivial matrices") {
  Eigen::MatrixXcd m(1, 1);
  m << Complex{0, 1};
  CHECK(duality::phase_floor(m, 1).phi == doctest::Approx(kPi / 2).epsilon(1e-9));

  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(0, 0) = std::exp(Complex(0, kPi / 4));
  d(1, 1) = std::exp(Complex(0, kPi / 2));
  CHECK(duality::phase_floor(d, 1).phi ==
        doctest::Approx(kPi / 4).epsilon(1e-6));

  Eigen::MatrixXcd pd = Eigen::MatrixXcd::Zero(2, 2);
  pd(0, 0) = 1.0;
  pd(1, 1) = 2.0;
  CHECK(duality::phase_floor(pd, 1).phi < 1e-9);
}

TEST_CASE("nilpotent matrix triggers the full-circle diagnostic") {
  Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(2, 2);
  n(0, 1) = 1.0;
  auto s = duality::phase_floor(n, 1);
  CHECK(s.full_circle);

  // oracle: dense random quadratic-form sampling lands in all four quadrants
  std::mt19937 rng(7);
  std::normal_distribution<double> g;
  bool quad[4] = {false, false, false, false};
  for (int it = 0; it < 4000; ++it) {
    Eigen::VectorXcd v(2);
    for (int i = 0; i < 2; ++i) v[i] = Complex(g(rng), g(rng));
    v.normalize();
    Complex z = v.dot(n * v);
    quad[(z.real() >= 0 ? 0 : 1) + (z.imag() >= 0 ? 0 : 2)] = true;
  }
  CHECK((quad[0] && quad[1] && quad[2] && quad[3]));
}

TEST_CASE("numerical range boundary of the nilpotent matrix is the circle of radius 1/2") {
  Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(2, 2);
  n(0, 1) = 1.0;
  auto s = duality::phase_floor(n, 1);
  for (Complex z : s.nr_boundary)
    CHECK(std::abs(z) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("sigma = -1 uses the mirrored extremal argument") {
  // -i has argument 3pi/2; the dip indicator 2pi - phi is pi/2
  Eigen::MatrixXcd m(1, 1);
  m << Complex{0, -1};
  auto s = duality::phase_floor(m, -1);
  CHECK(s.phi == doctest::Approx(1.5 * kPi).epsilon(1e-9));
  CHECK(s.psi == doctest::Approx(0.5 * kPi).epsilon(1e-9));

  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(0, 0) = std::exp(Complex(0, -kPi / 4));   // arg 7pi/4
  d(1, 1) = std::exp(Complex(0, -kPi / 2));   // arg 3pi/2
  auto t = duality::phase_floor(d, -1);
  CHECK(t.phi == doctest::Approx(1.75 * kPi).epsilon(1e-6));
}

TEST_CASE("zero matrix is degenerate") {
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(3, 3);
  CHECK_THROWS_AS(duality::phase_floor(z, 1), duality::DegenerateFormError);
}

TEST_CASE("spectrum lies inside the numerical range polygon") {
  std::mt19937 rng(11);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(12, 12);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) m(i, j) = Complex(g(rng), g(rng));
  auto s = duality::phase_floor(m, 1);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  // support-function test: each eigenvalue is within every half plane that
  // supports the boundary polyline (up to small slack)
  for (int j = 0; j < 12; ++j) {
    Complex mu = es.eigenvalues()[j];
    for (size_t t = 0; t < s.nr_boundary.size(); ++t) {
      double theta = 2.0 * kPi * t / s.nr_boundary.size();
      double support = (std::exp(Complex(0, -theta)) * s.nr_boundary[t]).real();
      double val = (std::exp(Complex(0, -theta)) * mu).real();
      CHECK(val <= support + 1e-7 * m.norm());
    }
  }
}

TEST_CASE("phi is consistent with the retained eigenphases") {
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(10, 10);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) m(i, j) = Complex(g(rng), g(rng));
  // push the range into the upper half plane so args are clean
  m = m + Complex(0, 4) * Eigen::MatrixXcd::Identity(10, 10) * m.norm() / 3.0;
  auto s = duality::phase_floor(m, 1);
  CHECK(s.phi <= s.extremal_eigphase + 1e-9);
}

TEST_CASE("detect finds a synthetic dip-and-jump") {
  // evaluator: 1x1 matrix with arg ramping to 0 at lambda0 = 5, then jumping
  auto eval = [](double lambda) {
    double arg = lambda < 5.0 ? 0.5 * (5.0 - lambda) : 1.8 + 0.3 * (lambda - 5.0);
    Eigen::MatrixXcd m(1, 1);
    m << std::exp(Complex(0, arg));
    return m;
  };
  auto curve = duality::sweep(eval, 1, 4.0, 6.0, 0.05, 1);
  auto dets = duality::detect(curve, forward::ProblemKind::Dirichlet, eval);
  REQUIRE(dets.size() == 1);
  CHECK(dets[0].lambda_hat == doctest::Approx(5.0).epsilon(1e-3));
  CHECK(dets[0].side == "below");
  CHECK(dets[0].bracket_hi - dets[0].bracket_lo <= 1e-4 + 1e-12);
  CHECK(dets[0].bracket_lo < dets[0].lambda_hat);
  CHECK(dets[0].lambda_hat <= dets[0].bracket_hi);
}

TEST_CASE("flat curves produce no detections") {
  auto eval = [](double) {
    Eigen::MatrixXcd m(1, 1);
    m << std::exp(Complex(0, 1.0));
    return m;
  };
  auto curve = duality::sweep(eval, 1, 1.0, 2.0, 0.1, 1);
  CHECK(duality::detect(curve, forward::ProblemKind::Dirichlet, eval).empty());
}

TEST_CASE("sweep marks exceptional lambda as skipped") {
  auto eval = [](double lambda) {
    if (std::abs(lambda - 1.5) < 0.04) throw forward::PoleError(0, lambda);
    Eigen::MatrixXcd m(1, 1);
    m << Complex{0, 1};
    return m;
  };
  auto curve = duality::sweep(eval, 1, 1.0, 2.0, 0.1, 1);
  int skipped = 0;
  for (const auto& s : curve.samples) skipped += s.skipped;
  CHECK(skipped == 1);
  CHECK(curve.samples.size() == 11);
}

TEST_CASE("sweep is independent of parallelism") {
  auto eval = [](double lambda) {
    Eigen::MatrixXcd m(2, 2);
    m << std::exp(Complex(0, 0.3 * lambda)), 0.1, 0.0,
        std::exp(Complex(0, 0.2 * lambda));
    return m;
  };
  auto a = duality::sweep(eval, 1, 1.0, 3.0, 0.05, 1);
  auto b = duality::sweep(eval, 1, 1.0, 3.0, 0.05, 8);
  REQUIRE(a.samples.size() == b.samples.size());
  for (size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].phi == b.samples[i].phi);
    CHECK(a.samples[i].psi == b.samples[i].psi);
  }
}

namespace {

duality::FormEvaluator disk_eval(forward::ProblemKind kind, double n) {
  forward::ScatteringProblem p{kind, n};
  nearfield::DiskObstacle disk{{0.0, 0.0}, 1.0};
  return [=](double lambda) {
    potentials::WaveContext ctx(lambda);
    return nearfield::form_matrix_modal(p, disk, ctx);
  };
}

}  // namespace

TEST_CASE("detection window around the first Dirichlet disk eigenvalue") {
  auto eval = disk_eval(forward::ProblemKind::Dirichlet, 0.0);
  auto curve = duality::sweep(eval, 1, 5.6, 6.0, 0.02, 1);
  auto dets = duality::detect(curve, forward::ProblemKind::Dirichlet, eval);
  REQUIRE(dets.size() == 1);
  CHECK(dets[0].lambda_hat == doctest::Approx(5.783186).epsilon(2e-4));
  CHECK(dets[0].side == "below");
}

TEST_CASE("detection window around the first Neumann disk eigenvalue") {
  auto eval = disk_eval(forward::ProblemKind::Neumann, 0.0);
  auto curve = duality::sweep(eval, -1, 3.2, 3.6, 0.02, 1);
  auto dets = duality::detect(curve, forward::ProblemKind::Neumann, eval);
  REQUIRE(dets.size() == 1);
  CHECK(dets[0].lambda_hat == doctest::Approx(3.389958).epsilon(3e-4));
  CHECK(dets[0].side == "above");
}

TEST_CASE("detection window around the first interior transmission eigenvalue") {
  auto eval = disk_eval(forward::ProblemKind::Transmission, 4.0);
  auto curve = duality::sweep(eval, -1, 11.2, 11.6, 0.02, 1);
  duality::DetectOptions opt;
  opt.tau_dip = 0.1;
  opt.tau_jump = 0.02;
  auto dets =
      duality::detect(curve, forward::ProblemKind::Transmission, eval, opt);
  REQUIRE(dets.size() == 1);
  CHECK(dets[0].lambda_hat == doctest::Approx(11.452775).epsilon(3e-4));
  CHECK(dets[0].side == "two_sided");
}
