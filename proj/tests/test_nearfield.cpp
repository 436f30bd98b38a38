#include <doctest.h>

#include "scatter/nearfield.hpp"
#include "scatter/specfun.hpp"

using namespace scatter;
using forward::ProblemKind;
using forward::ScatteringProblem;
using potentials::Complex;

namespace {

const nearfield::DiskObstacle kDisk{{0.0, 0.0}, 1.0};
const auto kSource = geometry::make_circle({2.0, 0.0}, 0.3, 64);

double two_route_distance(const ScatteringProblem& prob, double k) {
  potentials::WaveContext ctx(k * k);
  auto direct = nearfield::assemble_FS_direct(prob, kDisk, kSource, ctx);
  auto fact = nearfield::assemble_FS_factorized(prob, kDisk, kSource, ctx);
  return (direct.F - fact.F).norm() / direct.F.norm();
}

}  // namespace

TEST_CASE("two-route agreement, Dirichlet k=1.5") {
  ScatteringProblem p;
  CHECK(two_route_distance(p, 1.5) < 1e-8);
}

TEST_CASE("two-route agreement, Neumann k=2.0") {
  ScatteringProblem p;
  p.kind = ProblemKind::Neumann;
  CHECK(two_route_distance(p, 2.0) < 1e-8);
}

TEST_CASE("two-route agreement, Transmission n=4 k=1.2") {
  ScatteringProblem p;
  p.kind = ProblemKind::Transmission;
  p.n = 4.0;
  CHECK(two_route_distance(p, 1.2) < 1e-8);
}

TEST_CASE("nystrom route matches the modal disk route") {
  ScatteringProblem p;
  potentials::WaveContext ctx(2.25);
  auto circ = geometry::make_circle({0, 0}, 1.0, 128);
  auto modal = nearfield::assemble_FS_direct(p, kDisk, kSource, ctx);
  auto nys = nearfield::assemble_FS_nystrom(circ, kSource, ctx);
  CHECK((modal.F - nys.F).norm() / modal.F.norm() < 1e-8);
}

TEST_CASE("near-field matrix is linear in the density") {
  ScatteringProblem p;
  potentials::WaveContext ctx(2.25);
  auto nf = nearfield::assemble_FS_direct(p, kDisk, kSource, ctx);
  Eigen::VectorXcd a = Eigen::VectorXcd::Random(64), b = Eigen::VectorXcd::Random(64);
  CHECK((nf.F * (a + b) - nf.F * a - nf.F * b).norm() < 1e-12 * (nf.F * a).norm());
}

TEST_CASE("form matrix represents the weighted quadratic form") {
  ScatteringProblem p;
  potentials::WaveContext ctx(2.25);
  auto nf = nearfield::assemble_FS_direct(p, kDisk, kSource, ctx);
  auto m = nearfield::form_matrix(nf, kSource, p.sigma());

  Eigen::VectorXcd phi = Eigen::VectorXcd::Constant(64, Complex{1.0, 0.0});
  Eigen::VectorXcd fphi = nf.F * phi;
  Complex direct{0, 0};
  for (int i = 0; i < 64; ++i)
    direct += kSource.w[i] * fphi[i] * std::conj(phi[i]);
  direct *= static_cast<double>(p.sigma());

  Eigen::VectorXcd psi(64);
  for (int i = 0; i < 64; ++i) psi[i] = std::sqrt(kSource.w[i]) * phi[i];
  Complex via_form = psi.dot(m * psi);  // Eigen dot conjugates the left side
  CHECK(std::abs(direct - via_form) < 1e-14 * std::abs(direct));

  auto mneg = nearfield::form_matrix(nf, kSource, -1);
  CHECK((mneg + m).norm() == 0.0);
}

TEST_CASE("direct route is smooth across an interior DtN pole") {
  // lambda grid of step 1e-3 crossing the first Dirichlet disk eigenvalue
  ScatteringProblem p;
  const double l0 = 5.783186;
  std::vector<Eigen::MatrixXcd> fs;
  for (int i = -5; i <= 5; ++i) {
    potentials::WaveContext ctx(l0 + i * 1e-3);
    fs.push_back(nearfield::assemble_FS_direct(p, kDisk, kSource, ctx).F);
  }
  for (size_t i = 1; i + 1 < fs.size(); ++i) {
    double dd = (fs[i - 1] - 2.0 * fs[i] + fs[i + 1]).norm();
    CHECK(dd <= 10.0 * std::max(fs[i - 1].norm(), fs[i + 1].norm()));
  }
}

TEST_CASE("factorized route throws PoleError at the DtN pole") {
  ScatteringProblem p;
  potentials::WaveContext ctx(5.78318596294678 /* j_{0,1}^2 */);
  CHECK_THROWS_AS(
      nearfield::assemble_FS_factorized(p, kDisk, kSource, ctx),
      forward::PoleError);
}

TEST_CASE("singular values of F_S decay geometrically in the tail") {
  ScatteringProblem p;
  potentials::WaveContext ctx(2.25);
  auto nf = nearfield::assemble_FS_direct(p, kDisk, kSource, ctx);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(nf.F);
  const auto& s = svd.singularValues();
  const int start = static_cast<int>(2.0 * ctx.k * 0.3) + 10;
  for (int j = start; j + 5 < s.size(); ++j) {
    if (s[j] < 1e-13 * s[0]) break;
    CHECK(s[j + 5] / s[j] <= 0.5);
  }
}

TEST_CASE("modal form matrix carries the disk reflection coefficients") {
  // Dirichlet disk: the m-th reflection coefficient is -J_m(k)/H_m(k)
  ScatteringProblem p;
  potentials::WaveContext ctx(1.7 * 1.7);
  auto m = nearfield::form_matrix_modal(p, kDisk, ctx);
  CHECK((m - m.diagonal().asDiagonal().toDenseMatrix()).norm() == 0.0);
  const int M = (static_cast<int>(m.rows()) - 1) / 2;
  for (int q = -M; q <= M; ++q) {
    // J_{-m}/H_{-m} = J_m/H_m on the disk
    Complex rho =
        -specfun::bessel_j(std::abs(q), ctx.k) / specfun::hankel1(std::abs(q), ctx.k);
    Complex expected = Complex(0.0, -0.25) * rho;
    CHECK(std::abs(m(q + M, q + M) - expected) < 1e-12);
  }
}
