#include "scatter/nearfield.hpp"

#include <Eigen/LU>

#include "scatter/specfun.hpp"

namespace scatter::nearfield {
namespace {

using forward::DtnKind;
using forward::ProblemKind;
using potentials::DensityVec;

constexpr Complex kI{0.0, 1.0};

Complex hankel_sym(int m, double x) {
  Complex h = specfun::hankel1(std::abs(m), x);
  return (m < 0 && (m & 1)) ? -h : h;
}

Complex phase(int m, double th) { return std::exp(kI * (m * th)); }

void polar_about(Vec2 center, Vec2 p, double& r, double& th) {
  Vec2 d = p - center;
  r = d.norm();
  th = std::atan2(d.y, d.x);
}

// Radiation matrix B(i, m+M) = H_m(k r_i) e^{i m theta_i} about the disk
// center; a set of exterior Hankel coefficients maps to point values via B.
Eigen::MatrixXcd radiation_matrix(const DiscretizedCurve& s, Vec2 center,
                                  double k, int M) {
  const int n = static_cast<int>(s.x.size());
  Eigen::MatrixXcd b(n, 2 * M + 1);
  for (int i = 0; i < n; ++i) {
    double r, th;
    polar_about(center, s.x[i], r, th);
    for (int m = -M; m <= M; ++m) b(i, m + M) = hankel_sym(m, k * r) * phase(m, th);
  }
  return b;
}

// Graf matrix A(m+M, j): modal coefficients about the disk center of the
// probing wave emitted by the nodal density e_j, kernel conj(G_k).
Eigen::MatrixXcd graf_matrix(const DiscretizedCurve& s, Vec2 center, double k,
                             int M) {
  const int n = static_cast<int>(s.x.size());
  Eigen::MatrixXcd a(2 * M + 1, n);
  for (int j = 0; j < n; ++j) {
    double r, th;
    polar_about(center, s.x[j], r, th);
    for (int m = -M; m <= M; ++m)
      a(m + M, j) = -0.25 * kI * std::conj(hankel_sym(m, k * r)) *
                    phase(-m, th) * s.w[j];
  }
  return a;
}

}  // namespace

NearFieldMatrix assemble_FS_direct(const ScatteringProblem& problem,
                                   const DiskObstacle& disk,
                                   const DiscretizedCurve& source,
                                   const WaveContext& ctx, int truncation) {
  problem.validate();
  double r_max = 0.0;
  for (const auto& p : source.x)
    r_max = std::max(r_max, (p - disk.center).norm());
  const int M =
      truncation > 0 ? truncation : forward::default_truncation(ctx.k, r_max);

  // Modal reflection ratios c_m / a_m from one solve with unit coefficients.
  forward::ModalCoeffs unit;
  unit.center = disk.center;
  unit.truncation = M;
  unit.a.assign(2 * M + 1, Complex{1.0, 0.0});
  auto sol = forward::solve_disk_modal(problem, disk.center, disk.radius, ctx, unit);

  Eigen::MatrixXcd a = graf_matrix(source, disk.center, ctx.k, M);
  for (int m = -M; m <= M; ++m) a.row(m + M) *= sol.scattered_coeff(m);
  NearFieldMatrix nf;
  nf.F = radiation_matrix(source, disk.center, ctx.k, M) * a;
  nf.route = Route::Direct;
  nf.lambda = ctx.lambda;
  return nf;
}

NearFieldMatrix assemble_FS_factorized(const ScatteringProblem& problem,
                                       const DiskObstacle& disk,
                                       const DiscretizedCurve& source,
                                       const WaveContext& ctx,
                                       int boundary_nodes) {
  problem.validate();
  const int m_need = forward::default_truncation(ctx.k, disk.radius);
  int nb = boundary_nodes > 0 ? boundary_nodes : std::max(64, 2 * m_need + 2);
  if (nb % 2) ++nb;
  const int half = nb / 2;

  auto bdry = geometry::make_circle(disk.center, disk.radius, nb);
  auto f1 = forward::dtn_disk(DtnKind::Interior, disk.radius, ctx, 0.0, half);
  auto fout = forward::dtn_disk(DtnKind::Exterior, disk.radius, ctx, 0.0, half);
  std::vector<Complex> fn;
  if (problem.kind == ProblemKind::Transmission)
    fn = forward::dtn_disk(DtnKind::InteriorN, disk.radius, ctx, problem.n, half);

  double s = 1.0;
  std::vector<Complex> sym(nb);
  for (int m = -half; m < half; ++m) {
    const int q = std::abs(m);
    Complex d;
    switch (problem.kind) {
      case ProblemKind::Dirichlet:
        d = f1[q] - fout[q];
        s = -1.0;
        break;
      case ProblemKind::Neumann:
        d = f1[q] - f1[q] * f1[q] / fout[q];
        break;
      case ProblemKind::Transmission:
        d = (f1[q] - fout[q]) * (f1[q] - fn[q]) / (fn[q] - fout[q]);
        break;
    }
    sym[(m + nb) % nb] = d;
  }

  // D = E diag(sym) E^H / nb on the equispaced boundary grid.
  Eigen::MatrixXcd e(nb, nb);
  for (int q = 0; q < nb; ++q)
    for (int m = 0; m < nb; ++m)
      e(q, m) = phase(m < half ? m : m - nb, bdry.t[q]);
  Eigen::MatrixXcd d = e * Eigen::VectorXcd::Map(sym.data(), nb).asDiagonal() *
                       e.adjoint() / static_cast<double>(nb);

  Eigen::MatrixXcd l = potentials::assemble_L_between(bdry, source, ctx);
  Eigen::MatrixXcd lstar = potentials::assemble_Lstar_between(source, bdry, ctx);
  NearFieldMatrix nf;
  nf.F = s * (lstar * (d * l));
  nf.route = Route::Factorized;
  nf.lambda = ctx.lambda;
  return nf;
}

NearFieldMatrix assemble_FS_nystrom(const DiscretizedCurve& obstacle,
                                    const DiscretizedCurve& source,
                                    const WaveContext& ctx) {
  const int nb = static_cast<int>(obstacle.x.size());
  const int ns = static_cast<int>(source.x.size());
  const double eta = ctx.k;

  Eigen::MatrixXcd uinc = potentials::assemble_L_between(obstacle, source, ctx);
  auto ops = potentials::assemble_singular_ops(obstacle, ctx);
  Eigen::MatrixXcd cf = 0.5 * Eigen::MatrixXcd::Identity(nb, nb) + ops.K -
                        kI * eta * ops.S;
  Eigen::MatrixXcd psi = cf.partialPivLu().solve(Eigen::MatrixXcd(-uinc));

  Eigen::MatrixXcd rad(ns, nb);
  for (int i = 0; i < ns; ++i)
    for (int q = 0; q < nb; ++q)
      rad(i, q) = (potentials::green2d_dnu_y(ctx.k, source.x[i], obstacle.x[q],
                                             obstacle.normal[q]) -
                   kI * eta *
                       potentials::green2d(ctx.k, source.x[i], obstacle.x[q])) *
                  obstacle.w[q];
  NearFieldMatrix nf;
  nf.F = rad * psi;
  nf.route = Route::Direct;
  nf.lambda = ctx.lambda;
  return nf;
}

Eigen::MatrixXcd form_matrix_modal(const ScatteringProblem& problem,
                                   const DiskObstacle& disk,
                                   const WaveContext& ctx, int truncation) {
  problem.validate();
  const int M = truncation > 0 ? truncation
                               : forward::default_truncation(ctx.k, disk.radius);
  forward::ModalCoeffs unit;
  unit.center = disk.center;
  unit.truncation = M;
  unit.a.assign(2 * M + 1, Complex{1.0, 0.0});
  auto sol =
      forward::solve_disk_modal(problem, disk.center, disk.radius, ctx, unit);
  const double sigma = problem.sigma();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * M + 1, 2 * M + 1);
  for (int q = -M; q <= M; ++q)
    m(q + M, q + M) = sigma * (-0.25 * kI) * sol.scattered_coeff(q);
  return m;
}

Eigen::MatrixXcd form_matrix(const NearFieldMatrix& nf,
                             const DiscretizedCurve& source, int sigma) {
  const int n = static_cast<int>(source.w.size());
  if (nf.F.rows() != n || nf.F.cols() != n)
    throw std::invalid_argument("form_matrix: size mismatch with source curve");
  // F carries the quadrature weights in its columns, so the similarity
  // sqrt(w) F 1/sqrt(w) makes x^H M x the weighted form at phi = x/sqrt(w)
  Eigen::VectorXd sw(n), isw(n);
  for (int i = 0; i < n; ++i) {
    sw[i] = std::sqrt(source.w[i]);
    isw[i] = 1.0 / sw[i];
  }
  return static_cast<double>(sigma) *
         (sw.asDiagonal() * nf.F * isw.asDiagonal());
}

}  // namespace scatter::nearfield
