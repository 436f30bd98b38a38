#include "scatter/synth.hpp"

#include <cmath>

#include "scatter/oracles.hpp"

namespace scatter::synth {
namespace {

Eigen::VectorXd sqrt_weights(const std::vector<double>& w) {
  Eigen::VectorXd s(w.size());
  for (size_t i = 0; i < w.size(); ++i) s[i] = std::sqrt(w[i]);
  return s;
}

double weighted_norm(const DensityVec& v, const std::vector<double>& w) {
  double acc = 0.0;
  for (size_t i = 0; i < w.size(); ++i) acc += w[i] * std::norm(v[i]);
  return std::sqrt(acc);
}

// Circle recognition for the eigenvalue-proximity warning: centroid plus
// radius spread of the nodes.
bool circle_radius(const DiscretizedCurve& c, double& radius) {
  Vec2 centroid{0.0, 0.0};
  for (const auto& p : c.x) centroid = centroid + p;
  centroid = centroid * (1.0 / static_cast<double>(c.x.size()));
  double r_min = 1e300, r_max = 0.0;
  for (const auto& p : c.x) {
    double r = (p - centroid).norm();
    r_min = std::min(r_min, r);
    r_max = std::max(r_max, r);
  }
  radius = 0.5 * (r_min + r_max);
  return r_max - r_min < 1e-9 * radius;
}

bool near_disk_eigenvalue(double lambda, double radius) {
  auto eigs = oracles::dirichlet_disk_eigs(radius, lambda - 1e-3, lambda + 1e-3);
  for (const auto& e : eigs)
    if (std::abs(e.lambda - lambda) < 1e-6) return true;
  return false;
}

}  // namespace

TikhonovSolver::TikhonovSolver(const Eigen::MatrixXcd& a,
                               const std::vector<double>& row_weights)
    : sqrt_w(sqrt_weights(row_weights)) {
  weighted = sqrt_w.asDiagonal() * a;
  svd.compute(weighted, Eigen::ComputeThinU | Eigen::ComputeThinV);
}

DensityVec TikhonovSolver::solve(const DensityVec& b, double alpha) const {
  Eigen::VectorXcd bw = sqrt_w.asDiagonal() * b;
  Eigen::VectorXcd c = svd.matrixU().adjoint() * bw;
  const auto& s = svd.singularValues();
  for (int j = 0; j < s.size(); ++j) c[j] *= s[j] / (s[j] * s[j] + alpha);
  return svd.matrixV() * c;
}

double TikhonovSolver::residual(const DensityVec& b, const DensityVec& x) const {
  return (weighted * x - Eigen::VectorXcd(sqrt_w.asDiagonal() * b)).norm();
}

double TikhonovSolver::condition_ratio(double s_cutoff_rel) const {
  const auto& s = svd.singularValues();
  double kept = s[0];
  for (int j = 0; j < s.size(); ++j)
    if (s[j] > s_cutoff_rel * s[0]) kept = s[j];
  return s[0] / kept;
}

ProbeReport density_probe(const DiscretizedCurve& target_curve,
                          const DiscretizedCurve& source,
                          const WaveContext& ctx, const DensityVec& target,
                          const std::vector<double>& alphas) {
  Eigen::MatrixXcd l = potentials::assemble_L_between(target_curve, source, ctx);
  TikhonovSolver tik(l, target_curve.w);

  ProbeReport rep;
  rep.alphas = alphas;
  for (double alpha : alphas)
    rep.residuals.push_back(tik.residual(target, tik.solve(target, alpha)));
  rep.condition_ratio = tik.condition_ratio();

  double radius = 0.0;
  if (circle_radius(target_curve, radius))
    rep.near_eigenvalue_warning = near_disk_eigenvalue(ctx.lambda, radius);
  return rep;
}

void SynthesisGeometry::validate(const DiskObstacle& obstacle) const {
  if (!(epsilon > 0.0) || !(ball_radius >= 0.0) || !(outer_radius > 0.0))
    throw std::invalid_argument("synthesis geometry: nonpositive parameter");
  if (obstacle.center.norm() + obstacle.radius >= outer_radius)
    throw std::invalid_argument("obstacle not strictly inside outer circle");
  if (ball_center.norm() + inner_radius() >= outer_radius)
    throw std::invalid_argument("inner circle not strictly inside outer circle");
  if ((ball_center - obstacle.center).norm() <=
      inner_radius() + obstacle.radius)
    throw std::invalid_argument("inner circle intersects the obstacle");
}

SynthesisResult synthesize_sources(const ScatteringProblem& problem,
                                   const DiskObstacle& obstacle,
                                   const DiscretizedCurve& source,
                                   const WaveContext& ctx,
                                   const DensityVec& phi,
                                   const SynthesisGeometry& geometry,
                                   const std::vector<double>& alphas) {
  problem.validate();
  geometry.validate(obstacle);
  for (const auto& p : source.x)
    if ((p - geometry.ball_center).norm() >= geometry.ball_radius)
      throw std::invalid_argument("source curve not inside the ball B");

  auto outer = geometry::make_circle(Vec2{0.0, 0.0}, geometry.outer_radius,
                                     geometry.nodes_outer);
  auto inner = geometry::make_circle(geometry.ball_center,
                                     geometry.inner_radius(),
                                     geometry.nodes_inner);

  // Stacked probing and emission traces on the two-component Gamma.
  const int n_out = geometry.nodes_outer, n_in = geometry.nodes_inner;
  const int ns = static_cast<int>(source.x.size());
  Eigen::MatrixXcd probe(n_out + n_in, ns), emit(n_out + n_in, ns);
  probe.topRows(n_out) = potentials::assemble_L_between(outer, source, ctx);
  probe.bottomRows(n_in) = potentials::assemble_L_between(inner, source, ctx);
  emit.topRows(n_out) = potentials::assemble_Lstar_between(outer, source, ctx);
  emit.bottomRows(n_in) = potentials::assemble_Lstar_between(inner, source, ctx);
  std::vector<double> gamma_w = outer.w;
  gamma_w.insert(gamma_w.end(), inner.w.begin(), inner.w.end());

  DensityVec b = probe * phi;
  TikhonovSolver tik(emit, gamma_w);

  auto nf = nearfield::assemble_FS_direct(problem, obstacle, source, ctx);
  DensityVec target = nf.F * phi;

  double r_max = 0.0;
  for (const auto& p : source.x)
    r_max = std::max(r_max, (p - obstacle.center).norm());
  const int M = forward::default_truncation(ctx.k, r_max);

  SynthesisResult res;
  res.alphas = alphas;
  res.target_norm = weighted_norm(target, source.w);
  for (double alpha : alphas) {
    DensityVec psi = tik.solve(b, alpha);
    res.psis.push_back(psi);
    res.surrogate_residuals.push_back(tik.residual(b, psi));

    // physical check: emit conj(L) psi, scatter, measure on S
    auto inc = forward::incident_modal_coeffs(source, obstacle.center,
                                              obstacle.radius, ctx, M, psi,
                                              forward::SourceKernel::Emitted);
    auto sol = forward::solve_disk_modal(problem, obstacle.center,
                                         obstacle.radius, ctx, inc);
    DensityVec data(ns);
    for (int i = 0; i < ns; ++i) data[i] = sol.eval_scattered(source.x[i]);
    res.data_residuals.push_back(weighted_norm(data - target, source.w));
  }
  return res;
}

}  // namespace scatter::synth
