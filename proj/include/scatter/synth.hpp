#pragma once

#include "scatter/nearfield.hpp"

namespace scatter::synth {

using forward::ScatteringProblem;
using geometry::DiscretizedCurve;
using geometry::Vec2;
using nearfield::DiskObstacle;
using potentials::Complex;
using potentials::DensityVec;
using potentials::WaveContext;

// Two-component control boundary Gamma: an outer circle enclosing the whole
// presumed scatterer region and a small circle just outside the ball B about
// which the probing data is matched.
struct SynthesisGeometry {
  double outer_radius = 4.0;
  Vec2 ball_center;
  double ball_radius = 0.0;
  double epsilon = 0.1;
  int nodes_outer = 128;
  int nodes_inner = 64;

  double inner_radius() const { return ball_radius + epsilon; }
  void validate(const DiskObstacle& obstacle) const;
};

struct SynthesisResult {
  std::vector<double> alphas;            // strictly decreasing
  std::vector<DensityVec> psis;          // one density on S per alpha
  std::vector<double> surrogate_residuals;  // misfit on Gamma
  std::vector<double> data_residuals;       // physical misfit vs F_S phi on S
  double target_norm = 0.0;              // weighted norm of F_S phi
};

inline std::vector<double> default_alphas() {
  return {1e-2, 1e-4, 1e-6, 1e-8, 1e-10};
}

// Tikhonov-regularized least squares min ||A x - b||_W^2 + alpha ||x||^2 via
// the singular value filter s^2/(s^2+alpha) of the row-weighted matrix.
struct TikhonovSolver {
  explicit TikhonovSolver(const Eigen::MatrixXcd& a,
                          const std::vector<double>& row_weights);
  DensityVec solve(const DensityVec& b, double alpha) const;
  double residual(const DensityVec& b, const DensityVec& x) const;
  double condition_ratio(double s_cutoff_rel = 1e-12) const;

  Eigen::MatrixXcd weighted;  // diag(sqrt w) A
  Eigen::VectorXd sqrt_w;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd;
};

struct ProbeReport {
  std::vector<double> alphas;
  std::vector<double> residuals;  // weighted, per alpha
  double condition_ratio = 0.0;   // largest / smallest retained singular value
  bool near_eigenvalue_warning = false;
};

// Operational density-of-range test for the probing operator L from
// `source` to `target_curve`: Tikhonov-minimize ||L phi - target||.
ProbeReport density_probe(const DiscretizedCurve& target_curve,
                          const DiscretizedCurve& source,
                          const WaveContext& ctx, const DensityVec& target,
                          const std::vector<double>& alphas = default_alphas());

// Builds emitted-wave densities psi whose physical scattered data
// approximates F_S phi, by matching emitted and probing traces on Gamma.
SynthesisResult synthesize_sources(const ScatteringProblem& problem,
                                   const DiskObstacle& obstacle,
                                   const DiscretizedCurve& source,
                                   const WaveContext& ctx,
                                   const DensityVec& phi,
                                   const SynthesisGeometry& geometry,
                                   const std::vector<double>& alphas =
                                       default_alphas());

}  // namespace scatter::synth
