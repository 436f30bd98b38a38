#pragma once

#include <functional>
#include <string>

#include "scatter/nearfield.hpp"

namespace scatter::duality {

using forward::ProblemKind;
using geometry::DiscretizedCurve;
using nearfield::DiskObstacle;
using potentials::Complex;
using potentials::WaveContext;

// The phase functional Phi(lambda) is the extremal argument over the
// numerical range of the weighted form matrix: the infimum of arg over
// [0,2pi) when sigma=+1, the supremum when sigma=-1 (the duality signal
// approaches 0 resp. 2pi). Psi = Phi resp. 2pi - Phi is the dip indicator.
struct PhaseSample {
  double lambda = 0.0;
  double phi = 0.0;
  double psi = 0.0;
  std::vector<double> eigenphases;  // args of retained form-matrix eigenvalues
  int n_retained = 0;
  double extremal_eigphase = 0.0;  // min (sigma=+1) / max (sigma=-1) eigenphase
  std::vector<Complex> nr_boundary;
  bool full_circle = false;  // numerical range surrounds 0; phi unreliable
  bool skipped = false;
};

struct PhaseCurve {
  std::vector<PhaseSample> samples;
  int sigma = 1;
};

struct RangeOptions {
  double delta_rel = 1e-6;     // modulus filter on eigenvalues / range points
  double compress_rel = 1e-12; // singular-value cutoff for subspace compression
  int n_theta = 720;
  double refine_tol = 1e-6;    // golden-section window on the support angle
};

struct DegenerateFormError : std::runtime_error {
  DegenerateFormError() : std::runtime_error("form matrix is numerically zero") {}
};

PhaseSample phase_floor(const Eigen::MatrixXcd& m, int sigma,
                        const RangeOptions& opt = {});

// lambda -> weighted form matrix; throws SingularModeError / PoleError /
// DegenerateFormError at exceptional points.
using FormEvaluator = std::function<Eigen::MatrixXcd(double)>;

PhaseCurve sweep(const FormEvaluator& eval, int sigma, double lambda_lo,
                 double lambda_hi, double step, int parallelism = 1,
                 const RangeOptions& opt = {});

struct DetectOptions {
  double tau_dip = 0.2;
  double tau_jump = 1.0;
  double refine_width = 1e-4;
};

struct Detection {
  double lambda_hat = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int sigma = 1;
  std::string side;  // "below" | "above" | "two_sided"
  double phase_floor_at_dip = 0.0;
  int multiplicity_estimate = 0;  // 0 = indeterminate
};

std::vector<Detection> detect(const PhaseCurve& curve, ProblemKind kind,
                              const FormEvaluator& eval,
                              const DetectOptions& opt = {},
                              const RangeOptions& ropt = {});

// Counts eigenphase trajectories descending into the dip on the
// sigma-appropriate side of a refined detection; 0 when indeterminate.
int multiplicity_diagnostic(const PhaseCurve& curve, const Detection& det);

struct FarFieldReport {
  double hausdorff = 0.0;  // one-sided, F_S phases into the far-field interval
  Complex gamma;                // fitted scattering-matrix constant
  double unitarity_residual = 0.0;
  std::vector<double> circle_residuals;  // per eigenvalue, |1 + gamma chi| - 1
  double candidate_ratio = 0.0;          // |gamma| / sqrt(k/(8 pi))
  bool pass_hausdorff = false;
  bool pass_unitarity = false;
};

// Compares filtered eigenphase sets of the far-field operator (rotated by
// e^{-i pi/4}, the 2D far-field normalization offset) and of F_S, and fits
// the constant gamma making I + gamma F unitary.
FarFieldReport farfield_phase_check(const forward::ScatteringProblem& problem,
                                    const DiskObstacle& disk,
                                    const DiscretizedCurve& source,
                                    const WaveContext& ctx, int n_dir = 64,
                                    const RangeOptions& opt = {});

}  // namespace scatter::duality
