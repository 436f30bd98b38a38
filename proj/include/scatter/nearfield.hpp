#pragma once

#include "scatter/forward.hpp"

namespace scatter::nearfield {

using forward::ScatteringProblem;
using geometry::DiscretizedCurve;
using geometry::Vec2;
using potentials::Complex;
using potentials::WaveContext;

enum class Route { Direct, Factorized };

struct DiskObstacle {
  Vec2 center;
  double radius = 1.0;
};

// Reduced near-field operator on the source curve: nodal densities phi on S
// to the scattered trace u^sc|_S of the wave emitted by integrating the
// probing kernel against phi. Quadrature weights of S are folded into the
// columns, so F acts on nodal values.
struct NearFieldMatrix {
  Eigen::MatrixXcd F;
  Route route = Route::Direct;
  double lambda = 0.0;
};

// Emit-solve-measure route through the exact modal disk solver.
NearFieldMatrix assemble_FS_direct(const ScatteringProblem& problem,
                                   const DiskObstacle& disk,
                                   const DiscretizedCurve& source,
                                   const WaveContext& ctx, int truncation = -1);

// Boundary-operator route: F_S = s L^* D L with the middle factor D a
// rational combination of disk Dirichlet-to-Neumann maps, applied spectrally
// on an auxiliary boundary grid. s = -1 for Dirichlet, +1 otherwise.
NearFieldMatrix assemble_FS_factorized(const ScatteringProblem& problem,
                                       const DiskObstacle& disk,
                                       const DiscretizedCurve& source,
                                       const WaveContext& ctx,
                                       int boundary_nodes = 0);

// Emit-solve-measure route through the combined-field Nystrom solver for a
// sound-soft obstacle of general shape.
NearFieldMatrix assemble_FS_nystrom(const DiscretizedCurve& obstacle,
                                    const DiscretizedCurve& source,
                                    const WaveContext& ctx);

// Weighted sesquilinear-form matrix M_ij = sqrt(w_i) (sigma F)_ij sqrt(w_j);
// its numerical range represents the form phi -> sigma (F_S phi, phi)_{L^2(S)}
// over nodal densities.
Eigen::MatrixXcd form_matrix(const NearFieldMatrix& nf,
                             const DiscretizedCurve& source, int sigma);

// Same quadratic form in the multipole parametrization. Expanding the probing
// wave of a density phi about the disk center gives
//   sigma (F_S phi, phi) = -(i/4) sigma sum_m rho_m |c_m|^2,
// where rho_m is the modal reflection coefficient and c_m the m-th expansion
// coefficient of phi; every finite coefficient vector c is reachable from some
// density on S, so the value set of the form is the conic hull of the returned
// diagonal. The nodal matrix above spans the same set only through densities
// whose self-cancellation exceeds double precision (the low-argument boundary
// of its computed numerical range sits below 1e-12 of the leading modulus), so
// phase sweeps on disk scenes must use this frame.
Eigen::MatrixXcd form_matrix_modal(const ScatteringProblem& problem,
                                   const DiskObstacle& disk,
                                   const WaveContext& ctx, int truncation = -1);

}  // namespace scatter::nearfield
