#pragma once

#include <Eigen/Dense>
#include <complex>

#include "scatter/geometry.hpp"

namespace scatter::potentials {

using geometry::DiscretizedCurve;
using geometry::SceneGeometry;
using geometry::Vec2;
using Complex = std::complex<double>;
using DensityVec = Eigen::VectorXcd;

struct WaveContext {
  double lambda;
  double k;
  explicit WaveContext(double lambda_)
      : lambda(lambda_), k(std::sqrt(lambda_)) {
    if (!(lambda_ > 0.0)) throw std::domain_error("WaveContext: lambda <= 0");
  }
};

enum class OperatorKind { L, Lstar, SingleLayer, DoubleLayer, AdjointDouble, FS, DtN };

struct OperatorMatrix {
  Eigen::MatrixXcd entries;
  OperatorKind kind;
};

/// Outgoing 2D fundamental solution G_k(x,y) = (i/4) H_0^{(1)}(k|x-y|).
Complex green2d(double k, Vec2 x, Vec2 y);

/// Normal derivative of G_k with respect to y, direction nu (unit).
Complex green2d_dnu_y(double k, Vec2 x, Vec2 y, Vec2 nu);

// Probing operator L : densities on `source` -> incident trace on `target`,
// kernel conj(G_k), quadrature weights folded into the columns. The curves
// must be disjoint; the kernel is smooth and plain trapezoid is spectral.
Eigen::MatrixXcd assemble_L_between(const DiscretizedCurve& target,
                                    const DiscretizedCurve& source,
                                    const WaveContext& ctx);

// L^* : densities on `source` -> single-layer trace on `target`, kernel G_k
// (unconjugated).
Eigen::MatrixXcd assemble_Lstar_between(const DiscretizedCurve& target,
                                        const DiscretizedCurve& source,
                                        const WaveContext& ctx);

OperatorMatrix assemble_L(const SceneGeometry& scene, const WaveContext& ctx);
OperatorMatrix assemble_Lstar(const SceneGeometry& scene, const WaveContext& ctx);

// Single-layer field of a nodal density at off-surface points
// (distance guard 1e-6).
std::vector<Complex> eval_single_layer(const DiscretizedCurve& curve,
                                       const DensityVec& density,
                                       const WaveContext& ctx,
                                       const std::vector<Vec2>& points);

// On-surface operators with Kress log-splitting quadrature. Densities are
// nodal function values; matrices map them to on-surface potential values:
//   S  : single layer       (Smu)(x)   = int G mu ds
//   K  : double layer p.v.  (Kmu)(x)   = int dG/dnu_y mu ds
//   Kp : adjoint double layer p.v.
struct SingularOps {
  Eigen::MatrixXcd S, K, Kp;
};
SingularOps assemble_singular_ops(const DiscretizedCurve& curve,
                                  const WaveContext& ctx);

// Kress quadrature weights R_{|i-j|} for the 2pi-periodic log kernel
// ln(4 sin^2((t-s)/2)) on n nodes.
std::vector<double> kress_log_weights(int n);

}  // namespace scatter::potentials
