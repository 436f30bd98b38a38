#pragma once

#include <optional>

#include "scatter/potentials.hpp"

namespace scatter::forward {

using geometry::DiscretizedCurve;
using geometry::Vec2;
using potentials::Complex;
using potentials::DensityVec;
using potentials::WaveContext;

enum class ProblemKind { Dirichlet, Neumann, Transmission };

struct ScatteringProblem {
  ProblemKind kind = ProblemKind::Dirichlet;
  double n = 0.0;  // refractive index, Transmission only (n > 0, n != 1)

  // +1 for Dirichlet and transmission with n < 1; -1 for Neumann and n > 1
  int sigma() const {
    switch (kind) {
      case ProblemKind::Dirichlet: return 1;
      case ProblemKind::Neumann: return -1;
      case ProblemKind::Transmission: return n < 1.0 ? 1 : -1;
    }
    throw std::logic_error("unreachable");
  }
  void validate() const {
    if (kind == ProblemKind::Transmission && (n <= 0.0 || n == 1.0))
      throw std::invalid_argument("transmission index must be positive and != 1");
  }
};

// A wave regular near `center`, u(x) = sum_m a_m J_m(k r) e^{i m theta}.
struct ModalCoeffs {
  Vec2 center;
  int truncation = 0;  // m = -M..M
  std::vector<Complex> a;
  bool tail_ok = true;

  Complex& coeff(int m) { return a[m + truncation]; }
  Complex coeff(int m) const { return a[m + truncation]; }
};

enum class SourceKernel {
  Probing,  // incident trace of L phi  (kernel conj G)
  Emitted   // physically emitted wave conj(L) psi  (kernel G)
};

// Expands the wave generated by a nodal density on `source` about `center`
// via the Graf addition theorem. `disk_radius` is the radius on which the
// truncation adequacy of the boundary trace is judged.
ModalCoeffs incident_modal_coeffs(const DiscretizedCurve& source, Vec2 center,
                                  double disk_radius, const WaveContext& ctx,
                                  int M, const DensityVec& phi,
                                  SourceKernel kernel = SourceKernel::Probing);

struct SingularModeError : std::runtime_error {
  int mode;
  explicit SingularModeError(int m)
      : std::runtime_error("singular transmission mode m=" + std::to_string(m)),
        mode(m) {}
};

struct PoleError : std::runtime_error {
  int mode;
  double argument;  // k a at which J_m (or J_m(sqrt n .)) vanishes
  PoleError(int m, double x)
      : std::runtime_error("DtN pole at mode m=" + std::to_string(m)),
        mode(m), argument(x) {}
};

// Exact modal solution of the scattering problem on a disk.
struct DiskModalSolution {
  ScatteringProblem problem;
  double lambda = 0.0;
  Vec2 center;
  double radius = 0.0;
  ModalCoeffs incident;
  std::vector<Complex> c;  // exterior Hankel coefficients, index m+M
  std::vector<Complex> b;  // interior coefficients (Transmission), else empty

  Complex scattered_coeff(int m) const { return c[m + incident.truncation]; }
  // u^sc at a point (exterior or, for Transmission, interior)
  Complex eval_scattered(Vec2 p) const;
  // far-field amplitude, normalization u^sc ~ u_inf e^{ikr}/sqrt(r)
  Complex far_field(double theta) const;
};

DiskModalSolution solve_disk_modal(const ScatteringProblem& problem, Vec2 center,
                                   double radius, const WaveContext& ctx,
                                   const ModalCoeffs& incident);

// Combined-field (Brakhage-Werner) Nystrom solver for the Dirichlet obstacle:
// u^sc = (doublelayer - i eta singlelayer)[psi].
struct NystromSolution {
  DiscretizedCurve curve;
  double lambda = 0.0;
  double eta = 0.0;
  DensityVec psi;

  Complex eval_scattered(Vec2 p) const;
};

NystromSolution solve_dirichlet_nystrom(const DiscretizedCurve& curve,
                                        const WaveContext& ctx,
                                        const DensityVec& incident_trace,
                                        std::optional<double> eta = {});

enum class DtnKind { Interior, Exterior, InteriorN };

// Fourier symbols of the disk DtN maps, m = 0..M (even in m):
//   Interior   F_1(m)    = k J_m'(ka)/J_m(ka)
//   Exterior   F_out(m)  = k H_m'(ka)/H_m(ka)
//   InteriorN  F_n(m)    = sqrt(n) k J_m'(sqrt(n) ka)/J_m(sqrt(n) ka)
// Throws PoleError at interior resonances among the requested modes.
std::vector<Complex> dtn_disk(DtnKind kind, double a, const WaveContext& ctx,
                              double n_index, int M);

// Plane wave e^{ik x.omega}: Jacobi-Anger coefficients about `center`.
ModalCoeffs plane_wave_coeffs(Vec2 center, double theta_inc,
                              const WaveContext& ctx, int M);

// Default modal truncation for a scene of circumscribing radius r_max.
int default_truncation(double k, double r_max);

}  // namespace scatter::forward
