#include "scatter/forward.hpp"

#include "scatter/specfun.hpp"

namespace scatter::forward {

namespace {

constexpr Complex kI{0.0, 1.0};

// H_m, J_m at negative orders by symmetry C_{-m} = (-1)^m C_m.
Complex hankel_sym(int m, double x) {
  const Complex h = specfun::hankel1(std::abs(m), x);
  return (m < 0 && (m & 1)) ? -h : h;
}

double bessel_j_sym(int m, double x) {
  const double j = specfun::bessel_j(std::abs(m), x);
  return (m < 0 && (m & 1)) ? -j : j;
}

Complex polar_phase(int m, double theta) {
  return std::polar(1.0, m * theta);
}

}  // namespace

int default_truncation(double k, double r_max) {
  return std::max(20, static_cast<int>(std::ceil(k * r_max)) + 15);
}

ModalCoeffs incident_modal_coeffs(const DiscretizedCurve& source, Vec2 center,
                                  double disk_radius, const WaveContext& ctx,
                                  int M, const DensityVec& phi,
                                  SourceKernel kernel) {
  if (phi.size() != source.n)
    throw std::invalid_argument("incident_modal_coeffs: density size mismatch");
  ModalCoeffs mc;
  mc.center = center;
  mc.truncation = M;
  mc.a.assign(2 * M + 1, Complex{0.0});

  for (int j = 0; j < source.n; ++j) {
    const Vec2 d = source.x[j] - center;
    const double r = d.norm();
    if (r <= disk_radius)
      throw std::domain_error("incident_modal_coeffs: source node inside disk");
    const double th = std::atan2(d.y, d.x);
    const Complex weight = phi[j] * source.w[j];
    for (int m = -M; m <= M; ++m) {
      const Complex h = hankel_sym(m, ctx.k * r);
      if (kernel == SourceKernel::Probing)
        mc.coeff(m) += -0.25 * kI * std::conj(h) * polar_phase(-m, th) * weight;
      else
        mc.coeff(m) += 0.25 * kI * h * polar_phase(-m, th) * weight;
    }
  }

  // adequacy of the truncation, judged on the disk-boundary trace
  double max_trace = 0.0, tail = 0.0;
  for (int m = -M; m <= M; ++m) {
    const double c = std::abs(mc.coeff(m)) *
                     std::abs(bessel_j_sym(m, ctx.k * disk_radius));
    max_trace = std::max(max_trace, c);
    if (std::abs(m) >= M - 1) tail = std::max(tail, c);
  }
  mc.tail_ok = (max_trace == 0.0) || (tail <= 1e-12 * max_trace);
  return mc;
}

ModalCoeffs plane_wave_coeffs(Vec2 center, double theta_inc,
                              const WaveContext& ctx, int M) {
  ModalCoeffs mc;
  mc.center = center;
  mc.truncation = M;
  mc.a.assign(2 * M + 1, Complex{0.0});
  const Vec2 omega{std::cos(theta_inc), std::sin(theta_inc)};
  const Complex phase = std::polar(1.0, ctx.k * center.dot(omega));
  for (int m = -M; m <= M; ++m)
    mc.coeff(m) = phase * std::pow(kI, m) * polar_phase(-m, theta_inc);
  return mc;
}

DiskModalSolution solve_disk_modal(const ScatteringProblem& problem, Vec2 center,
                                   double radius, const WaveContext& ctx,
                                   const ModalCoeffs& incident) {
  problem.validate();
  if (radius <= 0.0) throw std::invalid_argument("solve_disk_modal: radius <= 0");
  const int M = incident.truncation;
  const double ka = ctx.k * radius;

  DiskModalSolution sol;
  sol.problem = problem;
  sol.lambda = ctx.lambda;
  sol.center = center;
  sol.radius = radius;
  sol.incident = incident;
  sol.c.assign(2 * M + 1, Complex{0.0});
  if (problem.kind == ProblemKind::Transmission)
    sol.b.assign(2 * M + 1, Complex{0.0});

  for (int m = 0; m <= M; ++m) {
    Complex ratio_c, coef_b;
    switch (problem.kind) {
      case ProblemKind::Dirichlet:
        ratio_c = -specfun::bessel_j(m, ka) / specfun::hankel1(m, ka);
        break;
      case ProblemKind::Neumann:
        ratio_c = -specfun::deriv_j(m, ka) / specfun::deriv_hankel1(m, ka);
        break;
      case ProblemKind::Transmission: {
        const double s = std::sqrt(problem.n);
        const double ja = specfun::bessel_j(m, ka);
        const double jap = specfun::deriv_j(m, ka);
        const Complex ha = specfun::hankel1(m, ka);
        const Complex hap = specfun::deriv_hankel1(m, ka);
        const double jn = specfun::bessel_j(m, s * ka);
        const double jnp = specfun::deriv_j(m, s * ka);
        // match value and normal derivative at r = a:
        //   a J(ka) + c H(ka)        = b J(s ka)
        //   k(a J'(ka) + c H'(ka))   = s k b J'(s ka)
        const Complex det = -s * jnp * ha + jn * hap;
        const double scale = std::abs(s * jnp * ha) + std::abs(jn * hap);
        if (std::abs(det) < 1e-13 * std::max(scale, 1e-30))
          throw SingularModeError(m);
        ratio_c = (s * jnp * ja - jn * jap) / det;
        coef_b = (hap * ja - ha * jap) / det;  // b_m / a_m
        break;
      }
    }
    for (const int mm : {m, -m}) {
      if (mm == 0 && m != 0) continue;
      sol.c[mm + M] = incident.coeff(mm) * ratio_c;
      if (problem.kind == ProblemKind::Transmission)
        sol.b[mm + M] = incident.coeff(mm) * coef_b;
      if (m == 0) break;
    }
  }
  return sol;
}

Complex DiskModalSolution::eval_scattered(Vec2 p) const {
  const int M = incident.truncation;
  const Vec2 d = p - center;
  const double r = d.norm();
  const double th = std::atan2(d.y, d.x);
  Complex u = 0.0;
  // boundary points count as exterior; the exterior expansion holds on r = a
  if (r >= radius * (1.0 - 1e-12)) {
    for (int m = -M; m <= M; ++m)
      u += c[m + M] * hankel_sym(m, std::sqrt(lambda) * r) * polar_phase(m, th);
    return u;
  }
  if (problem.kind != ProblemKind::Transmission)
    throw std::domain_error("eval_scattered: point inside the obstacle");
  const double k = std::sqrt(lambda);
  const double s = std::sqrt(problem.n);
  for (int m = -M; m <= M; ++m)
    u += (b[m + M] * bessel_j_sym(m, s * k * r) -
          incident.coeff(m) * bessel_j_sym(m, k * r)) *
         polar_phase(m, th);
  return u;
}

Complex DiskModalSolution::far_field(double theta) const {
  const int M = incident.truncation;
  const double k = std::sqrt(lambda);
  Complex f = 0.0;
  for (int m = -M; m <= M; ++m)
    f += c[m + M] * std::pow(-kI, m) * polar_phase(m, theta);
  f *= std::sqrt(2.0 / (M_PI * k)) * std::polar(1.0, -M_PI / 4.0);
  // expansion center offset: u_inf(theta) picks up e^{-ik theta_hat . c}
  const Vec2 dir{std::cos(theta), std::sin(theta)};
  return f * std::polar(1.0, -k * dir.dot(center));
}

NystromSolution solve_dirichlet_nystrom(const DiscretizedCurve& curve,
                                        const WaveContext& ctx,
                                        const DensityVec& incident_trace,
                                        std::optional<double> eta_opt) {
  if (incident_trace.size() != curve.n)
    throw std::invalid_argument("solve_dirichlet_nystrom: trace size mismatch");
  const double eta = eta_opt.value_or(ctx.k);
  const potentials::SingularOps ops = potentials::assemble_singular_ops(curve, ctx);
  Eigen::MatrixXcd a =
      0.5 * Eigen::MatrixXcd::Identity(curve.n, curve.n) + ops.K - kI * eta * ops.S;
  NystromSolution sol;
  sol.curve = curve;
  sol.lambda = ctx.lambda;
  sol.eta = eta;
  sol.psi = a.partialPivLu().solve(-incident_trace);
  return sol;
}

Complex NystromSolution::eval_scattered(Vec2 p) const {
  const double k = std::sqrt(lambda);
  Complex u = 0.0;
  for (int j = 0; j < curve.n; ++j) {
    const Complex g = potentials::green2d(k, p, curve.x[j]);
    const Complex dg = potentials::green2d_dnu_y(k, p, curve.x[j], curve.normal[j]);
    u += (dg - kI * eta * g) * psi[j] * curve.w[j];
  }
  return u;
}

std::vector<Complex> dtn_disk(DtnKind kind, double a, const WaveContext& ctx,
                              double n_index, int M) {
  const double x = (kind == DtnKind::InteriorN ? std::sqrt(n_index) : 1.0) *
                   ctx.k * a;
  const double front =
      (kind == DtnKind::InteriorN ? std::sqrt(n_index) : 1.0) * ctx.k;
  std::vector<Complex> sym(M + 1);
  for (int m = 0; m <= M; ++m) {
    if (kind == DtnKind::Exterior) {
      sym[m] = front * specfun::ratio_hprime_over_h(m, x);
      continue;
    }
    // interior: poles at zeros of J_m; only possible for m <= x
    if (m <= x + 1.0) {
      const double j = specfun::bessel_j(m, x);
      const double jp = specfun::deriv_j(m, x);
      if (std::abs(j) < 1e-6 * std::max(1.0, std::abs(jp)))
        throw PoleError(m, x);
      sym[m] = front * jp / j;
    } else {
      sym[m] = front * specfun::ratio_jprime_over_j(m, x);
    }
  }
  return sym;
}

}  // namespace scatter::forward
