#include "scatter/duality.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace scatter::duality {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

// arg mapped so the duality signal is far from the branch cut: [0, 2pi) for
// sigma=+1 (signal at 0), (0, 2pi] for sigma=-1 (signal at 2pi).
double map_arg(Complex z, int sigma) {
  double a = std::arg(z);
  if (sigma > 0 ? a < 0.0 : a <= 0.0) a += kTwoPi;
  return a;
}

// Supporting point of the numerical range in direction theta.
Complex range_point(const Eigen::MatrixXcd& m, double theta) {
  Eigen::MatrixXcd r = std::exp(-kI * theta) * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (r + r.adjoint()));
  const int top = static_cast<int>(m.rows()) - 1;
  Eigen::VectorXcd v = es.eigenvectors().col(top);
  return v.dot(m * v);
}

// Compress to the dominant singular subspace; the numerical range of the
// compression agrees with the original away from the roundoff cluster at 0.
Eigen::MatrixXcd compress(const Eigen::MatrixXcd& m, double rel) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  int r = 0;
  while (r < sv.size() && sv[r] > rel * sv[0]) ++r;
  if (2 * r >= m.rows()) return m;
  Eigen::MatrixXcd stack(m.rows(), 2 * r);
  stack << svd.matrixU().leftCols(r), svd.matrixV().leftCols(r);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(stack);
  Eigen::MatrixXcd q =
      qr.householderQ() * Eigen::MatrixXcd::Identity(m.rows(), 2 * r);
  return q.adjoint() * m * q;
}

bool is_skip_error(const std::exception& e) {
  return dynamic_cast<const forward::SingularModeError*>(&e) ||
         dynamic_cast<const forward::PoleError*>(&e) ||
         dynamic_cast<const DegenerateFormError*>(&e);
}

}  // namespace

PhaseSample phase_floor(const Eigen::MatrixXcd& m, int sigma,
                        const RangeOptions& opt) {
  const double fro = m.norm();
  if (!(fro > 0.0)) throw DegenerateFormError{};
  Eigen::MatrixXcd mt = compress(m, opt.compress_rel);

  PhaseSample s;

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(mt, false);
  const auto& mu = es.eigenvalues();
  double mu_max = mu.cwiseAbs().maxCoeff();
  if (mu_max >= 1e-13 * fro) {
    for (int j = 0; j < mu.size(); ++j)
      if (std::abs(mu[j]) >= opt.delta_rel * mu_max)
        s.eigenphases.push_back(map_arg(mu[j], sigma));
  }
  s.n_retained = static_cast<int>(s.eigenphases.size());

  const double dtheta = kTwoPi / opt.n_theta;
  std::vector<Complex> bdry(opt.n_theta);
  double z_max = 0.0;
  for (int t = 0; t < opt.n_theta; ++t) {
    bdry[t] = range_point(mt, t * dtheta);
    z_max = std::max(z_max, std::abs(bdry[t]));
  }
  s.nr_boundary = bdry;
  if (!(z_max > 0.0)) throw DegenerateFormError{};

  const double sgn = sigma > 0 ? 1.0 : -1.0;
  double best = std::numeric_limits<double>::infinity();
  int best_t = 0;
  std::vector<double> args;
  for (int t = 0; t < opt.n_theta; ++t) {
    if (std::abs(bdry[t]) < opt.delta_rel * z_max) continue;
    double a = map_arg(bdry[t], sigma);
    args.push_back(a);
    if (sgn * a < best) {
      best = sgn * a;
      best_t = t;
    }
  }

  // Golden-section polish of the support angle around the grid extremizer.
  auto objective = [&](double theta) {
    Complex z = range_point(mt, theta);
    if (std::abs(z) < opt.delta_rel * z_max)
      return std::numeric_limits<double>::infinity();
    return sgn * map_arg(z, sigma);
  };
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = (best_t - 1) * dtheta, hi = (best_t + 1) * dtheta;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = objective(x1), f2 = objective(x2);
  while (hi - lo > opt.refine_tol) {
    if (f1 < f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - gr * (hi - lo); f1 = objective(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + gr * (hi - lo); f2 = objective(x2);
    }
  }
  best = std::min(best, std::min(f1, f2));

  s.phi = sgn * best;
  s.psi = sigma > 0 ? s.phi : kTwoPi - s.phi;

  // Full-circle diagnostic: retained boundary arguments leave no gap wider
  // than pi/2, so the range surrounds the origin and phi is meaningless.
  if (args.size() >= 8) {
    std::sort(args.begin(), args.end());
    double gap = args.front() + kTwoPi - args.back();
    for (size_t j = 1; j < args.size(); ++j)
      gap = std::max(gap, args[j] - args[j - 1]);
    s.full_circle = gap < 0.5 * std::numbers::pi;
  }

  if (s.eigenphases.empty()) {
    s.extremal_eigphase = s.phi;
  } else if (sigma > 0) {
    s.extremal_eigphase = *std::min_element(s.eigenphases.begin(), s.eigenphases.end());
  } else {
    s.extremal_eigphase = *std::max_element(s.eigenphases.begin(), s.eigenphases.end());
  }
  return s;
}

PhaseCurve sweep(const FormEvaluator& eval, int sigma, double lambda_lo,
                 double lambda_hi, double step, int parallelism,
                 const RangeOptions& opt) {
  const int n = static_cast<int>(std::llround((lambda_hi - lambda_lo) / step)) + 1;
  PhaseCurve curve;
  curve.sigma = sigma;
  curve.samples.resize(n);

  auto task = [&](int i) {
    const double lambda = lambda_lo + i * step;
    PhaseSample& s = curve.samples[i];
    try {
      s = phase_floor(eval(lambda), sigma, opt);
    } catch (const std::exception&) {
      s = PhaseSample{};
      s.skipped = true;
    }
    s.lambda = lambda;
  };

#ifdef _OPENMP
  if (parallelism > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(parallelism)
    for (int i = 0; i < n; ++i) task(i);
    return curve;
  }
#endif
  (void)parallelism;
  for (int i = 0; i < n; ++i) task(i);
  return curve;
}

namespace {

// Dip indicator at a fresh lambda; infinity on exceptional points.
double psi_at(const FormEvaluator& eval, int sigma, double lambda,
              const RangeOptions& ropt) {
  try {
    return phase_floor(eval(lambda), sigma, ropt).psi;
  } catch (const std::exception& e) {
    if (is_skip_error(e)) return std::numeric_limits<double>::infinity();
    throw;
  }
}

}  // namespace

std::vector<Detection> detect(const PhaseCurve& curve, ProblemKind kind,
                              const FormEvaluator& eval,
                              const DetectOptions& opt,
                              const RangeOptions& ropt) {
  const auto& s = curve.samples;
  const int sigma = curve.sigma;
  std::vector<int> live;
  for (int i = 0; i < static_cast<int>(s.size()); ++i)
    if (!s[i].skipped) live.push_back(i);

  // Obstacle eigenvalues announce themselves on the sigma-appropriate side
  // only; transmission eigenvalues are two-sided, so both orientations are
  // scanned there.
  std::vector<int> orients;
  if (kind == ProblemKind::Transmission) orients = {1, -1};
  else orients = {sigma};

  std::vector<Detection> out;
  for (int orient : orients)
  for (size_t q = 0; q + 1 < live.size(); ++q) {
    // dip sample adjacent to the jump: i on the approach side, j across it
    int i, j;
    if (orient > 0) {
      i = live[q]; j = live[q + 1];
    } else {
      j = live[q]; i = live[q + 1];
    }
    if (!(s[i].psi < opt.tau_dip) || s[i].full_circle) continue;
    if (!(s[j].psi - s[i].psi > opt.tau_jump)) continue;

    Detection det;
    det.sigma = sigma;
    det.side = kind == ProblemKind::Transmission ? "two_sided"
               : sigma > 0                       ? "below"
                                                 : "above";
    double dip_floor = s[i].psi;
    for (size_t r = q + (orient > 0 ? 0 : 1);; ) {
      // walk back along the contiguous dip run for the floor value
      if (orient > 0) {
        if (r == 0) break;
        --r;
        if (!(s[live[r]].psi < opt.tau_dip)) break;
        dip_floor = std::min(dip_floor, s[live[r]].psi);
      } else {
        ++r;
        if (r >= live.size() || !(s[live[r]].psi < opt.tau_dip)) break;
        dip_floor = std::min(dip_floor, s[live[r]].psi);
      }
    }
    det.phase_floor_at_dip = dip_floor;

    // bisection on the dip indicator; the eigenvalue is the psi discontinuity
    double lo = std::min(s[i].lambda, s[j].lambda);
    double hi = std::max(s[i].lambda, s[j].lambda);
    const double tau_c = s[i].psi + 0.5 * opt.tau_jump;
    const bool dip_at_lo = orient > 0;
    while (hi - lo > opt.refine_width) {
      double mid = 0.5 * (lo + hi);
      double p = psi_at(eval, sigma, mid, ropt);
      if (std::isinf(p)) {
        mid = lo + 0.45 * (hi - lo);
        p = psi_at(eval, sigma, mid, ropt);
        if (std::isinf(p)) break;
      }
      const bool on_dip_side = p < tau_c;
      if (on_dip_side == dip_at_lo) lo = mid; else hi = mid;
    }
    // a genuine eigenvalue is a psi discontinuity: the gap across the refined
    // bracket must persist, which screens out smooth descents through tau_c
    double p_lo = psi_at(eval, sigma, lo, ropt);
    double p_hi = psi_at(eval, sigma, hi, ropt);
    if (std::isfinite(p_lo) && std::isfinite(p_hi) &&
        !(std::fabs(p_hi - p_lo) > 0.5 * opt.tau_jump))
      continue;
    det.bracket_lo = lo;
    det.bracket_hi = hi;
    det.lambda_hat = 0.5 * (lo + hi);
    det.multiplicity_estimate = multiplicity_diagnostic(curve, det);
    out.push_back(det);
  }
  std::sort(out.begin(), out.end(), [](const Detection& a, const Detection& b) {
    return a.lambda_hat < b.lambda_hat;
  });
  // the two orientation passes can bracket the same discontinuity twice
  out.erase(std::unique(out.begin(), out.end(),
                        [&](const Detection& a, const Detection& b) {
                          return std::fabs(a.lambda_hat - b.lambda_hat) <
                                 2.0 * opt.refine_width;
                        }),
            out.end());
  return out;
}

int multiplicity_diagnostic(const PhaseCurve& curve, const Detection& det) {
  const int sigma = det.sigma;
  constexpr double tau = 0.2;
  // the last two usable samples approaching the bracket from the sigma side
  std::vector<const PhaseSample*> side;
  if (sigma > 0) {
    for (const auto& s : curve.samples)
      if (!s.skipped && !s.full_circle && s.lambda <= det.bracket_lo + 1e-12)
        side.push_back(&s);
  } else {
    for (auto it = curve.samples.rbegin(); it != curve.samples.rend(); ++it)
      if (!it->skipped && !it->full_circle && it->lambda >= det.bracket_hi - 1e-12)
        side.push_back(&*it);
  }
  if (side.size() < 2) return 0;
  const PhaseSample* last = side.back();
  const PhaseSample* prev = side[side.size() - 2];

  auto dips = [sigma](const PhaseSample* s) {
    std::vector<double> d;
    for (double e : s->eigenphases) d.push_back(sigma > 0 ? e : kTwoPi - e);
    std::sort(d.begin(), d.end());
    return d;
  };
  std::vector<double> dl = dips(last), dp = dips(prev);
  if (dl.empty() || dp.empty()) return 0;

  // rank-matched trajectories, counted when inside the dip and descending
  int count = 0;
  for (size_t r = 0; r < std::min(dl.size(), dp.size()); ++r) {
    if (dl[r] < tau && dl[r] <= dp[r] + 1e-9) ++count;
  }
  return std::max(count, 1);
}

FarFieldReport farfield_phase_check(const forward::ScatteringProblem& problem,
                                    const DiskObstacle& disk,
                                    const DiscretizedCurve& source,
                                    const WaveContext& ctx, int n_dir,
                                    const RangeOptions& opt) {
  problem.validate();
  const int sigma = problem.sigma();
  const int M = forward::default_truncation(ctx.k, disk.radius +
                                                       disk.center.norm());

  // Far-field matrix on the uniform direction grid, weights folded.
  Eigen::MatrixXcd ff(n_dir, n_dir);
  const double w = kTwoPi / n_dir;
  for (int q = 0; q < n_dir; ++q) {
    auto inc = forward::plane_wave_coeffs(disk.center, q * w, ctx, M);
    auto sol = forward::solve_disk_modal(problem, disk.center, disk.radius, ctx, inc);
    for (int p = 0; p < n_dir; ++p) ff(p, q) = sol.far_field(p * w) * w;
  }

  auto phases = [&](const Eigen::MatrixXcd& m) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    const auto& mu = es.eigenvalues();
    double mu_max = mu.cwiseAbs().maxCoeff();
    std::vector<double> out;
    for (int j = 0; j < mu.size(); ++j)
      if (std::abs(mu[j]) >= opt.delta_rel * mu_max)
        out.push_back(map_arg(mu[j], sigma));
    return out;
  };

  // e^{-i pi/4} aligns the far-field normalization u_inf e^{ikr}/sqrt(r)
  // with the near-field phases.
  const Complex rot = std::exp(-kI * (std::numbers::pi / 4.0));
  std::vector<double> ph_far =
      phases(rot * static_cast<double>(sigma) * ff);
  auto nf = nearfield::assemble_FS_direct(problem, disk, source, ctx);
  std::vector<double> ph_near =
      phases(static_cast<double>(sigma) * nf.F);

  FarFieldReport rep;
  // The far-field phase set is the closure of the quadratic-form arguments,
  // which fills the whole interval between the extreme eigenphases (the
  // operator is normal), so measure each F_S phase against that interval.
  double haus = 0.0;
  if (!ph_far.empty()) {
    auto [lo_it, hi_it] = std::minmax_element(ph_far.begin(), ph_far.end());
    for (double a : ph_near) {
      double d = a < *lo_it ? *lo_it - a : a > *hi_it ? a - *hi_it : 0.0;
      haus = std::max(haus, std::min(d, kTwoPi - d));
    }
  }
  rep.hausdorff = haus;

  // Fit gamma so that I + gamma F is unitary; residual is quadratic in
  // gamma, evaluated from precomputed Frobenius inner products.
  Eigen::MatrixXcd g2 = ff.adjoint() * ff;
  auto resid = [&](Complex g) {
    Eigen::MatrixXcd r = std::conj(g) * ff.adjoint() + g * ff +
                         std::norm(g) * g2;
    return r.norm();
  };
  Complex center = std::sqrt(ctx.k / kTwoPi) *
                   std::exp(kI * (std::numbers::pi / 4.0));
  double span = 1.5 * std::abs(center);
  Complex best_g = center;
  double best_r = resid(center);
  for (int round = 0; round < 14; ++round) {
    Complex c = best_g;
    for (int ir = -10; ir <= 10; ++ir)
      for (int ii = -10; ii <= 10; ++ii) {
        Complex g = c + Complex(ir * span / 10.0, ii * span / 10.0);
        double r = resid(g);
        if (r < best_r) { best_r = r; best_g = g; }
      }
    span *= 0.25;
  }
  rep.gamma = best_g;
  rep.unitarity_residual = best_r;
  rep.candidate_ratio = std::abs(best_g) / std::sqrt(ctx.k / (4.0 * kTwoPi));

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(ff, false);
  const auto& chi = es.eigenvalues();
  double chi_max = chi.cwiseAbs().maxCoeff();
  for (int j = 0; j < chi.size(); ++j)
    if (std::abs(chi[j]) >= opt.delta_rel * chi_max)
      rep.circle_residuals.push_back(std::abs(1.0 + best_g * chi[j]) - 1.0);

  rep.pass_hausdorff = rep.hausdorff <= 0.05;
  rep.pass_unitarity = rep.unitarity_residual <= 1e-6;
  return rep;
}

}  // namespace scatter::duality
