#include "scatter/potentials.hpp"

#include "scatter/specfun.hpp"

namespace scatter::potentials {

namespace {

constexpr double kEulerGamma = 0.57721566490153286;
constexpr Complex kI{0.0, 1.0};

void require_disjoint(const DiscretizedCurve& a, const DiscretizedCurve& b) {
  for (const Vec2& p : a.x)
    for (const Vec2& q : b.x)
      if (geometry::dist(p, q) <= 1e-6)
        throw geometry::OverlapError("potentials: curves are not disjoint");
}

}  // namespace

Complex green2d(double k, Vec2 x, Vec2 y) {
  const double r = geometry::dist(x, y);
  if (r < 1e-12) throw std::domain_error("green2d: coincident points");
  return 0.25 * kI * specfun::hankel1(0, k * r);
}

Complex green2d_dnu_y(double k, Vec2 x, Vec2 y, Vec2 nu) {
  const double r = geometry::dist(x, y);
  if (r < 1e-12) throw std::domain_error("green2d_dnu_y: coincident points");
  // d/dnu_y of (i/4) H0(k|x-y|) = (ik/4) H1(k r) (x-y).nu / r
  return 0.25 * kI * k * specfun::hankel1(1, k * r) * ((x - y).dot(nu) / r);
}

Eigen::MatrixXcd assemble_L_between(const DiscretizedCurve& target,
                                    const DiscretizedCurve& source,
                                    const WaveContext& ctx) {
  require_disjoint(target, source);
  Eigen::MatrixXcd a(target.n, source.n);
  for (int i = 0; i < target.n; ++i)
    for (int j = 0; j < source.n; ++j)
      a(i, j) = std::conj(green2d(ctx.k, target.x[i], source.x[j])) * source.w[j];
  return a;
}

Eigen::MatrixXcd assemble_Lstar_between(const DiscretizedCurve& target,
                                        const DiscretizedCurve& source,
                                        const WaveContext& ctx) {
  require_disjoint(target, source);
  Eigen::MatrixXcd a(target.n, source.n);
  for (int i = 0; i < target.n; ++i)
    for (int j = 0; j < source.n; ++j)
      a(i, j) = green2d(ctx.k, target.x[i], source.x[j]) * source.w[j];
  return a;
}

OperatorMatrix assemble_L(const SceneGeometry& scene, const WaveContext& ctx) {
  return {assemble_L_between(scene.obstacle, scene.source, ctx), OperatorKind::L};
}

OperatorMatrix assemble_Lstar(const SceneGeometry& scene, const WaveContext& ctx) {
  return {assemble_Lstar_between(scene.source, scene.obstacle, ctx),
          OperatorKind::Lstar};
}

std::vector<Complex> eval_single_layer(const DiscretizedCurve& curve,
                                       const DensityVec& density,
                                       const WaveContext& ctx,
                                       const std::vector<Vec2>& points) {
  if (density.size() != curve.n)
    throw std::invalid_argument("eval_single_layer: density size mismatch");
  std::vector<Complex> out(points.size());
  for (size_t p = 0; p < points.size(); ++p) {
    double dmin = std::numeric_limits<double>::infinity();
    for (const Vec2& q : curve.x) dmin = std::min(dmin, geometry::dist(points[p], q));
    if (dmin <= 1e-6)
      throw std::domain_error("eval_single_layer: point too close to the curve");
    Complex u = 0.0;
    for (int j = 0; j < curve.n; ++j)
      u += green2d(ctx.k, points[p], curve.x[j]) * density[j] * curve.w[j];
    out[p] = u;
  }
  return out;
}

std::vector<double> kress_log_weights(int n) {
  // R_l = -(2 pi / m) sum_{q=1}^{m-1} cos(q l pi / m)/q - (pi / m^2) (-1)^l,
  // m = n/2; quadrature: int ln(4 sin^2((t_i - s)/2)) f(s) ds
  //          ~= sum_j R_{|i-j|} f(t_j)
  const int m = n / 2;
  std::vector<double> r(n);
  for (int l = 0; l < n; ++l) {
    double s = 0.0;
    for (int q = 1; q < m; ++q) s += std::cos(q * l * M_PI / m) / q;
    r[l] = -(2.0 * M_PI / m) * s -
           (M_PI / (static_cast<double>(m) * m)) * (l % 2 == 0 ? 1.0 : -1.0);
  }
  return r;
}

SingularOps assemble_singular_ops(const DiscretizedCurve& c,
                                  const WaveContext& ctx) {
  const int n = c.n;
  const double k = ctx.k;
  const double h = 2.0 * M_PI / n;
  const std::vector<double> R = kress_log_weights(n);

  SingularOps ops{Eigen::MatrixXcd(n, n), Eigen::MatrixXcd(n, n),
                  Eigen::MatrixXcd(n, n)};

  std::vector<Vec2> xpp(n);  // x''(t_i)
  for (int i = 0; i < n; ++i) xpp[i] = c.shape.second_deriv(c.t[i]);

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int l = std::abs(i - j);
      if (i == j) {
        // diagonal limits of the smooth remainders
        const double jac = c.jac[i];
        const Complex s_diag =
            (0.25 * kI - kEulerGamma / (2.0 * M_PI) -
             std::log(0.5 * k * jac) / (2.0 * M_PI)) * jac;
        const double curv = xpp[i].x * c.jac[i] * c.normal[i].x +
                            xpp[i].y * c.jac[i] * c.normal[i].y;
        // x''.(x2',-x1') / (4 pi |x'|^2); normal includes 1/|x'| so multiply back
        const double kd = curv / (4.0 * M_PI * jac * jac);
        const double s1_diag = -c.jac[i] / (4.0 * M_PI);  // M1(t,t) = -J0(0) jac / 4pi
        ops.S(i, j) = R[0] * s1_diag + h * s_diag;
        ops.K(i, j) = h * kd;   // L1(t,t) = 0
        ops.Kp(i, j) = h * kd;
        continue;
      }
      const double r = geometry::dist(c.x[i], c.x[j]);
      const double lg = std::log(4.0 * std::pow(std::sin(0.5 * (c.t[i] - c.t[j])), 2));

      // single layer
      const Complex s_full = 0.25 * kI * specfun::hankel1(0, k * r) * c.jac[j];
      const double s_log = -specfun::bessel_j(0, k * r) * c.jac[j] / (4.0 * M_PI);
      ops.S(i, j) = R[l] * s_log + h * (s_full - s_log * lg);

      // double layer: d = (x_i - x_j).n(t_j), n = jac * unit normal
      const double d = (c.x[i] - c.x[j]).dot(c.normal[j]) * c.jac[j];
      const Complex k_full = 0.25 * kI * k * specfun::hankel1(1, k * r) * d / r;
      const double k_log = -k * specfun::bessel_j(1, k * r) * d / (4.0 * M_PI * r);
      ops.K(i, j) = R[l] * k_log + h * (k_full - k_log * lg);

      // adjoint double layer: dp = (x_j - x_i).nu(t_i) * jac_j
      const double dp = (c.x[j] - c.x[i]).dot(c.normal[i]) * c.jac[j];
      const Complex kp_full = 0.25 * kI * k * specfun::hankel1(1, k * r) * dp / r;
      const double kp_log = -k * specfun::bessel_j(1, k * r) * dp / (4.0 * M_PI * r);
      ops.Kp(i, j) = R[l] * kp_log + h * (kp_full - kp_log * lg);
    }
  }
  return ops;
}

}  // namespace scatter::potentials
