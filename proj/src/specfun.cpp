#include "scatter/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>

namespace scatter::specfun {

namespace {

void check_order(int m) {
  if (m < 0) throw std::domain_error("specfun: negative order");
  if (m > kMaxOrder) throw std::domain_error("specfun: order exceeds cap");
}

void check_nonneg(double x) {
  if (!std::isfinite(x)) throw std::domain_error("specfun: non-finite argument");
  if (x < 0.0) throw std::domain_error("specfun: argument must be >= 0");
  if (x > kMaxArgument) throw std::domain_error("specfun: argument exceeds cap");
}

void check_pos(double x) {
  if (!std::isfinite(x)) throw std::domain_error("specfun: non-finite argument");
  if (x <= 0.0) throw std::domain_error("specfun: argument must be > 0");
  if (x > kMaxArgument) throw std::domain_error("specfun: argument exceeds cap");
}

// J_{m+1}(x)/J_m(x) by the continued fraction
//   f = 1/(b_1 - 1/(b_2 - ...)),  b_j = 2(m+j)/x   (modified Lentz)
double ratio_j_next_over_j(int m, double x) {
  const double tiny = 1e-300;
  double f = tiny, c = f, d = 0.0;
  for (int j = 1; j < 100000; ++j) {
    const double b = 2.0 * (m + j) / x;
    const double a = j == 1 ? 1.0 : -1.0;
    d = b + a * d;
    if (std::abs(d) < tiny) d = tiny;
    c = b + a / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return f;
  }
  throw std::runtime_error("specfun: continued fraction did not converge");
}

// Y_{m+1}(x)/Y_m(x) by forward ratio recurrence (dominant solution, stable).
double ratio_y_next_over_y(int m, double x) {
  double t = boost::math::cyl_neumann(1, x) / boost::math::cyl_neumann(0, x);
  for (int j = 1; j <= m; ++j) t = 2.0 * j / x - 1.0 / t;
  return t;
}

// estimate of ln |Y_m(x)| in the evanescent regime m >> x
double log_y_magnitude(int m, double x) {
  if (m == 0) return 0.0;
  return std::lgamma(static_cast<double>(m)) - std::log(M_PI) +
         m * std::log(2.0 / x);
}

}  // namespace

double bessel_j(int m, double x) {
  check_order(m);
  check_nonneg(x);
  return boost::math::cyl_bessel_j(m, x);
}

double bessel_y(int m, double x) {
  check_order(m);
  check_pos(x);
  return boost::math::cyl_neumann(m, x);
}

Complex hankel1(int m, double x) { return {bessel_j(m, x), bessel_y(m, x)}; }

double deriv_j(int m, double x) {
  check_order(m);
  check_nonneg(x);
  if (m == 0) return -boost::math::cyl_bessel_j(1, x);
  return 0.5 * (boost::math::cyl_bessel_j(m - 1, x) -
                boost::math::cyl_bessel_j(m + 1, x));
}

double deriv_y(int m, double x) {
  check_order(m);
  check_pos(x);
  if (m == 0) return -boost::math::cyl_neumann(1, x);
  return 0.5 * (boost::math::cyl_neumann(m - 1, x) -
                boost::math::cyl_neumann(m + 1, x));
}

Complex deriv_hankel1(int m, double x) { return {deriv_j(m, x), deriv_y(m, x)}; }

namespace {

std::vector<double> zeros_of(int m, double x_lo, double x_hi,
                             double (*f)(int, double)) {
  if (x_lo < 0.0 || x_hi <= x_lo || x_hi > kMaxArgument)
    throw std::domain_error("specfun: bad zero-search interval");
  const double step = M_PI / 8.0;
  const double start = std::max(x_lo, 1e-9);  // skip the conventional origin zero
  std::vector<double> zeros;
  double a = start;
  double fa = f(m, a);
  while (a < x_hi) {
    double b = std::min(a + step, x_hi);
    double fb = f(m, b);
    if (fa == 0.0) zeros.push_back(a);
    if (fa * fb < 0.0) {
      double lo = a, hi = b, flo = fa;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(m, mid);
        if (fm == 0.0) { lo = hi = mid; break; }
        if (flo * fm < 0.0) hi = mid;
        else { lo = mid; flo = fm; }
      }
      zeros.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  return zeros;
}

}  // namespace

std::vector<double> bessel_j_zeros(int m, double x_lo, double x_hi) {
  check_order(m);
  return zeros_of(m, x_lo, x_hi, &bessel_j);
}

std::vector<double> deriv_j_zeros(int m, double x_lo, double x_hi) {
  check_order(m);
  return zeros_of(m, x_lo, x_hi, &deriv_j);
}

double ratio_jprime_over_j(int m, double x) {
  const int n = std::abs(m);
  check_pos(x);
  return n / x - ratio_j_next_over_j(n, x);
}

Complex ratio_hprime_over_h(int m, double x) {
  const int n = std::abs(m);
  check_pos(x);
  if (log_y_magnitude(n + 1, x) < 690.0) {
    const Complex h = hankel1(n, x);
    const Complex h1 = hankel1(n + 1, x);
    return static_cast<double>(n) / x - h1 / h;
  }
  // H ~ iY here; J is negligible beyond double precision
  return static_cast<double>(n) / x - ratio_y_next_over_y(n, x);
}

}  // namespace scatter::specfun
