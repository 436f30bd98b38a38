#include "scatter/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scatter/specfun.hpp"

namespace scatter::oracles {
namespace {

int order_cap(double a, double lambda_hi) {
  return static_cast<int>(std::ceil(std::sqrt(lambda_hi) * a)) + 8;
}

void sort_eigs(std::vector<OracleEigenvalue>& v) {
  std::sort(v.begin(), v.end(),
            [](const OracleEigenvalue& x, const OracleEigenvalue& y) {
              return x.lambda != y.lambda ? x.lambda < y.lambda : x.m < y.m;
            });
}

}  // namespace

std::vector<OracleEigenvalue> dirichlet_disk_eigs(double a, double lambda_lo,
                                                  double lambda_hi) {
  if (!(a > 0.0)) throw std::invalid_argument("disk radius must be positive");
  std::vector<OracleEigenvalue> out;
  const double x_hi = std::sqrt(std::max(lambda_hi, 0.0)) * a;
  for (int m = 0; m <= order_cap(a, lambda_hi); ++m) {
    auto zeros = specfun::bessel_j_zeros(m, 0.0, x_hi);
    for (size_t r = 0; r < zeros.size(); ++r) {
      double lambda = (zeros[r] / a) * (zeros[r] / a);
      if (lambda < lambda_lo || lambda > lambda_hi) continue;
      if (std::abs(specfun::bessel_j(m, std::sqrt(lambda) * a)) > 1e-10)
        throw std::runtime_error("dirichlet oracle residual check failed");
      out.push_back({lambda, m, static_cast<int>(r) + 1, m == 0 ? 1 : 2,
                     EigKind::Dirichlet, false});
    }
  }
  sort_eigs(out);
  return out;
}

std::vector<OracleEigenvalue> neumann_disk_eigs(double a, double lambda_lo,
                                                double lambda_hi) {
  if (!(a > 0.0)) throw std::invalid_argument("disk radius must be positive");
  std::vector<OracleEigenvalue> out;
  const double x_hi = std::sqrt(std::max(lambda_hi, 0.0)) * a;
  for (int m = 0; m <= order_cap(a, lambda_hi); ++m) {
    auto zeros = specfun::deriv_j_zeros(m, 0.0, x_hi);
    for (size_t r = 0; r < zeros.size(); ++r) {
      if (zeros[r] < 1e-12) continue;  // constant mode at lambda = 0
      double lambda = (zeros[r] / a) * (zeros[r] / a);
      if (lambda < lambda_lo || lambda > lambda_hi) continue;
      if (std::abs(specfun::deriv_j(m, std::sqrt(lambda) * a)) > 1e-10)
        throw std::runtime_error("neumann oracle residual check failed");
      out.push_back({lambda, m, static_cast<int>(r) + 1, m == 0 ? 1 : 2,
                     EigKind::Neumann, false});
    }
  }
  sort_eigs(out);
  return out;
}

double ite_determinant(int m, double k, double a, double n) {
  const double s = std::sqrt(n);
  return s * specfun::deriv_j(m, s * k * a) * specfun::bessel_j(m, k * a) -
         specfun::deriv_j(m, k * a) * specfun::bessel_j(m, s * k * a);
}

std::vector<OracleEigenvalue> ite_disk_eigs(double a, double n,
                                            double lambda_lo, double lambda_hi) {
  if (!(a > 0.0)) throw std::invalid_argument("disk radius must be positive");
  if (!(n > 0.0) || n == 1.0)
    throw std::invalid_argument("transmission index must be positive and != 1");
  std::vector<OracleEigenvalue> out;
  const double k_lo = std::sqrt(std::max(lambda_lo, 1e-12));
  const double k_hi = std::sqrt(std::max(lambda_hi, 0.0));
  const double step = 0.01;
  for (int m = 0; m <= order_cap(a, lambda_hi); ++m) {
    int radial = 0;
    double prev_k = k_lo, prev_d = ite_determinant(m, prev_k, a, n);
    std::vector<double> window{std::abs(prev_d)};
    std::vector<double> window_k{prev_k};
    for (double k = k_lo + step; k < k_hi + step; k += step) {
      k = std::min(k, k_hi);
      double d = ite_determinant(m, k, a, n);
      if (prev_d == 0.0 || d * prev_d < 0.0) {
        double lo = prev_k, hi = k;
        for (int it = 0; it < 80 && hi - lo > 1e-14; ++it) {
          double mid = 0.5 * (lo + hi);
          double dm = ite_determinant(m, mid, a, n);
          if (dm == 0.0) { lo = hi = mid; break; }
          (dm * ite_determinant(m, lo, a, n) < 0.0 ? hi : lo) = mid;
        }
        double root = 0.5 * (lo + hi);
        if (std::abs(ite_determinant(m, root, a, n)) > 1e-10)
          throw std::runtime_error("ite oracle residual check failed");
        out.push_back({root * root, m, ++radial, m == 0 ? 1 : 2, EigKind::Ite,
                       m != 0});
      } else {
        // a local minimum of |d_m| far below its neighbors without a sign
        // change: candidate even-order (tangential) root, not certified
        window.push_back(std::abs(d));
        window_k.push_back(k);
        if (window.size() >= 3) {
          size_t c = window.size() - 2;
          if (window[c] < window[c - 1] && window[c] < window[c + 1] &&
              window[c] < 1e-8) {
            out.push_back({window_k[c] * window_k[c], m, ++radial,
                           m == 0 ? 1 : 2, EigKind::Ite, true});
          }
        }
      }
      if (k >= k_hi) break;
      prev_k = k;
      prev_d = d;
    }
  }
  sort_eigs(out);
  return out;
}

}  // namespace scatter::oracles
