#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace scatter::specfun {

using Complex = std::complex<double>;

// Caps chosen generously above what the spectral sweep ever requests
// (k <= ~7, modal truncation <= 60). Out-of-range arguments throw.
inline constexpr int kMaxOrder = 120;
inline constexpr double kMaxArgument = 200.0;

/// J_m(x), integer order m >= 0, x >= 0.
double bessel_j(int m, double x);

/// Y_m(x), integer order m >= 0, x > 0.
double bessel_y(int m, double x);

/// H^{(1)}_m(x) = J_m(x) + i Y_m(x), x > 0.
Complex hankel1(int m, double x);

/// J_m'(x) via the recurrence (J_{m-1} - J_{m+1})/2; J_0' = -J_1.
double deriv_j(int m, double x);

/// Y_m'(x).
double deriv_y(int m, double x);

/// H^{(1)}_m{}'(x).
Complex deriv_hankel1(int m, double x);

// All zeros of J_m (resp. J_m') in [x_lo, x_hi], bracketed by a pi/8
// sign-change scan and bisected to 1e-12. The conventional zero of J_m
// at the origin (m >= 1) is not counted.
std::vector<double> bessel_j_zeros(int m, double x_lo, double x_hi);
std::vector<double> deriv_j_zeros(int m, double x_lo, double x_hi);

// Logarithmic-derivative ratios used by the disk DtN symbols. These stay
// finite-precision-stable where J_m / Y_m themselves under- or overflow
// (large |m| at moderate argument); |m| is used, the ratios are even in m.
double ratio_jprime_over_j(int m, double x);
Complex ratio_hprime_over_h(int m, double x);

}  // namespace scatter::specfun
