#pragma once

#include <vector>

namespace ebkit {

double normal_pdf(double x, double mean = 0.0, double variance = 1.0);

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile, absolute error below 1e-13 on (0, 1).
double inv_normal_cdf(double p);

double logistic(double t);

/// log I_nu(z) for the modified Bessel function of the first kind, nu >= 0,
/// z > 0.  Ascending power series for z <= 30 (relative tail bound 1e-15),
/// large-argument asymptotic expansion beyond; the switch point is covered by
/// a continuity test.
double log_bessel_i(double nu, double z);

double bessel_i(double nu, double z);

double log_factorial(unsigned n);

/// n equally spaced points from lo to hi inclusive (n >= 2).
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace ebkit
