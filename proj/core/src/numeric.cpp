#include "ebkit/numeric.hpp"

#include <cmath>
#include <cstddef>

#include "ebkit/errors.hpp"

namespace ebkit {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Rational approximation of the standard normal quantile (Acklam).  The raw
// approximation is good to ~1.15e-9; one Halley refinement against the erfc
// based CDF brings it near machine precision.
double acklam_quantile(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double q, r;
    if (p < plow) {
        q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double normal_pdf(double x, double mean, double variance) {
    const double z = x - mean;
    return std::exp(-0.5 * z * z / variance) / std::sqrt(2.0 * kPi * variance);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double inv_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw_error("OutOfRange", "quantile probability must lie in (0, 1)");
    }
    double x = acklam_quantile(p);
    // Halley refinement.
    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * kPi) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

double logistic(double t) {
    if (t >= 0.0) {
        const double e = std::exp(-t);
        return 1.0 / (1.0 + e);
    }
    const double e = std::exp(t);
    return e / (1.0 + e);
}

double log_bessel_i(double nu, double z) {
    if (nu < 0.0 || !(z > 0.0)) {
        throw_error("OutOfRange", "log_bessel_i requires nu >= 0 and z > 0");
    }
    if (z <= 30.0) {
        // I_nu(z) = sum_k (z/2)^(nu+2k) / (k! Gamma(nu+k+1)); all terms positive.
        const double log_prefix = nu * std::log(0.5 * z) - std::lgamma(nu + 1.0);
        const double q = 0.25 * z * z;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 500; ++k) {
            term *= q / (k * (nu + k));
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        return log_prefix + std::log(sum);
    }
    // I_nu(z) ~ e^z / sqrt(2 pi z) * sum_k (-1)^k a_k(nu) / z^k with
    // a_k = prod_{m<=k} (4 nu^2 - (2m-1)^2) / (8 k!); the series terminates
    // for half-integer nu and is truncated at its smallest term otherwise.
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    double prev = std::fabs(term);
    for (int k = 1; k <= 40; ++k) {
        const double f = (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * z);
        term *= -f;
        if (std::fabs(term) > prev) break;  // divergent tail: stop at smallest term
        prev = std::fabs(term);
        sum += term;
        if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
    }
    return z - 0.5 * std::log(2.0 * kPi * z) + std::log(sum);
}

double bessel_i(double nu, double z) { return std::exp(log_bessel_i(nu, z)); }

double log_factorial(unsigned n) { return std::lgamma(static_cast<double>(n) + 1.0); }

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 2) throw_error("OutOfRange", "linspace needs at least 2 points");
    std::vector<double> xs(static_cast<std::size_t>(n));
    const double h = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = lo + h * i;
    xs.back() = hi;
    return xs;
}

}  // namespace ebkit
