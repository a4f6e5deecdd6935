#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ebkit/interval.hpp"

namespace ebkit {

/// First four central moments of a univariate sample, denominator n.
/// skewness = mu3 / mu2^(3/2) and kurtosis = mu4 / mu2^2 are left empty when
/// the variance is zero; the throwing accessors surface that as ZeroVariance.
struct MomentSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;
    double mu3 = 0.0;
    double mu4 = 0.0;
    std::optional<double> skewness;
    std::optional<double> kurtosis;

    double require_skewness() const;
    double require_kurtosis() const;
};

MomentSummary classical_moments(const std::vector<double>& sample);

/// Summary assembled from known shape parameters (variance > 0) instead of
/// data; mu3/mu4 are backed out of skewness and kurtosis.
MomentSummary moments_from_shape(double mean, double variance, double skewness,
                                 double kurtosis, std::size_t n = 0);

/// Mean of the empirical interval mixture: (1/n) sum (l+u)/2.
double symbolic_mean(const std::vector<Interval>& intervals);

/// Variance of the empirical interval mixture.  In center/half-width form
/// this is the dispersion of the centers plus mean(r^2)/3; in bound form
/// (1/3n) sum (u^2+ul+l^2) - [(1/n) sum (l+u)/2]^2.
double symbolic_variance(const std::vector<Interval>& intervals);

/// Symbolic covariance of two interval variables over paired observations:
/// (1/n) sum c_i c_j - mean(c_i) mean(c_j).  Note cov(x, x) omits the r^2/3
/// term and therefore differs from symbolic_variance on nondegenerate data.
double symbolic_covariance(const std::vector<Interval>& xi,
                           const std::vector<Interval>& xj);

}  // namespace ebkit
