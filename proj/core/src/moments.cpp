#include "ebkit/moments.hpp"

#include <cmath>

#include "ebkit/errors.hpp"

namespace ebkit {

double MomentSummary::require_skewness() const {
    if (!skewness) throw_error("ZeroVariance", "skewness undefined for zero-variance sample");
    return *skewness;
}

double MomentSummary::require_kurtosis() const {
    if (!kurtosis) throw_error("ZeroVariance", "kurtosis undefined for zero-variance sample");
    return *kurtosis;
}

MomentSummary classical_moments(const std::vector<double>& sample) {
    const std::size_t n = sample.size();
    if (n < 2) throw_error("EmptySample", "need at least 2 observations");

    double mean = 0.0;
    for (double x : sample) mean += x;
    mean /= static_cast<double>(n);

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : sample) {
        const double d = x - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    const double dn = static_cast<double>(n);
    MomentSummary s;
    s.n = n;
    s.mean = mean;
    s.variance = m2 / dn;
    s.mu3 = m3 / dn;
    s.mu4 = m4 / dn;
    if (s.variance > 0.0) {
        s.skewness = s.mu3 / std::pow(s.variance, 1.5);
        s.kurtosis = s.mu4 / (s.variance * s.variance);
    }
    return s;
}

MomentSummary moments_from_shape(double mean, double variance, double skewness,
                                 double kurtosis, std::size_t n) {
    if (!(variance > 0.0)) throw_error("ZeroVariance", "shape parameters need variance > 0");
    MomentSummary s;
    s.n = n;
    s.mean = mean;
    s.variance = variance;
    s.mu3 = skewness * std::pow(variance, 1.5);
    s.mu4 = kurtosis * variance * variance;
    s.skewness = skewness;
    s.kurtosis = kurtosis;
    return s;
}

double symbolic_mean(const std::vector<Interval>& intervals) {
    if (intervals.empty()) throw_error("EmptySample", "no intervals");
    double sum = 0.0;
    for (const Interval& iv : intervals) sum += iv.center();
    return sum / static_cast<double>(intervals.size());
}

double symbolic_variance(const std::vector<Interval>& intervals) {
    if (intervals.empty()) throw_error("EmptySample", "no intervals");
    const double cbar = symbolic_mean(intervals);
    double acc = 0.0;
    for (const Interval& iv : intervals) {
        const double dc = iv.center() - cbar;
        const double r = iv.half_width();
        acc += dc * dc + r * r / 3.0;
    }
    return acc / static_cast<double>(intervals.size());
}

double symbolic_covariance(const std::vector<Interval>& xi,
                           const std::vector<Interval>& xj) {
    if (xi.size() != xj.size()) throw_error("LengthMismatch", "interval lists differ in length");
    if (xi.empty()) throw_error("EmptySample", "no intervals");
    const double ci = symbolic_mean(xi);
    const double cj = symbolic_mean(xj);
    double acc = 0.0;
    for (std::size_t w = 0; w < xi.size(); ++w) {
        acc += (xi[w].center() - ci) * (xj[w].center() - cj);
    }
    return acc / static_cast<double>(xi.size());
}

}  // namespace ebkit
