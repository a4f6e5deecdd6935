#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ebkit/interval.hpp"

namespace ebkit {

/// N groups of p-dimensional observation vectors; group i is an n_i x p
/// matrix and group sizes may differ.
struct GroupedSample {
    std::vector<Eigen::MatrixXd> groups;

    std::size_t group_count() const { return groups.size(); }
    Eigen::Index dim() const { return groups.empty() ? 0 : groups.front().cols(); }
};

/// The pooled statistics behind the linear EB shrinkage rule:
/// per-group means, the grand mean, the pooled within covariance S2
/// (per-group denominator n_i - 1, averaged over groups with n_i >= 2),
/// the between covariance U2 (denominator N - 1) and v = mean of 1/n_i.
struct EbSummary {
    std::vector<Eigen::VectorXd> group_means;
    Eigen::VectorXd grand_mean;
    Eigen::MatrixXd within;   // S2
    Eigen::MatrixXd between;  // U2
    double v = 0.0;
    /// Groups with a single observation contribute nothing to S2; they are
    /// counted here.
    int singleton_groups = 0;
};

EbSummary summarize(const GroupedSample& data);

/// Robbins-style linear EB estimates
///   t_i = grand_mean + P [P + S2/n_i]^{-1} (mean_i - grand_mean),
/// where P is U2 - v S2 with its diagonal clamped at zero (off-diagonals
/// retained).  An optional ridge epsilon*I stabilises the inverted matrix.
/// Throws SingularShrinkageMatrix (naming the group) past a relative
/// condition number of 1e12.
std::vector<Eigen::VectorXd> estimate(const GroupedSample& data, double ridge = 0.0);

/// Groups of interval observations; all boxes share the dimension p.
struct IntervalGroupedSample {
    std::vector<std::vector<IntervalBox>> groups;

    std::size_t group_count() const { return groups.size(); }
    std::size_t dim() const {
        return (groups.empty() || groups.front().empty()) ? 0 : groups.front().front().dim();
    }
};

/// Scalar interval EB rule over symbolic group means and variances:
/// t_i = xbar + b_i (xbar_i - xbar) with
/// b_i = (u2 - v s2)^+ / ((u2 - v s2)^+ + s2/n_i).  For single-interval
/// groups the within-interval variance (u-l)^2/12 stands in for s_i^2 (it is
/// what the symbolic variance of one interval evaluates to).
std::vector<double> estimate_interval_scalar(const IntervalGroupedSample& data);

/// Vector generalization with S2 the diagonal matrix of per-component
/// symbolic variances and U2 the covariance of the group symbolic means.
std::vector<Eigen::VectorXd> estimate_interval_vector(const IntervalGroupedSample& data,
                                                      double ridge = 0.0);

}  // namespace ebkit
