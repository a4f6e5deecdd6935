#include "ebkit/linear_eb.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ebkit/errors.hpp"
#include "ebkit/moments.hpp"

namespace ebkit {

namespace {

Eigen::MatrixXd plus_part(const Eigen::MatrixXd& m) {
    Eigen::MatrixXd out = m;
    for (Eigen::Index j = 0; j < out.rows(); ++j) {
        out(j, j) = std::max(0.0, out(j, j));
    }
    return out;
}

// Solve M^-1 rhs with a relative condition-number guard.
Eigen::VectorXd guarded_solve(const Eigen::MatrixXd& m, const Eigen::VectorXd& rhs,
                              std::size_t group_index) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(sv.size() - 1);
    if (!(smin > 0.0) || smax / smin > 1e12) {
        throw_error("SingularShrinkageMatrix",
                    "shrinkage matrix for group " + std::to_string(group_index) +
                        " is singular or ill-conditioned; consider a ridge term");
    }
    return svd.solve(rhs);
}

std::vector<Interval> column_intervals(const std::vector<IntervalBox>& group, std::size_t j) {
    std::vector<Interval> col;
    col.reserve(group.size());
    for (const IntervalBox& box : group) col.push_back(box.at(j));
    return col;
}

}  // namespace

EbSummary summarize(const GroupedSample& data) {
    const std::size_t N = data.group_count();
    if (N < 2) throw_error("TooFewGroups", "need at least 2 groups");
    const Eigen::Index p = data.dim();
    for (const auto& g : data.groups) {
        if (g.rows() < 1) throw_error("EmptySample", "every group must be nonempty");
        if (g.cols() != p) throw_error("DimensionMismatch", "groups disagree on dimension");
    }

    EbSummary s;
    s.group_means.reserve(N);
    s.grand_mean = Eigen::VectorXd::Zero(p);
    for (const auto& g : data.groups) {
        Eigen::VectorXd mean = g.colwise().mean();
        s.grand_mean += mean;
        s.group_means.push_back(std::move(mean));
    }
    s.grand_mean /= static_cast<double>(N);

    s.within = Eigen::MatrixXd::Zero(p, p);
    int contributing = 0;
    double v = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const auto& g = data.groups[i];
        const auto n_i = g.rows();
        v += 1.0 / static_cast<double>(n_i);
        if (n_i < 2) {
            ++s.singleton_groups;
            continue;
        }
        Eigen::MatrixXd centered = g.rowwise() - s.group_means[i].transpose();
        s.within += centered.transpose() * centered / static_cast<double>(n_i - 1);
        ++contributing;
    }
    if (contributing > 0) s.within /= static_cast<double>(contributing);
    s.v = v / static_cast<double>(N);

    s.between = Eigen::MatrixXd::Zero(p, p);
    for (const auto& mean : s.group_means) {
        const Eigen::VectorXd d = mean - s.grand_mean;
        s.between += d * d.transpose();
    }
    s.between /= static_cast<double>(N - 1);
    return s;
}

std::vector<Eigen::VectorXd> estimate(const GroupedSample& data, double ridge) {
    const EbSummary s = summarize(data);
    const Eigen::Index p = data.dim();
    const Eigen::MatrixXd prior = plus_part(s.between - s.v * s.within);

    std::vector<Eigen::VectorXd> out;
    out.reserve(data.group_count());
    for (std::size_t i = 0; i < data.group_count(); ++i) {
        if (prior.isZero(0.0)) {  // complete shrinkage, no inverse needed
            out.push_back(s.grand_mean);
            continue;
        }
        const double n_i = static_cast<double>(data.groups[i].rows());
        Eigen::MatrixXd m = prior + s.within / n_i;
        if (ridge > 0.0) m += ridge * Eigen::MatrixXd::Identity(p, p);
        const Eigen::VectorXd dev = s.group_means[i] - s.grand_mean;
        out.push_back(s.grand_mean + prior * guarded_solve(m, dev, i));
    }
    return out;
}

std::vector<double> estimate_interval_scalar(const IntervalGroupedSample& data) {
    const std::size_t N = data.group_count();
    if (N < 2) throw_error("TooFewGroups", "need at least 2 groups");
    if (data.dim() != 1) throw_error("DimensionMismatch", "scalar form needs 1-d intervals");

    std::vector<double> mean_i(N), var_i(N), inv_n(N);
    for (std::size_t i = 0; i < N; ++i) {
        const auto& group = data.groups[i];
        if (group.empty()) throw_error("EmptySample", "every group must be nonempty");
        const std::vector<Interval> col = column_intervals(group, 0);
        mean_i[i] = symbolic_mean(col);
        var_i[i] = symbolic_variance(col);
        inv_n[i] = 1.0 / static_cast<double>(group.size());
    }

    double xbar = 0.0, s2 = 0.0, v = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        xbar += mean_i[i];
        s2 += var_i[i];
        v += inv_n[i];
    }
    xbar /= static_cast<double>(N);
    s2 /= static_cast<double>(N);
    v /= static_cast<double>(N);

    double u2 = 0.0;
    for (double m : mean_i) u2 += (m - xbar) * (m - xbar);
    u2 /= static_cast<double>(N - 1);

    const double prior = std::max(0.0, u2 - v * s2);
    std::vector<double> out(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double den = prior + s2 * inv_n[i];
        const double b = den > 0.0 ? prior / den : 0.0;
        out[i] = xbar + b * (mean_i[i] - xbar);
    }
    return out;
}

std::vector<Eigen::VectorXd> estimate_interval_vector(const IntervalGroupedSample& data,
                                                      double ridge) {
    const std::size_t N = data.group_count();
    if (N < 2) throw_error("TooFewGroups", "need at least 2 groups");
    const std::size_t p = data.dim();
    if (p == 0) throw_error("EmptySample", "empty interval sample");

    std::vector<Eigen::VectorXd> mean_i(N);
    Eigen::VectorXd s2 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
    double v = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const auto& group = data.groups[i];
        if (group.empty()) throw_error("EmptySample", "every group must be nonempty");
        Eigen::VectorXd mean(static_cast<Eigen::Index>(p));
        for (std::size_t j = 0; j < p; ++j) {
            const std::vector<Interval> col = column_intervals(group, j);
            mean[static_cast<Eigen::Index>(j)] = symbolic_mean(col);
            s2[static_cast<Eigen::Index>(j)] += symbolic_variance(col);
        }
        mean_i[i] = std::move(mean);
        v += 1.0 / static_cast<double>(group.size());
    }
    s2 /= static_cast<double>(N);
    v /= static_cast<double>(N);

    Eigen::VectorXd xbar = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
    for (const auto& m : mean_i) xbar += m;
    xbar /= static_cast<double>(N);

    Eigen::MatrixXd u2 = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p),
                                               static_cast<Eigen::Index>(p));
    for (const auto& m : mean_i) {
        const Eigen::VectorXd d = m - xbar;
        u2 += d * d.transpose();
    }
    u2 /= static_cast<double>(N - 1);

    const Eigen::MatrixXd within = s2.asDiagonal();
    const Eigen::MatrixXd prior = plus_part(u2 - v * within);

    std::vector<Eigen::VectorXd> out;
    out.reserve(N);
    for (std::size_t i = 0; i < N; ++i) {
        if (prior.isZero(0.0)) {
            out.push_back(xbar);
            continue;
        }
        const double n_i = static_cast<double>(data.groups[i].size());
        Eigen::MatrixXd m = prior + within / n_i;
        if (ridge > 0.0) {
            m += ridge * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(p),
                                                   static_cast<Eigen::Index>(p));
        }
        const Eigen::VectorXd dev = mean_i[i] - xbar;
        out.push_back(xbar + prior * guarded_solve(m, dev, i));
    }
    return out;
}

}  // namespace ebkit
