#include "ebkit/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ebkit/errors.hpp"
#include "ebkit/numeric.hpp"

namespace ebkit {

Eigen::VectorXd standardize_ranking(const std::vector<int>& ranking) {
    const std::size_t t = ranking.size();
    if (t < 2) throw_error("NotAPermutation", "a ranking needs at least 2 items");
    std::vector<bool> seen(t, false);
    for (int r : ranking) {
        if (r < 1 || static_cast<std::size_t>(r) > t || seen[static_cast<std::size_t>(r - 1)]) {
            throw_error("NotAPermutation", "entries must be a permutation of 1.." +
                                               std::to_string(t));
        }
        seen[static_cast<std::size_t>(r - 1)] = true;
    }
    const double td = static_cast<double>(t);
    const double center = 0.5 * (td + 1.0);
    const double scale = std::sqrt(td * (td * td - 1.0) / 12.0);
    Eigen::VectorXd x(static_cast<Eigen::Index>(t));
    for (std::size_t j = 0; j < t; ++j) {
        x[static_cast<Eigen::Index>(j)] = (static_cast<double>(ranking[j]) - center) / scale;
    }
    return x;
}

VmfParams vmf_mle(const std::vector<Eigen::VectorXd>& xs) {
    if (xs.empty()) throw_error("EmptySample", "no rankings");
    const Eigen::Index t = xs.front().size();
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(t);
    for (const auto& x : xs) {
        if (x.size() != t) throw_error("DimensionMismatch", "rankings disagree on t");
        sum += x;
    }
    VmfParams params;
    const double norm = sum.norm();
    params.resultant = norm / static_cast<double>(xs.size());
    if (!(norm > 0.0)) {
        // ZeroResultant: perfectly balanced data; flagged rather than thrown
        // so the vMF carrier can fall back to the uniform one.
        params.direction = Eigen::VectorXd::Zero(t);
        return params;
    }
    params.has_direction = true;
    params.direction = sum / norm;
    const double r = std::min(params.resultant, 1.0 - 1e-9);
    params.kappa =
        r * (static_cast<double>(t) - 1.0 - r * r) / (1.0 - r * r);
    return params;
}

double vmf_norm_constant(int t, double kappa) {
    if (t < 3) throw_error("BadOrder", "normalizing constant needs t >= 3");
    if (!(kappa > 0.0)) throw_error("OutOfRange", "kappa must be positive");
    const double nu = 0.5 * (static_cast<double>(t) - 3.0);
    const double log_c = nu * std::log(0.5 * kappa) - log_factorial(static_cast<unsigned>(t)) -
                         log_bessel_i(nu, kappa) -
                         std::lgamma(0.5 * (static_cast<double>(t) - 1.0));
    return std::exp(log_c);
}

Carrier carrier_from_name(const std::string& name) {
    if (name == "uniform") return Carrier::Uniform;
    if (name == "vmf") return Carrier::Vmf;
    if (name == "normal") return Carrier::Normal;
    throw_error("OutOfRange", "unknown carrier: " + name);
}

std::string carrier_name(Carrier carrier) {
    switch (carrier) {
        case Carrier::Uniform: return "uniform";
        case Carrier::Vmf: return "vmf";
        case Carrier::Normal: return "normal";
    }
    return "?";
}

std::vector<PearsonFit> fit_columns(const std::vector<Eigen::VectorXd>& xs) {
    if (xs.empty()) throw_error("EmptySample", "no rankings");
    const Eigen::Index t = xs.front().size();
    std::vector<PearsonFit> fits;
    fits.reserve(static_cast<std::size_t>(t));
    std::vector<double> column(xs.size());
    for (Eigen::Index j = 0; j < t; ++j) {
        for (std::size_t i = 0; i < xs.size(); ++i) column[i] = xs[i][j];
        fits.push_back(fit_pearson(classical_moments(column)));
    }
    return fits;
}

namespace {

Eigen::VectorXd score_vector(const Eigen::VectorXd& x, const std::vector<PearsonFit>& fits) {
    Eigen::VectorXd s(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        s[j] = fits[static_cast<std::size_t>(j)].score(x[j]);
    }
    return s;
}

Eigen::MatrixXd sample_covariance(const std::vector<Eigen::VectorXd>& xs) {
    const Eigen::Index t = xs.front().size();
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(t);
    for (const auto& x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(t, t);
    for (const auto& x : xs) {
        const Eigen::VectorXd d = x - mean;
        cov += d * d.transpose();
    }
    return cov / static_cast<double>(xs.size());
}

}  // namespace

std::vector<Eigen::VectorXd> rank_posterior(const std::vector<Eigen::VectorXd>& xs,
                                            Carrier carrier,
                                            const std::vector<PearsonFit>& fits,
                                            const std::optional<Eigen::MatrixXd>& Sigma) {
    if (xs.empty()) throw_error("EmptySample", "no rankings");
    const Eigen::Index t = xs.front().size();
    if (fits.size() != static_cast<std::size_t>(t)) {
        throw_error("DimensionMismatch", "need one Pearson fit per coordinate");
    }
    for (const auto& x : xs) {
        if (x.size() != t) throw_error("DimensionMismatch", "rankings disagree on t");
    }

    std::vector<Eigen::VectorXd> out;
    out.reserve(xs.size());
    switch (carrier) {
        case Carrier::Uniform: {
            for (const auto& x : xs) out.push_back(score_vector(x, fits));
            break;
        }
        case Carrier::Vmf: {
            const VmfParams params = vmf_mle(xs);
            if (!params.has_direction || params.kappa == 0.0) {
                // zero resultant: the carrier term vanishes, identical to uniform
                for (const auto& x : xs) out.push_back(score_vector(x, fits));
                break;
            }
            const Eigen::VectorXd shift = params.kappa * params.direction;
            for (const auto& x : xs) out.push_back(score_vector(x, fits) - shift);
            break;
        }
        case Carrier::Normal: {
            const Eigen::MatrixXd cov = Sigma ? *Sigma : sample_covariance(xs);
            if (cov.rows() != t || cov.cols() != t) {
                throw_error("DimensionMismatch", "Sigma has the wrong shape");
            }
            for (const auto& x : xs) {
                out.push_back((cov * score_vector(x, fits) + x).eval());
            }
            break;
        }
    }
    return out;
}

std::vector<int> consensus_ranking(const std::vector<Eigen::VectorXd>& posteriors) {
    if (posteriors.empty()) throw_error("EmptySample", "no posterior vectors");
    const Eigen::Index t = posteriors.front().size();
    Eigen::VectorXd avg = Eigen::VectorXd::Zero(t);
    for (const auto& v : posteriors) {
        if (v.size() != t) throw_error("DimensionMismatch", "posterior vectors disagree on t");
        avg += v;
    }
    avg /= static_cast<double>(posteriors.size());

    std::vector<int> order(static_cast<std::size_t>(t));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&avg](int a, int b) { return avg[a] > avg[b]; });
    std::vector<int> ranks(static_cast<std::size_t>(t));
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        ranks[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos) + 1;
    }
    return ranks;
}

}  // namespace ebkit
