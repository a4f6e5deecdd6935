#include "ebkit/tweedie.hpp"

#include <algorithm>
#include <cmath>

#include "ebkit/errors.hpp"
#include "ebkit/numeric.hpp"

namespace ebkit {

double normal_posterior_mean(double z, double sigma2, const PearsonFit& fit) {
    if (!(sigma2 > 0.0)) throw_error("OutOfRange", "sigma2 must be positive");
    return z + sigma2 * fit.score(z);
}

double normal_posterior_var(double z, double sigma2, const PearsonFit& fit, bool* clamped) {
    if (!(sigma2 > 0.0)) throw_error("OutOfRange", "sigma2 must be positive");
    const double v = sigma2 + sigma2 * sigma2 * fit.score_derivative(z);
    if (clamped != nullptr) *clamped = v < 0.0;
    return std::max(0.0, v);
}

double normal_variance_posterior(double u, int nu, const PearsonFit& h_fit) {
    if (!(u > 0.0)) throw_error("NonPositiveU", "sample variance must be positive");
    if (nu < 1) throw_error("OutOfRange", "degrees of freedom must be >= 1");
    const double inv_nu = 1.0 / static_cast<double>(nu);
    return u * (1.0 + 2.0 * inv_nu) + 2.0 * inv_nu * u * u * h_fit.score(u);
}

BinomialCarrier binomial_log_carrier_deriv(double x, int n) {
    const double dn = static_cast<double>(n);
    if (!(x > 0.0 && x < dn)) {
        throw_error("BoundaryX", "x must lie strictly inside (0, n)");
    }
    const double q = dn - x;
    BinomialCarrier c;
    c.l0p = std::log(q / x) + (2.0 * x - dn) / (2.0 * x * q);
    c.l0pp = -dn / (x * q) + (dn * dn - 2.0 * dn * x + 2.0 * x * x) / (2.0 * x * x * q * q);
    return c;
}

BinomialPosterior binomial_posterior(double x, int n, const PearsonFit& fit) {
    const BinomialCarrier carrier = binomial_log_carrier_deriv(x, n);
    BinomialPosterior post;
    post.theta_mean = fit.score(x) - carrier.l0p;
    post.p_mean = logistic(post.theta_mean);
    return post;
}

Eigen::VectorXd multinomial_log_carrier_grad(const Eigen::VectorXd& x, double n) {
    const Eigen::Index k = x.size();
    if (k < 2) throw_error("DimensionMismatch", "multinomial needs at least 2 cells");
    for (Eigen::Index j = 0; j < k; ++j) {
        if (!(x[j] > 0.0)) throw_error("BoundaryX", "all cells must be positive");
    }
    const double s = x.head(k - 1).sum();
    const double rest = n - s;
    if (!(rest > 0.0)) throw_error("BoundaryX", "free cells must sum below n");

    Eigen::VectorXd grad(k - 1);
    for (Eigen::Index j = 0; j < k - 1; ++j) {
        grad[j] = std::log(rest / x[j]) + (x[j] - rest) / (2.0 * x[j] * rest);
    }
    return grad;
}

PosteriorEstimate mvn_posterior(const Eigen::VectorXd& x, const Eigen::MatrixXd& Sigma,
                                const Eigen::VectorXd& scores,
                                const Eigen::VectorXd& score_derivs) {
    const Eigen::Index p = x.size();
    if (Sigma.rows() != p || Sigma.cols() != p || scores.size() != p ||
        score_derivs.size() != p) {
        throw_error("DimensionMismatch", "inconsistent dimensions in mvn_posterior");
    }
    if (!Sigma.isApprox(Sigma.transpose(), 1e-10)) {
        throw_error("NonPDSigma", "covariance is not symmetric");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(Sigma);
    if (llt.info() != Eigen::Success) {
        throw_error("NonPDSigma", "covariance is not positive definite");
    }
    PosteriorEstimate est;
    est.mean = x + Sigma * scores;
    est.cov = Sigma + Sigma * score_derivs.asDiagonal() * Sigma;
    return est;
}

double poisson_posterior_transform(double score_diff) { return std::exp(score_diff); }

CredibleInterval credible_interval(double post_mean, double post_var, double level) {
    if (!(level > 0.0 && level < 1.0)) throw_error("BadLevel", "level must lie in (0, 1)");
    if (post_var < 0.0) throw_error("NegativeVariance", "posterior variance must be >= 0");
    const double zq = inv_normal_cdf(0.5 * (1.0 + level));
    const double half = zq * std::sqrt(post_var);
    return {post_mean - half, post_mean + half};
}

double local_fdr(double z, const DensityCurve& curve, double pi0) {
    if (!(pi0 > 0.0 && pi0 <= 1.0)) throw_error("OutOfRange", "pi0 must lie in (0, 1]");
    const double f = std::max(curve.value_at(z), 1e-300);
    const double fdr = pi0 * normal_pdf(z) / f;
    return std::clamp(fdr, 0.0, 1.0);
}

double local_fdr(double z, const PearsonFit& fit, double pi0) {
    DensityGrid grid;
    grid.lo = std::min(-8.0, z - 2.0);
    grid.hi = std::max(8.0, z + 2.0);
    grid.n_points = 1601;
    return local_fdr(z, reconstruct_density(fit, grid), pi0);
}

}  // namespace ebkit
