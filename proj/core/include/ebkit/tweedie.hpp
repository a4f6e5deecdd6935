#pragma once

#include <Eigen/Dense>

#include "ebkit/pearson.hpp"

namespace ebkit {

/// Posterior mean of mu under x | mu ~ N(mu, sigma2):
/// E[mu | z] = z + sigma2 * score(z), the score taken from the fitted
/// marginal of the z-values.
double normal_posterior_mean(double z, double sigma2, const PearsonFit& fit);

/// Posterior variance sigma2 + sigma2^2 * score'(z), clamped at zero.  When
/// `clamped` is non-null it is set to whether clamping fired, so callers can
/// count clamp events over a dataset.
double normal_posterior_var(double z, double sigma2, const PearsonFit& fit,
                            bool* clamped = nullptr);

/// Posterior mean of sigma^2 from the sample variance u with nu degrees of
/// freedom: u (1 + 2/nu) + (2/nu) u^2 h'(u)/h(u), where h is the marginal of
/// the group variances (Pearson-fitted).
double normal_variance_posterior(double u, int nu, const PearsonFit& h_fit);

struct BinomialCarrier {
    double l0p;   // d/dx log g0(x)
    double l0pp;  // second derivative
};

/// Stirling approximation of the binomial log-carrier derivatives, with the
/// derivation-consistent second term:
///   l0'(x)  =  log((n-x)/x) + (2x - n) / (2 x (n-x)),
///   l0''(x) = -n / (x (n-x)) + (n^2 - 2nx + 2x^2) / (2 x^2 (n-x)^2).
/// Requires 0 < x < n strictly; throws BoundaryX otherwise.
BinomialCarrier binomial_log_carrier_deriv(double x, int n);

struct BinomialPosterior {
    double theta_mean;  // posterior mean of the log-odds
    double p_mean;      // logistic transform of theta_mean
};

BinomialPosterior binomial_posterior(double x, int n, const PearsonFit& fit);

/// Per-component carrier gradient for multinomial counts.  `x` holds all k
/// cells; the k-1 free components are returned.  With S = sum of the first
/// k-1 cells and R = n - S:
///   dl0/dx_j = log(R / x_j) + (x_j - R) / (2 x_j R).
Eigen::VectorXd multinomial_log_carrier_grad(const Eigen::VectorXd& x, double n);

struct PosteriorEstimate {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
};

/// Multivariate normal posterior: mean = x + Sigma * scores and
/// cov = Sigma + Sigma * diag(score_derivs) * Sigma, with per-coordinate
/// Pearson scores of the marginal.  Throws NonPDSigma when Sigma is not
/// symmetric positive definite.
PosteriorEstimate mvn_posterior(const Eigen::VectorXd& x, const Eigen::MatrixXd& Sigma,
                                const Eigen::VectorXd& scores,
                                const Eigen::VectorXd& score_derivs);

/// Poisson posterior-mean transform E[theta | x] = exp(score difference).
double poisson_posterior_transform(double score_diff);

struct CredibleInterval {
    double lo;
    double hi;
};

/// Normal-quantile credible interval post_mean +/- z_{(1+level)/2} sqrt(var).
CredibleInterval credible_interval(double post_mean, double post_var, double level);

/// Local false discovery rate pi0 * phi(z) / f(z) clamped to [0, 1], with the
/// marginal density from `curve`.
double local_fdr(double z, const DensityCurve& curve, double pi0 = 1.0);

/// Convenience overload that reconstructs the marginal density from the fit
/// on a grid that covers both [-8, 8] and z.
double local_fdr(double z, const PearsonFit& fit, double pi0 = 1.0);

}  // namespace ebkit
