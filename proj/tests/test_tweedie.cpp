#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ebkit/errors.hpp"
#include "ebkit/moments.hpp"
#include "ebkit/numeric.hpp"
#include "ebkit/rng.hpp"
#include "ebkit/tweedie.hpp"
#include "oracles.hpp"

using namespace ebkit;

namespace {

PearsonFit conjugate_fit() { return fit_pearson(moments_from_shape(0.0, 2.0, 0.0, 3.0)); }

PearsonFit microarray_fit() {
    return fit_pearson(moments_from_shape(0.0, 1.2885, 0.04181, 3.6445));
}

// Marsaglia-Tsang gamma variate, driven by the library Rng.
double gamma_draw(Rng& rng, double alpha) {
    if (alpha < 1.0) {
        return gamma_draw(rng, alpha + 1.0) * std::pow(rng.uniform(), 1.0 / alpha);
    }
    const double d = alpha - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = rng.normal();
        const double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        const double v = t * t * t;
        const double u = rng.uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace

TEST_CASE("conjugate marginal gives the exact halving rule") {
    const PearsonFit fit = conjugate_fit();
    CHECK(normal_posterior_mean(0.8, 1.0, fit) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(normal_posterior_mean(2.4, 1.0, fit) == doctest::Approx(1.2).epsilon(1e-12));
    CHECK(normal_posterior_mean(0.0, 1.0, fit) == doctest::Approx(0.0));
    CHECK(normal_posterior_var(1.1, 1.0, fit) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("posterior mean at the largest microarray z-value") {
    CHECK(std::fabs(normal_posterior_mean(5.29, 1.0, microarray_fit()) - 3.56) <= 0.01);
}

TEST_CASE("posterior variance for the null marginal collapses to zero") {
    const PearsonFit fit = fit_pearson(moments_from_shape(0.0, 1.0, 0.0, 3.0));
    CHECK(normal_posterior_var(0.7, 1.0, fit) == doctest::Approx(0.0));
}

TEST_CASE("posterior variance clamps below zero and reports it") {
    // Marginal tighter than the sampling variance: score' < -1/sigma2.
    const PearsonFit fit = fit_pearson(moments_from_shape(0.0, 0.5, 0.0, 3.0));
    bool clamped = false;
    const double v = normal_posterior_var(0.3, 1.0, fit, &clamped);
    CHECK(v == 0.0);
    CHECK(clamped);
}

TEST_CASE("microarray posterior variance is smallest near zero") {
    const PearsonFit fit = microarray_fit();
    const double v0 = normal_posterior_var(0.0, 1.0, fit);
    const double v4 = normal_posterior_var(4.0, 1.0, fit);
    const double vm4 = normal_posterior_var(-4.0, 1.0, fit);
    CHECK(v0 < v4);
    CHECK(v0 < vm4);
}

TEST_CASE("variance posterior formula") {
    const PearsonFit flat = conjugate_fit();  // score(2) = -1, score used below
    // score = 0 case: build a fit whose location is at u so the score vanishes.
    const PearsonFit at_two = fit_pearson(moments_from_shape(2.0, 1.0, 0.0, 3.0));
    CHECK(normal_variance_posterior(2.0, 1000, at_two) ==
          doctest::Approx(2.0 * 1.002).epsilon(1e-12));

    // u = 1, nu = 2, score(1) = -1 via the standard normal fit.
    const PearsonFit std_normal = fit_pearson(moments_from_shape(0.0, 1.0, 0.0, 3.0));
    CHECK(normal_variance_posterior(1.0, 2, std_normal) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(normal_variance_posterior(0.0, 10, flat), EbError);
    CHECK_THROWS_AS(normal_variance_posterior(-1.0, 10, flat), EbError);
}

TEST_CASE("variance posterior beats the raw sample variance in simulation") {
    Rng rng(12);
    const int groups = 2000;
    const int nu = 10;
    std::vector<double> truth(groups), u(groups);
    for (int i = 0; i < groups; ++i) {
        const double sigma2 = 3.0 / gamma_draw(rng, 4.0);  // inverse gamma, mean 1
        double chi2 = 0.0;
        for (int j = 0; j < nu; ++j) {
            const double z = rng.normal();
            chi2 += z * z;
        }
        truth[static_cast<std::size_t>(i)] = sigma2;
        u[static_cast<std::size_t>(i)] = sigma2 * chi2 / nu;
    }
    const PearsonFit h_fit = fit_pearson(classical_moments(u));
    double mse_raw = 0.0, mse_eb = 0.0;
    for (int i = 0; i < groups; ++i) {
        const double est = normal_variance_posterior(u[static_cast<std::size_t>(i)], nu, h_fit);
        const double d_raw = u[static_cast<std::size_t>(i)] - truth[static_cast<std::size_t>(i)];
        const double d_eb = est - truth[static_cast<std::size_t>(i)];
        mse_raw += d_raw * d_raw;
        mse_eb += d_eb * d_eb;
    }
    CHECK(mse_eb < mse_raw);
}

TEST_CASE("binomial log-carrier derivative, sign-corrected form") {
    CHECK(binomial_log_carrier_deriv(5.0, 10).l0p == doctest::Approx(0.0));

    const double expect = std::log(4.0) - 0.1875;
    const BinomialCarrier c = binomial_log_carrier_deriv(2.0, 10);
    CHECK(c.l0p == doctest::Approx(expect).epsilon(1e-12));

    // Distance to the exact derivative -psi(x+1) + psi(n-x+1).  The frozen
    // value is H_8 - H_2 - (ln 4 - 3/16) = 0.01906278...; the paper-signed
    // variant misses by 0.356, an order of magnitude worse.
    const double exact = -oracles::digamma(3.0) + oracles::digamma(9.0);
    CHECK(std::fabs(exact - c.l0p) == doctest::Approx(0.0190627818).epsilon(1e-6));
    CHECK(std::fabs(exact - c.l0p) < 0.02);
    const double paper_signed = std::log(4.0) + 0.1875;
    CHECK(std::fabs(exact - paper_signed) > 0.3);

    CHECK_THROWS_AS(binomial_log_carrier_deriv(0.0, 10), EbError);
    CHECK_THROWS_AS(binomial_log_carrier_deriv(10.0, 10), EbError);
    try {
        binomial_log_carrier_deriv(-1.0, 10);
    } catch (const EbError& e) {
        CHECK(e.code() == "BoundaryX");
    }
}

TEST_CASE("binomial carrier antisymmetry l0'(x) = -l0'(n - x)") {
    for (int x = 1; x <= 9; ++x) {
        const double fwd = binomial_log_carrier_deriv(static_cast<double>(x), 10).l0p;
        const double bwd = binomial_log_carrier_deriv(static_cast<double>(10 - x), 10).l0p;
        CHECK(fwd == doctest::Approx(-bwd).epsilon(1e-12));
    }
}

TEST_CASE("binomial second carrier derivative matches a finite difference") {
    const BinomialCarrier c = binomial_log_carrier_deriv(3.0, 10);
    const double fd = oracles::central_difference(
        [](double x) { return binomial_log_carrier_deriv(x, 10).l0p; }, 3.0, 1e-5);
    CHECK(c.l0pp == doctest::Approx(fd).epsilon(1e-6));
    // Closer to the exact -psi'(x+1) - psi'(n-x+1) than the paper-signed form.
    const double exact = -oracles::trigamma(4.0) - oracles::trigamma(8.0);
    CHECK(std::fabs(c.l0pp - exact) < 0.03);
}

TEST_CASE("binomial posterior at the null point") {
    // Marginal centered at n/2: score(5) = 0 = l0'(5), so the log-odds vanish.
    const PearsonFit fit = fit_pearson(moments_from_shape(5.0, 2.0, 0.0, 3.0));
    const BinomialPosterior post = binomial_posterior(5.0, 10, fit);
    CHECK(post.theta_mean == doctest::Approx(0.0));
    CHECK(post.p_mean == doctest::Approx(0.5));

    // Logistic monotonicity around the point.
    const BinomialPosterior up = binomial_posterior(5.5, 10, fit);
    const BinomialPosterior down = binomial_posterior(4.5, 10, fit);
    CHECK(up.theta_mean > post.theta_mean);
    CHECK(up.p_mean > post.p_mean);
    CHECK(down.p_mean < post.p_mean);
}

TEST_CASE("binomial posterior sign tracks the empirical log-odds") {
    Rng rng(31);
    const int n = 50, draws = 3000;
    std::vector<double> xs;
    xs.reserve(draws);
    for (int i = 0; i < draws; ++i) {
        // Beta(2,2) as the median of three uniforms.
        double u[3] = {rng.uniform(), rng.uniform(), rng.uniform()};
        const double p = std::max(std::min(u[0], u[1]),
                                  std::min(std::max(u[0], u[1]), u[2]));
        int x = 0;
        for (int j = 0; j < n; ++j) x += rng.uniform() < p ? 1 : 0;
        xs.push_back(static_cast<double>(x));
    }
    const PearsonFit fit = fit_pearson(classical_moments(xs));
    int considered = 0, agreed = 0;
    for (double x : xs) {
        if (!(x > 0.0 && x < n)) continue;
        ++considered;
        const double logit = std::log(x / (n - x));
        const double theta = binomial_posterior(x, n, fit).theta_mean;
        if (logit == 0.0 || theta * logit > 0.0) ++agreed;
    }
    CHECK(considered > 2900);
    CHECK(static_cast<double>(agreed) / considered >= 0.90);
}

TEST_CASE("multinomial gradient reduces to the binomial derivative at k = 2") {
    for (double x : {1.0, 2.5, 5.0, 8.0}) {
        Eigen::VectorXd cells(2);
        cells << x, 10.0 - x;
        const Eigen::VectorXd grad = multinomial_log_carrier_grad(cells, 10.0);
        CHECK(grad.size() == 1);
        CHECK(grad[0] ==
              doctest::Approx(binomial_log_carrier_deriv(x, 10).l0p).epsilon(1e-12));
    }
}

TEST_CASE("multinomial gradient vanishes on equal cells") {
    Eigen::VectorXd cells(3);
    cells << 5.0, 5.0, 5.0;
    const Eigen::VectorXd grad = multinomial_log_carrier_grad(cells, 15.0);
    CHECK(grad.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("multinomial gradient is equivariant under permuting free cells") {
    Eigen::VectorXd cells(4);
    cells << 3.0, 7.0, 2.0, 8.0;
    const Eigen::VectorXd grad = multinomial_log_carrier_grad(cells, 20.0);
    Eigen::VectorXd permuted(4);
    permuted << 2.0, 3.0, 7.0, 8.0;  // rotate the three free cells
    const Eigen::VectorXd grad_p = multinomial_log_carrier_grad(permuted, 20.0);
    CHECK(grad_p[0] == doctest::Approx(grad[2]).epsilon(1e-14));
    CHECK(grad_p[1] == doctest::Approx(grad[0]).epsilon(1e-14));
    CHECK(grad_p[2] == doctest::Approx(grad[1]).epsilon(1e-14));

    Eigen::VectorXd bad(3);
    bad << 0.0, 1.0, 1.0;
    CHECK_THROWS_AS(multinomial_log_carrier_grad(bad, 2.0), EbError);
}

TEST_CASE("multivariate posterior") {
    const Eigen::MatrixXd I2 = Eigen::MatrixXd::Identity(2, 2);
    Eigen::VectorXd x(2);
    x << 1.0, -2.0;

    // Standard-normal marginal: degenerate prior.
    PosteriorEstimate est = mvn_posterior(x, I2, -x, Eigen::VectorXd::Constant(2, -1.0));
    CHECK(est.mean.norm() == doctest::Approx(0.0));
    CHECK(est.cov.norm() == doctest::Approx(0.0));

    // Conjugate per-coordinate marginals N(0,2).
    est = mvn_posterior(x, I2, -x / 2.0, Eigen::VectorXd::Constant(2, -0.5));
    CHECK(est.mean(0) == doctest::Approx(0.5));
    CHECK(est.mean(1) == doctest::Approx(-1.0));
    CHECK(est.cov(0, 0) == doctest::Approx(0.5));

    // Anisotropic Sigma scales the correction per coordinate.
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(2, 2);
    D(0, 0) = 1.0;
    D(1, 1) = 4.0;
    Eigen::VectorXd scores(2);
    scores << 0.3, 0.3;
    est = mvn_posterior(x, D, scores, Eigen::VectorXd::Zero(2));
    CHECK(est.mean(0) - x(0) == doctest::Approx(0.3));
    CHECK(est.mean(1) - x(1) == doctest::Approx(1.2));

    Eigen::MatrixXd bad(2, 2);
    bad << 1.0, 2.0, 2.0, 1.0;  // symmetric but indefinite
    CHECK_THROWS_AS(mvn_posterior(x, bad, scores, Eigen::VectorXd::Zero(2)), EbError);
    Eigen::MatrixXd asym(2, 2);
    asym << 1.0, 0.5, -0.5, 1.0;
    CHECK_THROWS_AS(mvn_posterior(x, asym, scores, Eigen::VectorXd::Zero(2)), EbError);
}

TEST_CASE("poisson transform") {
    CHECK(poisson_posterior_transform(0.0) == doctest::Approx(1.0));
    CHECK(poisson_posterior_transform(std::log(2.0)) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(poisson_posterior_transform(0.4) > poisson_posterior_transform(0.3));
}

TEST_CASE("credible intervals") {
    const CredibleInterval ci = credible_interval(0.0, 1.0, 0.95);
    CHECK(std::fabs(ci.lo + 1.959964) < 1e-5);
    CHECK(std::fabs(ci.hi - 1.959964) < 1e-5);
    // Bisection oracle agreement.
    CHECK(ci.hi == doctest::Approx(oracles::quantile_bisect(0.975)).epsilon(1e-8));

    const CredibleInterval point = credible_interval(3.0, 0.0, 0.95);
    CHECK(point.lo == 3.0);
    CHECK(point.hi == 3.0);

    const CredibleInterval half = credible_interval(3.0, 4.0, 0.5);
    CHECK(half.lo == doctest::Approx(3.0 - 2.0 * 0.674490).epsilon(1e-5));
    CHECK(half.hi == doctest::Approx(3.0 + 2.0 * 0.674490).epsilon(1e-5));

    CHECK_THROWS_AS(credible_interval(0.0, 1.0, 0.0), EbError);
    CHECK_THROWS_AS(credible_interval(0.0, 1.0, 1.0), EbError);
    CHECK_THROWS_AS(credible_interval(0.0, -1.0, 0.9), EbError);

    // Width is monotone in the variance and in the level.
    const double w1 = credible_interval(0.0, 1.0, 0.9).hi;
    const double w2 = credible_interval(0.0, 2.0, 0.9).hi;
    const double w3 = credible_interval(0.0, 1.0, 0.99).hi;
    CHECK(w2 > w1);
    CHECK(w3 > w1);
}

TEST_CASE("local fdr is unity when the marginal is the null") {
    const PearsonFit fit = fit_pearson(moments_from_shape(0.0, 1.0, 0.0, 3.0));
    const DensityCurve curve = reconstruct_density(fit, {-8.0, 8.0, 1601});
    for (double z : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
        CHECK(std::fabs(local_fdr(z, curve, 1.0) - 1.0) < 1e-5);
    }
}

TEST_CASE("local fdr against the closed-form conjugate density ratio") {
    const PearsonFit fit = conjugate_fit();
    CHECK(local_fdr(0.0, fit, 1.0) == doctest::Approx(1.0));  // clamped from sqrt(2)
    // phi(4) / phi_{0,2}(4) = sqrt(2) e^{-4} = 0.02590...
    const double expect = normal_pdf(4.0, 0.0, 1.0) / normal_pdf(4.0, 0.0, 2.0);
    CHECK(expect == doctest::Approx(std::sqrt(2.0) * std::exp(-4.0)).epsilon(1e-12));
    CHECK(local_fdr(4.0, fit, 1.0) == doctest::Approx(expect).epsilon(2e-4));
    CHECK_THROWS_AS(local_fdr(0.0, fit, 0.0), EbError);
}

TEST_CASE("shrinkage direction on the conjugate fit") {
    const PearsonFit fit = conjugate_fit();
    for (double z = -4.0; z <= 4.0; z += 0.25) {
        const double e = normal_posterior_mean(z, 1.0, fit);
        if (z != 0.0) CHECK(e * z >= 0.0);
        CHECK(std::fabs(e) <= std::fabs(z) + 1e-12);
    }
}
