#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace ebkit {

/// A named cumulant-generating-function family.  K and its first three
/// derivatives are evaluated on the open natural-parameter domain
/// (t_min, t_max); K(0) = 0 and K'' > 0 on the interior for genuine CGFs.
struct CgfModel {
    std::string name;
    std::vector<std::pair<std::string, double>> params;

    std::function<double(double)> K;
    std::function<double(double)> K1;
    std::function<double(double)> K2;
    std::function<double(double)> K3;

    double t_min = -1e308;
    double t_max = 1e308;

    /// Laplace carries a perfectly good CGF but is not an exponential family.
    bool exponential_family = true;
    /// Whether the generalized Tweedie correction is supported (off for the
    /// beta and binomial families, whose correction entries are undefined).
    bool correction_available = true;
    bool discrete = false;

    /// Reference density/pmf for accuracy comparisons; may be empty.
    std::function<double(double)> exact_pdf;
};

struct SaddleResult {
    double t_hat = 0.0;
    double density = 0.0;
    int iterations = 0;
};

/// Solve K'(t) = x by safeguarded Newton iteration (bisection fallback inside
/// the domain).  Throws OutOfRange when x is outside the range of K' and
/// NoConvergence after 100 iterations.  On success |K'(t) - x| <=
/// 1e-10 * max(1, |x|).
double solve_saddle(const CgfModel& model, double x, int* iterations = nullptr);

/// Saddlepoint density (2 pi K''(t))^(-1/2) exp(K(t) - t x) at the solution
/// of the saddle equation.
SaddleResult saddle_density(const CgfModel& model, double x);

/// Non-score part of the generalized posterior mean:
/// theta_hat + (1/2) (K'''(theta_hat)/K''(theta_hat)) * dtheta/dx with
/// dtheta/dx = 1/K''(theta_hat).  Throws NotAvailable for models whose
/// correction is not defined.
double generalized_tweedie_term(const CgfModel& model, double x);

CgfModel make_normal_cgf(double sigma2);
CgfModel make_laplace_cgf(double mu, double b);
CgfModel make_gamma_cgf(double alpha, double beta);
CgfModel make_chi_square_cgf(double k);
CgfModel make_exponential_cgf(double lambda);
CgfModel make_poisson_cgf(double lambda);
CgfModel make_binomial_cgf(int n, double p);
CgfModel make_geometric_cgf(double p);
CgfModel make_beta_cgf(double alpha, double beta);

/// Factory by family name with named parameters; throws OutOfRange for an
/// unknown name and uses documented defaults for missing parameters.
CgfModel make_cgf(const std::string& name,
                  const std::vector<std::pair<std::string, double>>& params);

/// All registered families with their default parameters.
std::vector<CgfModel> builtin_models();

}  // namespace ebkit
