#pragma once

#include <string>
#include <vector>

#include "ebkit/moments.hpp"

namespace ebkit {

/// Coefficients of the Pearson-system score function
///
///     g'(y) / g(y) = (y - a) / (c0 + c1 y + c2 y^2),   y = x - mean,
///
/// fitted from the standardized moments (variance mu2, skewness b1,
/// kurtosis b2):
///
///     c0 = -mu2 (4 b2 - 3 b1^2) / A,
///     c1 = a = -sqrt(mu2) b1 (b2 + 3) / A,
///     c2 = -(2 b2 - 3 b1^2 - 6) / A,      A = 10 b2 - 12 b1^2 - 18.
///
/// The coefficients describe the density of the deviation from the mean, so
/// score()/score_derivative() shift their argument by `mean` internally.
struct PearsonFit {
    double a = 0.0;
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double A = 0.0;
    double mean = 0.0;
    MomentSummary source;
    double eps_den = 1e-12;

    /// c0 + c1 y + c2 y^2 at y = x - mean.
    double denominator(double x) const;

    /// g'/g at x; throws PoleAtX when the denominator is within eps_den of 0.
    double score(double x) const;

    /// d/dx of the score: -(c2 y^2 - 2 a c2 y - (a c1 + c0)) / den(y)^2.
    double score_derivative(double x) const;
};

/// Fit the Pearson system from four moments.  Throws ZeroVariance when
/// m.variance <= 0 and DegenerateDenominator when |A| <= eps_A (for example
/// uniform data: b1 = 0, b2 = 1.8 gives A = 0).
PearsonFit fit_pearson(const MomentSummary& m, double eps_A = 1e-8,
                       double eps_den = 1e-12);

struct DensityGrid {
    double lo = -6.0;
    double hi = 6.0;
    int n_points = 1201;
};

/// Tabulated density reconstructed from a score function.
struct DensityCurve {
    std::vector<double> x;
    std::vector<double> pdf;
    /// Set when the score changes sign more than once on the grid, i.e. the
    /// reconstructed density is not unimodal.
    bool multimodal_warning = false;

    /// Linear interpolation; clamps to the nearest endpoint outside the grid.
    double value_at(double xq) const;
};

/// Integrate the score along the grid (trapezoid rule), exponentiate and
/// renormalize so the curve integrates to 1.  Throws PoleInGrid when a grid
/// point sits on a pole of the denominator.
DensityCurve reconstruct_density(const PearsonFit& fit, const DensityGrid& grid);

/// JSON object with keys a, c0, c1, c2, A, moments.
std::string pearson_to_json(const PearsonFit& fit);

}  // namespace ebkit
