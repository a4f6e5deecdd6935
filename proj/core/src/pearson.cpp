#include "ebkit/pearson.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "ebkit/errors.hpp"
#include "ebkit/numeric.hpp"

namespace ebkit {

double PearsonFit::denominator(double x) const {
    const double y = x - mean;
    return c0 + y * (c1 + c2 * y);
}

double PearsonFit::score(double x) const {
    const double den = denominator(x);
    if (std::fabs(den) <= eps_den) {
        throw_error("PoleAtX", "score denominator vanishes at x = " + std::to_string(x));
    }
    return (x - mean - a) / den;
}

double PearsonFit::score_derivative(double x) const {
    const double den = denominator(x);
    if (std::fabs(den) <= eps_den) {
        throw_error("PoleAtX", "score denominator vanishes at x = " + std::to_string(x));
    }
    const double y = x - mean;
    return -(c2 * y * y - 2.0 * a * c2 * y - (a * c1 + c0)) / (den * den);
}

PearsonFit fit_pearson(const MomentSummary& m, double eps_A, double eps_den) {
    if (!(m.variance > 0.0)) throw_error("ZeroVariance", "Pearson fit needs variance > 0");
    const double b1 = m.require_skewness();
    const double b2 = m.require_kurtosis();

    const double A = 10.0 * b2 - 12.0 * b1 * b1 - 18.0;
    if (std::fabs(A) <= eps_A) {
        throw_error("DegenerateDenominator",
                    "common denominator A = 10 b2 - 12 b1^2 - 18 is within " +
                        std::to_string(eps_A) + " of zero");
    }

    PearsonFit fit;
    fit.c0 = -m.variance * (4.0 * b2 - 3.0 * b1 * b1) / A;
    fit.c1 = fit.a = -std::sqrt(m.variance) * b1 * (b2 + 3.0) / A;
    fit.c2 = -(2.0 * b2 - 3.0 * b1 * b1 - 6.0) / A;
    fit.A = A;
    fit.mean = m.mean;
    fit.source = m;
    fit.eps_den = eps_den;
    return fit;
}

double DensityCurve::value_at(double xq) const {
    if (xq <= x.front()) return pdf.front();
    if (xq >= x.back()) return pdf.back();
    const auto it = std::upper_bound(x.begin(), x.end(), xq);
    const std::size_t i = static_cast<std::size_t>(it - x.begin());
    const double w = (xq - x[i - 1]) / (x[i] - x[i - 1]);
    return (1.0 - w) * pdf[i - 1] + w * pdf[i];
}

DensityCurve reconstruct_density(const PearsonFit& fit, const DensityGrid& grid) {
    if (grid.n_points < 16) throw_error("OutOfRange", "density grid needs at least 16 points");
    DensityCurve curve;
    curve.x = linspace(grid.lo, grid.hi, grid.n_points);

    std::vector<double> s(curve.x.size());
    for (std::size_t i = 0; i < curve.x.size(); ++i) {
        if (std::fabs(fit.denominator(curve.x[i])) <= fit.eps_den) {
            throw_error("PoleInGrid",
                        "score pole at grid point x = " + std::to_string(curve.x[i]));
        }
        s[i] = fit.score(curve.x[i]);
    }

    int sign_changes = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if ((s[i - 1] > 0.0 && s[i] < 0.0) || (s[i - 1] < 0.0 && s[i] > 0.0)) ++sign_changes;
    }
    curve.multimodal_warning = sign_changes > 1;

    // log f up to a constant, then normalize on the grid.
    std::vector<double> logf(s.size(), 0.0);
    const double h = (grid.hi - grid.lo) / (grid.n_points - 1);
    for (std::size_t i = 1; i < s.size(); ++i) {
        logf[i] = logf[i - 1] + 0.5 * h * (s[i - 1] + s[i]);
    }
    const double lmax = *std::max_element(logf.begin(), logf.end());
    curve.pdf.resize(logf.size());
    for (std::size_t i = 0; i < logf.size(); ++i) curve.pdf[i] = std::exp(logf[i] - lmax);

    double integral = 0.0;
    for (std::size_t i = 1; i < curve.pdf.size(); ++i) {
        integral += 0.5 * h * (curve.pdf[i - 1] + curve.pdf[i]);
    }
    for (double& v : curve.pdf) v /= integral;
    return curve;
}

std::string pearson_to_json(const PearsonFit& fit) {
    nlohmann::json j;
    j["a"] = fit.a;
    j["c0"] = fit.c0;
    j["c1"] = fit.c1;
    j["c2"] = fit.c2;
    j["A"] = fit.A;
    nlohmann::json m;
    m["n"] = fit.source.n;
    m["mu1"] = fit.source.mean;
    m["mu2"] = fit.source.variance;
    m["mu3"] = fit.source.mu3;
    m["mu4"] = fit.source.mu4;
    if (fit.source.skewness) m["beta1"] = *fit.source.skewness;
    if (fit.source.kurtosis) m["beta2"] = *fit.source.kurtosis;
    j["moments"] = m;
    return j.dump(2);
}

}  // namespace ebkit
