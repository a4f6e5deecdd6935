#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ebkit/pearson.hpp"

namespace ebkit {

/// Center a permutation of {1..t} by (t+1)/2 and scale by
/// sqrt(t (t^2 - 1) / 12), giving a zero-sum unit vector.  Ties are not
/// supported; throws NotAPermutation.
Eigen::VectorXd standardize_ranking(const std::vector<int>& ranking);

/// Consensus direction, concentration and mean resultant length of a cloud
/// of standardized rankings.  `has_direction` is false for perfectly
/// balanced data (zero resultant), in which case kappa = r = 0.
struct VmfParams {
    Eigen::VectorXd direction;  // unit vector when has_direction
    double kappa = 0.0;
    double resultant = 0.0;  // r in [0, 1]
    bool has_direction = false;
};

/// Maximum likelihood fit: direction = mean resultant direction,
/// kappa = r (t - 1 - r^2) / (1 - r^2) with r clipped below 1 - 1e-9.
VmfParams vmf_mle(const std::vector<Eigen::VectorXd>& xs);

/// Sphere approximation of the permutation normalizing constant:
/// C_t(kappa) = kappa^nu / (2^nu t! I_nu(kappa) Gamma((t-1)/2)) with
/// nu = (t-3)/2.  Requires t >= 3 (BadOrder) and kappa > 0.
double vmf_norm_constant(int t, double kappa);

enum class Carrier { Uniform, Vmf, Normal };

Carrier carrier_from_name(const std::string& name);
std::string carrier_name(Carrier carrier);

/// Fit one Pearson system per coordinate from the columns of the ranking
/// cloud.
std::vector<PearsonFit> fit_columns(const std::vector<Eigen::VectorXd>& xs);

/// Per-ranking posterior score vectors under the chosen carrying density:
///   uniform: theta = s(x)
///   vmf:     theta = s(x) - kappa_hat m_hat (estimated from xs; reduces to
///            uniform when the resultant vanishes)
///   normal:  theta = Sigma s(x) + x, Sigma defaulting to the sample
///            covariance of xs
/// where s(x) is the coordinatewise Pearson score.
std::vector<Eigen::VectorXd> rank_posterior(const std::vector<Eigen::VectorXd>& xs,
                                            Carrier carrier,
                                            const std::vector<PearsonFit>& fits,
                                            const std::optional<Eigen::MatrixXd>& Sigma = {});

/// Rank items by the average of the posterior vectors: rank 1 goes to the
/// largest averaged coordinate, ties broken by item index.
std::vector<int> consensus_ranking(const std::vector<Eigen::VectorXd>& posteriors);

}  // namespace ebkit
