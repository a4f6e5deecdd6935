#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ebkit/interval.hpp"

namespace ebkit {

/// One symbolic object: a p-vector of intervals.
using IntervalObject = std::vector<Interval>;

enum class DistanceKind { L2, Hausdorff, Wasserstein };

DistanceKind distance_kind_from_name(const std::string& name);
std::string distance_kind_name(DistanceKind kind);

/// Distance between two scalar intervals.
///   L2:          sqrt(dl^2 + du^2)          = sqrt(2 dc^2 + 2 dr^2)
///   Hausdorff:   max(|dl|, |du|)            = |dc| + |dr|
///   Wasserstein: sqrt(dc^2 + dr^2 / 3)
/// With `squared` the L2/Wasserstein variants drop the square root (k-means
/// style); Hausdorff has no squared variant.
double interval_distance(DistanceKind kind, const Interval& x, const Interval& y,
                         bool squared = false);

/// Object-to-prototype dissimilarity: the distance summed over dimensions.
double object_distance(DistanceKind kind, const IntervalObject& x, const IntervalObject& proto,
                       bool squared = false);

enum class Standardization { None, Centers, Bounds, Range };

Standardization standardization_from_name(const std::string& name);
std::string standardization_name(Standardization method);

/// Per-dimension rescaling of an interval dataset.
///   Centers: subtract the mean of centers, divide by their dispersion.
///   Bounds:  same location, but scaled by the joint dispersion of both
///            bounds about the center mean.
///   Range:   map [min lower, max upper] onto [0, 1].
/// Throws ZeroDispersion / DegenerateRange when the scale degenerates.
std::vector<IntervalObject> standardize(const std::vector<IntervalObject>& data,
                                        Standardization method);

struct Partition {
    std::vector<int> assignments;            // cluster index per object, in [0, K)
    std::vector<IntervalObject> prototypes;  // K interval vectors
    double criterion = 0.0;                  // W at convergence
};

/// W(P, L) = sum_h sum_{x in C_h} sum_j d(x_ij, l_hj) for an explicit
/// partition; throws InconsistentPartition on shape mismatches.
double criterion(const std::vector<IntervalObject>& data, const Partition& partition,
                 DistanceKind kind, bool squared = false);

struct DcaResult {
    Partition partition;
    std::vector<double> criterion_history;  // W after each full iteration
    int iterations = 0;
    bool converged = false;
    std::uint64_t seed = 0;
};

/// Dynamic clustering: alternate allocation (nearest prototype, ties to the
/// lowest cluster index) and representative stages (prototype = componentwise
/// mean interval of the members) until no object moves or max_iter is hit.
/// Initial prototypes are K distinct objects drawn by the seeded generator;
/// an emptied cluster is repaired with the object farthest from its own
/// prototype.  Deterministic given (data, K, kind, seed).
DcaResult dca(const std::vector<IntervalObject>& data, int k, DistanceKind kind,
              std::uint64_t seed, int max_iter = 100, bool squared = false);

/// Same iteration from explicit initial prototype objects (used by tests and
/// anyone wanting reproducible restarts).
DcaResult dca_from_indices(const std::vector<IntervalObject>& data, int k, DistanceKind kind,
                           const std::vector<std::size_t>& init_indices, int max_iter = 100,
                           bool squared = false);

}  // namespace ebkit
