#include "ebkit/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ebkit/errors.hpp"
#include "ebkit/rng.hpp"

namespace ebkit {

DistanceKind distance_kind_from_name(const std::string& name) {
    if (name == "l2") return DistanceKind::L2;
    if (name == "hausdorff") return DistanceKind::Hausdorff;
    if (name == "wasserstein") return DistanceKind::Wasserstein;
    throw_error("OutOfRange", "unknown distance: " + name);
}

std::string distance_kind_name(DistanceKind kind) {
    switch (kind) {
        case DistanceKind::L2: return "l2";
        case DistanceKind::Hausdorff: return "hausdorff";
        case DistanceKind::Wasserstein: return "wasserstein";
    }
    return "?";
}

double interval_distance(DistanceKind kind, const Interval& x, const Interval& y, bool squared) {
    const double dc = x.center() - y.center();
    const double dr = x.half_width() - y.half_width();
    switch (kind) {
        case DistanceKind::L2: {
            const double d2 = 2.0 * dc * dc + 2.0 * dr * dr;
            return squared ? d2 : std::sqrt(d2);
        }
        case DistanceKind::Hausdorff:
            if (squared) throw_error("OutOfRange", "Hausdorff has no squared variant");
            return std::fabs(dc) + std::fabs(dr);
        case DistanceKind::Wasserstein: {
            const double d2 = dc * dc + dr * dr / 3.0;
            return squared ? d2 : std::sqrt(d2);
        }
    }
    return 0.0;
}

double object_distance(DistanceKind kind, const IntervalObject& x, const IntervalObject& proto,
                       bool squared) {
    if (x.size() != proto.size()) {
        throw_error("DimensionMismatch", "object and prototype dimensions differ");
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        sum += interval_distance(kind, x[j], proto[j], squared);
    }
    return sum;
}

Standardization standardization_from_name(const std::string& name) {
    if (name == "none") return Standardization::None;
    if (name == "centers") return Standardization::Centers;
    if (name == "bounds") return Standardization::Bounds;
    if (name == "range") return Standardization::Range;
    throw_error("OutOfRange", "unknown standardization: " + name);
}

std::string standardization_name(Standardization method) {
    switch (method) {
        case Standardization::None: return "none";
        case Standardization::Centers: return "centers";
        case Standardization::Bounds: return "bounds";
        case Standardization::Range: return "range";
    }
    return "?";
}

std::vector<IntervalObject> standardize(const std::vector<IntervalObject>& data,
                                        Standardization method) {
    if (method == Standardization::None) return data;
    if (data.empty()) throw_error("EmptySample", "no objects");
    const std::size_t n = data.size();
    const std::size_t p = data.front().size();
    for (const auto& obj : data) {
        if (obj.size() != p) throw_error("DimensionMismatch", "objects disagree on dimension");
    }

    std::vector<IntervalObject> out(n, IntervalObject(p));
    for (std::size_t j = 0; j < p; ++j) {
        double loc = 0.0, scale = 1.0;
        switch (method) {
            case Standardization::Centers: {
                double m = 0.0;
                for (const auto& obj : data) m += obj[j].center();
                m /= static_cast<double>(n);
                double disp = 0.0;
                for (const auto& obj : data) {
                    const double d = obj[j].center() - m;
                    disp += d * d;
                }
                disp /= static_cast<double>(n);
                if (!(disp > 0.0)) {
                    throw_error("ZeroDispersion",
                                "centers of dimension " + std::to_string(j) + " do not vary");
                }
                loc = m;
                scale = std::sqrt(disp);
                break;
            }
            case Standardization::Bounds: {
                double m = 0.0;
                for (const auto& obj : data) m += obj[j].center();
                m /= static_cast<double>(n);
                double disp = 0.0;
                for (const auto& obj : data) {
                    const double dl = obj[j].lo - m;
                    const double du = obj[j].hi - m;
                    disp += 0.5 * (dl * dl + du * du);
                }
                disp /= static_cast<double>(n);
                if (!(disp > 0.0)) {
                    throw_error("ZeroDispersion",
                                "bounds of dimension " + std::to_string(j) + " do not vary");
                }
                loc = m;
                scale = std::sqrt(disp);
                break;
            }
            case Standardization::Range: {
                double lo = data.front()[j].lo, hi = data.front()[j].hi;
                for (const auto& obj : data) {
                    lo = std::min(lo, obj[j].lo);
                    hi = std::max(hi, obj[j].hi);
                }
                if (!(hi > lo)) {
                    throw_error("DegenerateRange",
                                "dimension " + std::to_string(j) + " has zero global range");
                }
                loc = lo;
                scale = hi - lo;
                break;
            }
            case Standardization::None: break;
        }
        for (std::size_t i = 0; i < n; ++i) {
            out[i][j] = Interval((data[i][j].lo - loc) / scale, (data[i][j].hi - loc) / scale);
        }
    }
    return out;
}

double criterion(const std::vector<IntervalObject>& data, const Partition& partition,
                 DistanceKind kind, bool squared) {
    if (partition.assignments.size() != data.size()) {
        throw_error("InconsistentPartition", "assignment count differs from object count");
    }
    const int k = static_cast<int>(partition.prototypes.size());
    double w = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const int h = partition.assignments[i];
        if (h < 0 || h >= k) throw_error("InconsistentPartition", "cluster index out of range");
        w += object_distance(kind, data[i], partition.prototypes[static_cast<std::size_t>(h)],
                             squared);
    }
    return w;
}

namespace {

IntervalObject mean_interval(const std::vector<IntervalObject>& data,
                             const std::vector<std::size_t>& members) {
    const std::size_t p = data.front().size();
    IntervalObject proto(p);
    for (std::size_t j = 0; j < p; ++j) {
        double lo = 0.0, hi = 0.0;
        for (std::size_t i : members) {
            lo += data[i][j].lo;
            hi += data[i][j].hi;
        }
        const double m = static_cast<double>(members.size());
        proto[j] = Interval(lo / m, hi / m);
    }
    return proto;
}

}  // namespace

DcaResult dca_from_indices(const std::vector<IntervalObject>& data, int k, DistanceKind kind,
                           const std::vector<std::size_t>& init_indices, int max_iter,
                           bool squared) {
    const std::size_t n = data.size();
    if (k < 1 || static_cast<std::size_t>(k) > n) {
        throw_error("BadK", "K must lie in [1, n]");
    }
    if (init_indices.size() != static_cast<std::size_t>(k)) {
        throw_error("BadK", "need exactly K initial prototype indices");
    }
    if (max_iter < 1) throw_error("OutOfRange", "max_iter must be >= 1");
    const std::size_t p = data.front().size();
    for (const auto& obj : data) {
        if (obj.size() != p) throw_error("DimensionMismatch", "objects disagree on dimension");
    }

    DcaResult result;
    Partition& part = result.partition;
    part.prototypes.reserve(static_cast<std::size_t>(k));
    for (std::size_t idx : init_indices) part.prototypes.push_back(data.at(idx));
    part.assignments.assign(n, -1);

    for (int iter = 1; iter <= max_iter; ++iter) {
        // Allocation: nearest prototype, lowest cluster index on ties.
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (int h = 0; h < k; ++h) {
                const double d = object_distance(kind, data[i],
                                                 part.prototypes[static_cast<std::size_t>(h)],
                                                 squared);
                if (d < best_d) {
                    best_d = d;
                    best = h;
                }
            }
            if (part.assignments[i] != best) {
                part.assignments[i] = best;
                changed = true;
            }
        }

        // Repair: move the object farthest from its prototype into each
        // emptied cluster (never emptying a singleton).
        std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < n; ++i) {
            members[static_cast<std::size_t>(part.assignments[i])].push_back(i);
        }
        for (int h = 0; h < k; ++h) {
            if (!members[static_cast<std::size_t>(h)].empty()) continue;
            std::size_t worst = n;
            double worst_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                const auto from = static_cast<std::size_t>(part.assignments[i]);
                if (members[from].size() <= 1) continue;
                const double d =
                    object_distance(kind, data[i], part.prototypes[from], squared);
                if (d > worst_d) {
                    worst_d = d;
                    worst = i;
                }
            }
            if (worst == n) continue;  // nothing movable
            const auto from = static_cast<std::size_t>(part.assignments[worst]);
            std::erase(members[from], worst);
            members[static_cast<std::size_t>(h)].push_back(worst);
            part.assignments[worst] = h;
            changed = true;
        }

        // Representative: componentwise average interval of the members.
        for (int h = 0; h < k; ++h) {
            const auto& mem = members[static_cast<std::size_t>(h)];
            if (!mem.empty()) {
                part.prototypes[static_cast<std::size_t>(h)] = mean_interval(data, mem);
            }
        }

        part.criterion = criterion(data, part, kind, squared);
        result.criterion_history.push_back(part.criterion);
        result.iterations = iter;
        if (!changed) {
            result.converged = true;
            break;
        }
    }
    return result;
}

DcaResult dca(const std::vector<IntervalObject>& data, int k, DistanceKind kind,
              std::uint64_t seed, int max_iter, bool squared) {
    if (data.empty()) throw_error("EmptySample", "no objects");
    if (k < 1 || static_cast<std::size_t>(k) > data.size()) {
        throw_error("BadK", "K must lie in [1, n]");
    }
    Rng rng(seed);
    DcaResult result = dca_from_indices(
        data, k, kind, rng.sample_indices(data.size(), static_cast<std::size_t>(k)), max_iter,
        squared);
    result.seed = seed;
    return result;
}

}  // namespace ebkit
