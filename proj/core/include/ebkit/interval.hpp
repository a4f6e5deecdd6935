#pragma once

#include <cstddef>
#include <vector>

#include "ebkit/errors.hpp"

namespace ebkit {

/// A scalar interval observation [lo, hi].  Center/half-width views satisfy
/// lo = center - half_width and hi = center + half_width exactly.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double l, double u) : lo(l), hi(u) {
        if (!(l <= u)) throw_error("InvalidInterval", "lower bound exceeds upper bound");
    }

    double center() const { return 0.5 * (lo + hi); }
    double half_width() const { return 0.5 * (hi - lo); }
    double length() const { return hi - lo; }
    bool degenerate() const { return lo == hi; }
};

/// A p-dimensional interval observation stored as bound vectors.
struct IntervalBox {
    std::vector<double> lower;
    std::vector<double> upper;

    IntervalBox() = default;
    IntervalBox(std::vector<double> l, std::vector<double> u)
        : lower(std::move(l)), upper(std::move(u)) {
        if (lower.size() != upper.size()) {
            throw_error("DimensionMismatch", "bound vectors differ in length");
        }
        for (std::size_t j = 0; j < lower.size(); ++j) {
            if (!(lower[j] <= upper[j])) {
                throw_error("InvalidInterval", "lower bound exceeds upper bound");
            }
        }
    }
    explicit IntervalBox(const std::vector<Interval>& dims) {
        lower.reserve(dims.size());
        upper.reserve(dims.size());
        for (const Interval& iv : dims) {
            lower.push_back(iv.lo);
            upper.push_back(iv.hi);
        }
    }

    std::size_t dim() const { return lower.size(); }
    Interval at(std::size_t j) const { return Interval(lower[j], upper[j]); }
    double center(std::size_t j) const { return 0.5 * (lower[j] + upper[j]); }
    double half_width(std::size_t j) const { return 0.5 * (upper[j] - lower[j]); }
};

}  // namespace ebkit
