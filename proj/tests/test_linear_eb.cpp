#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ebkit/errors.hpp"
#include "ebkit/linear_eb.hpp"
#include "ebkit/ranking.hpp"
#include "ebkit/rng.hpp"

using namespace ebkit;

namespace {

Eigen::MatrixXd column(std::initializer_list<double> values) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(values.size()), 1);
    Eigen::Index i = 0;
    for (double v : values) m(i++, 0) = v;
    return m;
}

GroupedSample two_group_sample() {
    GroupedSample data;
    data.groups.push_back(column({0.0, 2.0}));
    data.groups.push_back(column({4.0, 6.0}));
    return data;
}

}  // namespace

TEST_CASE("summary statistics of the two-group example") {
    const EbSummary s = summarize(two_group_sample());
    CHECK(s.grand_mean(0) == doctest::Approx(3.0));
    CHECK(s.between(0, 0) == doctest::Approx(8.0));
    CHECK(s.within(0, 0) == doctest::Approx(2.0));
    CHECK(s.v == doctest::Approx(0.5));
    CHECK(s.singleton_groups == 0);
}

TEST_CASE("identical groups have zero between covariance") {
    GroupedSample data;
    data.groups.push_back(column({1.0, 3.0}));
    data.groups.push_back(column({1.0, 3.0}));
    data.groups.push_back(column({1.0, 3.0}));
    const EbSummary s = summarize(data);
    CHECK(s.between(0, 0) == doctest::Approx(0.0));
    // Complete shrinkage.
    for (const auto& t : estimate(data)) CHECK(t(0) == doctest::Approx(2.0));
}

TEST_CASE("summary is invariant under group order") {
    GroupedSample a = two_group_sample();
    GroupedSample b;
    b.groups.push_back(a.groups[1]);
    b.groups.push_back(a.groups[0]);
    const EbSummary sa = summarize(a);
    const EbSummary sb = summarize(b);
    CHECK(sa.grand_mean(0) == doctest::Approx(sb.grand_mean(0)));
    CHECK(sa.within(0, 0) == doctest::Approx(sb.within(0, 0)));
    CHECK(sa.v == doctest::Approx(sb.v));
}

TEST_CASE("singleton groups are excluded from the pooled within variance") {
    GroupedSample data;
    data.groups.push_back(column({0.0, 2.0}));
    data.groups.push_back(column({5.0}));
    data.groups.push_back(column({4.0, 6.0}));
    const EbSummary s = summarize(data);
    CHECK(s.singleton_groups == 1);
    CHECK(s.within(0, 0) == doctest::Approx(2.0));  // average of the two pairs only
    CHECK(s.v == doctest::Approx((0.5 + 1.0 + 0.5) / 3.0));
}

TEST_CASE("too few groups") {
    GroupedSample data;
    data.groups.push_back(column({1.0, 2.0}));
    CHECK_THROWS_AS(summarize(data), EbError);
}

TEST_CASE("no-shrinkage limit when within variance vanishes") {
    GroupedSample data;
    data.groups.push_back(column({1.0, 1.0}));
    data.groups.push_back(column({5.0, 5.0}));
    data.groups.push_back(column({9.0, 9.0}));
    const auto est = estimate(data);
    CHECK(est[0](0) == doctest::Approx(1.0));
    CHECK(est[1](0) == doctest::Approx(5.0));
    CHECK(est[2](0) == doctest::Approx(9.0));
}

TEST_CASE("EB estimates beat the group means against the truth") {
    Rng rng(0);
    const int N = 50, n_obs = 5;
    GroupedSample data;
    std::vector<double> truth(N);
    for (int i = 0; i < N; ++i) {
        truth[static_cast<std::size_t>(i)] = rng.normal();
        Eigen::MatrixXd g(n_obs, 1);
        for (int j = 0; j < n_obs; ++j) {
            g(j, 0) = truth[static_cast<std::size_t>(i)] + rng.normal();
        }
        data.groups.push_back(std::move(g));
    }
    const EbSummary s = summarize(data);
    const auto est = estimate(data);
    double mse_eb = 0.0, mse_raw = 0.0;
    for (int i = 0; i < N; ++i) {
        const double de = est[static_cast<std::size_t>(i)](0) - truth[static_cast<std::size_t>(i)];
        const double dr =
            s.group_means[static_cast<std::size_t>(i)](0) - truth[static_cast<std::size_t>(i)];
        mse_eb += de * de;
        mse_raw += dr * dr;
    }
    CHECK(mse_eb < mse_raw);

    // Equal group sizes: the estimate mean equals the grand mean.
    double mean_est = 0.0;
    for (const auto& t : est) mean_est += t(0);
    mean_est /= N;
    CHECK(std::fabs(mean_est - s.grand_mean(0)) < 1e-10);

    // Betweenness in one dimension.
    for (int i = 0; i < N; ++i) {
        const double lo = std::min(s.group_means[static_cast<std::size_t>(i)](0), s.grand_mean(0));
        const double hi = std::max(s.group_means[static_cast<std::size_t>(i)](0), s.grand_mean(0));
        CHECK(est[static_cast<std::size_t>(i)](0) >= lo - 1e-12);
        CHECK(est[static_cast<std::size_t>(i)](0) <= hi + 1e-12);
    }
}

TEST_CASE("translation equivariance") {
    Rng rng(4);
    GroupedSample data;
    for (int i = 0; i < 8; ++i) {
        Eigen::MatrixXd g(3, 2);
        for (int r = 0; r < 3; ++r) {
            g(r, 0) = rng.normal() + i;
            g(r, 1) = rng.normal() - i;
        }
        data.groups.push_back(std::move(g));
    }
    Eigen::RowVector2d shift(2.5, -7.0);
    GroupedSample shifted = data;
    for (auto& g : shifted.groups) g.rowwise() += shift;

    const auto base = estimate(data);
    const auto moved = estimate(shifted);
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK((moved[i] - base[i] - shift.transpose()).norm() < 1e-10);
    }
}

TEST_CASE("collinear coordinates trigger the condition guard") {
    Rng rng(6);
    GroupedSample data;
    for (int i = 0; i < 5; ++i) {
        Eigen::MatrixXd g(3, 2);
        for (int r = 0; r < 3; ++r) {
            const double x = rng.normal() + 2.0 * i;
            g(r, 0) = x;
            g(r, 1) = x;  // exact duplicate coordinate
        }
        data.groups.push_back(std::move(g));
    }
    CHECK_THROWS_AS(estimate(data), EbError);
    try {
        estimate(data);
    } catch (const EbError& e) {
        CHECK(e.code() == "SingularShrinkageMatrix");
    }
    // A small ridge restores solvability.
    CHECK_NOTHROW(estimate(data, 1e-6));
}

TEST_CASE("ranking workflow: estimates of standardized rank vectors rank back to a permutation") {
    // Groups play the role of years; observations are standardized rankings
    // of t objects under different criteria.
    Rng rng(14);
    const int t = 6;
    GroupedSample data;
    for (int year = 0; year < 3; ++year) {
        Eigen::MatrixXd g(4, t);
        for (int crit = 0; crit < 4; ++crit) {
            std::vector<int> perm(t);
            std::iota(perm.begin(), perm.end(), 1);
            // Noisy common consensus: a few seeded swaps of the identity.
            for (int s = 0; s < 2; ++s) {
                const auto i = static_cast<std::size_t>(rng.below(t));
                const auto j = static_cast<std::size_t>(rng.below(t));
                std::swap(perm[i], perm[j]);
            }
            const Eigen::VectorXd x = standardize_ranking(perm);
            for (int k = 0; k < t; ++k) g(crit, k) = x(k);
        }
        data.groups.push_back(std::move(g));
    }

    const auto est = estimate(data);
    const auto ranks = consensus_ranking({est[2]});
    std::vector<int> sorted = ranks;
    std::sort(sorted.begin(), sorted.end());
    for (int k = 0; k < t; ++k) CHECK(sorted[static_cast<std::size_t>(k)] == k + 1);

    // Positive rescaling of every input leaves the output ranking unchanged.
    GroupedSample scaled = data;
    for (auto& g : scaled.groups) g *= 3.7;
    const auto est2 = estimate(scaled);
    CHECK(consensus_ranking({est2[2]}) == ranks);
}

TEST_CASE("scalar interval estimates") {
    // Zero-width identical intervals: everything collapses to the center.
    IntervalGroupedSample flat;
    for (int i = 0; i < 4; ++i) {
        flat.groups.push_back({IntervalBox({2.0}, {2.0})});
    }
    for (double t : estimate_interval_scalar(flat)) CHECK(t == doctest::Approx(2.0));

    // Mean of the estimates equals the grand symbolic mean with equal sizes.
    IntervalGroupedSample data;
    data.groups.push_back({IntervalBox({0.0}, {2.0})});
    data.groups.push_back({IntervalBox({1.0}, {4.0})});
    data.groups.push_back({IntervalBox({5.0}, {6.0})});
    data.groups.push_back({IntervalBox({2.0}, {9.0})});
    const auto est = estimate_interval_scalar(data);
    const double grand = (1.0 + 2.5 + 5.5 + 5.5) / 4.0;
    const double mean_est = std::accumulate(est.begin(), est.end(), 0.0) / 4.0;
    CHECK(mean_est == doctest::Approx(grand).epsilon(1e-12));

    CHECK_THROWS_AS(estimate_interval_scalar(IntervalGroupedSample{}), EbError);
}

TEST_CASE("interval vector form reduces to the scalar form at p = 1") {
    Rng rng(8);
    IntervalGroupedSample data;
    for (int i = 0; i < 6; ++i) {
        std::vector<IntervalBox> group;
        for (int j = 0; j < 3; ++j) {
            const double a = rng.uniform(0.0, 4.0) + i;
            group.push_back(IntervalBox({a}, {a + rng.uniform(0.0, 2.0)}));
        }
        data.groups.push_back(std::move(group));
    }
    const auto scalar = estimate_interval_scalar(data);
    const auto vec = estimate_interval_vector(data);
    for (std::size_t i = 0; i < scalar.size(); ++i) {
        CHECK(vec[i](0) == doctest::Approx(scalar[i]).epsilon(1e-12));
    }
}

TEST_CASE("degenerate intervals reduce to the classical estimator on centers") {
    Rng rng(17);
    IntervalGroupedSample iv;
    GroupedSample classical;
    for (int i = 0; i < 5; ++i) {
        std::vector<IntervalBox> group;
        Eigen::MatrixXd g(4, 1);
        for (int j = 0; j < 4; ++j) {
            const double x = rng.normal() + 1.5 * i;
            group.push_back(IntervalBox({x}, {x}));
            g(j, 0) = x;
        }
        iv.groups.push_back(std::move(group));
        classical.groups.push_back(std::move(g));
    }
    const auto a = estimate_interval_scalar(iv);
    const auto b = estimate(classical);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i] == doctest::Approx(b[i](0)).epsilon(1e-9));
    }
}

TEST_CASE("2-d interval estimates preserve the center ordering") {
    // Repeated-measurement style data: 20 patients, 3 readings per patient
    // per dimension, aggregated to [min, max] intervals.
    Rng rng(23);
    IntervalGroupedSample data;
    std::vector<double> center0;
    for (int patient = 0; patient < 20; ++patient) {
        const double base0 = 100.0 + 2.0 * patient;
        const double base1 = 60.0 + 1.5 * patient;
        double lo0 = 1e9, hi0 = -1e9, lo1 = 1e9, hi1 = -1e9;
        for (int rep = 0; rep < 3; ++rep) {
            const double r0 = base0 + 0.05 * rng.normal();
            const double r1 = base1 + 0.05 * rng.normal();
            lo0 = std::min(lo0, r0);
            hi0 = std::max(hi0, r0);
            lo1 = std::min(lo1, r1);
            hi1 = std::max(hi1, r1);
        }
        data.groups.push_back({IntervalBox({lo0, lo1}, {hi0, hi1})});
        center0.push_back(0.5 * (lo0 + hi0));
    }
    const auto est = estimate_interval_vector(data);
    for (std::size_t i = 1; i < est.size(); ++i) {
        CHECK(est[i](0) > est[i - 1](0));  // centers were generated increasing
        CHECK(est[i](1) > est[i - 1](1));
    }
}

TEST_CASE("degenerate intervals across identical groups shrink to the center") {
    IntervalGroupedSample data;
    data.groups.push_back({IntervalBox({3.0, 1.0}, {3.0, 1.0})});
    data.groups.push_back({IntervalBox({3.0, 1.0}, {3.0, 1.0})});
    const auto est = estimate_interval_vector(data);
    CHECK(est[0](0) == doctest::Approx(3.0));
    CHECK(est[0](1) == doctest::Approx(1.0));
}
