#include <benchmark/benchmark.h>

#include <vector>

#include "ebkit/cluster.hpp"
#include "ebkit/linear_eb.hpp"
#include "ebkit/moments.hpp"
#include "ebkit/pearson.hpp"
#include "ebkit/ranking.hpp"
#include "ebkit/rng.hpp"
#include "ebkit/saddlepoint.hpp"
#include "ebkit/tweedie.hpp"

namespace {

std::vector<double> simulated_zs(std::size_t n) {
    ebkit::Rng rng(0);
    std::vector<double> zs(n);
    for (double& z : zs) z = rng.normal() + rng.normal();
    return zs;
}

void PearsonFitAndScoreBatch(benchmark::State& state) {
    const auto zs = simulated_zs(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        const ebkit::PearsonFit fit = ebkit::fit_pearson(ebkit::classical_moments(zs));
        double acc = 0.0;
        for (double z : zs) acc += ebkit::normal_posterior_mean(z, 1.0, fit);
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(PearsonFitAndScoreBatch)->Arg(1000)->Arg(6033);

void DensityReconstruction(benchmark::State& state) {
    const ebkit::PearsonFit fit =
        ebkit::fit_pearson(ebkit::moments_from_shape(0.0, 1.2885, 0.04181, 3.6445));
    for (auto _ : state) {
        const auto curve =
            ebkit::reconstruct_density(fit, {-8.0, 8.0, static_cast<int>(state.range(0))});
        benchmark::DoNotOptimize(curve.pdf.data());
    }
}
BENCHMARK(DensityReconstruction)->Arg(401)->Arg(1601);

void SaddleSolvePoisson(benchmark::State& state) {
    const ebkit::CgfModel model = ebkit::make_poisson_cgf(2.0);
    for (auto _ : state) {
        double acc = 0.0;
        for (double x = 1.0; x <= 40.0; x += 1.0) {
            acc += ebkit::saddle_density(model, x).density;
        }
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * 40);
}
BENCHMARK(SaddleSolvePoisson);

void DcaIteration(benchmark::State& state) {
    ebkit::Rng rng(1);
    std::vector<ebkit::IntervalObject> data;
    for (int i = 0; i < state.range(0); ++i) {
        ebkit::IntervalObject obj;
        for (int j = 0; j < 3; ++j) {
            const double a = rng.uniform(-5.0, 5.0);
            obj.emplace_back(a, a + rng.uniform(0.0, 2.0));
        }
        data.push_back(std::move(obj));
    }
    for (auto _ : state) {
        const auto res = ebkit::dca(data, 4, ebkit::DistanceKind::Wasserstein, 3);
        benchmark::DoNotOptimize(res.partition.criterion);
    }
}
BENCHMARK(DcaIteration)->Arg(100)->Arg(400);

void RankPosteriorBatch(benchmark::State& state) {
    ebkit::Rng rng(2);
    const int t = 10;
    std::vector<Eigen::VectorXd> xs;
    for (int i = 0; i < state.range(0); ++i) {
        std::vector<int> perm(t);
        for (int j = 0; j < t; ++j) perm[static_cast<std::size_t>(j)] = j + 1;
        rng.shuffle(perm);
        xs.push_back(ebkit::standardize_ranking(perm));
    }
    for (auto _ : state) {
        const auto fits = ebkit::fit_columns(xs);
        const auto posts = ebkit::rank_posterior(xs, ebkit::Carrier::Normal, fits);
        benchmark::DoNotOptimize(posts.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(RankPosteriorBatch)->Arg(500);

void LinearEbEstimate(benchmark::State& state) {
    ebkit::Rng rng(3);
    ebkit::GroupedSample data;
    for (int i = 0; i < 100; ++i) {
        Eigen::MatrixXd g(6, 5);
        for (int r = 0; r < 6; ++r) {
            for (int c = 0; c < 5; ++c) g(r, c) = rng.normal() + i * 0.1;
        }
        data.groups.push_back(std::move(g));
    }
    for (auto _ : state) {
        const auto est = ebkit::estimate(data);
        benchmark::DoNotOptimize(est.data());
    }
}
BENCHMARK(LinearEbEstimate);

}  // namespace

BENCHMARK_MAIN();
