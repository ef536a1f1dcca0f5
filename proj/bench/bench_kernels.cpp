// Parallel kernels against their serial references.

#include "qhgeo/geodesic.hpp"
#include "qhgeo/parallel.hpp"
#include "qhgeo/paths.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace qhgeo;

namespace {

const NormSpec kL2 = NormSpec::p_norm(2, 2.0);

const Domain& two_punctures() {
    static const Domain d = Domain::punctured({{0.0, 0.0}, {0.4, 0.9}});
    return d;
}

Grid bench_grid(double spacing) {
    return make_grid(two_punctures(), kL2, {1.0, 0.0}, {-2.0, -2.0}, {2.0, 2.0}, spacing);
}

Polyline spiral(std::size_t n) {
    std::vector<Point> v;
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = 6.0 * static_cast<double>(i) / static_cast<double>(n);
        v.push_back({(1.0 + 0.1 * t) * std::cos(t), (1.0 + 0.1 * t) * std::sin(t)});
    }
    return Polyline(std::move(v));
}

void BM_EdgeWeights(benchmark::State& state) {
    const Grid g = bench_grid(4.0 / static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(grid_edge_weights(two_punctures(), kL2, g, 16, 1e-8));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}

void BM_EdgeWeightsSerial(benchmark::State& state) {
    const Grid g = bench_grid(4.0 / static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(grid_edge_weights_serial(two_punctures(), kL2, g, 16, 1e-8));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}

void BM_SegmentLengths(benchmark::State& state) {
    const Polyline p = spiral(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(qh_segment_lengths(two_punctures(), kL2, p, 1e-10));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SegmentLengthsSerial(benchmark::State& state) {
    const Polyline p = spiral(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(qh_segment_lengths_serial(two_punctures(), kL2, p, 1e-10));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_EdgeWeights)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EdgeWeightsSerial)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SegmentLengths)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SegmentLengthsSerial)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
