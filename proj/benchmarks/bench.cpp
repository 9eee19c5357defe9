#include <random>

#include <benchmark/benchmark.h>

#include "qhosvd/denoise.hpp"
#include "qhosvd/fusion.hpp"
#include "qhosvd/qhosvd.hpp"
#include "qhosvd/qmatrix.hpp"
#include "qhosvd/qsvd.hpp"
#include "qhosvd/qtensor.hpp"

namespace {

using qhosvd::QMatrix;
using qhosvd::QTensor;

QMatrix random_qmatrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    QMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows * cols; ++i)
        m.set_linear(i, {dist(rng), dist(rng), dist(rng), dist(rng)});
    return m;
}

QTensor random_qtensor(const std::vector<std::size_t>& dims, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    QTensor t(dims);
    for (std::size_t i = 0; i < t.size(); ++i)
        t.set_linear(i, {dist(rng), dist(rng), dist(rng), dist(rng)});
    return t;
}

void BM_matrix_multiply(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const QMatrix a = random_qmatrix(n, n, rng);
    const QMatrix b = random_qmatrix(n, n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(qhosvd::multiply(a, b));
}
BENCHMARK(BM_matrix_multiply)->Arg(16)->Arg(64)->Arg(128);

void BM_qsvd(benchmark::State& state) {
    std::mt19937_64 rng(2);
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const QMatrix q = random_qmatrix(n, n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(qhosvd::qsvd(q));
}
BENCHMARK(BM_qsvd)->Arg(8)->Arg(16)->Arg(32);

void BM_qsvd_left_wide(benchmark::State& state) {
    std::mt19937_64 rng(3);
    const QMatrix q = random_qmatrix(6, static_cast<std::size_t>(state.range(0)), rng);
    for (auto _ : state) benchmark::DoNotOptimize(qhosvd::qsvd_left(q));
}
BENCHMARK(BM_qsvd_left_wide)->Arg(256)->Arg(1024)->Arg(2520);

void BM_qhosvd_full(benchmark::State& state) {
    std::mt19937_64 rng(4);
    const std::size_t w = static_cast<std::size_t>(state.range(0));
    const QTensor t = random_qtensor({w, w, 70}, rng);
    for (auto _ : state) benchmark::DoNotOptimize(qhosvd::qhosvd_full(t));
}
BENCHMARK(BM_qhosvd_full)->Arg(6)->Arg(8);

void BM_fuse_group(benchmark::State& state) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(0.0, 255.0);
    QTensor stack({25, 25, 2});
    for (std::size_t i = 0; i < stack.size(); ++i)
        stack.set_linear(i, {0.0, dist(rng), dist(rng), dist(rng)});
    const qhosvd::FusionConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(qhosvd::fuse_group(stack, cfg));
}
BENCHMARK(BM_fuse_group);

void BM_denoise_group(benchmark::State& state) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> dist(0.0, 255.0);
    qhosvd::DenoiseConfig cfg = qhosvd::DenoiseConfig::for_sigma(20.0);
    qhosvd::SimilarGroup group;
    group.tensor = QTensor({cfg.patch_size, cfg.patch_size, cfg.group_size});
    for (std::size_t i = 0; i < group.tensor.size(); ++i)
        group.tensor.set_linear(i, {0.0, dist(rng), dist(rng), dist(rng)});
    for (auto _ : state) benchmark::DoNotOptimize(qhosvd::denoise_group(group, cfg));
}
BENCHMARK(BM_denoise_group);

void BM_block_match(benchmark::State& state) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(0.0, 255.0);
    QMatrix q(64, 64);
    for (std::size_t i = 0; i < q.size(); ++i)
        q.set_linear(i, {0.0, dist(rng), dist(rng), dist(rng)});
    const qhosvd::DenoiseConfig cfg = qhosvd::DenoiseConfig::for_sigma(20.0);
    for (auto _ : state) benchmark::DoNotOptimize(qhosvd::block_match(q, {30, 30}, cfg));
}
BENCHMARK(BM_block_match);

} // namespace

BENCHMARK_MAIN();
