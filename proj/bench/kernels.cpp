// Serial reference vs OpenMP kernels on binary64 inputs. Values are irrelevant here;
// the unit tests already pin the two paths to identical results.

#include "mgt/kernels.hpp"

#include <benchmark/benchmark.h>

using namespace mgt;
using kernels::Execution;

namespace {

BilinearForm<double> sobolev_form() {
    auto mu = MomentFunctional<double>::laguerre(0.5);
    FactoredNodes<double> h({{-1.0, 2u}, {-2.5, 1u}});
    Matrix<double> lambda = Matrix<double>::identity(3);
    lambda(0, 1) = lambda(1, 0) = 0.25;
    return BilinearForm<double>::sobolev(std::move(mu), SobolevMass<double>(std::move(h), lambda));
}

std::vector<Polynomial<double>> samples(std::size_t count) {
    std::vector<Polynomial<double>> out;
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<double> c(i + 1);
        for (std::size_t k = 0; k <= i; ++k) c[k] = 1.0 / double(1 + k + i);
        out.emplace_back(std::move(c));
    }
    return out;
}

BandMatrix<double> tridiagonal(std::size_t m) {
    BandMatrix<double> b(m, 1, 1);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = b.row_begin(i); k < b.row_end(i); ++k) b.at(i, k) = 1.0 + double(i + 2 * k) / double(m);
    return b;
}

template <Execution Exec>
void BM_gram(benchmark::State& state) {
    const auto form = sobolev_form();
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::gram(form, n, Exec));
}

template <Execution Exec>
void BM_inner_table(benchmark::State& state) {
    const auto form = sobolev_form();
    const auto p = samples(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::inner_table(form, p, p, Exec));
}

template <Execution Exec>
void BM_multiply(benchmark::State& state) {
    const auto a = tridiagonal(static_cast<std::size_t>(state.range(0)));
    auto b = a;
    for (int i = 0; i < 3; ++i) b = kernels::multiply(b, a, Execution::serial);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::multiply(b, a, Exec));
}

}  // namespace

BENCHMARK(BM_gram<Execution::serial>)->Arg(24)->Arg(48);
BENCHMARK(BM_gram<Execution::parallel>)->Arg(24)->Arg(48);
BENCHMARK(BM_inner_table<Execution::serial>)->Arg(32)->Arg(64);
BENCHMARK(BM_inner_table<Execution::parallel>)->Arg(32)->Arg(64);
BENCHMARK(BM_multiply<Execution::serial>)->Arg(2000)->Arg(20000);
BENCHMARK(BM_multiply<Execution::parallel>)->Arg(2000)->Arg(20000);

BENCHMARK_MAIN();
