// Serial reference kernels against their OpenMP counterparts.

#include "dynprice/kernels.hpp"

#include <benchmark/benchmark.h>
#include <cmath>
#include <random>
#include <vector>

namespace {

using namespace dynprice;

const TimeInterval kDay{0.0, 1.0};

std::vector<double> meter_samples(std::size_t count) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> noise(0.0, 2.0);
    std::vector<double> values(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double t = grid_time(kDay, count, k);
        values[k] = 50.0 + 20.0 * std::sin(10.0 * M_PI * t) + noise(rng);
    }
    return values;
}

TrigPoly random_poly(int harmonics) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> amp(-10.0, 10.0);
    TrigPoly poly{40.0, {}};
    for (int n = 1; n <= harmonics; ++n) {
        poly.harmonics.push_back({n, amp(rng), amp(rng)});
    }
    return poly;
}

void BM_FourierSerial(benchmark::State& state) {
    const auto values = meter_samples(static_cast<std::size_t>(state.range(0)));
    const int order = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::fourier_coefficients_serial(values, kDay, order));
    }
}

void BM_FourierParallel(benchmark::State& state) {
    const auto values = meter_samples(static_cast<std::size_t>(state.range(0)));
    const int order = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::fourier_coefficients_parallel(values, kDay, order));
    }
}

void BM_EvaluateSerial(benchmark::State& state) {
    const auto poly = random_poly(static_cast<int>(state.range(1)));
    std::vector<double> out(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        kernels::evaluate_trig_serial(poly, kDay, out);
        benchmark::ClobberMemory();
    }
}

void BM_EvaluateParallel(benchmark::State& state) {
    const auto poly = random_poly(static_cast<int>(state.range(1)));
    std::vector<double> out(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        kernels::evaluate_trig_parallel(poly, kDay, out);
        benchmark::ClobberMemory();
    }
}

// 15-minute meter data for a day, a month and a year.
#define DYNPRICE_SIZES Args({97, 48})->Args({2881, 128})->Args({35041, 512})

BENCHMARK(BM_FourierSerial)->DYNPRICE_SIZES;
BENCHMARK(BM_FourierParallel)->DYNPRICE_SIZES;
BENCHMARK(BM_EvaluateSerial)->DYNPRICE_SIZES;
BENCHMARK(BM_EvaluateParallel)->DYNPRICE_SIZES;

}  // namespace

BENCHMARK_MAIN();
