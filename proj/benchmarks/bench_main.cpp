#include <benchmark/benchmark.h>

#include <quadring/certify.hpp>
#include <quadring/dhstep.hpp>
#include <quadring/euclid.hpp>
#include <quadring/format.hpp>
#include <quadring/normsolve.hpp>
#include <quadring/zarith.hpp>

#include <random>
#include <utility>
#include <vector>

namespace {

using namespace quadring;

std::vector<std::pair<QuadInt, QuadInt>> random_pairs(long long m, long mag, int count) {
    FieldParams f = field_params(m);
    std::mt19937_64 rng(0xBE17C4 + static_cast<unsigned long long>(m));
    std::uniform_int_distribution<long> d(-mag, mag);
    std::vector<std::pair<QuadInt, QuadInt>> pairs;
    while (static_cast<int>(pairs.size()) < count) {
        QuadInt a = QuadInt::from_ab(d(rng), d(rng), f);
        QuadInt b = QuadInt::from_ab(d(rng), d(rng), f);
        if (f.half_integral() && d(rng) % 2) a += QuadInt::canon(1, 1, f);
        if (b.is_zero()) continue;
        pairs.emplace_back(std::move(a), std::move(b));
    }
    return pairs;
}

void BM_StepWorkedExample(benchmark::State& state) {
    FieldParams f = field_params(14);
    PrimeTable t = build_prime_table(f);
    QuadInt alpha = QuadInt::integer(137, f);
    QuadInt beta = QuadInt::from_ab(39, -1, f);
    for (auto _ : state) {
        StepResult st = dh_step(alpha, beta, t);
        benchmark::DoNotOptimize(st.rho);
    }
}
BENCHMARK(BM_StepWorkedExample);

void BM_GcdRational(benchmark::State& state) {
    FieldParams f = field_params(14);
    PrimeTable t = build_prime_table(f);
    auto pairs = random_pairs(14, 1000, 256);
    size_t i = 0;
    for (auto _ : state) {
        const auto& [a, b] = pairs[i++ % pairs.size()];
        BezoutResult g = dh_gcd(a, b, t);
        benchmark::DoNotOptimize(g.gcd);
    }
}
BENCHMARK(BM_GcdRational);

void BM_GcdHalfIntegral(benchmark::State& state) {
    FieldParams f = field_params(5);
    PrimeTable t = build_prime_table(f);
    auto pairs = random_pairs(5, 1000, 256);
    size_t i = 0;
    for (auto _ : state) {
        const auto& [a, b] = pairs[i++ % pairs.size()];
        BezoutResult g = dh_gcd(a, b, t);
        benchmark::DoNotOptimize(g.gcd);
    }
}
BENCHMARK(BM_GcdHalfIntegral);

void BM_GcdLargeCoords(benchmark::State& state) {
    FieldParams f = field_params(14);
    PrimeTable t = build_prime_table(f);
    auto pairs = random_pairs(14, 1'000'000'000L, 64);
    size_t i = 0;
    for (auto _ : state) {
        const auto& [a, b] = pairs[i++ % pairs.size()];
        BezoutResult g = dh_gcd(a, b, t);
        benchmark::DoNotOptimize(g.gcd);
    }
}
BENCHMARK(BM_GcdLargeCoords);

void BM_BuildPrimeTable(benchmark::State& state) {
    FieldParams f = field_params(state.range(0));
    for (auto _ : state) {
        PrimeTable t = build_prime_table(f);
        benchmark::DoNotOptimize(t.entries);
    }
}
BENCHMARK(BM_BuildPrimeTable)->Arg(14)->Arg(97)->Arg(-163);

void BM_PrimeElement(benchmark::State& state) {
    FieldParams f = field_params(14);
    PrimeTable t = build_prime_table(f);
    for (auto _ : state) {
        QuadInt pi = prime_element(f, 137, t);
        benchmark::DoNotOptimize(pi);
    }
}
BENCHMARK(BM_PrimeElement);

void BM_CertifyImaginaryWindow(benchmark::State& state) {
    for (auto _ : state) {
        auto certs = certify_range(-170, -1);
        benchmark::DoNotOptimize(certs);
    }
}
BENCHMARK(BM_CertifyImaginaryWindow);

void BM_FundamentalUnitLongPeriod(benchmark::State& state) {
    FieldParams f = field_params(94);
    for (auto _ : state) {
        FundUnit fu = fundamental_unit(f);
        benchmark::DoNotOptimize(fu.unit);
    }
}
BENCHMARK(BM_FundamentalUnitLongPeriod);

void BM_ParseRenderRoundtrip(benchmark::State& state) {
    FieldParams f = field_params(5);
    QuadInt x = QuadInt::canon(12345, 6789, f);
    for (auto _ : state) {
        QuadInt y = parse_quadint(render(x), f);
        benchmark::DoNotOptimize(y);
    }
}
BENCHMARK(BM_ParseRenderRoundtrip);

}  // namespace

BENCHMARK_MAIN();
