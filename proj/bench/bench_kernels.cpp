// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "tuhf/kernels.hpp"

namespace {

using namespace tuhf;
namespace serial = kernels::serial;
namespace parallel = kernels::parallel;

constexpr std::size_t kBlocks = 64;

// Alternating pattern on kBlocks * mult points with a near-square (s, t) split.
std::vector<Index> pattern(std::size_t mult) {
  std::size_t s = 1;
  while (s * s < mult) s *= 2;
  return serial::alternating_assignment(kBlocks, s, mult / s);
}

template <class F>
void run(benchmark::State& state, F f) {
  for (auto _ : state) benchmark::DoNotOptimize(f());
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<std::int64_t>(kBlocks));
}

void BM_AlternatingSerial(benchmark::State& st) {
  const auto m = static_cast<std::size_t>(st.range(0));
  run(st, [&] { return serial::alternating_assignment(kBlocks, m, 1); });
}
void BM_AlternatingParallel(benchmark::State& st) {
  const auto m = static_cast<std::size_t>(st.range(0));
  run(st, [&] { return parallel::alternating_assignment(kBlocks, m, 1); });
}

void BM_ComposeSerial(benchmark::State& st) {
  const auto outer = pattern(static_cast<std::size_t>(st.range(0)));
  const auto inner = serial::alternating_assignment(8, 2, kBlocks / 16);
  run(st, [&] { return serial::compose_assignment(outer, inner); });
}
void BM_ComposeParallel(benchmark::State& st) {
  const auto outer = pattern(static_cast<std::size_t>(st.range(0)));
  const auto inner = serial::alternating_assignment(8, 2, kBlocks / 16);
  run(st, [&] { return parallel::compose_assignment(outer, inner); });
}

void BM_TensorSerial(benchmark::State& st) {
  const auto phi = pattern(static_cast<std::size_t>(st.range(0)));
  const auto psi = serial::alternating_assignment(4, 2, 2);
  run(st, [&] { return serial::tensor_assignment(phi, psi, 4); });
}
void BM_TensorParallel(benchmark::State& st) {
  const auto phi = pattern(static_cast<std::size_t>(st.range(0)));
  const auto psi = serial::alternating_assignment(4, 2, 2);
  run(st, [&] { return parallel::tensor_assignment(phi, psi, 4); });
}

// Elements of each block, block-major, for the rank-pairing kernel.
std::vector<Index> elements_of(const std::vector<Index>& assign, std::size_t blocks) {
  std::vector<std::vector<Index>> by_block(blocks);
  for (std::size_t x = 0; x < assign.size(); ++x) by_block[assign[x] - 1].push_back(static_cast<Index>(x + 1));
  std::vector<Index> out;
  for (const auto& b : by_block) out.insert(out.end(), b.begin(), b.end());
  return out;
}

template <bool Parallel>
void BM_RankPairing(benchmark::State& st) {
  const auto mult = static_cast<std::size_t>(st.range(0));
  const auto elements = elements_of(pattern(mult), kBlocks);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<std::complex<double>> source(kBlocks * kBlocks);
  for (std::size_t r = 0; r < kBlocks; ++r)
    for (std::size_t c = r; c < kBlocks; ++c) source[r * kBlocks + c] = {g(rng), g(rng)};
  const std::size_t k_to = kBlocks * mult;
  std::vector<std::complex<double>> target(k_to * k_to);
  for (auto _ : st) {
    if constexpr (Parallel) {
      parallel::apply_rank_pairing(source, kBlocks, elements, mult, target, k_to);
    } else {
      serial::apply_rank_pairing(source, kBlocks, elements, mult, target, k_to);
    }
    benchmark::DoNotOptimize(target.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(k_to * k_to));
}

}  // namespace

BENCHMARK(BM_AlternatingSerial)->RangeMultiplier(16)->Range(16, 1 << 16);
BENCHMARK(BM_AlternatingParallel)->RangeMultiplier(16)->Range(16, 1 << 16);
BENCHMARK(BM_ComposeSerial)->RangeMultiplier(16)->Range(16, 1 << 16);
BENCHMARK(BM_ComposeParallel)->RangeMultiplier(16)->Range(16, 1 << 16);
BENCHMARK(BM_TensorSerial)->RangeMultiplier(16)->Range(16, 1 << 12);
BENCHMARK(BM_TensorParallel)->RangeMultiplier(16)->Range(16, 1 << 12);
BENCHMARK(BM_RankPairing<false>)->RangeMultiplier(4)->Range(4, 32);
BENCHMARK(BM_RankPairing<true>)->RangeMultiplier(4)->Range(4, 32);

BENCHMARK_MAIN();
