// Serial reference vs OpenMP kernels on synthetic IGT lines.
#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "igt/kernels.hpp"

namespace {

std::string random_line(std::mt19937& rng, bool gloss) {
  static const std::vector<std::string> stems{"ka", "lu", "wōlē", "žeda", "kid", "nu", "bu", "tsi"};
  static const std::vector<std::string> tags{"PL", "SG", "ERG", "1SG", "PFV", "DET", "ART", "3SG"};
  const auto& pool = gloss ? tags : stems;
  std::uniform_int_distribution<std::size_t> words(2, 10), morphs(1, 3), pick(0, pool.size() - 1);
  std::string s;
  for (std::size_t w = 0, nw = words(rng); w < nw; ++w) {
    if (w) s += ' ';
    for (std::size_t m = 0, nm = morphs(rng); m < nm; ++m) {
      if (m) s += m % 2 ? '-' : '=';
      s += pool[pick(rng)];
    }
  }
  return s;
}

struct Data {
  std::vector<std::string> gold_g, pred_g, gold_s, pred_s, outputs;
  std::vector<igt::ScoringInput> inputs;

  explicit Data(std::size_t n) {
    std::mt19937 rng(1);
    for (std::size_t i = 0; i < n; ++i) {
      gold_g.push_back(random_line(rng, true));
      pred_g.push_back(random_line(rng, true));
      gold_s.push_back(random_line(rng, false));
      pred_s.push_back(random_line(rng, false));
      outputs.push_back("Segmentation: " + pred_s.back() + "\nGlosses: " + pred_g.back());
    }
    for (std::size_t i = 0; i < n; ++i) inputs.push_back({gold_g[i], pred_g[i], gold_s[i], pred_s[i]});
  }
};

const Data& data() {
  static const Data d(8192);
  return d;
}

void BM_ScoreBatch(benchmark::State& state) {
  const auto exec = static_cast<igt::Execution>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(igt::score_batch(data().inputs, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(data().inputs.size()));
  state.SetLabel(exec == igt::Execution::serial ? "serial" : "openmp");
}

void BM_RewardBatch(benchmark::State& state) {
  const auto exec = static_cast<igt::Execution>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(igt::reward_batch(data().outputs, igt::TaskFormat::concatenated, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(data().outputs.size()));
  state.SetLabel(exec == igt::Execution::serial ? "serial" : "openmp");
}

}  // namespace

BENCHMARK(BM_ScoreBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RewardBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
