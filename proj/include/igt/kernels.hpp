#pragma once

// Batch kernels over independent records. Each has an OpenMP implementation
// and a serial reference; results are identical and in input order.

#include <span>
#include <string>
#include <vector>

#include "igt/codecs.hpp"
#include "igt/corpus.hpp"
#include "igt/metrics.hpp"

namespace igt {

enum class Execution { serial, parallel };

std::vector<MetricReport> score_batch(std::span<const ScoringInput> inputs,
                                      Execution exec = Execution::parallel);

std::vector<double> reward_batch(std::span<const std::string> outputs, TaskFormat format,
                                 Execution exec = Execution::parallel);

// clean_record over a batch; the caller runs dedup in order afterwards.
std::vector<CleanedRecord> clean_batch(std::vector<IgtRecord> records,
                                       std::span<const ReplaceRule> rules = {},
                                       Execution exec = Execution::parallel);

int max_threads();

}  // namespace igt
