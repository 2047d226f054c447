#include "igt/kernels.hpp"

#include <exception>
#include <mutex>

#include <omp.h>

#include "igt/analytics.hpp"

namespace igt {
namespace {

// Runs body(i) for i in [0, n). The first exception thrown by any iteration
// is rethrown after the loop.
template <typename Body>
void for_each_index(std::size_t n, Execution exec, Body&& body) {
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<MetricReport> score_batch(std::span<const ScoringInput> inputs, Execution exec) {
  std::vector<MetricReport> out(inputs.size());
  for_each_index(inputs.size(), exec, [&](std::size_t i) { out[i] = score_example(inputs[i]); });
  return out;
}

std::vector<double> reward_batch(std::span<const std::string> outputs, TaskFormat format,
                                 Execution exec) {
  std::vector<double> out(outputs.size());
  for_each_index(outputs.size(), exec, [&](std::size_t i) { out[i] = reward(outputs[i], format); });
  return out;
}

std::vector<CleanedRecord> clean_batch(std::vector<IgtRecord> records,
                                       std::span<const ReplaceRule> rules, Execution exec) {
  std::vector<CleanedRecord> out(records.size());
  for_each_index(records.size(), exec,
                 [&](std::size_t i) { out[i] = clean_record(std::move(records[i]), rules); });
  return out;
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace igt
