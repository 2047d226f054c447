#pragma once

// Perplexity -> error-rate regression, threshold gating, and the alignment
// reward for generated outputs.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "igt/codecs.hpp"

namespace igt {

struct RegressionPoint {
  double perplexity = 0.0;
  double mer = 0.0;
};

struct RegressionFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t n = 0;
  bool log_x = false;      // fitted against ln(perplexity)
  bool degenerate = false; // all errors equal; r2 reported as 1

  // slope * x + intercept, with x = ln(perplexity) when log_x.
  double predict(double perplexity) const;
};

// Ordinary least squares of mer on perplexity (or its log). Throws InputError
// for non-positive perplexity, negative mer, or fewer than two distinct x.
RegressionFit fit(std::span<const RegressionPoint> points, bool log_x = false);

enum class GateDecision { predict, fallback };
std::string_view to_string(GateDecision g);

// Predict iff expected error is strictly below the threshold.
GateDecision gate(const RegressionFit& fitted, double perplexity, double threshold);

// Two-column CSV with a header row.
std::vector<RegressionPoint> read_regression_csv(std::istream& in);

// Alignment score of the decoded output; 0 when the output does not decode to
// a well-formed pair of lines. Only concatenated and interleaved formats are
// accepted (InputError otherwise).
double reward(std::string_view model_output, TaskFormat format);

}  // namespace igt
