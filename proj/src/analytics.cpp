#include "igt/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <set>
#include <sstream>
#include <string>

#include "igt/metrics.hpp"
#include "igt/text.hpp"

namespace igt {

double RegressionFit::predict(double perplexity) const {
  const double x = log_x ? std::log(perplexity) : perplexity;
  return slope * x + intercept;
}

RegressionFit fit(std::span<const RegressionPoint> points, bool log_x) {
  std::vector<double> xs, ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (const auto& p : points) {
    if (!(p.perplexity > 0.0)) throw InputError("perplexity must be positive");
    if (!(p.mer >= 0.0)) throw InputError("error rate must be non-negative");
    xs.push_back(log_x ? std::log(p.perplexity) : p.perplexity);
    ys.push_back(p.mer);
  }
  if (std::set<double>(xs.begin(), xs.end()).size() < 2)
    throw InputError("regression needs at least two distinct perplexity values");

  const double n = static_cast<double>(xs.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= n;
  mean_y /= n;

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mean_x, dy = ys[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }

  RegressionFit f;
  f.n = xs.size();
  f.log_x = log_x;
  f.slope = sxy / sxx;
  f.intercept = mean_y - f.slope * mean_x;
  if (syy == 0.0 || std::all_of(ys.begin(), ys.end(), [&](double y) { return y == ys[0]; })) {
    f.degenerate = true;
    f.r2 = 1.0;
    f.slope = 0.0;
    f.intercept = ys[0];
    return f;
  }
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (f.slope * xs[i] + f.intercept);
    ss_res += r * r;
  }
  f.r2 = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  return f;
}

std::string_view to_string(GateDecision g) {
  return g == GateDecision::predict ? "predict" : "fallback";
}

GateDecision gate(const RegressionFit& fitted, double perplexity, double threshold) {
  return fitted.predict(perplexity) < threshold ? GateDecision::predict : GateDecision::fallback;
}

std::vector<RegressionPoint> read_regression_csv(std::istream& in) {
  std::vector<RegressionPoint> out;
  std::string line;
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw InputError("csv line " + std::to_string(line_no) + ": expected two columns");
    try {
      std::size_t used = 0;
      const std::string a = trim(std::string_view(line).substr(0, comma));
      const std::string b = trim(std::string_view(line).substr(comma + 1));
      RegressionPoint p;
      p.perplexity = std::stod(a, &used);
      if (used != a.size()) throw std::invalid_argument(a);
      p.mer = std::stod(b, &used);
      if (used != b.size()) throw std::invalid_argument(b);
      out.push_back(p);
    } catch (const std::logic_error&) {
      throw InputError("csv line " + std::to_string(line_no) + ": not a number");
    }
  }
  return out;
}

double reward(std::string_view model_output, TaskFormat format) {
  DecodedPrediction d;
  switch (format) {
    case TaskFormat::concatenated:
      d = decode_concatenated(model_output);
      break;
    case TaskFormat::interleaved:
      d = decode_interleaved(model_output);
      break;
    default:
      throw InputError("reward supports only concat and interleaved formats");
  }
  if (!d.well_formed || !d.segmentation || d.segmentation->empty() || d.glosses.empty())
    return 0.0;
  return alignment_score(d.glosses, *d.segmentation);
}

}  // namespace igt
