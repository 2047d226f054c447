#pragma once

// Glossing, segmentation and alignment metrics.
//
// Every ratio keeps its numerator and denominator so corpus-level numbers are
// micro-averages over summed counts rather than means of per-example ratios.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "igt/core.hpp"

namespace igt {

// Unit-cost Levenshtein distance over any random-access sequences whose
// elements compare with ==. O(|a|·|b|) time, O(min) memory.
template <typename A, typename B>
std::size_t edit_distance(const A& a, const B& b) {
  const std::size_t n = std::size(a), m = std::size(b);
  if (n < m) return edit_distance(b, a);
  std::vector<std::size_t> row(m + 1);
  for (std::size_t j = 0; j <= m; ++j) row[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t up = row[j];
      const std::size_t sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({up + 1, row[j - 1] + 1, sub});
      diag = up;
    }
  }
  return row[m];
}

struct Ratio {
  double num = 0.0;
  double den = 0.0;

  // Empty when nothing was counted.
  std::optional<double> value() const;
  Ratio& operator+=(const Ratio& o);
  bool operator==(const Ratio&) const = default;
};

enum class BleuUnit { morpheme, word, character };

inline constexpr int kBleuMaxOrder = 4;

// Sufficient statistics for corpus BLEU.
struct BleuStats {
  std::array<std::size_t, kBleuMaxOrder> matches{};
  std::array<std::size_t, kBleuMaxOrder> totals{};
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;
  std::size_t examples = 0;

  std::optional<double> value() const;
  BleuStats& operator+=(const BleuStats& o);
  bool operator==(const BleuStats&) const = default;
};

// Multiset morpheme overlap for segmentation F1.
struct SegF1Stats {
  std::size_t overlap = 0;
  std::size_t pred_total = 0;
  std::size_t gold_total = 0;
  std::size_t examples = 0;

  std::optional<double> precision() const;
  std::optional<double> recall() const;
  std::optional<double> f1() const;
  SegF1Stats& operator+=(const SegF1Stats& o);
  bool operator==(const SegF1Stats&) const = default;
};

struct MetricReport {
  Ratio mer;
  Ratio wer;
  Ratio cer;
  Ratio morpheme_accuracy;
  Ratio word_accuracy;
  BleuStats bleu_morpheme;
  BleuStats bleu_word;
  BleuStats bleu_char;
  SegF1Stats seg_f1;
  Ratio seg_cer;
  Ratio seg_word_accuracy;
  // Sum of per-example alignment scores over the number of scored examples.
  Ratio alignment;
  std::size_t examples = 0;

  MetricReport& operator+=(const MetricReport& o);
  bool operator==(const MetricReport&) const = default;
};

// Counting forms. Each throws InputError when the gold line is empty.
Ratio mer_counts(std::string_view gold_glosses, std::string_view pred_glosses);
Ratio wer_counts(std::string_view gold, std::string_view pred);
Ratio cer_counts(std::string_view gold, std::string_view pred);
Ratio morpheme_accuracy_counts(std::string_view gold_glosses, std::string_view pred_glosses);
Ratio word_accuracy_counts(std::string_view gold_glosses, std::string_view pred_glosses);
Ratio seg_word_accuracy_counts(std::string_view gold_seg, std::string_view pred_seg);

BleuStats bleu_stats(std::string_view gold, std::string_view pred, BleuUnit unit);
SegF1Stats seg_f1_stats(std::string_view gold_seg, std::string_view pred_seg);

// Ratio forms.
double mer(std::string_view gold_glosses, std::string_view pred_glosses);
double wer(std::string_view gold, std::string_view pred);
double cer(std::string_view gold, std::string_view pred);
double morpheme_accuracy(std::string_view gold_glosses, std::string_view pred_glosses);
double word_accuracy(std::string_view gold_glosses, std::string_view pred_glosses);
double bleu(std::string_view gold, std::string_view pred, BleuUnit unit);
double seg_f1(std::string_view gold_seg, std::string_view pred_seg);
double seg_word_accuracy(std::string_view gold_seg, std::string_view pred_seg);

// Drops punctuation-only words, maps every morpheme to 'x', keeps '-'/'='.
AbstractSequence abstract(std::string_view line);

// 1 - d(abstract(a), abstract(b)) / max length; 1.0 when both are empty.
// Symmetric and reference-free.
double alignment_score(std::string_view gloss_line, std::string_view seg_line);

// Gold and predicted lines for one example. Segmentation metrics are skipped
// when the gold has no segmentation; alignment is skipped when the prediction
// has none.
struct ScoringInput {
  std::string_view gold_glosses;
  std::string_view pred_glosses;
  std::optional<std::string_view> gold_segmentation;
  std::optional<std::string_view> pred_segmentation;
};

MetricReport score_example(const ScoringInput& in);

// Micro-average. Throws InputError on an empty list.
MetricReport aggregate(std::span<const MetricReport> reports);

// Aggregates reports[i] under keys[i]; sizes must match.
std::map<std::string, MetricReport> aggregate_by(std::span<const MetricReport> reports,
                                                 std::span<const std::string> keys);

}  // namespace igt
