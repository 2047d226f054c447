#include "igt/metrics.hpp"

#include <cmath>
#include <unordered_map>

#include "igt/text.hpp"

namespace igt {
namespace {

// Cannot collide with a real gloss: parsed tokens never contain whitespace.
constexpr std::string_view kSep = " [SEP] ";

using Tokens = std::vector<std::string_view>;

void require_gold(const MorphStructure& gold) {
  if (gold.words.empty()) throw InputError("gold line is empty");
}

Tokens sep_sequence(const MorphStructure& ms) {
  Tokens out;
  out.reserve(ms.morpheme_count() + ms.words.size());
  for (std::size_t i = 0; i < ms.words.size(); ++i) {
    if (i) out.push_back(kSep);
    for (const auto& m : ms.words[i]) out.push_back(m.form);
  }
  return out;
}

Tokens flat_morphemes(const MorphStructure& ms) {
  Tokens out;
  out.reserve(ms.morpheme_count());
  for (const auto& w : ms.words)
    for (const auto& m : w) out.push_back(m.form);
  return out;
}

Ratio mer_of(const MorphStructure& gold, const MorphStructure& pred) {
  require_gold(gold);
  const Tokens g = sep_sequence(gold), p = sep_sequence(pred);
  return {static_cast<double>(edit_distance(g, p)), static_cast<double>(g.size())};
}

Ratio morpheme_accuracy_of(const MorphStructure& gold, const MorphStructure& pred) {
  require_gold(gold);
  Ratio r;
  for (std::size_t i = 0; i < gold.words.size(); ++i) {
    const Word& gw = gold.words[i];
    r.den += static_cast<double>(gw.size());
    if (i >= pred.words.size()) continue;
    const Word& pw = pred.words[i];
    for (std::size_t j = 0; j < gw.size() && j < pw.size(); ++j)
      if (gw[j].form == pw[j].form) r.num += 1.0;
  }
  return r;
}

Ratio positional_word_match(const std::vector<std::string_view>& gold,
                            const std::vector<std::string_view>& pred) {
  if (gold.empty()) throw InputError("gold line is empty");
  Ratio r{0.0, static_cast<double>(gold.size())};
  for (std::size_t i = 0; i < gold.size() && i < pred.size(); ++i)
    if (gold[i] == pred[i]) r.num += 1.0;
  return r;
}

Ratio wer_of(const std::vector<std::string_view>& gold, const std::vector<std::string_view>& pred) {
  if (gold.empty()) throw InputError("gold line is empty");
  return {static_cast<double>(edit_distance(gold, pred)), static_cast<double>(gold.size())};
}

Ratio cer_of(const std::u32string& gold, const std::u32string& pred) {
  if (gold.empty()) throw InputError("gold line is empty");
  return {static_cast<double>(edit_distance(gold, pred)), static_cast<double>(gold.size())};
}

std::u32string line_chars(std::string_view line) { return code_points(normalize_space(line)); }

template <typename Seq>
void add_ngram_counts(const Seq& ref, const Seq& hyp, BleuStats& st) {
  for (int n = 1; n <= kBleuMaxOrder; ++n) {
    const auto order = static_cast<std::size_t>(n);
    if (hyp.size() < order) continue;
    std::map<Seq, std::size_t> ref_counts;
    for (std::size_t i = 0; i + order <= ref.size(); ++i)
      ++ref_counts[Seq(ref.begin() + i, ref.begin() + i + order)];
    std::map<Seq, std::size_t> hyp_counts;
    for (std::size_t i = 0; i + order <= hyp.size(); ++i)
      ++hyp_counts[Seq(hyp.begin() + i, hyp.begin() + i + order)];
    std::size_t matched = 0;
    for (const auto& [gram, count] : hyp_counts) {
      auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) matched += std::min(count, it->second);
    }
    st.matches[n - 1] += matched;
    st.totals[n - 1] += hyp.size() - order + 1;
  }
}

template <typename Seq>
BleuStats bleu_of(const Seq& ref, const Seq& hyp) {
  BleuStats st;
  st.examples = 1;
  st.ref_len = ref.size();
  st.hyp_len = hyp.size();
  add_ngram_counts(ref, hyp, st);
  return st;
}

SegF1Stats seg_f1_of(const MorphStructure& gold, const MorphStructure& pred) {
  SegF1Stats st;
  st.examples = 1;
  std::unordered_map<std::string_view, std::size_t> gold_counts;
  for (const auto& w : gold.words)
    for (const auto& m : w) {
      ++gold_counts[m.form];
      ++st.gold_total;
    }
  for (const auto& w : pred.words)
    for (const auto& m : w) {
      ++st.pred_total;
      auto it = gold_counts.find(m.form);
      if (it != gold_counts.end() && it->second > 0) {
        --it->second;
        ++st.overlap;
      }
    }
  return st;
}

std::vector<std::string_view> word_views(const std::string& normalized) {
  return split_whitespace(normalized);
}

std::string abstract_of(const MorphStructure& ms) {
  std::string out;
  for (const auto& w : ms.words) {
    if (is_punctuation_token(detokenize(w))) continue;
    if (!out.empty()) out.push_back(' ');
    for (const auto& m : w) {
      if (m.before != Boundary::none) out.push_back(boundary_char(m.before));
      out.push_back('x');
    }
  }
  return out;
}

double alignment_of(const std::string& a, const std::string& b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(edit_distance(a, b)) / static_cast<double>(longest);
}

}  // namespace

std::optional<double> Ratio::value() const {
  if (den == 0.0) return std::nullopt;
  return num / den;
}

Ratio& Ratio::operator+=(const Ratio& o) {
  num += o.num;
  den += o.den;
  return *this;
}

std::optional<double> BleuStats::value() const {
  if (examples == 0) return std::nullopt;
  if (hyp_len == 0 || matches[0] == 0) return 0.0;
  double log_sum = 0.0;
  for (int n = 0; n < kBleuMaxOrder; ++n) {
    double p;
    if (n > 0 && matches[n] == 0)
      p = 1.0 / (static_cast<double>(totals[n]) + 1.0);
    else
      p = static_cast<double>(matches[n]) / static_cast<double>(totals[n]);
    log_sum += std::log(p);
  }
  const double bp = hyp_len > ref_len ? 1.0
                                      : std::exp(1.0 - static_cast<double>(ref_len) /
                                                           static_cast<double>(hyp_len));
  return bp * std::exp(log_sum / kBleuMaxOrder);
}

BleuStats& BleuStats::operator+=(const BleuStats& o) {
  for (int n = 0; n < kBleuMaxOrder; ++n) {
    matches[n] += o.matches[n];
    totals[n] += o.totals[n];
  }
  hyp_len += o.hyp_len;
  ref_len += o.ref_len;
  examples += o.examples;
  return *this;
}

std::optional<double> SegF1Stats::precision() const {
  if (examples == 0) return std::nullopt;
  if (pred_total == 0) return gold_total == 0 ? 1.0 : 0.0;
  return static_cast<double>(overlap) / static_cast<double>(pred_total);
}

std::optional<double> SegF1Stats::recall() const {
  if (examples == 0) return std::nullopt;
  if (gold_total == 0) return pred_total == 0 ? 1.0 : 0.0;
  return static_cast<double>(overlap) / static_cast<double>(gold_total);
}

std::optional<double> SegF1Stats::f1() const {
  if (examples == 0) return std::nullopt;
  if (pred_total == 0 && gold_total == 0) return 1.0;
  if (overlap == 0) return 0.0;
  const double p = *precision(), r = *recall();
  return 2.0 * p * r / (p + r);
}

SegF1Stats& SegF1Stats::operator+=(const SegF1Stats& o) {
  overlap += o.overlap;
  pred_total += o.pred_total;
  gold_total += o.gold_total;
  examples += o.examples;
  return *this;
}

MetricReport& MetricReport::operator+=(const MetricReport& o) {
  mer += o.mer;
  wer += o.wer;
  cer += o.cer;
  morpheme_accuracy += o.morpheme_accuracy;
  word_accuracy += o.word_accuracy;
  bleu_morpheme += o.bleu_morpheme;
  bleu_word += o.bleu_word;
  bleu_char += o.bleu_char;
  seg_f1 += o.seg_f1;
  seg_cer += o.seg_cer;
  seg_word_accuracy += o.seg_word_accuracy;
  alignment += o.alignment;
  examples += o.examples;
  return *this;
}

Ratio mer_counts(std::string_view gold, std::string_view pred) {
  return mer_of(parse_line(gold), parse_line(pred));
}

Ratio wer_counts(std::string_view gold, std::string_view pred) {
  const std::string g = nfc(gold), p = nfc(pred);
  return wer_of(split_whitespace(g), split_whitespace(p));
}

Ratio cer_counts(std::string_view gold, std::string_view pred) {
  return cer_of(line_chars(gold), line_chars(pred));
}

Ratio morpheme_accuracy_counts(std::string_view gold, std::string_view pred) {
  return morpheme_accuracy_of(parse_line(gold), parse_line(pred));
}

Ratio word_accuracy_counts(std::string_view gold, std::string_view pred) {
  const std::string g = nfc(gold), p = nfc(pred);
  return positional_word_match(split_whitespace(g), split_whitespace(p));
}

Ratio seg_word_accuracy_counts(std::string_view gold, std::string_view pred) {
  return word_accuracy_counts(gold, pred);
}

BleuStats bleu_stats(std::string_view gold, std::string_view pred, BleuUnit unit) {
  switch (unit) {
    case BleuUnit::morpheme: {
      const auto g = parse_line(gold), p = parse_line(pred);
      return bleu_of(flat_morphemes(g), flat_morphemes(p));
    }
    case BleuUnit::word: {
      const std::string g = nfc(gold), p = nfc(pred);
      return bleu_of(split_whitespace(g), split_whitespace(p));
    }
    case BleuUnit::character:
      return bleu_of(line_chars(gold), line_chars(pred));
  }
  return {};
}

SegF1Stats seg_f1_stats(std::string_view gold, std::string_view pred) {
  return seg_f1_of(parse_line(gold), parse_line(pred));
}

double mer(std::string_view g, std::string_view p) { return *mer_counts(g, p).value(); }
double wer(std::string_view g, std::string_view p) { return *wer_counts(g, p).value(); }
double cer(std::string_view g, std::string_view p) { return *cer_counts(g, p).value(); }
double morpheme_accuracy(std::string_view g, std::string_view p) {
  return *morpheme_accuracy_counts(g, p).value();
}
double word_accuracy(std::string_view g, std::string_view p) {
  return *word_accuracy_counts(g, p).value();
}
double bleu(std::string_view g, std::string_view p, BleuUnit unit) {
  return *bleu_stats(g, p, unit).value();
}
double seg_f1(std::string_view g, std::string_view p) { return *seg_f1_stats(g, p).f1(); }
double seg_word_accuracy(std::string_view g, std::string_view p) {
  return *seg_word_accuracy_counts(g, p).value();
}

AbstractSequence abstract(std::string_view line) {
  return AbstractSequence(abstract_of(parse_line(line)));
}

double alignment_score(std::string_view gloss_line, std::string_view seg_line) {
  return alignment_of(abstract(gloss_line).value(), abstract(seg_line).value());
}

MetricReport score_example(const ScoringInput& in) {
  MetricReport r;
  r.examples = 1;

  const MorphStructure gold_g = parse_line(in.gold_glosses);
  const MorphStructure pred_g = parse_line(in.pred_glosses);
  r.mer = mer_of(gold_g, pred_g);
  r.morpheme_accuracy = morpheme_accuracy_of(gold_g, pred_g);
  r.bleu_morpheme = bleu_of(flat_morphemes(gold_g), flat_morphemes(pred_g));

  const std::string gold_line = normalize_space(in.gold_glosses);
  const std::string pred_line = normalize_space(in.pred_glosses);
  const auto gold_words = word_views(gold_line), pred_words = word_views(pred_line);
  r.wer = wer_of(gold_words, pred_words);
  r.word_accuracy = positional_word_match(gold_words, pred_words);
  r.bleu_word = bleu_of(gold_words, pred_words);

  const std::u32string gold_chars = code_points(gold_line), pred_chars = code_points(pred_line);
  r.cer = cer_of(gold_chars, pred_chars);
  r.bleu_char = bleu_of(gold_chars, pred_chars);

  std::optional<MorphStructure> pred_s;
  if (in.pred_segmentation) pred_s = parse_line(*in.pred_segmentation);

  if (in.gold_segmentation) {
    const MorphStructure gold_s = parse_line(*in.gold_segmentation);
    if (!gold_s.words.empty()) {
      const MorphStructure pred_or_empty = pred_s ? *pred_s : MorphStructure{};
      r.seg_f1 = seg_f1_of(gold_s, pred_or_empty);
      const std::string gs = detokenize(gold_s), ps = detokenize(pred_or_empty);
      r.seg_cer = cer_of(code_points(gs), code_points(ps));
      r.seg_word_accuracy = positional_word_match(word_views(gs), word_views(ps));
    }
  }

  if (pred_s) r.alignment = {alignment_of(abstract_of(pred_g), abstract_of(*pred_s)), 1.0};
  return r;
}

MetricReport aggregate(std::span<const MetricReport> reports) {
  if (reports.empty()) throw InputError("cannot aggregate an empty list of reports");
  MetricReport total;
  for (const auto& r : reports) total += r;
  return total;
}

std::map<std::string, MetricReport> aggregate_by(std::span<const MetricReport> reports,
                                                 std::span<const std::string> keys) {
  if (reports.size() != keys.size())
    throw InputError("aggregate_by: reports and keys differ in length");
  std::map<std::string, MetricReport> out;
  for (std::size_t i = 0; i < reports.size(); ++i) out[keys[i]] += reports[i];
  return out;
}

}  // namespace igt
