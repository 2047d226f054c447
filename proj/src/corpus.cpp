#include "igt/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <unicode/utf8.h>

#include "igt/json_io.hpp"
#include "igt/text.hpp"

namespace igt {
namespace {

bool has_markers(std::string_view s) {
  return s.find('-') != std::string_view::npos || s.find('=') != std::string_view::npos;
}

std::vector<const Word*> content_words(const MorphStructure& ms) {
  std::vector<const Word*> out;
  for (const auto& w : ms.words)
    if (!is_punctuation_token(detokenize(w))) out.push_back(&w);
  return out;
}

// Byte offset where the trailing run of detachable punctuation starts.
std::size_t trailing_punct_start(std::string_view tok) {
  const auto* p = reinterpret_cast<const uint8_t*>(tok.data());
  int32_t i = static_cast<int32_t>(tok.size());
  while (i > 0) {
    int32_t j = i;
    UChar32 c;
    U8_PREV(p, 0, j, c);
    if (c < 0 || c == '-' || c == '=' || !is_unicode_punctuation(static_cast<char32_t>(c))) break;
    i = j;
  }
  return static_cast<std::size_t>(i);
}

void replace_all(std::string& s, const std::string& find, const std::string& repl) {
  if (find.empty()) return;
  std::size_t pos = 0;
  while ((pos = s.find(find, pos)) != std::string::npos) {
    s.replace(pos, find.size(), repl);
    pos += repl.size();
  }
}

}  // namespace

CorpusReader::CorpusReader(std::istream& in, std::string source_name)
    : in_(in), name_(std::move(source_name)) {}

std::optional<IgtRecord> CorpusReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    if (trim(line).empty()) continue;
    const std::string where = name_ + ":" + std::to_string(line_no_);
    try {
      return record_from_json(parse_json_line(line, where));
    } catch (const InputError& e) {
      const std::string msg = e.what();
      if (msg.rfind(where, 0) == 0) throw;
      throw InputError(where + ": " + msg);
    }
  }
  return std::nullopt;
}

std::vector<IgtRecord> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  CorpusReader reader(in, path.string());
  std::vector<IgtRecord> out;
  while (auto rec = reader.next()) out.push_back(std::move(*rec));
  return out;
}

void write_corpus(std::ostream& out, std::span<const IgtRecord> records) {
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

std::string normalize_line_punctuation(std::string_view line) {
  std::string s = normalize_space(line);
  const std::size_t last_space = s.rfind(' ');
  const std::size_t tok_begin = last_space == std::string::npos ? 0 : last_space + 1;
  const std::string_view tok = std::string_view(s).substr(tok_begin);
  const std::size_t cut = trailing_punct_start(tok);
  if (cut == 0 || cut == tok.size()) return s;
  s.insert(tok_begin + cut, " ");
  return s;
}

IgtRecord normalize_punctuation(IgtRecord rec) {
  rec.transcription = normalize_line_punctuation(rec.transcription);
  rec.glosses = normalize_line_punctuation(rec.glosses);
  if (rec.segmentation) rec.segmentation = normalize_line_punctuation(*rec.segmentation);
  return rec;
}

std::string_view to_string(Alignment a) {
  switch (a) {
    case Alignment::aligned: return "aligned";
    case Alignment::word_count_mismatch: return "word_count_mismatch";
    case Alignment::segment_count_mismatch: return "segment_count_mismatch";
    case Alignment::no_segmentation: return "no_segmentation";
  }
  return "aligned";
}

Alignment detect_misalignment(const IgtRecord& rec) {
  if (!rec.segmentation || trim(*rec.segmentation).empty()) return Alignment::no_segmentation;
  const MorphStructure seg = parse_line(*rec.segmentation);
  const MorphStructure gloss = parse_line(rec.glosses);
  const auto sw = content_words(seg), gw = content_words(gloss);
  if (sw.size() != gw.size()) return Alignment::word_count_mismatch;
  for (std::size_t i = 0; i < sw.size(); ++i) {
    const Word& s = *sw[i];
    const Word& g = *gw[i];
    if (s.size() != g.size()) return Alignment::segment_count_mismatch;
    for (std::size_t j = 0; j < s.size(); ++j)
      if (s[j].before != g[j].before) return Alignment::segment_count_mismatch;
  }
  return Alignment::aligned;
}

std::string_view to_string(RepairAction a) {
  switch (a) {
    case RepairAction::kept: return "kept";
    case RepairAction::blanked_segmentation: return "blanked_segmentation";
    case RepairAction::forced_to_train: return "forced_to_train";
  }
  return "kept";
}

std::pair<IgtRecord, RepairAction> repair(IgtRecord rec) {
  if (!is_misaligned(detect_misalignment(rec))) return {std::move(rec), RepairAction::kept};
  if (!has_markers(*rec.segmentation) && has_markers(rec.glosses)) {
    rec.segmentation.reset();
    return {std::move(rec), RepairAction::blanked_segmentation};
  }
  if (rec.split != Split::train) {
    rec.split = Split::train;
    return {std::move(rec), RepairAction::forced_to_train};
  }
  return {std::move(rec), RepairAction::kept};
}

bool is_low_quality(const IgtRecord& rec) {
  const std::string g = nfc(rec.glosses);
  const auto words = split_whitespace(g);
  for (auto w : words)
    if (!is_punctuation_token(w)) return false;
  return true;
}

std::string dedup_key(const IgtRecord& rec) {
  std::string key = normalize_space(rec.transcription);
  key.push_back('\x1f');
  key += normalize_space(rec.glosses);
  key.push_back('\x1f');
  if (rec.glottocode) key += *rec.glottocode;
  return key;
}

bool Deduplicator::admit(const IgtRecord& rec) {
  if (seen_.insert(dedup_key(rec)).second) return true;
  ++removed_;
  return false;
}

std::vector<IgtRecord> dedup(std::vector<IgtRecord> records) {
  Deduplicator d;
  std::vector<IgtRecord> out;
  out.reserve(records.size());
  for (auto& r : records)
    if (d.admit(r)) out.push_back(std::move(r));
  return out;
}

IgtRecord apply_rules(IgtRecord rec, std::span<const ReplaceRule> rules) {
  for (const auto& rule : rules) {
    switch (rule.field) {
      case ReplaceRule::Field::transcription:
        replace_all(rec.transcription, rule.find, rule.replace);
        break;
      case ReplaceRule::Field::segmentation:
        if (rec.segmentation) replace_all(*rec.segmentation, rule.find, rule.replace);
        break;
      case ReplaceRule::Field::glosses:
        replace_all(rec.glosses, rule.find, rule.replace);
        break;
    }
  }
  return rec;
}

CleanedRecord clean_record(IgtRecord rec, std::span<const ReplaceRule> rules) {
  rec = normalize_punctuation(apply_rules(std::move(rec), rules));
  if (is_low_quality(rec)) return {};
  auto [fixed, action] = repair(std::move(rec));
  return {std::move(fixed), action};
}

std::vector<IgtRecord> run_pipeline(std::vector<IgtRecord> records,
                                    std::span<const ReplaceRule> rules, PipelineStats* stats) {
  PipelineStats st;
  st.input = records.size();
  Deduplicator d;
  std::vector<IgtRecord> out;
  out.reserve(records.size());
  for (auto& r : records) {
    auto cleaned = clean_record(std::move(r), rules);
    if (!cleaned.record) {
      ++st.low_quality_dropped;
      continue;
    }
    if (cleaned.action == RepairAction::blanked_segmentation) ++st.blanked_segmentation;
    if (cleaned.action == RepairAction::forced_to_train) ++st.forced_to_train;
    if (d.admit(*cleaned.record)) out.push_back(std::move(*cleaned.record));
  }
  st.duplicates_removed = d.removed();
  st.output = out.size();
  if (stats) *stats = st;
  return out;
}

void Auditor::add(const IgtRecord& rec) {
  ++report_.total_examples;
  ++report_.per_split_counts[rec.split];
  if (rec.glottocode) {
    languages_.insert(*rec.glottocode);
  } else {
    ++report_.no_glottocode;
  }
  if (!rec.metalang_glottocode) ++report_.no_metalang_glottocode;
  if (!rec.translation) ++report_.no_translation;
  const Alignment a = detect_misalignment(rec);
  if (a == Alignment::no_segmentation) ++report_.no_segmentation;
  if (is_misaligned(a)) {
    ++report_.misaligned;
    if (rec.split != Split::train) ++report_.misaligned_eval_test;
    if (repair(rec).second == RepairAction::blanked_segmentation)
      ++report_.repaired_blanked_segmentation;
  }
  dedup_.admit(rec);
}

AuditReport Auditor::report() const {
  AuditReport r = report_;
  r.unique_languages = languages_.size();
  r.duplicates_removed = dedup_.removed();
  return r;
}

AuditReport audit(std::span<const IgtRecord> records) {
  Auditor a;
  for (const auto& r : records) a.add(r);
  return a.report();
}

SplitTable split_table(std::span<const IgtRecord> records) {
  SplitTable t;
  for (const auto& r : records) {
    const std::string lang = r.glottocode ? *r.glottocode : std::string(kUndeterminedLanguage);
    ++t[lang][static_cast<std::size_t>(r.split)];
  }
  return t;
}

}  // namespace igt
