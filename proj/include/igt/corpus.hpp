#pragma once

// Corpus ingestion, cleanup and auditing.

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "igt/core.hpp"

namespace igt {

// Streams canonical JSONL records (one object per line, blank lines skipped).
// Malformed lines raise InputError naming the source and line number.
class CorpusReader {
 public:
  CorpusReader(std::istream& in, std::string source_name);

  std::optional<IgtRecord> next();
  std::size_t line_number() const { return line_no_; }

 private:
  std::istream& in_;
  std::string name_;
  std::size_t line_no_ = 0;
};

std::vector<IgtRecord> load_corpus(const std::filesystem::path& path);
void write_corpus(std::ostream& out, std::span<const IgtRecord> records);

// Detaches the trailing punctuation run of the last token on each line into a
// standalone token. Also NFC-normalizes and collapses whitespace. Idempotent.
IgtRecord normalize_punctuation(IgtRecord rec);
std::string normalize_line_punctuation(std::string_view line);

enum class Alignment { aligned, word_count_mismatch, segment_count_mismatch, no_segmentation };
std::string_view to_string(Alignment a);

// Compares segmentation and gloss lines, ignoring punctuation-only words.
// A boundary kind mismatch inside a word counts as a segment mismatch.
Alignment detect_misalignment(const IgtRecord& rec);
inline bool is_misaligned(Alignment a) {
  return a == Alignment::word_count_mismatch || a == Alignment::segment_count_mismatch;
}

enum class RepairAction { kept, blanked_segmentation, forced_to_train };
std::string_view to_string(RepairAction a);

std::pair<IgtRecord, RepairAction> repair(IgtRecord rec);

// Gloss line empty or made only of punctuation tokens.
bool is_low_quality(const IgtRecord& rec);

// Transcription and glosses are NFC- and whitespace-normalized; a missing
// glottocode keys as "".
std::string dedup_key(const IgtRecord& rec);

// Streaming first-occurrence filter over dedup_key.
class Deduplicator {
 public:
  // True when the record is the first with its key.
  bool admit(const IgtRecord& rec);
  std::size_t removed() const { return removed_; }

 private:
  std::unordered_set<std::string> seen_;
  std::size_t removed_ = 0;
};

std::vector<IgtRecord> dedup(std::vector<IgtRecord> records);

// Plain substring replacement on one line of every record; used for
// source-specific fixes.
struct ReplaceRule {
  enum class Field { transcription, segmentation, glosses };
  Field field = Field::glosses;
  std::string find;
  std::string replace;
};

IgtRecord apply_rules(IgtRecord rec, std::span<const ReplaceRule> rules);

struct PipelineStats {
  std::size_t input = 0;
  std::size_t low_quality_dropped = 0;
  std::size_t blanked_segmentation = 0;
  std::size_t forced_to_train = 0;
  std::size_t duplicates_removed = 0;
  std::size_t output = 0;
};

// Per-record stage of the cleanup pipeline: rules, punctuation, quality
// filter, repair. Returns nullopt for dropped records.
struct CleanedRecord {
  std::optional<IgtRecord> record;
  RepairAction action = RepairAction::kept;
};
CleanedRecord clean_record(IgtRecord rec, std::span<const ReplaceRule> rules = {});

// clean_record on every record followed by dedup. Output order follows input.
std::vector<IgtRecord> run_pipeline(std::vector<IgtRecord> records,
                                    std::span<const ReplaceRule> rules = {},
                                    PipelineStats* stats = nullptr);

struct AuditReport {
  std::size_t total_examples = 0;
  std::size_t unique_languages = 0;
  std::map<Split, std::size_t> per_split_counts{
      {Split::train, 0}, {Split::eval, 0}, {Split::test, 0}};
  std::size_t no_glottocode = 0;
  std::size_t no_metalang_glottocode = 0;
  std::size_t no_segmentation = 0;
  std::size_t no_translation = 0;
  std::size_t misaligned = 0;
  std::size_t misaligned_eval_test = 0;
  // Records repair() would blank / dedup() would drop.
  std::size_t repaired_blanked_segmentation = 0;
  std::size_t duplicates_removed = 0;

  bool operator==(const AuditReport&) const = default;
};

// Streaming form of audit().
class Auditor {
 public:
  void add(const IgtRecord& rec);
  AuditReport report() const;

 private:
  AuditReport report_;
  std::unordered_set<std::string> languages_;
  Deduplicator dedup_;
};

AuditReport audit(std::span<const IgtRecord> records);

// Train/eval/test counts per glottocode ("und" when absent).
using SplitTable = std::map<std::string, std::array<std::size_t, 3>>;
SplitTable split_table(std::span<const IgtRecord> records);

inline constexpr std::string_view kUndeterminedLanguage = "und";

}  // namespace igt
