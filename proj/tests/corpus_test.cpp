#include "igt/corpus.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "igt/json_io.hpp"
#include "igt/metrics.hpp"

namespace igt {
namespace {

IgtRecord rec(std::string id, std::string transcription, std::optional<std::string> seg,
              std::string glosses, Split split = Split::train,
              std::optional<std::string> glottocode = "dido1241") {
  IgtRecord r;
  r.id = std::move(id);
  r.transcription = std::move(transcription);
  r.segmentation = std::move(seg);
  r.glosses = std::move(glosses);
  r.translation = "tr";
  r.glottocode = std::move(glottocode);
  r.metalang_glottocode = "stan1293";
  r.source = "test";
  r.split = split;
  return r;
}

class TempFile {
 public:
  explicit TempFile(const std::string& content) {
    path_ = std::filesystem::temp_directory_path() /
            ("igt_corpus_test_" + std::to_string(counter_++) + ".jsonl");
    std::ofstream(path_, std::ios::binary) << content;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  static inline int counter_ = 0;
};

const char* kLine =
    R"({"id":"%s","transcription":"a b","segmentation":null,"glosses":"X Y","translation":null,)"
    R"("glottocode":null,"metalang_glottocode":null,"language_name":null,"source":"s","split":"train"})";

std::string line(const std::string& id) {
  std::string s = kLine;
  s.replace(s.find("%s"), 2, id);
  return s;
}

TEST(LoadCorpus, ReadsRecordsInOrder) {
  TempFile f(line("1") + "\n" + line("2") + "\n\n" + line("3") + "\n");
  const auto rs = load_corpus(f.path());
  ASSERT_EQ(rs.size(), 3u);
  EXPECT_EQ(rs[0].id, "1");
  EXPECT_EQ(rs[2].id, "3");
  EXPECT_FALSE(rs[0].segmentation.has_value());
}

TEST(LoadCorpus, MissingGlossesNamesTheLine) {
  TempFile f(line("1") + "\n" + R"({"id":"2","transcription":"a","split":"train"})" + "\n");
  try {
    load_corpus(f.path());
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find(":2"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("glosses"), std::string::npos) << e.what();
  }
}

TEST(LoadCorpus, UnknownSplitIsAnError) {
  std::string bad = line("1");
  bad.replace(bad.find("\"train\""), 7, "\"dev\"");
  TempFile f(bad + "\n");
  EXPECT_THROW(load_corpus(f.path()), InputError);
}

TEST(LoadCorpus, MalformedJsonAndInvalidUtf8) {
  TempFile f(line("1") + "\n{not json\n");
  EXPECT_THROW(load_corpus(f.path()), InputError);
  std::string bad = line("1");
  bad.replace(bad.find("a b"), 3, "a \xFF");
  TempFile g(bad + "\n");
  EXPECT_THROW(load_corpus(g.path()), InputError);
}

TEST(LoadCorpus, DuplicateIdsLoad) {
  TempFile f(line("1") + "\n" + line("1") + "\n");
  EXPECT_EQ(load_corpus(f.path()).size(), 2u);
}

TEST(LoadCorpus, WriteReadRoundTrip) {
  const std::vector<IgtRecord> rs{rec("a", "x y .", "x-a y", "X-A Y"),
                                  rec("b", "z", std::nullopt, "Z", Split::test, std::nullopt)};
  std::ostringstream os;
  write_corpus(os, rs);
  TempFile f(os.str());
  EXPECT_EQ(load_corpus(f.path()), rs);
}

TEST(NormalizePunctuation, DetachesSentenceFinalPunctuation) {
  EXPECT_EQ(normalize_line_punctuation("Žeda kidbeqor kurno lel yayrno."),
            "Žeda kidbeqor kurno lel yayrno .");
  EXPECT_EQ(normalize_line_punctuation("already clean ."), "already clean .");
  EXPECT_EQ(normalize_line_punctuation("DEM1.IIPL.OBL-ERG girl-POSS.LAT"),
            "DEM1.IIPL.OBL-ERG girl-POSS.LAT");
  EXPECT_EQ(normalize_line_punctuation("what?!"), "what ?!");
  EXPECT_EQ(normalize_line_punctuation("kid-"), "kid-");
  EXPECT_EQ(normalize_line_punctuation("a  b\t c."), "a b c .");
}

TEST(NormalizePunctuation, Idempotent) {
  const IgtRecord r = rec("1", "Žeda kidbeqor.", "žeda-a kid-qor.", "DEM1.IIPL.OBL-ERG girl-POSS.LAT.");
  const IgtRecord once = normalize_punctuation(r);
  EXPECT_EQ(once.transcription, "Žeda kidbeqor .");
  EXPECT_EQ(once.glosses, "DEM1.IIPL.OBL-ERG girl-POSS.LAT .");
  EXPECT_EQ(normalize_punctuation(once), once);
}

TEST(DetectMisalignment, Examples) {
  EXPECT_EQ(detect_misalignment(rec("n", "", "vũnɔ gagãlĩ gɛ e-nu bu-dzyuɖí yɛ",
                                    "beverage well-well REL 3SG-be CM-strength 3SG")),
            Alignment::segment_count_mismatch);
  EXPECT_EQ(detect_misalignment(rec("d", "", "žeda-a kid-qor", "DEM1.IIPL.OBL-ERG girl-POSS.LAT")),
            Alignment::aligned);
  EXPECT_EQ(detect_misalignment(rec("x", "", std::nullopt, "X")), Alignment::no_segmentation);
  EXPECT_EQ(detect_misalignment(rec("w", "", "a b", "X")), Alignment::word_count_mismatch);
  EXPECT_EQ(detect_misalignment(rec("p", "", "a b .", "X Y")), Alignment::aligned);
  EXPECT_EQ(detect_misalignment(rec("c", "", "a-b", "X=Y")), Alignment::segment_count_mismatch);
}

TEST(DetectMisalignment, AlignedImpliesPerfectAlignmentScore) {
  for (const auto& r : {rec("1", "", "žeda-a kid-qor .", "DEM1.IIPL.OBL-ERG girl-POSS.LAT"),
                        rec("2", "", "o wōlē-0=n 'ēqē-k", "INTERJ you.know-ZERO=ART garden-1SG")}) {
    ASSERT_EQ(detect_misalignment(r), Alignment::aligned);
    EXPECT_DOUBLE_EQ(alignment_score(r.glosses, *r.segmentation), 1.0);
  }
}

TEST(Repair, Actions) {
  auto [blanked, a1] = repair(rec("1", "", "abc def", "X-Y Z"));
  EXPECT_EQ(a1, RepairAction::blanked_segmentation);
  EXPECT_FALSE(blanked.segmentation.has_value());

  auto [moved, a2] = repair(rec("2", "", "a-b c", "X Y", Split::test));
  EXPECT_EQ(a2, RepairAction::forced_to_train);
  EXPECT_EQ(moved.split, Split::train);
  EXPECT_EQ(moved.segmentation, "a-b c");

  const IgtRecord ok = rec("3", "", "a-b", "X-Y", Split::eval);
  auto [kept, a3] = repair(ok);
  EXPECT_EQ(a3, RepairAction::kept);
  EXPECT_EQ(kept, ok);
}

TEST(Repair, Idempotent) {
  for (const auto& r : {rec("1", "", "abc def", "X-Y Z", Split::eval),
                        rec("2", "", "a-b c", "X Y", Split::test)}) {
    const IgtRecord once = repair(r).first;
    EXPECT_EQ(repair(once).first, once);
    EXPECT_EQ(repair(once).second, RepairAction::kept);
  }
}

TEST(Dedup, KeysOnTranscriptionGlossesAndLanguage) {
  const std::vector<IgtRecord> rs{rec("1", "a b", std::nullopt, "X Y"),
                                  rec("2", "a  b", "a b", "X Y"),
                                  rec("3", "a b", std::nullopt, "X Y", Split::train, "othr1234")};
  const auto out = dedup(rs);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].id, "1");
  EXPECT_EQ(out[1].id, "3");
  EXPECT_EQ(dedup(out), out);
}

TEST(LowQuality, PunctuationOnlyGlosses) {
  EXPECT_TRUE(is_low_quality(rec("1", "a", std::nullopt, ". ,")));
  EXPECT_FALSE(is_low_quality(rec("1", "a", std::nullopt, "X .")));
}

TEST(ApplyRules, FixesGlossLine) {
  const ReplaceRule rule{ReplaceRule::Field::glosses, ",.", "."};
  const IgtRecord fixed = apply_rules(rec("1", "a", std::nullopt, "3S,.PAST"), std::span(&rule, 1));
  EXPECT_EQ(fixed.glosses, "3S.PAST");
}

TEST(Audit, EmptyCorpus) {
  const AuditReport r = audit(std::vector<IgtRecord>{});
  EXPECT_EQ(r, AuditReport{});
}

TEST(Audit, FiveCraftedRecords) {
  std::vector<IgtRecord> rs{
      rec("1", "a", "a", "A"),
      rec("2", "b", "b-c", "B-C"),
      rec("3", "c", "c d", "C", Split::eval),            // misaligned
      rec("4", "d", std::nullopt, "D", Split::test, std::nullopt),
      rec("5", "e", "e", "E", Split::test, "othr1234"),
  };
  rs[1].translation.reset();
  rs[3].translation.reset();
  const AuditReport r = audit(rs);
  // Hand counts.
  EXPECT_EQ(r.total_examples, 5u);
  EXPECT_EQ(r.no_translation, 2u);
  EXPECT_EQ(r.misaligned, 1u);
  EXPECT_EQ(r.misaligned_eval_test, 1u);
  EXPECT_EQ(r.no_glottocode, 1u);
  EXPECT_EQ(r.no_segmentation, 1u);
  EXPECT_EQ(r.unique_languages, 2u);
  EXPECT_EQ(r.per_split_counts.at(Split::train), 2u);
  EXPECT_EQ(r.per_split_counts.at(Split::eval), 1u);
  EXPECT_EQ(r.per_split_counts.at(Split::test), 2u);
}

TEST(Audit, UniqueLanguages) {
  const std::vector<IgtRecord> rs{rec("1", "a", std::nullopt, "A", Split::train, "aaaa1111"),
                                  rec("2", "b", std::nullopt, "B", Split::train, "bbbb1111"),
                                  rec("3", "c", std::nullopt, "C", Split::train, "cccc1111"),
                                  rec("4", "d", std::nullopt, "D", Split::train, "aaaa1111")};
  EXPECT_EQ(audit(rs).unique_languages, 3u);
}

TEST(Audit, DedupRemovesExactlyTheReportedDuplicates) {
  const std::vector<IgtRecord> rs{rec("1", "a", std::nullopt, "A"), rec("2", "a", std::nullopt, "A"),
                                  rec("3", "b", std::nullopt, "B"), rec("4", "a", std::nullopt, "A")};
  const AuditReport before = audit(rs);
  EXPECT_EQ(before.duplicates_removed, 2u);
  EXPECT_EQ(audit(dedup(rs)).total_examples, before.total_examples - before.duplicates_removed);
}

TEST(Pipeline, NoMisalignedEvalOrTestAfterwards) {
  std::vector<IgtRecord> rs{rec("1", "a b.", "ab cd.", "X-Y Z.", Split::eval),
                            rec("2", "a b", "a-b c", "X Y", Split::test),
                            rec("3", "c", "c", "C", Split::test),
                            rec("4", "junk", std::nullopt, "?", Split::test),
                            rec("5", "c", "c", "C", Split::train)};
  PipelineStats st;
  const auto out = run_pipeline(rs, {}, &st);
  EXPECT_EQ(st.input, 5u);
  EXPECT_EQ(st.low_quality_dropped, 1u);
  EXPECT_EQ(st.blanked_segmentation, 1u);
  EXPECT_EQ(st.forced_to_train, 1u);
  EXPECT_EQ(st.duplicates_removed, 1u);
  EXPECT_EQ(st.output, 3u);
  for (const auto& r : out)
    if (r.split != Split::train) EXPECT_FALSE(is_misaligned(detect_misalignment(r)));
  EXPECT_EQ(audit(out).misaligned_eval_test, 0u);
  EXPECT_EQ(run_pipeline(out), out);
}

TEST(SplitTable, CountsPerLanguage) {
  const std::vector<IgtRecord> rs{rec("1", "a", std::nullopt, "A", Split::train, "arap1274"),
                                  rec("2", "a", std::nullopt, "A", Split::eval, "arap1274"),
                                  rec("3", "a", std::nullopt, "A", Split::test, std::nullopt)};
  const SplitTable t = split_table(rs);
  EXPECT_EQ(t.at("arap1274"), (std::array<std::size_t, 3>{1, 1, 0}));
  EXPECT_EQ(t.at("und"), (std::array<std::size_t, 3>{0, 0, 1}));
}

}  // namespace
}  // namespace igt
