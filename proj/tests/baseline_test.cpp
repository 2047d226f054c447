#include "igt/baseline.hpp"

#include <gtest/gtest.h>

#include "igt/json_io.hpp"
#include "igt/metrics.hpp"
#include "oracles.hpp"

namespace igt {
namespace {

IgtRecord rec(std::string transcription, std::optional<std::string> seg, std::string glosses,
              Split split = Split::train) {
  IgtRecord r;
  r.id = transcription;
  r.transcription = std::move(transcription);
  r.segmentation = std::move(seg);
  r.glosses = std::move(glosses);
  r.glottocode = "test1234";
  r.split = split;
  return r;
}

TEST(BuildLexicon, SingleRecord) {
  const std::vector<IgtRecord> rs{rec("cats", "cat-s", "cat-PL")};
  const GlossLexicon lex = build_lexicon(rs);
  EXPECT_EQ(lex.morpheme_to_gloss.at("test1234").at("cat"), (FrequencyMap{{"cat", 1}}));
  EXPECT_EQ(lex.morpheme_to_gloss.at("test1234").at("s"), (FrequencyMap{{"PL", 1}}));
  EXPECT_EQ(lex.word_to_seg.at("test1234").at("cats"), (FrequencyMap{{"cat-s", 1}}));
  EXPECT_EQ(lex.word_to_gloss.at("test1234").at("cats"), (FrequencyMap{{"cat-PL", 1}}));
}

TEST(BuildLexicon, IgnoresEvalAndTest) {
  const std::vector<IgtRecord> rs{rec("cats", "cat-s", "cat-PL", Split::test),
                                  rec("dogs", "dog-s", "dog-PL", Split::eval)};
  EXPECT_EQ(build_lexicon(rs), GlossLexicon{});
}

TEST(BuildLexicon, CountsGlossFrequencies) {
  const std::vector<IgtRecord> rs{rec("cats dogs", "cat-s dog-s", "cat-PL dog-PL"),
                                  rec("sheeps", "sheep-s", "sheep-SG")};
  // Hand count for "s": PL twice, SG once.
  EXPECT_EQ(build_lexicon(rs).morpheme_to_gloss.at("test1234").at("s"),
            (FrequencyMap{{"PL", 2}, {"SG", 1}}));
}

TEST(BuildLexicon, UnsegmentedRecordsFeedWordGlosses) {
  const std::vector<IgtRecord> rs{rec("kurno lel", std::nullopt, "throw-PFV wing")};
  const GlossLexicon lex = build_lexicon(rs);
  EXPECT_TRUE(lex.word_to_seg.empty());
  EXPECT_EQ(lex.word_to_gloss.at("test1234").at("kurno"), (FrequencyMap{{"throw-PFV", 1}}));
}

TEST(MostFrequent, TieBreaksLexicographically) {
  const FrequencyMap candidates{{"ab", 2}, {"a-b", 2}};
  // Oracle: enumerate, keep max count, then smallest string.
  std::string best;
  std::size_t best_count = 0;
  for (const auto& [c, n] : candidates)
    if (n > best_count || (n == best_count && c < best)) {
      best = c;
      best_count = n;
    }
  ASSERT_EQ(best, "a-b");
  EXPECT_EQ(*most_frequent(candidates), best);
  EXPECT_EQ(*most_frequent(FrequencyMap{{"b", 3}, {"a", 1}}), "b");
  EXPECT_EQ(most_frequent(FrequencyMap{}), nullptr);
}

TEST(Predict, MemorizesTrainingRecord) {
  const IgtRecord r = rec("o wōlēn 'ēqēk", "o wōlē-0=n 'ēqē-k", "INTERJ you.know-ZERO=ART garden-1SG");
  const GlossLexicon lex = build_lexicon(std::vector<IgtRecord>{r});
  const DecodedPrediction d = predict(lex, "test1234", r.transcription);
  EXPECT_EQ(d.segmentation, r.segmentation);
  EXPECT_EQ(d.glosses, r.glosses);
  EXPECT_DOUBLE_EQ(mer(r.glosses, d.glosses), 0.0);
}

TEST(Predict, UnknownWordGetsPlaceholder) {
  const DecodedPrediction d = predict(GlossLexicon{}, "test1234", "zzz");
  EXPECT_EQ(d.segmentation, "zzz");
  EXPECT_EQ(d.glosses, "???");
  EXPECT_DOUBLE_EQ(alignment_score(d.glosses, *d.segmentation), 1.0);
}

TEST(Predict, TieBrokenSegmentation) {
  GlossLexicon lex;
  lex.word_to_seg["test1234"]["ab"] = {{"a-b", 2}, {"ab", 2}};
  lex.morpheme_to_gloss["test1234"]["a"] = {{"A", 1}};
  const DecodedPrediction d = predict(lex, "test1234", "ab");
  EXPECT_EQ(d.segmentation, "a-b");
  EXPECT_EQ(d.glosses, "A-???");
}

TEST(Predict, WholeWordGlossIsFused) {
  GlossLexicon lex;
  lex.word_to_gloss["test1234"]["kurno"] = {{"throw-PFV", 1}};
  const DecodedPrediction d = predict(lex, "test1234", "kurno .");
  EXPECT_EQ(d.segmentation, "kurno .");
  EXPECT_EQ(d.glosses, "throw.PFV .");
  EXPECT_DOUBLE_EQ(alignment_score(d.glosses, *d.segmentation), 1.0);
}

TEST(Predict, LanguagesAreSeparate) {
  const GlossLexicon lex = build_lexicon(std::vector<IgtRecord>{rec("cats", "cat-s", "cat-PL")});
  EXPECT_EQ(predict(lex, "othr1234", "cats").glosses, "???");
  EXPECT_EQ(predict(lex, "", "cats").glosses, "???");
}

TEST(Predict, AlwaysAlignedOnRandomLexicons) {
  testing::IgtGenerator gen(37);
  std::vector<IgtRecord> train;
  for (int i = 0; i < 100; ++i) {
    auto [seg, gloss] = gen.aligned_pair(4);
    std::string surface = seg;
    std::erase_if(surface, [](char c) { return c == '-' || c == '='; });
    train.push_back(rec(surface, seg, gloss));
  }
  const GlossLexicon lex = build_lexicon(train);
  for (int i = 0; i < 300; ++i) {
    std::string text;
    for (std::size_t w = 0, n = gen.uniform(1, 6); w < n; ++w) {
      if (w) text += ' ';
      const auto& pick = train[gen.uniform(0, train.size() - 1)].transcription;
      text += gen.uniform(0, 3) == 0 ? gen.morpheme() : pick.substr(0, pick.find(' '));
      if (gen.uniform(0, 5) == 0) text += " ?!";
    }
    const DecodedPrediction d = predict(lex, "test1234", text);
    ASSERT_TRUE(d.segmentation.has_value());
    EXPECT_DOUBLE_EQ(alignment_score(d.glosses, *d.segmentation), 1.0) << text;
    EXPECT_EQ(predict(lex, "test1234", text), d);
  }
}

TEST(LexiconJson, RoundTripAndValidation) {
  const GlossLexicon lex = build_lexicon(std::vector<IgtRecord>{rec("cats dog", "cat-s dog", "cat-PL dog")});
  EXPECT_EQ(lexicon_from_json(nlohmann::json::parse(to_json(lex).dump())), lex);
  auto bad = nlohmann::json::parse(to_json(lex).dump());
  bad["morpheme_to_gloss"]["test1234"]["s"] = {{"P-L", 1}};
  EXPECT_THROW(lexicon_from_json(bad), InputError);
  bad = nlohmann::json::parse(to_json(lex).dump());
  bad["word_to_seg"]["test1234"]["cats"] = {{"cat-s", 0}};
  EXPECT_THROW(lexicon_from_json(bad), InputError);
}

}  // namespace
}  // namespace igt
