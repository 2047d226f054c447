#include "igt/json_io.hpp"

#include "igt/text.hpp"

namespace igt {
namespace {

using nlohmann::json;

ojson nullable(const std::optional<std::string>& s) { return s ? ojson(*s) : ojson(nullptr); }
ojson nullable(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

const json& require_key(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing required key \"") + key + "\"");
  return *it;
}

std::string require_string(const json& j, const char* key) {
  const json& v = require_key(j, key);
  if (!v.is_string()) throw InputError(std::string("key \"") + key + "\" must be a string");
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const json& j, const char* key, bool blank_is_null) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw InputError(std::string("key \"") + key + "\" must be a string or null");
  std::string s = it->get<std::string>();
  if (blank_is_null && trim(s).empty()) return std::nullopt;
  return s;
}

void put_ratio(ojson& o, const std::string& name, const Ratio& r) {
  o[name] = nullable(r.value());
  o[name + "_num"] = r.num;
  o[name + "_den"] = r.den;
}

void put_bleu(ojson& o, const std::string& name, const BleuStats& b) {
  o[name] = nullable(b.value());
  o[name + "_stats"] = {{"matches", b.matches},
                        {"totals", b.totals},
                        {"hyp_len", b.hyp_len},
                        {"ref_len", b.ref_len}};
}

ojson table_to_json(const LexiconTable& t) {
  ojson out = ojson::object();
  for (const auto& [lang, keys] : t) {
    ojson l = ojson::object();
    for (const auto& [key, freqs] : keys) {
      ojson f = ojson::object();
      for (const auto& [cand, count] : freqs) f[cand] = count;
      l[key] = std::move(f);
    }
    out[lang] = std::move(l);
  }
  return out;
}

LexiconTable table_from_json(const json& j, const char* name, std::string_view forbidden) {
  if (!j.is_object()) throw InputError(std::string("lexicon: \"") + name + "\" must be an object");
  LexiconTable t;
  for (const auto& [lang, keys] : j.items()) {
    if (!keys.is_object()) throw InputError(std::string("lexicon: bad entry in ") + name);
    for (const auto& [key, freqs] : keys.items()) {
      if (!freqs.is_object()) throw InputError(std::string("lexicon: bad entry in ") + name);
      for (const auto& [cand, count] : freqs.items()) {
        if (!count.is_number_unsigned() || count.get<std::size_t>() == 0)
          throw InputError(std::string("lexicon: counts in ") + name + " must be positive integers");
        if (cand.empty() || cand.find_first_of(forbidden) != std::string::npos ||
            split_whitespace(cand).size() != 1)
          throw InputError(std::string("lexicon: invalid candidate \"") + cand + "\" in " + name);
        t[lang][key][cand] = count.get<std::size_t>();
      }
    }
  }
  return t;
}

}  // namespace

json parse_json_line(const std::string& line, const std::string& where) {
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    throw InputError(where + ": malformed JSON (" + e.what() + ")");
  }
}

ojson to_json(const IgtRecord& rec) {
  ojson o;
  o["id"] = rec.id;
  o["transcription"] = rec.transcription;
  o["segmentation"] = nullable(rec.segmentation);
  o["glosses"] = rec.glosses;
  o["translation"] = nullable(rec.translation);
  o["glottocode"] = nullable(rec.glottocode);
  o["metalang_glottocode"] = nullable(rec.metalang_glottocode);
  o["language_name"] = nullable(rec.language_name);
  o["source"] = rec.source;
  o["split"] = std::string(to_string(rec.split));
  return o;
}

IgtRecord record_from_json(const json& j) {
  if (!j.is_object()) throw InputError("record must be a JSON object");
  IgtRecord rec;
  const json& id = require_key(j, "id");
  if (id.is_string())
    rec.id = id.get<std::string>();
  else if (id.is_number_integer())
    rec.id = id.dump();
  else
    throw InputError("key \"id\" must be a string");
  rec.transcription = require_string(j, "transcription");
  rec.glosses = require_string(j, "glosses");
  rec.split = parse_split(require_string(j, "split"));
  rec.segmentation = optional_string(j, "segmentation", true);
  rec.translation = optional_string(j, "translation", true);
  rec.glottocode = optional_string(j, "glottocode", true);
  rec.metalang_glottocode = optional_string(j, "metalang_glottocode", true);
  rec.language_name = optional_string(j, "language_name", true);
  rec.source = optional_string(j, "source", false).value_or("");
  validate(rec);
  return rec;
}

ojson to_json(const AuditReport& r) {
  ojson o;
  o["total_examples"] = r.total_examples;
  o["unique_languages"] = r.unique_languages;
  ojson splits;
  for (const auto& [split, count] : r.per_split_counts) splits[std::string(to_string(split))] = count;
  o["per_split_counts"] = std::move(splits);
  o["no_glottocode"] = r.no_glottocode;
  o["no_metalang_glottocode"] = r.no_metalang_glottocode;
  o["no_segmentation"] = r.no_segmentation;
  o["no_translation"] = r.no_translation;
  o["misaligned"] = r.misaligned;
  o["misaligned_eval_test"] = r.misaligned_eval_test;
  o["repaired_blanked_segmentation"] = r.repaired_blanked_segmentation;
  o["duplicates_removed"] = r.duplicates_removed;
  return o;
}

ojson to_json(const MetricReport& r) {
  ojson o;
  o["examples"] = r.examples;
  put_ratio(o, "mer", r.mer);
  put_ratio(o, "wer", r.wer);
  put_ratio(o, "cer", r.cer);
  put_ratio(o, "morpheme_accuracy", r.morpheme_accuracy);
  put_ratio(o, "word_accuracy", r.word_accuracy);
  put_bleu(o, "bleu_morpheme", r.bleu_morpheme);
  put_bleu(o, "bleu_word", r.bleu_word);
  put_bleu(o, "bleu_char", r.bleu_char);
  o["seg_f1"] = nullable(r.seg_f1.f1());
  o["seg_precision"] = nullable(r.seg_f1.precision());
  o["seg_recall"] = nullable(r.seg_f1.recall());
  o["seg_f1_stats"] = {{"overlap", r.seg_f1.overlap},
                       {"pred_total", r.seg_f1.pred_total},
                       {"gold_total", r.seg_f1.gold_total},
                       {"examples", r.seg_f1.examples}};
  put_ratio(o, "seg_cer", r.seg_cer);
  put_ratio(o, "seg_word_accuracy", r.seg_word_accuracy);
  put_ratio(o, "alignment", r.alignment);
  return o;
}

ojson to_json(const DecodedPrediction& d) {
  ojson o;
  o["segmentation"] = nullable(d.segmentation);
  o["glosses"] = d.glosses;
  o["well_formed"] = d.well_formed;
  o["diagnostics"] = d.diagnostics;
  return o;
}

ojson to_json(const RegressionFit& f) {
  ojson o;
  o["slope"] = f.slope;
  o["intercept"] = f.intercept;
  o["r2"] = f.r2;
  o["n"] = f.n;
  o["log_x"] = f.log_x;
  o["degenerate"] = f.degenerate;
  return o;
}

ojson to_json(const GlossLexicon& lex) {
  ojson o;
  o["morpheme_to_gloss"] = table_to_json(lex.morpheme_to_gloss);
  o["word_to_seg"] = table_to_json(lex.word_to_seg);
  o["word_to_gloss"] = table_to_json(lex.word_to_gloss);
  return o;
}

GlossLexicon lexicon_from_json(const json& j) {
  if (!j.is_object()) throw InputError("lexicon must be a JSON object");
  GlossLexicon lex;
  lex.morpheme_to_gloss = table_from_json(require_key(j, "morpheme_to_gloss"), "morpheme_to_gloss", "-=");
  lex.word_to_seg = table_from_json(require_key(j, "word_to_seg"), "word_to_seg", "");
  lex.word_to_gloss = table_from_json(require_key(j, "word_to_gloss"), "word_to_gloss", "");
  return lex;
}

}  // namespace igt
