// igt: command-line front end for corpus auditing, task encoding, output
// decoding, scoring, the lookup glosser and the analytics helpers.
//
// Exit codes: 0 success, 1 input error, 2 invariant violation.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "igt/analytics.hpp"
#include "igt/baseline.hpp"
#include "igt/codecs.hpp"
#include "igt/corpus.hpp"
#include "igt/json_io.hpp"
#include "igt/kernels.hpp"
#include "igt/metrics.hpp"
#include "igt/text.hpp"

namespace {

using namespace igt;

constexpr std::size_t kBatchSize = 8192;

enum class GroupBy { corpus, language };

struct CliConfig {
  std::string input;
  std::string output;
  std::string gold;
  std::string pred;
  std::string lexicon;
  std::string build_lexicon;
  std::string format;
  bool strict = false;
  bool log_x = false;
  bool summary_only = false;
  GroupBy group_by = GroupBy::corpus;
  std::optional<double> perplexity;
  std::optional<double> threshold;
  std::vector<std::string> replace;
};

// Owns the output file when -o is given, otherwise writes to stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw InputError("cannot open output file " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void line(const ojson& j) { stream() << j.dump() << '\n'; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return in;
}

// Reads {"id", ...} JSON lines lazily.
class JsonLines {
 public:
  explicit JsonLines(const std::string& path) : path_(path), in_(open_input(path)) {}

  std::optional<nlohmann::json> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (trim(line).empty()) continue;
      auto j = parse_json_line(line, where());
      if (!j.is_object()) throw InputError(where() + ": expected a JSON object");
      return j;
    }
    return std::nullopt;
  }
  std::string where() const { return path_ + ":" + std::to_string(line_no_); }

 private:
  std::string path_;
  std::ifstream in_;
  std::size_t line_no_ = 0;
};

std::string string_field(const nlohmann::json& j, const char* key, const std::string& where,
                         bool required = true) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    if (required) throw InputError(where + ": missing key \"" + key + "\"");
    return {};
  }
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return it->dump();
  throw InputError(where + ": key \"" + key + "\" must be a string");
}

int cmd_audit(const CliConfig& cfg) {
  std::ifstream in = open_input(cfg.input);
  CorpusReader reader(in, cfg.input);
  Auditor auditor;
  while (auto rec = reader.next()) auditor.add(*rec);
  Output out(cfg.output);
  out.line(to_json(auditor.report()));
  return 0;
}

std::vector<ReplaceRule> parse_rules(const std::vector<std::string>& args) {
  std::vector<ReplaceRule> rules;
  for (std::size_t i = 0; i + 1 < args.size(); i += 2)
    rules.push_back({ReplaceRule::Field::glosses, args[i], args[i + 1]});
  return rules;
}

int cmd_normalize(const CliConfig& cfg) {
  const auto rules = parse_rules(cfg.replace);
  std::ifstream in = open_input(cfg.input);
  CorpusReader reader(in, cfg.input);
  Output out(cfg.output);
  Deduplicator dedup;
  PipelineStats st;

  std::vector<IgtRecord> batch;
  auto flush = [&] {
    st.input += batch.size();
    for (auto& cleaned : clean_batch(std::move(batch), rules)) {
      if (!cleaned.record) {
        ++st.low_quality_dropped;
        continue;
      }
      if (cleaned.action == RepairAction::blanked_segmentation) ++st.blanked_segmentation;
      if (cleaned.action == RepairAction::forced_to_train) ++st.forced_to_train;
      if (dedup.admit(*cleaned.record)) {
        out.line(to_json(*cleaned.record));
        ++st.output;
      }
    }
    batch.clear();
  };
  while (auto rec = reader.next()) {
    batch.push_back(std::move(*rec));
    if (batch.size() == kBatchSize) flush();
  }
  flush();
  st.duplicates_removed = dedup.removed();

  ojson summary{{"input", st.input},
                {"low_quality_dropped", st.low_quality_dropped},
                {"blanked_segmentation", st.blanked_segmentation},
                {"forced_to_train", st.forced_to_train},
                {"duplicates_removed", st.duplicates_removed},
                {"output", st.output}};
  std::cerr << summary.dump() << '\n';
  return 0;
}

int cmd_stats(const CliConfig& cfg) {
  std::ifstream in = open_input(cfg.input);
  CorpusReader reader(in, cfg.input);
  SplitTable table;
  while (auto rec = reader.next()) {
    const std::string lang =
        rec->glottocode ? *rec->glottocode : std::string(kUndeterminedLanguage);
    ++table[lang][static_cast<std::size_t>(rec->split)];
  }
  Output out(cfg.output);
  auto& os = out.stream();
  os << "language\ttrain\teval\ttest\n";
  for (const auto& [lang, counts] : table)
    os << lang << '\t' << counts[0] << '\t' << counts[1] << '\t' << counts[2] << '\n';
  return 0;
}

int cmd_encode(const CliConfig& cfg) {
  const TaskFormat fmt = parse_task_format(cfg.format);
  std::ifstream in = open_input(cfg.input);
  CorpusReader reader(in, cfg.input);
  Output out(cfg.output);
  std::size_t skipped = 0;
  while (auto rec = reader.next()) {
    TaskFormat used = fmt;
    const bool needs_seg = fmt == TaskFormat::concatenated || fmt == TaskFormat::interleaved;
    if (needs_seg && !cfg.strict && detect_misalignment(*rec) == Alignment::no_segmentation)
      used = TaskFormat::multitask_gloss;
    EncodedExample ex;
    try {
      ex = encode_example(*rec, used);
    } catch (const InvariantError& e) {
      if (cfg.strict) throw;
      std::cerr << "skipping record " << rec->id << ": " << e.what() << '\n';
      ++skipped;
      continue;
    }
    ojson j;
    j["id"] = rec->id;
    j["format"] = std::string(to_string(used));
    j["prompt"] = ex.prompt;
    j["target"] = ex.target;
    out.line(j);
  }
  if (skipped) std::cerr << skipped << " record(s) skipped\n";
  return 0;
}

int cmd_decode(const CliConfig& cfg) {
  const TaskFormat fmt = parse_task_format(cfg.format);
  if (fmt != TaskFormat::concatenated && fmt != TaskFormat::interleaved)
    throw InputError("decode supports --format concat or interleaved");
  const DecodeMode mode = cfg.strict ? DecodeMode::strict : DecodeMode::lenient;
  JsonLines lines(cfg.input);
  Output out(cfg.output);
  while (auto j = lines.next()) {
    const std::string id = string_field(*j, "id", lines.where(), false);
    const std::string text = string_field(*j, "output", lines.where());
    DecodedPrediction d;
    try {
      d = fmt == TaskFormat::interleaved ? decode_interleaved(text, mode)
                                         : decode_concatenated(text, mode);
    } catch (const FormatError& e) {
      throw FormatError(lines.where() + ": " + e.what());
    }
    ojson o;
    o["id"] = id;
    o.update(to_json(d));
    out.line(o);
  }
  return 0;
}

struct PredLine {
  std::string id;
  std::string glosses;
  std::optional<std::string> segmentation;
};

int cmd_score(const CliConfig& cfg) {
  std::ifstream gold_in = open_input(cfg.gold);
  CorpusReader gold(gold_in, cfg.gold);
  JsonLines pred(cfg.pred);
  Output out(cfg.output);

  MetricReport total;
  std::map<std::string, MetricReport> by_language;
  std::vector<IgtRecord> golds;
  std::vector<PredLine> preds;

  auto flush = [&] {
    std::vector<ScoringInput> inputs;
    inputs.reserve(golds.size());
    for (std::size_t i = 0; i < golds.size(); ++i) {
      ScoringInput in{golds[i].glosses, preds[i].glosses, std::nullopt, std::nullopt};
      if (golds[i].segmentation) in.gold_segmentation = *golds[i].segmentation;
      if (preds[i].segmentation) in.pred_segmentation = *preds[i].segmentation;
      inputs.push_back(in);
    }
    const auto reports = score_batch(inputs);
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const std::string lang =
          golds[i].glottocode ? *golds[i].glottocode : std::string(kUndeterminedLanguage);
      total += reports[i];
      if (cfg.group_by == GroupBy::language) by_language[lang] += reports[i];
      if (!cfg.summary_only) {
        ojson o;
        o["id"] = golds[i].id;
        o["glottocode"] = lang;
        o.update(to_json(reports[i]));
        out.line(o);
      }
    }
    golds.clear();
    preds.clear();
  };

  while (true) {
    auto g = gold.next();
    auto p = pred.next();
    if (!g && !p) break;
    if (!g || !p)
      throw InputError("gold and prediction files have different numbers of records");
    PredLine pl;
    pl.id = string_field(*p, "id", pred.where(), false);
    if (!pl.id.empty() && pl.id != g->id)
      throw InputError(pred.where() + ": id \"" + pl.id + "\" does not match gold id \"" + g->id + "\"");
    pl.glosses = string_field(*p, "glosses", pred.where());
    const std::string seg = string_field(*p, "segmentation", pred.where(), false);
    if (p->contains("segmentation") && !(*p)["segmentation"].is_null()) pl.segmentation = seg;
    golds.push_back(std::move(*g));
    preds.push_back(std::move(pl));
    if (golds.size() == kBatchSize) flush();
  }
  flush();

  if (total.examples == 0) throw InputError("no records to score");
  for (const auto& [lang, report] : by_language) {
    ojson o;
    o["aggregate"] = "language";
    o["glottocode"] = lang;
    o.update(to_json(report));
    out.line(o);
  }
  ojson o;
  o["aggregate"] = "corpus";
  o.update(to_json(total));
  out.line(o);
  return 0;
}

int cmd_gloss(const CliConfig& cfg) {
  if (!cfg.build_lexicon.empty()) {
    std::ifstream in = open_input(cfg.build_lexicon);
    CorpusReader reader(in, cfg.build_lexicon);
    LexiconBuilder builder;
    while (auto rec = reader.next()) builder.add(*rec);
    Output out(cfg.output);
    out.stream() << to_json(builder.lexicon()).dump(1) << '\n';
    return 0;
  }
  if (cfg.lexicon.empty() || cfg.input.empty())
    throw InputError("gloss needs --lexicon <file> <input> or --build-lexicon <train>");

  std::ifstream lex_in = open_input(cfg.lexicon);
  nlohmann::json lex_json;
  try {
    lex_json = nlohmann::json::parse(lex_in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(cfg.lexicon + ": malformed JSON (" + e.what() + ")");
  }
  const GlossLexicon lex = lexicon_from_json(lex_json);

  std::ifstream in = open_input(cfg.input);
  CorpusReader reader(in, cfg.input);
  Output out(cfg.output);
  while (auto rec = reader.next()) {
    ojson o;
    o["id"] = rec->id;
    o.update(to_json(predict(lex, rec->glottocode.value_or(""), rec->transcription)));
    out.line(o);
  }
  return 0;
}

int cmd_regress(const CliConfig& cfg) {
  std::ifstream in = open_input(cfg.input);
  const auto points = read_regression_csv(in);
  const RegressionFit f = fit(points, cfg.log_x);
  ojson o = to_json(f);
  if (cfg.perplexity) {
    if (!cfg.threshold) throw InputError("--perplexity needs --threshold");
    o["perplexity"] = *cfg.perplexity;
    o["expected_mer"] = f.predict(*cfg.perplexity);
    o["threshold"] = *cfg.threshold;
    o["decision"] = std::string(to_string(gate(f, *cfg.perplexity, *cfg.threshold)));
  }
  Output out(cfg.output);
  out.line(o);
  return 0;
}

int cmd_reward(const CliConfig& cfg) {
  const TaskFormat fmt = parse_task_format(cfg.format);
  if (fmt != TaskFormat::concatenated && fmt != TaskFormat::interleaved)
    throw InputError("reward supports --format concat or interleaved");
  JsonLines lines(cfg.input);
  Output out(cfg.output);
  std::vector<std::string> ids, outputs;
  auto flush = [&] {
    const auto rewards = reward_batch(outputs, fmt);
    for (std::size_t i = 0; i < rewards.size(); ++i) {
      ojson o;
      if (!ids[i].empty()) o["id"] = ids[i];
      o["reward"] = rewards[i];
      out.line(o);
    }
    ids.clear();
    outputs.clear();
  };
  while (auto j = lines.next()) {
    ids.push_back(string_field(*j, "id", lines.where(), false));
    outputs.push_back(string_field(*j, "output", lines.where()));
    if (outputs.size() == kBatchSize) flush();
  }
  flush();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interlinear glossed text toolkit"};
  app.require_subcommand(1);
  CliConfig cfg;

  const std::map<std::string, GroupBy> group_map{{"corpus", GroupBy::corpus},
                                                  {"language", GroupBy::language}};
  const std::vector<std::string> all_formats{"multitask-gloss", "multitask-seg", "concat",
                                             "interleaved"};
  const std::vector<std::string> output_formats{"concat", "interleaved"};

  auto* audit = app.add_subcommand("audit", "Corpus statistics and quality audit as JSON");
  audit->add_option("input", cfg.input, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  audit->add_option("-o,--output", cfg.output, "Output file (default stdout)");

  auto* normalize = app.add_subcommand(
      "normalize", "Punctuation normalization, quality filter, misalignment repair and dedup");
  normalize->add_option("input", cfg.input, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  normalize->add_option("-o,--output", cfg.output, "Output file (default stdout)");
  normalize->add_option("--replace", cfg.replace, "FIND REPLACE applied to gloss lines")
      ->expected(2, 1 << 20)
      ->allow_extra_args(false);

  auto* stats = app.add_subcommand("stats", "Train/eval/test counts per language");
  stats->add_option("input", cfg.input, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  stats->add_option("-o,--output", cfg.output, "Output file (default stdout)");

  auto* encode = app.add_subcommand("encode", "Render records as prompt/target pairs");
  encode->add_option("input", cfg.input, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  encode->add_option("--format", cfg.format)->required()->check(CLI::IsMember(all_formats));
  encode->add_flag("--strict", cfg.strict, "Fail (exit 2) on records the format cannot encode");
  encode->add_option("-o,--output", cfg.output, "Output file (default stdout)");

  auto* decode = app.add_subcommand("decode", "Parse model outputs into segmentation and glosses");
  decode->add_option("input", cfg.input, "JSONL with {\"id\",\"output\"}")
      ->required()
      ->check(CLI::ExistingFile);
  decode->add_option("--format", cfg.format)->required()->check(CLI::IsMember(output_formats));
  decode->add_flag("--strict", cfg.strict, "Fail (exit 2) on malformed output");
  decode->add_option("-o,--output", cfg.output, "Output file (default stdout)");

  auto* score = app.add_subcommand("score", "Score predictions against a gold corpus");
  score->add_option("--gold", cfg.gold, "Gold corpus JSONL")->required()->check(CLI::ExistingFile);
  score->add_option("--pred", cfg.pred, "Prediction JSONL")->required()->check(CLI::ExistingFile);
  score->add_option("--group-by", cfg.group_by, "corpus or language")
      ->transform(CLI::CheckedTransformer(group_map));
  score->add_flag("--summary-only", cfg.summary_only, "Only emit aggregate lines");
  score->add_option("-o,--output", cfg.output, "Output file (default stdout)");

  auto* gloss = app.add_subcommand("gloss", "Frequency-lexicon glosser");
  gloss->add_option("input", cfg.input, "Corpus JSONL to gloss")->check(CLI::ExistingFile);
  auto* lex_opt =
      gloss->add_option("--lexicon", cfg.lexicon, "Lexicon JSON")->check(CLI::ExistingFile);
  gloss->add_option("--build-lexicon", cfg.build_lexicon, "Build a lexicon from this corpus")
      ->check(CLI::ExistingFile)
      ->excludes(lex_opt);
  gloss->add_option("-o,--output", cfg.output, "Output file (default stdout)");

  auto* regress = app.add_subcommand("regress", "Fit error rate against perplexity");
  regress->add_option("input", cfg.input, "CSV: perplexity,mer with header")
      ->required()
      ->check(CLI::ExistingFile);
  regress->add_flag("--log-x", cfg.log_x, "Fit against ln(perplexity)");
  regress->add_option("--perplexity", cfg.perplexity, "Gate a language with this perplexity");
  regress->add_option("--threshold", cfg.threshold, "Acceptable error rate for gating");
  regress->add_option("-o,--output", cfg.output, "Output file (default stdout)");

  auto* reward_cmd = app.add_subcommand("reward", "Alignment reward for model outputs");
  reward_cmd->add_option("input", cfg.input, "JSONL with {\"output\"}")
      ->required()
      ->check(CLI::ExistingFile);
  reward_cmd->add_option("--format", cfg.format)->required()->check(CLI::IsMember(output_formats));
  reward_cmd->add_option("-o,--output", cfg.output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*audit) return cmd_audit(cfg);
    if (*normalize) return cmd_normalize(cfg);
    if (*stats) return cmd_stats(cfg);
    if (*encode) return cmd_encode(cfg);
    if (*decode) return cmd_decode(cfg);
    if (*score) return cmd_score(cfg);
    if (*gloss) return cmd_gloss(cfg);
    if (*regress) return cmd_regress(cfg);
    if (*reward_cmd) return cmd_reward(cfg);
  } catch (const InvariantError& e) {
    std::cerr << "igt: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "igt: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
