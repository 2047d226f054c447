#include "igt/codecs.hpp"

#include <array>
#include <utility>

#include "igt/corpus.hpp"
#include "igt/text.hpp"

namespace igt {
namespace {

constexpr std::string_view kGlossesLabel = "Glosses:";
constexpr std::string_view kSegmentationLabel = "Segmentation:";
constexpr std::string_view kOutputLabel = "Output:";

constexpr std::array<std::pair<std::string_view, std::string_view>, 11> kMetalanguages{{
    {"stan1293", "English"},
    {"stan1288", "Spanish"},
    {"stan1290", "French"},
    {"stan1295", "German"},
    {"russ1263", "Russian"},
    {"port1283", "Portuguese"},
    {"mand1415", "Mandarin Chinese"},
    {"indo1316", "Indonesian"},
    {"ital1282", "Italian"},
    {"dutc1256", "Dutch"},
    {"nucl1643", "Japanese"},
}};

std::string header_line(TaskFormat fmt, const std::string& lang) {
  switch (fmt) {
    case TaskFormat::multitask_gloss:
      return "Predict the glosses for the following text in " + lang + ".";
    case TaskFormat::multitask_seg:
      return "Predict the segmentation for the following text in " + lang + ".";
    case TaskFormat::concatenated:
      return "Predict the morphological segmentation and glosses for the following text in " +
             lang + ".";
    case TaskFormat::interleaved:
      return "Predict the glosses and morphological segmentation (in parentheses) for the "
             "following text in " +
             lang + ".";
  }
  return {};
}

void append_escaped(std::string& out, std::string_view s) {
  for (char c : s) {
    if (c == '(' || c == ')' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
}

MorphStructure without_punctuation(const MorphStructure& ms) {
  MorphStructure out;
  for (const auto& w : ms.words)
    if (!is_punctuation_token(detokenize(w))) out.words.push_back(w);
  return out;
}

bool same_shape(const MorphStructure& a, const MorphStructure& b) {
  if (a.words.size() != b.words.size()) return false;
  for (std::size_t i = 0; i < a.words.size(); ++i) {
    if (a.words[i].size() != b.words[i].size()) return false;
    for (std::size_t j = 0; j < a.words[i].size(); ++j)
      if (a.words[i][j].before != b.words[i][j].before) return false;
  }
  return true;
}

const std::string& require_segmentation(const IgtRecord& rec, TaskFormat fmt) {
  if (!rec.segmentation || trim(*rec.segmentation).empty())
    throw InvariantError("record " + rec.id + ": format " + std::string(to_string(fmt)) +
                         " needs a segmentation");
  return *rec.segmentation;
}

// Parser over one whitespace-free word of interleaved output.
class UnitParser {
 public:
  explicit UnitParser(std::string_view word) : s_(word) {}

  // Reads units until the word ends or a unit is malformed. Returns the
  // parsed prefix; `error` is set on failure.
  std::pair<Word, Word> parse(std::string& error) {
    Word gloss, seg;
    Boundary next = Boundary::none;
    while (true) {
      std::string g, m;
      if (!read_gloss(g, error) || !read_morpheme(m, error)) break;
      gloss.push_back({std::move(g), next});
      seg.push_back({std::move(m), next});
      if (pos_ == s_.size()) break;
      const char c = s_[pos_];
      if (c != '-' && c != '=') {
        error = "unexpected '" + std::string(1, c) + "' after unit";
        break;
      }
      next = c == '-' ? Boundary::affix : Boundary::clitic;
      ++pos_;
      if (pos_ == s_.size()) {
        error = "dangling boundary";
        break;
      }
    }
    return {std::move(gloss), std::move(seg)};
  }

 private:
  bool read_gloss(std::string& out, std::string& error) {
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '\\') {
        if (pos_ + 1 == s_.size()) break;
        if (!read_escape(out, error)) return false;
        continue;
      }
      if (c == '(') {
        ++pos_;
        if (out.empty()) {
          error = "empty gloss";
          return false;
        }
        return true;
      }
      if (c == ')' || c == '-' || c == '=') {
        error = "unexpected '" + std::string(1, c) + "' in gloss";
        return false;
      }
      out.push_back(c);
      ++pos_;
    }
    error = "missing '(' after gloss";
    return false;
  }

  bool read_morpheme(std::string& out, std::string& error) {
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '\\') {
        if (pos_ + 1 == s_.size()) break;
        if (!read_escape(out, error)) return false;
        continue;
      }
      if (c == ')') {
        ++pos_;
        if (out.empty()) {
          error = "empty morpheme";
          return false;
        }
        return true;
      }
      if (c == '-' || c == '=') {
        error = "boundary marker inside morpheme";
        return false;
      }
      out.push_back(c);
      ++pos_;
    }
    error = "unbalanced parenthesis";
    return false;
  }

  // Escapes only protect parentheses and backslashes; an escaped boundary
  // marker would still split the unit once the line is re-parsed.
  bool read_escape(std::string& out, std::string& error) {
    const char c = s_[pos_ + 1];
    if (c == '-' || c == '=') {
      error = "escaped boundary marker";
      return false;
    }
    out.push_back(c);
    pos_ += 2;
    return true;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string_view strip_label(std::string_view line, std::string_view label) {
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return line;
  const auto rest = line.substr(first);
  if (rest.substr(0, label.size()) == label) return rest.substr(label.size());
  return line;
}

DecodedPrediction finish(DecodedPrediction d, DecodeMode mode) {
  if (mode == DecodeMode::strict && !d.well_formed) {
    std::string msg = "malformed output";
    for (const auto& diag : d.diagnostics) msg += "; " + diag;
    throw FormatError(msg);
  }
  return d;
}

}  // namespace

std::string_view to_string(TaskFormat f) {
  switch (f) {
    case TaskFormat::multitask_gloss: return "multitask-gloss";
    case TaskFormat::multitask_seg: return "multitask-seg";
    case TaskFormat::concatenated: return "concat";
    case TaskFormat::interleaved: return "interleaved";
  }
  return "multitask-gloss";
}

TaskFormat parse_task_format(std::string_view s) {
  if (s == "multitask-gloss") return TaskFormat::multitask_gloss;
  if (s == "multitask-seg") return TaskFormat::multitask_seg;
  if (s == "concat" || s == "concatenated") return TaskFormat::concatenated;
  if (s == "interleaved") return TaskFormat::interleaved;
  throw InputError("unknown format \"" + std::string(s) + "\"");
}

std::string language_display_name(const IgtRecord& rec) {
  if (rec.language_name && !trim(*rec.language_name).empty()) return trim(*rec.language_name);
  if (rec.glottocode && !rec.glottocode->empty()) return *rec.glottocode;
  return "unknown";
}

std::string metalanguage_display_name(const IgtRecord& rec) {
  if (!rec.metalang_glottocode || rec.metalang_glottocode->empty()) return "unknown";
  for (const auto& [code, name] : kMetalanguages)
    if (code == *rec.metalang_glottocode) return std::string(name);
  return *rec.metalang_glottocode;
}

std::string encode_interleaved_body(const MorphStructure& seg, const MorphStructure& gloss) {
  if (seg.words.size() != gloss.words.size())
    throw InvariantError("interleave: segmentation has " + std::to_string(seg.words.size()) +
                         " words but glosses have " + std::to_string(gloss.words.size()));
  std::string out;
  for (std::size_t i = 0; i < seg.words.size(); ++i) {
    const Word& sw = seg.words[i];
    const Word& gw = gloss.words[i];
    bool ok = sw.size() == gw.size();
    for (std::size_t j = 0; ok && j < sw.size(); ++j) ok = sw[j].before == gw[j].before;
    if (!ok)
      throw InvariantError("interleave: word " + std::to_string(i) +
                           " differs in morpheme structure (\"" + detokenize(sw) + "\" vs \"" +
                           detokenize(gw) + "\")");
    if (i) out.push_back(' ');
    for (std::size_t j = 0; j < sw.size(); ++j) {
      if (sw[j].before != Boundary::none) out.push_back(boundary_char(sw[j].before));
      append_escaped(out, gw[j].form);
      out.push_back('(');
      append_escaped(out, sw[j].form);
      out.push_back(')');
    }
  }
  return out;
}

EncodedExample encode_example(const IgtRecord& rec, TaskFormat fmt) {
  const std::string lang = language_display_name(rec);
  EncodedExample ex;
  ex.prompt = header_line(fmt, lang) + "\nText in " + lang + ": " + normalize_space(rec.transcription);
  if (rec.translation && !trim(*rec.translation).empty())
    ex.prompt += "\nTranslation in " + metalanguage_display_name(rec) + ": " +
                 normalize_space(*rec.translation);

  const std::string glosses = normalize_space(rec.glosses);
  switch (fmt) {
    case TaskFormat::multitask_gloss:
      ex.target = std::string(kGlossesLabel) + " " + glosses;
      break;
    case TaskFormat::multitask_seg:
      ex.target = std::string(kSegmentationLabel) + " " +
                  normalize_space(require_segmentation(rec, fmt));
      break;
    case TaskFormat::concatenated: {
      const std::string seg = normalize_space(require_segmentation(rec, fmt));
      if (detect_misalignment(rec) != Alignment::aligned)
        throw InvariantError("record " + rec.id + ": segmentation and glosses are misaligned");
      ex.target = std::string(kSegmentationLabel) + " " + seg + "\n" +
                  std::string(kGlossesLabel) + " " + glosses;
      break;
    }
    case TaskFormat::interleaved: {
      const std::string& seg_line = require_segmentation(rec, fmt);
      if (detect_misalignment(rec) != Alignment::aligned)
        throw InvariantError("record " + rec.id + ": segmentation and glosses are misaligned");
      MorphStructure seg = parse_line(seg_line), gloss = parse_line(rec.glosses);
      // Aligned up to punctuation tokens that only one line carries.
      if (!same_shape(seg, gloss)) {
        seg = without_punctuation(seg);
        gloss = without_punctuation(gloss);
      }
      ex.target = std::string(kOutputLabel) + " " + encode_interleaved_body(seg, gloss);
      break;
    }
  }
  return ex;
}

std::string encode(const IgtRecord& rec, TaskFormat fmt) { return encode_example(rec, fmt).full(); }

DecodedPrediction decode_interleaved(std::string_view output, DecodeMode mode) {
  const std::string text = nfc(strip_label(output, kOutputLabel));
  DecodedPrediction d;
  d.well_formed = true;
  MorphStructure gloss, seg;
  const auto words = split_whitespace(text);
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::string error;
    auto [gw, sw] = UnitParser(words[i]).parse(error);
    if (!error.empty()) {
      d.well_formed = false;
      d.diagnostics.push_back("word " + std::to_string(i) + ": " + error +
                              (gw.empty() ? ", word dropped" : ", kept parseable prefix"));
    }
    if (gw.empty()) continue;
    if (is_punctuation_token(detokenize(gw)) != is_punctuation_token(detokenize(sw))) {
      d.well_formed = false;
      d.diagnostics.push_back("word " + std::to_string(i) +
                              ": punctuation on only one side, word dropped");
      continue;
    }
    gloss.words.push_back(std::move(gw));
    seg.words.push_back(std::move(sw));
  }
  if (words.empty()) {
    d.well_formed = false;
    d.diagnostics.push_back("empty output");
  }
  d.glosses = detokenize(gloss);
  if (!seg.words.empty()) d.segmentation = detokenize(seg);
  return finish(std::move(d), mode);
}

DecodedPrediction decode_concatenated(std::string_view output, DecodeMode mode) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= output.size()) {
    const auto end = output.find('\n', start);
    lines.push_back(output.substr(start, end == std::string_view::npos ? std::string_view::npos
                                                                       : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }

  auto find_label = [&](std::string_view label, std::size_t from) -> std::optional<std::size_t> {
    for (std::size_t i = from; i < lines.size(); ++i) {
      const std::string t = trim(lines[i]);
      if (t.rfind(label, 0) == 0) return i;
    }
    return std::nullopt;
  };
  auto content = [&](std::size_t i, std::string_view label) {
    const std::string t = trim(lines[i]);
    return normalize_space(std::string_view(t).substr(label.size()));
  };

  DecodedPrediction d;
  const auto seg_at = find_label(kSegmentationLabel, 0);
  std::optional<std::size_t> gloss_at;
  if (seg_at) gloss_at = find_label(kGlossesLabel, *seg_at + 1);
  if (seg_at) d.segmentation = content(*seg_at, kSegmentationLabel);
  if (gloss_at) {
    d.glosses = content(*gloss_at, kGlossesLabel);
  } else if (auto anywhere = find_label(kGlossesLabel, 0)) {
    d.glosses = content(*anywhere, kGlossesLabel);
    if (seg_at) d.diagnostics.push_back("\"Glosses:\" line precedes \"Segmentation:\" line");
  }

  if (!seg_at) d.diagnostics.push_back("missing \"Segmentation:\" line");
  if (d.glosses.empty() && !find_label(kGlossesLabel, 0))
    d.diagnostics.push_back("missing \"Glosses:\" line");
  if (d.segmentation && d.segmentation->empty()) d.diagnostics.push_back("empty segmentation");
  if (find_label(kGlossesLabel, 0) && d.glosses.empty()) d.diagnostics.push_back("empty glosses");
  d.well_formed = d.diagnostics.empty();
  return finish(std::move(d), mode);
}

}  // namespace igt
