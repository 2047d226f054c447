#pragma once

// JSON encodings of the library's value types. Output objects use insertion
// order so files are byte-stable.

#include <string>

#include <json.hpp>

#include "igt/analytics.hpp"
#include "igt/baseline.hpp"
#include "igt/codecs.hpp"
#include "igt/corpus.hpp"
#include "igt/metrics.hpp"

namespace igt {

using ojson = nlohmann::ordered_json;

ojson to_json(const IgtRecord& rec);
// Throws InputError on missing/mistyped required keys or an unknown split.
IgtRecord record_from_json(const nlohmann::json& j);

ojson to_json(const AuditReport& r);
ojson to_json(const MetricReport& r);
ojson to_json(const DecodedPrediction& d);
ojson to_json(const RegressionFit& f);

ojson to_json(const GlossLexicon& lex);
// Throws InputError on schema violations.
GlossLexicon lexicon_from_json(const nlohmann::json& j);

// Parses one JSON line; InputError mentions `where` on failure.
nlohmann::json parse_json_line(const std::string& line, const std::string& where);

}  // namespace igt
