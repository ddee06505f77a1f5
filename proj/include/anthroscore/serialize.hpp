#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "anthroscore/backend.hpp"
#include "anthroscore/pipeline.hpp"
#include "anthroscore/scoring.hpp"

namespace anthro {

// JSON wire/file forms.  JSONL readers skip blank lines and throw
// ConfigError with a line number on malformed input.

nlohmann::json to_json(const Document& doc);
Document document_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MaskedSentence& ms);
MaskedSentence masked_sentence_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ScoredSentence& s);
ScoredSentence scored_sentence_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PronounDistribution& d);
PronounDistribution distribution_from_json(const nlohmann::json& j);

std::vector<Document> read_documents_jsonl(const std::string& path);
std::vector<ScoredSentence> read_scored_jsonl(const std::string& path);

void write_jsonl(std::ostream& out, const std::vector<nlohmann::json>& rows);

// Writes to <path>.tmp then renames, so readers never see partial files.
void atomic_write_file(const std::string& path, const std::string& contents);

}  // namespace anthro
