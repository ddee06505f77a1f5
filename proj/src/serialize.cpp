#include "anthroscore/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "anthroscore/errors.hpp"

namespace anthro {

using nlohmann::json;

json to_json(const Document& doc) {
  json j;
  j["doc_id"] = doc.doc_id;
  j["text"] = doc.text;
  if (doc.title) j["title"] = *doc.title;
  if (doc.date) j["date"] = *doc.date;
  j["categories"] = doc.categories;
  j["source"] = doc.source;
  return j;
}

Document document_from_json(const json& j) {
  Document d;
  d.doc_id = j.at("doc_id").get<std::string>();
  d.text = j.at("text").get<std::string>();
  if (j.contains("title") && !j["title"].is_null()) d.title = j["title"].get<std::string>();
  if (j.contains("date") && !j["date"].is_null()) d.date = j["date"].get<std::string>();
  if (j.contains("categories")) d.categories = j["categories"].get<std::vector<std::string>>();
  if (j.contains("source")) d.source = j["source"].get<std::string>();
  validate_document(d);
  return d;
}

json to_json(const MaskedSentence& ms) {
  json j;
  j["doc_id"] = ms.doc_id;
  j["sentence_index"] = ms.sentence_index;
  j["original_sentence"] = ms.original_sentence;
  j["masked_sentence"] = ms.masked_sentence;
  j["entity_surface"] = ms.entity_surface;
  j["entity_keyword"] = ms.entity_keyword;
  j["span"] = {ms.span_begin, ms.span_len};
  j["grammatical_role"] = to_string(ms.role);
  if (ms.verb_lemma) j["verb_lemma"] = *ms.verb_lemma;
  j["source"] = ms.source;
  if (ms.date) j["date"] = *ms.date;
  j["categories"] = ms.categories;
  return j;
}

MaskedSentence masked_sentence_from_json(const json& j) {
  MaskedSentence ms;
  ms.doc_id = j.at("doc_id").get<std::string>();
  ms.sentence_index = j.value("sentence_index", 0);
  ms.original_sentence = j.at("original_sentence").get<std::string>();
  ms.masked_sentence = j.at("masked_sentence").get<std::string>();
  ms.entity_surface = j.at("entity_surface").get<std::string>();
  ms.entity_keyword = j.value("entity_keyword", "");
  if (j.contains("span")) {
    ms.span_begin = j["span"][0].get<std::size_t>();
    ms.span_len = j["span"][1].get<std::size_t>();
  }
  ms.role = role_from_string(j.value("grammatical_role", "unknown"));
  if (j.contains("verb_lemma") && !j["verb_lemma"].is_null()) {
    ms.verb_lemma = j["verb_lemma"].get<std::string>();
  }
  ms.source = j.value("source", "other");
  if (j.contains("date") && !j["date"].is_null()) ms.date = j["date"].get<std::string>();
  if (j.contains("categories")) ms.categories = j["categories"].get<std::vector<std::string>>();
  return ms;
}

json to_json(const ScoredSentence& s) {
  json j = to_json(s.sentence);
  j["p_human"] = s.p_human;
  j["p_non_human"] = s.p_non_human;
  j["score_a"] = s.score_a;
  return j;
}

ScoredSentence scored_sentence_from_json(const json& j) {
  ScoredSentence s;
  s.sentence = masked_sentence_from_json(j);
  s.p_human = j.at("p_human").get<double>();
  s.p_non_human = j.at("p_non_human").get<double>();
  s.score_a = j.at("score_a").get<double>();
  return s;
}

json to_json(const PronounDistribution& d) {
  json j;
  j["model"] = d.model_id;
  j["probabilities"] = d.probabilities;
  j["resolved_variants"] = d.resolved_variants;
  return j;
}

PronounDistribution distribution_from_json(const json& j) {
  PronounDistribution d;
  d.model_id = j.at("model").get<std::string>();
  d.probabilities = j.at("probabilities").get<std::map<std::string, double>>();
  if (j.contains("resolved_variants")) {
    d.resolved_variants =
        j["resolved_variants"].get<std::map<std::string, std::vector<std::string>>>();
  }
  return d;
}

namespace {

template <typename T, typename Fn>
std::vector<T> read_jsonl(const std::string& path, Fn convert) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::vector<T> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(convert(json::parse(line)));
    } catch (const json::exception& e) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

std::vector<Document> read_documents_jsonl(const std::string& path) {
  return read_jsonl<Document>(path, document_from_json);
}

std::vector<ScoredSentence> read_scored_jsonl(const std::string& path) {
  return read_jsonl<ScoredSentence>(path, scored_sentence_from_json);
}

void write_jsonl(std::ostream& out, const std::vector<json>& rows) {
  for (const auto& row : rows) out << row.dump() << "\n";
}

void atomic_write_file(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write file: " + tmp);
    out << contents;
    out.flush();
    if (!out) throw ConfigError("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw ConfigError("rename failed: " + tmp + " -> " + path);
  }
}

}  // namespace anthro
