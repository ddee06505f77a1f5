#include "anthroscore/conllu.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "anthroscore/errors.hpp"

namespace anthro {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == '\t') {
      fields.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(current);
  return fields;
}

}  // namespace

std::vector<ConlluSentence> parse_conllu(const std::string& content,
                                         const std::string& origin) {
  std::vector<ConlluSentence> sentences;
  ConlluSentence current;
  std::istringstream in(content);
  std::string line;
  int lineno = 0;
  auto flush = [&] {
    if (!current.tokens.empty()) sentences.push_back(std::move(current));
    current = ConlluSentence{};
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    if (line[0] == '#') {
      auto eq = line.find('=');
      if (eq != std::string::npos) {
        std::string key = line.substr(1, eq - 1);
        std::string value = line.substr(eq + 1);
        auto trim = [](std::string s) {
          auto b = s.find_first_not_of(" \t");
          auto e = s.find_last_not_of(" \t");
          return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        if (trim(key) == "sent_id") current.sent_id = trim(value);
        if (trim(key) == "text") current.text = trim(value);
      }
      continue;
    }
    auto fields = split_tabs(line);
    if (fields.size() < 8) {
      throw ConlluParseError(origin + ":" + std::to_string(lineno) +
                             ": expected 10 tab-separated fields");
    }
    const std::string& id_field = fields[0];
    // Skip multiword-token ranges (1-2) and empty nodes (1.1).
    if (id_field.find('-') != std::string::npos ||
        id_field.find('.') != std::string::npos) {
      continue;
    }
    ConlluToken tok;
    try {
      tok.id = std::stoi(id_field);
      tok.head = fields[6] == "_" ? 0 : std::stoi(fields[6]);
    } catch (const std::exception&) {
      throw ConlluParseError(origin + ":" + std::to_string(lineno) +
                             ": non-numeric ID or HEAD field");
    }
    tok.form = fields[1];
    tok.lemma = fields[2];
    tok.upos = fields[3];
    tok.deprel = fields[7];
    current.tokens.push_back(std::move(tok));
  }
  flush();
  return sentences;
}

std::vector<ConlluSentence> parse_conllu_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConlluParseError("cannot open CoNLL-U file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_conllu(buf.str(), path);
}

std::vector<ManifestEntry> read_conllu_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConlluParseError("cannot open manifest: " + path);
  std::vector<ManifestEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      ManifestEntry e;
      e.ordinal = j.at("ordinal").get<int>();
      e.doc_id = j.at("doc_id").get<std::string>();
      e.sentence_index = j.at("sentence_index").get<int>();
      out.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw ConlluParseError(path + ":" + std::to_string(lineno) + ": " + ex.what());
    }
  }
  return out;
}

ParseIndex::ParseIndex(const std::vector<ConlluSentence>& sentences,
                       const std::vector<ManifestEntry>& manifest) {
  for (const auto& e : manifest) {
    if (e.ordinal < 0 || e.ordinal >= static_cast<int>(sentences.size())) {
      throw ConlluParseError("manifest ordinal " + std::to_string(e.ordinal) +
                             " out of range");
    }
    by_key_[{e.doc_id, e.sentence_index}] = sentences[static_cast<std::size_t>(e.ordinal)];
  }
}

const ConlluSentence* ParseIndex::find(const std::string& doc_id,
                                       int sentence_index) const {
  auto it = by_key_.find({doc_id, sentence_index});
  return it == by_key_.end() ? nullptr : &it->second;
}

namespace {

// Aligns token forms to character offsets by sequential search.
std::vector<CharSpan> align_tokens(const std::string& sentence,
                                   const std::vector<ConlluToken>& tokens) {
  std::vector<CharSpan> spans;
  std::size_t cursor = 0;
  for (const auto& tok : tokens) {
    auto pos = sentence.find(tok.form, cursor);
    if (pos == std::string::npos) {
      throw ConlluParseError("token form '" + tok.form +
                             "' not found in sentence text: " + sentence);
    }
    spans.push_back({pos, tok.form.size()});
    cursor = pos + tok.form.size();
  }
  return spans;
}

}  // namespace

std::vector<SemanticTriple> extract_triples_conllu(const std::string& sentence,
                                                   const ConlluSentence& parse,
                                                   int sentence_index) {
  const auto& tokens = parse.tokens;
  std::vector<CharSpan> spans = align_tokens(sentence, tokens);

  auto by_id = [&](int id) -> const ConlluToken* {
    for (const auto& t : tokens) {
      if (t.id == id) return &t;
    }
    return nullptr;
  };

  // Subtree projection as a contiguous token-id interval.
  auto subtree_chunk = [&](const ConlluToken& root) {
    std::vector<int> members{root.id};
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& t : tokens) {
        if (std::find(members.begin(), members.end(), t.id) != members.end()) continue;
        if (std::find(members.begin(), members.end(), t.head) != members.end()) {
          members.push_back(t.id);
          grew = true;
        }
      }
    }
    auto [min_it, max_it] = std::minmax_element(members.begin(), members.end());
    std::size_t first_idx = 0, last_idx = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (tokens[i].id == *min_it) first_idx = i;
      if (tokens[i].id == *max_it) last_idx = i;
    }
    Chunk c;
    c.span.begin = spans[first_idx].begin;
    c.span.len = spans[last_idx].end() - spans[first_idx].begin;
    c.text = sentence.substr(c.span.begin, c.span.len);
    return c;
  };

  std::vector<SemanticTriple> triples;
  for (const auto& t : tokens) {
    bool is_subject = t.deprel == "nsubj" || t.deprel == "nsubj:pass" ||
                      t.deprel == "csubj" || t.deprel == "csubj:pass" ||
                      t.deprel == "nsubjpass";
    if (!is_subject) continue;
    const ConlluToken* verb = by_id(t.head);
    if (verb == nullptr) continue;

    SemanticTriple triple;
    triple.sentence_index = sentence_index;
    triple.subject = subtree_chunk(t);
    triple.verb_lemma = verb->lemma == "_" ? lemmatize_verb(verb->form) : verb->lemma;

    for (const auto& o : tokens) {
      bool is_object = o.deprel == "obj" || o.deprel == "dobj" || o.deprel == "iobj";
      if (is_object && o.head == verb->id) {
        triple.object = subtree_chunk(o);
        break;
      }
    }
    triples.push_back(std::move(triple));
  }
  return triples;
}

}  // namespace anthro
