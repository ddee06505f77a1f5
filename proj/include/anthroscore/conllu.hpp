#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anthroscore/pipeline.hpp"

namespace anthro {

struct ConlluToken {
  int id = 0;  // 1-based within the sentence
  std::string form;
  std::string lemma;
  std::string upos;
  int head = 0;  // 0 = root
  std::string deprel;
};

struct ConlluSentence {
  std::optional<std::string> sent_id;
  std::optional<std::string> text;  // "# text = ..." metadata
  std::vector<ConlluToken> tokens;
};

// Parses a CoNLL-U file.  Multiword-token and empty-node rows are
// skipped; malformed rows raise ConlluParseError with a line number.
std::vector<ConlluSentence> parse_conllu_file(const std::string& path);
std::vector<ConlluSentence> parse_conllu(const std::string& content,
                                         const std::string& origin = "<string>");

// Sidecar manifest: JSONL rows {"ordinal": int, "doc_id": str,
// "sentence_index": int} keying parse ordinals within the CoNLL-U file to
// corpus sentences.
struct ManifestEntry {
  int ordinal = 0;
  std::string doc_id;
  int sentence_index = 0;
};
std::vector<ManifestEntry> read_conllu_manifest(const std::string& path);

// Keyed lookup of pre-parsed sentences.
class ParseIndex {
 public:
  ParseIndex() = default;
  ParseIndex(const std::vector<ConlluSentence>& sentences,
             const std::vector<ManifestEntry>& manifest);

  const ConlluSentence* find(const std::string& doc_id, int sentence_index) const;

 private:
  std::map<std::pair<std::string, int>, ConlluSentence> by_key_;
};

// Builds triples from dependency relations: nsubj/csubj (and :pass
// variants) give subject chunks, obj/dobj/iobj give objects; chunks are
// the contiguous projection of the dependent's subtree located inside the
// sentence text.
std::vector<SemanticTriple> extract_triples_conllu(const std::string& sentence,
                                                   const ConlluSentence& parse,
                                                   int sentence_index = 0);

}  // namespace anthro
