#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "anthroscore/scoring.hpp"

namespace anthro {

// One unit of corpus text (an abstract, a headline, ...).
struct Document {
  std::string doc_id;
  std::string text;
  std::optional<std::string> title;
  std::optional<std::string> date;  // ISO-8601 "YYYY-MM-DD"
  std::vector<std::string> categories;
  std::string source = "other";  // "papers" | "news" | "other"
};

// Validates date format and source tag; throws ConfigError.
void validate_document(const Document& doc);

// A named set of target-entity keywords with matching rules.  Keywords
// are case-folded and duplicate-free; multi-word phrases match when the
// chunk's trailing words equal the phrase.
class EntityLexicon {
 public:
  EntityLexicon(std::string name, std::vector<std::string> keywords,
                bool allow_plural = true);

  // Plain text file, one keyword per line, '#' comments.
  static EntityLexicon load(const std::string& name, const std::string& path,
                            bool allow_plural = true);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& keywords() const { return keywords_; }
  bool allow_plural() const { return allow_plural_; }

  // Returns the canonical keyword matched by the chunk's trailing words,
  // longest keyword first; empty optional when nothing matches.
  std::optional<std::string> match_chunk(const std::vector<std::string>& chunk_words) const;

 private:
  std::string name_;
  std::vector<std::string> keywords_;  // case-folded, sorted longest-first
  bool allow_plural_;
};

struct CharSpan {
  std::size_t begin = 0;
  std::size_t len = 0;
  std::size_t end() const { return begin + len; }
};

struct Chunk {
  CharSpan span;
  std::string text;
};

struct SemanticTriple {
  int sentence_index = 0;
  Chunk subject;
  std::string verb_lemma;
  std::optional<Chunk> object;
};

struct EntityMention {
  Chunk chunk;
  std::string keyword;
  GrammaticalRole role = GrammaticalRole::kUnknown;
  std::optional<std::string> verb_lemma;
};

// --- sentence segmentation ---

// Abbreviation-aware splitter.  Spans are trimmed sentence extents in
// order; the gaps between them contain only whitespace.  Text without
// terminal punctuation yields one sentence.
std::vector<CharSpan> split_sentences(const std::string& text);

// --- rule-based triple extraction ---

// Part-of-speech-free heuristics: verb groups are anchored on auxiliaries
// and verbal morphology, subject chunks extend left from the verb group,
// object chunks right.  Infinitive and gerund complements yield extra
// triples sharing the clause subject.
std::vector<SemanticTriple> extract_triples_builtin(const std::string& sentence,
                                                    int sentence_index = 0);

// Conservative suffix-rule lemmatizer (-s/-es/-ed/-ing with doubling and
// e-restoration) plus a small irregular table.
std::string lemmatize_verb(const std::string& word);

// --- entity mentions and masking ---

// A mention is any subject or object chunk whose head matches a lexicon
// keyword (or its regular plural).  Longest keyword wins; each chunk
// yields at most one mention.
std::vector<EntityMention> find_entity_mentions(const std::string& sentence,
                                                const std::vector<SemanticTriple>& triples,
                                                const EntityLexicon& lexicon);

// Replaces the mention chunk with exactly one placeholder; throws
// OverlappingMask if the span is invalid or already masked.
MaskedSentence mask_mention(const std::string& sentence, const EntityMention& mention);

// Removes exact-string duplicates of masked_sentence; first occurrence
// kept, order preserved.
std::vector<MaskedSentence> deduplicate(const std::vector<MaskedSentence>& records);

// True iff any keyword occurs (case-insensitive, word-boundary delimited,
// hyphens treated as boundaries, regular plural tolerated on the final
// word) in the document's title or text.
bool filter_lm_documents(const Document& doc, const std::vector<std::string>& lm_keywords);

// Word-boundary phrase search used by the LM filter; exposed for tests.
bool contains_phrase(const std::string& haystack, const std::string& phrase,
                     bool allow_plural = true);

}  // namespace anthro
