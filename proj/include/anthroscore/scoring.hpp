#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "anthroscore/pronouns.hpp"

namespace anthro {

// Placeholder used in masked sentences throughout the toolkit.  Backends
// substitute their own mask token before querying a model.
inline constexpr const char* kMaskPlaceholder = "[MASK]";

enum class GrammaticalRole { kSubject, kObject, kUnknown };

const char* to_string(GrammaticalRole role);
GrammaticalRole role_from_string(const std::string& s);

// One entity mention with its sentence context and exactly one mask
// placeholder.  Replacing the placeholder with entity_surface must
// reproduce original_sentence byte-for-byte.
struct MaskedSentence {
  std::string doc_id;
  int sentence_index = 0;
  std::string original_sentence;
  std::string masked_sentence;
  std::string entity_surface;   // the full noun chunk that was masked
  std::string entity_keyword;   // canonical lexicon keyword that matched
  std::size_t span_begin = 0;   // offset of entity_surface in original_sentence
  std::size_t span_len = 0;
  GrammaticalRole role = GrammaticalRole::kUnknown;
  std::optional<std::string> verb_lemma;

  // Document metadata carried along for grouping and trends.
  std::string source;                   // "papers" | "news" | "other"
  std::optional<std::string> date;      // ISO-8601
  std::vector<std::string> categories;

  bool round_trips() const;
};

struct ScoredSentence {
  MaskedSentence sentence;
  double p_human = 0.0;
  double p_non_human = 0.0;
  double score_a = 0.0;  // ln(p_human / p_non_human)
};

struct ExtremesPartition {
  std::vector<ScoredSentence> high;  // score_a > hi_threshold, strictly
  std::vector<ScoredSentence> low;   // score_a < lo_threshold, strictly
  double hi_threshold = 1.0;
  double lo_threshold = -1.0;
};

// Smoothing added to each pronoun probability before summing, so a
// backend returning exact zeros cannot produce an infinite log-ratio.
inline constexpr double kProbabilityEpsilon = 1e-12;

// Sums probabilities over the two pronoun lists.  `dist` must contain an
// entry for every inventory pronoun (extra keys are ignored).
// Throws MissingPronoun on an absent key.
std::pair<double, double> aggregate_pronoun_probabilities(
    const std::map<std::string, double>& dist, const PronounInventory& inventory,
    double epsilon = kProbabilityEpsilon);

// Computes the per-sentence log-ratio score.  Throws ZeroProbabilityMass
// if either probability sum is zero after smoothing.
ScoredSentence score_sentence(const MaskedSentence& sentence,
                              const std::map<std::string, double>& dist,
                              const PronounInventory& inventory,
                              double epsilon = kProbabilityEpsilon);

// Arithmetic mean of score_a.  Throws EmptyCollection.
double mean_anthroscore(const std::vector<ScoredSentence>& scores);

// Strict-inequality split into high / low bands; scores in [lo, hi] fall
// in neither set.  Throws InvalidThresholds if hi <= lo.
ExtremesPartition partition_extremes(const std::vector<ScoredSentence>& scores,
                                     double hi = 1.0, double lo = -1.0);

}  // namespace anthro
