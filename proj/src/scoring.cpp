#include "anthroscore/scoring.hpp"

#include <cmath>

#include "anthroscore/errors.hpp"

namespace anthro {

const char* to_string(GrammaticalRole role) {
  switch (role) {
    case GrammaticalRole::kSubject: return "subject";
    case GrammaticalRole::kObject: return "object";
    case GrammaticalRole::kUnknown: return "unknown";
  }
  return "unknown";
}

GrammaticalRole role_from_string(const std::string& s) {
  if (s == "subject") return GrammaticalRole::kSubject;
  if (s == "object") return GrammaticalRole::kObject;
  return GrammaticalRole::kUnknown;
}

bool MaskedSentence::round_trips() const {
  auto pos = masked_sentence.find(kMaskPlaceholder);
  if (pos == std::string::npos) return false;
  if (masked_sentence.find(kMaskPlaceholder, pos + 1) != std::string::npos) {
    return false;
  }
  std::string rebuilt = masked_sentence;
  rebuilt.replace(pos, std::string(kMaskPlaceholder).size(), entity_surface);
  if (rebuilt != original_sentence) return false;
  if (span_begin + span_len > original_sentence.size()) return false;
  return original_sentence.compare(span_begin, span_len, entity_surface) == 0;
}

std::pair<double, double> aggregate_pronoun_probabilities(
    const std::map<std::string, double>& dist, const PronounInventory& inventory,
    double epsilon) {
  auto sum_over = [&](const std::vector<std::string>& pronouns) {
    double total = 0.0;
    for (const auto& p : pronouns) {
      auto it = dist.find(p);
      if (it == dist.end()) {
        throw MissingPronoun("backend distribution is missing pronoun '" + p +
                             "' (backend contract violation)");
      }
      total += it->second + epsilon;
    }
    return total;
  };
  return {sum_over(inventory.human()), sum_over(inventory.non_human())};
}

ScoredSentence score_sentence(const MaskedSentence& sentence,
                              const std::map<std::string, double>& dist,
                              const PronounInventory& inventory, double epsilon) {
  auto [p_human, p_non_human] = aggregate_pronoun_probabilities(dist, inventory, epsilon);
  if (p_human <= 0.0 || p_non_human <= 0.0) {
    throw ZeroProbabilityMass("zero probability mass after smoothing for sentence: " +
                              sentence.masked_sentence);
  }
  ScoredSentence out;
  out.sentence = sentence;
  out.p_human = p_human;
  out.p_non_human = p_non_human;
  out.score_a = std::log(p_human) - std::log(p_non_human);
  return out;
}

double mean_anthroscore(const std::vector<ScoredSentence>& scores) {
  if (scores.empty()) {
    throw EmptyCollection("mean over an empty score collection");
  }
  double total = 0.0;
  for (const auto& s : scores) total += s.score_a;
  return total / static_cast<double>(scores.size());
}

ExtremesPartition partition_extremes(const std::vector<ScoredSentence>& scores,
                                     double hi, double lo) {
  if (!(hi > lo)) {
    throw InvalidThresholds("hi threshold must exceed lo threshold");
  }
  ExtremesPartition out;
  out.hi_threshold = hi;
  out.lo_threshold = lo;
  for (const auto& s : scores) {
    if (s.score_a > hi) {
      out.high.push_back(s);
    } else if (s.score_a < lo) {
      out.low.push_back(s);
    }
  }
  return out;
}

}  // namespace anthro
