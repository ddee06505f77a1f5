#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "anthroscore/pronouns.hpp"

namespace anthro {

enum class BackendKind { kRemote, kStub, kCached };

struct BackendDescriptor {
  BackendKind kind = BackendKind::kStub;
  std::string model_id = "stub";
  std::string endpoint;                 // required for kRemote
  std::string mask_token = "[MASK]";    // surface form the backend expects

  void validate() const;  // throws ConfigError
};

struct PronounDistribution {
  std::map<std::string, double> probabilities;
  std::string model_id;
  // Which vocabulary surface forms were summed for each pronoun.
  std::map<std::string, std::vector<std::string>> resolved_variants;
};

// Contract for obtaining pronoun probabilities at the mask position.
// Implementations must be safe for concurrent calls.
class FillMaskBackend {
 public:
  virtual ~FillMaskBackend() = default;

  // `masked_sentence` contains the [MASK] placeholder exactly once.
  // Returns a probability for every pronoun in the inventory.
  virtual PronounDistribution fill_mask_pronouns(
      const std::string& masked_sentence,
      const PronounInventory& inventory) const = 0;

  virtual const std::string& model_id() const = 0;
};

// Deterministic in-process backend for hermetic tests and offline runs.
// Three modes:
//   uniform  — every pronoun gets the same probability
//   table    — explicit per-pronoun lookup table
//   lexical  — pure function of the masked text: per-pronoun base
//              probabilities (human and non-human masses balanced), a
//              small text-keyed jitter, and cue-word multipliers that
//              push the score toward the human or non-human side
class StubBackend : public FillMaskBackend {
 public:
  static StubBackend uniform(double probability = 0.01);
  static StubBackend table(std::map<std::string, double> probabilities);
  static StubBackend lexical();

  PronounDistribution fill_mask_pronouns(
      const std::string& masked_sentence,
      const PronounInventory& inventory) const override;

  // Probability of a single target string; what serve-stub exposes.
  double probability(const std::string& masked_sentence,
                     const std::string& target) const;

  const std::string& model_id() const override { return model_id_; }

  // Cue words recognized by the lexical mode.
  static const std::vector<std::string>& human_cues();
  static const std::vector<std::string>& non_human_cues();

 private:
  enum class Mode { kUniform, kTable, kLexical };
  Mode mode_ = Mode::kUniform;
  double uniform_p_ = 0.01;
  std::map<std::string, double> table_;
  std::string model_id_;
};

// Counts occurrences of the mask placeholder; shared by stub and server.
int count_mask_placeholders(const std::string& text);

std::unique_ptr<FillMaskBackend> make_backend(const BackendDescriptor& descriptor,
                                              const std::string& cache_path = "");

}  // namespace anthro
