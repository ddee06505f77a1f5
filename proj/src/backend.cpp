#include "anthroscore/backend.hpp"

#include <cctype>
#include <cmath>
#include <set>

#include "anthroscore/errors.hpp"
#include "anthroscore/scoring.hpp"

namespace anthro {

void BackendDescriptor::validate() const {
  if (kind == BackendKind::kRemote && endpoint.empty()) {
    throw ConfigError("remote backend requires an endpoint");
  }
  if (mask_token.empty()) {
    throw ConfigError("backend mask_token must be non-empty");
  }
  if (model_id.empty()) {
    throw ConfigError("backend model_id must be non-empty");
  }
}

int count_mask_placeholders(const std::string& text) {
  int count = 0;
  std::size_t pos = 0;
  const std::string needle = kMaskPlaceholder;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

namespace {

// Maps a hash to [0, 1).
double hash01(std::uint64_t h) {
  return static_cast<double>(h >> 11) * (1.0 / 9007199254740992.0);
}

// Lowercase ASCII copy.
std::string lower(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Inflected surface forms the lexical stub recognizes for a cue lemma.
std::set<std::string> cue_forms(const std::string& cue) {
  std::set<std::string> forms{cue, cue + "s", cue + "es", cue + "ed", cue + "d",
                              cue + "ing"};
  if (cue.size() > 2 && cue.back() == 'e') {
    forms.insert(cue.substr(0, cue.size() - 1) + "ing");
  }
  return forms;
}

int count_cues(const std::string& text, const std::vector<std::string>& cues) {
  // Tokenize on non-alphabetic characters; count distinct cue lemmas present.
  std::set<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!current.empty()) {
      tokens.insert(current);
      current.clear();
    }
  }
  if (!current.empty()) tokens.insert(current);
  int n = 0;
  for (const auto& cue : cues) {
    for (const auto& form : cue_forms(cue)) {
      if (tokens.count(form)) {
        ++n;
        break;
      }
    }
  }
  return n;
}

constexpr double kClassMass = 0.14;
constexpr double kJitterAmplitude = 0.08;
constexpr double kCueFactor = 3.5;

}  // namespace

const std::vector<std::string>& StubBackend::human_cues() {
  static const std::vector<std::string> cues = {
      "learn", "fool",   "decide", "struggle", "understand", "guide",
      "mislead", "deceive", "assist", "refuse", "want", "believe",
      "hire", "beat", "encounter", "say"};
  return cues;
}

const std::vector<std::string>& StubBackend::non_human_cues() {
  static const std::vector<std::string> cues = {
      "propose", "use",      "develop", "present", "introduce", "outperform",
      "evaluate", "improve", "implement", "employ", "deploy", "build",
      "create", "extend"};
  return cues;
}

StubBackend StubBackend::uniform(double probability) {
  StubBackend b;
  b.mode_ = Mode::kUniform;
  b.uniform_p_ = probability;
  b.model_id_ = "stub-uniform";
  return b;
}

StubBackend StubBackend::table(std::map<std::string, double> probabilities) {
  StubBackend b;
  b.mode_ = Mode::kTable;
  b.table_ = std::move(probabilities);
  b.model_id_ = "stub-table";
  return b;
}

StubBackend StubBackend::lexical() {
  StubBackend b;
  b.mode_ = Mode::kLexical;
  b.model_id_ = "stub-lexical";
  return b;
}

double StubBackend::probability(const std::string& masked_sentence,
                                const std::string& target) const {
  switch (mode_) {
    case Mode::kUniform:
      return uniform_p_;
    case Mode::kTable: {
      auto it = table_.find(target);
      return it == table_.end() ? 0.0 : it->second;
    }
    case Mode::kLexical:
      break;
  }
  // Lexical mode.  Per-pronoun weights are normalized within each class so
  // that, absent cues and jitter, the human and non-human masses balance
  // exactly.  Classification of the target uses the bundled inventory; an
  // unknown target gets a small flat probability.
  static const PronounInventory bundled = PronounInventory::bundled();
  auto weight = [](const std::string& p) { return 1.0 + 0.5 * hash01(fnv1a(p)); };
  auto class_of = [&](const std::string& p) -> const std::vector<std::string>* {
    for (const auto& q : bundled.human()) {
      if (q == p) return &bundled.human();
    }
    for (const auto& q : bundled.non_human()) {
      if (q == p) return &bundled.non_human();
    }
    return nullptr;
  };
  const std::vector<std::string>* cls = class_of(target);
  if (cls == nullptr) return 0.001;
  double total = 0.0;
  for (const auto& p : *cls) total += weight(p);
  double base = kClassMass * weight(target) / total;

  double jitter = 2.0 * hash01(fnv1a(masked_sentence, fnv1a(target))) - 1.0;
  double prob = base * (1.0 + kJitterAmplitude * jitter);

  int human_hits = count_cues(masked_sentence, human_cues());
  int non_human_hits = count_cues(masked_sentence, non_human_cues());
  int tilt = human_hits - non_human_hits;
  // The disfavored class is scaled down so probabilities stay below 1.
  bool is_human = cls == &bundled.human();
  if (tilt > 0 && !is_human) prob *= std::pow(kCueFactor, -tilt);
  if (tilt < 0 && is_human) prob *= std::pow(kCueFactor, tilt);
  return prob;
}

PronounDistribution StubBackend::fill_mask_pronouns(
    const std::string& masked_sentence, const PronounInventory& inventory) const {
  if (count_mask_placeholders(masked_sentence) != 1) {
    throw MaskTokenizationError("stub backend requires exactly one placeholder in: " +
                                masked_sentence);
  }
  PronounDistribution out;
  out.model_id = model_id_;
  for (const auto& p : inventory.all()) {
    out.probabilities[p] = probability(masked_sentence, p);
    out.resolved_variants[p] = {p};
  }
  return out;
}

}  // namespace anthro
