#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "anthroscore/backend.hpp"
#include "anthroscore/pipeline.hpp"

namespace anthro {

// Run settings shared by every subcommand.  Loaded from a key=value file
// ('#' comments, optional double quotes around values); individual keys
// can then be overridden by command-line flags.
struct RunConfig {
  std::string corpus_path;
  std::string lexicon = "artifact";  // bundled name or a file path
  std::string data_dir = "data";     // bundled lexicons live here

  BackendDescriptor backend;
  std::string cache_path;     // empty disables the distribution cache
  std::string pronouns_path;  // empty uses the bundled inventory

  double hi = 1.0;
  std::optional<double> lo;  // defaults to -hi
  double prior_band = 0.5;

  std::uint64_t seed = 0;
  std::string output_dir = "out";
  int workers = 1;

  // Optional pre-parsed dependency sidecar; when both are set, triples
  // come from the parses instead of the built-in heuristics.
  std::string conllu_path;
  std::string conllu_manifest;

  // Optional document filter: path to a keyword list; only documents
  // mentioning a keyword are scored.
  std::string filter_keywords_path;

  double lo_threshold() const { return lo.value_or(-hi); }

  void validate() const;  // throws ConfigError naming the offending field
};

// Parses one key.  Throws ConfigError on unknown keys or bad values.
void apply_config_key(RunConfig& config, const std::string& key,
                      const std::string& value);

RunConfig load_run_config(const std::string& path);

// Resolves the configured lexicon: bundled names ("artifact", "lm",
// "human") map into data_dir/lexicons, anything else is a file path.
EntityLexicon resolve_lexicon(const RunConfig& config);

PronounInventory resolve_inventory(const RunConfig& config);

}  // namespace anthro
