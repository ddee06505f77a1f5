#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "anthroscore/config.hpp"
#include "anthroscore/conllu.hpp"
#include "anthroscore/pipeline.hpp"
#include "anthroscore/scoring.hpp"

namespace anthro {

struct SentenceError {
  std::string doc_id;
  int sentence_index = 0;
  std::string masked_sentence;
  std::string message;
};

struct ScoreOutcome {
  std::vector<ScoredSentence> scored;
  std::vector<SentenceError> errors;
  std::size_t documents = 0;
  std::size_t masked_total = 0;  // after dedup
  std::size_t duplicates_removed = 0;
};

// Segmentation, triple extraction (built-in heuristics, or dependency
// parses when `parses` is non-null), entity matching, masking, dedup.
// Output is sorted by (doc_id, sentence_index, span begin).
std::vector<MaskedSentence> build_masked_corpus(const std::vector<Document>& docs,
                                                const EntityLexicon& lexicon,
                                                const ParseIndex* parses,
                                                std::size_t* duplicates_removed);

// Scores sentences with an index-striped worker pool.  Assignment is by
// index, results are collected in index order, so output is identical for
// any worker count.  Per-sentence failures become SentenceError entries.
ScoreOutcome score_sentences(const std::vector<MaskedSentence>& sentences,
                             const FillMaskBackend& backend,
                             const PronounInventory& inventory, int workers);

// Subcommand drivers.  Each writes its outputs under config.output_dir
// atomically and returns a process exit code: 0 success, 2 partial
// backend failures.  Config and input errors throw (the CLI maps those
// to exit 1).
int cmd_score(const RunConfig& config);
int cmd_analyze(const RunConfig& config, const std::string& group_by);
int cmd_verbs(const RunConfig& config);
int cmd_ablate(const RunConfig& config, const std::string& ablation);
int cmd_freq_report(const RunConfig& config, std::size_t top_k);

}  // namespace anthro
