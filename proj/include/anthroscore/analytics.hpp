#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "anthroscore/backend.hpp"
#include "anthroscore/scoring.hpp"

namespace anthro {

struct GroupedScore {
  std::string group_key;
  std::size_t n = 0;
  double mean_a = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

struct LogOddsResult {
  std::string word;
  long long count_a = 0;
  long long count_b = 0;
  double delta = 0.0;  // weighted log-odds difference
  double variance = 0.0;
  double z = 0.0;
};

struct TrendResult {
  std::vector<std::string> keys;  // strictly increasing
  std::vector<double> values;     // per-key group means
  double spearman_r = 0.0;
  double p_value = 1.0;
};

// Per-group means with percentile-bootstrap 95% confidence intervals
// (2.5/97.5, n_boot resamples).  Each group's resampling RNG is seeded
// from (seed, group key), so results are identical for any worker count.
// Group order follows first appearance.  Records may map to several
// groups (e.g. cross-listed categories).
std::vector<GroupedScore> group_mean_ci(
    const std::vector<ScoredSentence>& scores,
    const std::function<std::vector<std::string>(const ScoredSentence&)>& key_fn,
    int n_boot = 1000, std::uint64_t seed = 0);

// Spearman rank correlation with average ranks for ties and a two-sided
// t-approximation p-value.  Requires n >= 3 and non-constant inputs.
std::pair<double, double> spearman(const std::vector<double>& x,
                                   const std::vector<double>& y);

// Exact permutation p-value (two-sided, counts |r| >= |r_observed|);
// intended for n <= 10.
std::pair<double, double> spearman_permutation(const std::vector<double>& x,
                                               const std::vector<double>& y);

// Pearson chi-square on a 2x2 table without continuity correction;
// p from the df=1 closed form erfc(sqrt(chi2/2)).
std::pair<double, double> chi_square_2x2(const std::array<std::array<double, 2>, 2>& table);

// Weighted log-odds with an informative Dirichlet prior.  Words absent
// from the prior get `smoothing` pseudo-counts; `prior_scale` multiplies
// prior counts before smoothing.  Results sorted by z descending (ties
// by word).
std::vector<LogOddsResult> fightin_words(const std::map<std::string, long long>& counts_a,
                                         const std::map<std::string, long long>& counts_b,
                                         const std::map<std::string, long long>& prior_counts,
                                         double smoothing = 0.01,
                                         double prior_scale = 1.0);

enum class ScoreBand { kHigh, kLow, kMid };

// Verb-lemma counts among records in the requested band.  high: A > hi,
// low: A < lo, mid: |A| < mid_band (the log-odds prior pool).
std::map<std::string, long long> verb_counts(const std::vector<ScoredSentence>& records,
                                             ScoreBand band, double hi = 1.0,
                                             double lo = -1.0, double mid_band = 0.5);

struct AblationResult {
  std::vector<ScoredSentence> modified;
  double spearman_r = 1.0;
};

// Recomputes scores from cached distributions with one pronoun removed
// (empty pronoun = identity ablation, bitwise-equal scores, r = 1).
AblationResult ablate_pronoun(
    const std::vector<std::pair<ScoredSentence, PronounDistribution>>& records,
    const PronounInventory& inventory, const std::string& pronoun_to_remove);

enum class VerbFilterMode { kDropSentences, kDropVerbs };

// Removes records whose verb lemma is in the given set.  The two modes
// share mechanics; they differ in where the set comes from (a reporting
// verb lexicon vs. top-z verbs).
std::vector<ScoredSentence> filter_by_verbs(const std::vector<ScoredSentence>& records,
                                            const std::set<std::string>& verbs,
                                            VerbFilterMode mode);

// Chunk-head frequencies ranked by count descending, ties alphabetical.
std::vector<std::pair<std::string, long long>> entity_frequency_report(
    const std::vector<std::string>& chunk_heads, std::size_t top_k);

}  // namespace anthro
