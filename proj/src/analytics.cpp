#include "anthroscore/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>

#include <boost/math/distributions/students_t.hpp>

#include "anthroscore/errors.hpp"

namespace anthro {

namespace {

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Linear-interpolation quantile on a sorted sample.
double quantile_sorted(const std::vector<double>& sorted, double q) {
  double pos = q * static_cast<double>(sorted.size() - 1);
  std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

// Average ranks (1-based) with ties sharing their mean rank.
std::vector<double> average_ranks(const std::vector<double>& values) {
  std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = mean_of(x), my = mean_of(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw DegenerateInput("constant input to correlation");
  return sxy / std::sqrt(sxx * syy);
}

double rank_correlation(const std::vector<double>& x, const std::vector<double>& y) {
  return pearson(average_ranks(x), average_ranks(y));
}

void check_pair_sizes(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DegenerateInput("correlation inputs differ in length");
  if (x.size() < 3) throw DegenerateInput("correlation needs at least 3 points");
}

}  // namespace

std::vector<GroupedScore> group_mean_ci(
    const std::vector<ScoredSentence>& scores,
    const std::function<std::vector<std::string>(const ScoredSentence&)>& key_fn,
    int n_boot, std::uint64_t seed) {
  std::vector<std::string> group_order;
  std::unordered_map<std::string, std::vector<double>> by_group;
  for (const auto& s : scores) {
    for (const auto& key : key_fn(s)) {
      auto [it, inserted] = by_group.try_emplace(key);
      if (inserted) group_order.push_back(key);
      it->second.push_back(s.score_a);
    }
  }

  std::vector<GroupedScore> out;
  out.reserve(group_order.size());
  for (const auto& key : group_order) {
    const auto& vals = by_group[key];
    GroupedScore g;
    g.group_key = key;
    g.n = vals.size();
    g.mean_a = mean_of(vals);

    // Per-group seed derivation keeps results identical regardless of how
    // groups are distributed across workers.
    std::mt19937_64 rng(seed ^ fnv1a(key));
    std::vector<double> boot(static_cast<std::size_t>(n_boot));
    for (auto& b : boot) {
      double sum = 0.0;
      for (std::size_t i = 0; i < vals.size(); ++i) {
        sum += vals[rng() % vals.size()];
      }
      b = sum / static_cast<double>(vals.size());
    }
    std::sort(boot.begin(), boot.end());
    g.ci_low = quantile_sorted(boot, 0.025);
    g.ci_high = quantile_sorted(boot, 0.975);
    out.push_back(std::move(g));
  }
  return out;
}

std::pair<double, double> spearman(const std::vector<double>& x,
                                   const std::vector<double>& y) {
  check_pair_sizes(x, y);
  double r = rank_correlation(x, y);
  double n = static_cast<double>(x.size());
  if (std::abs(r) >= 1.0) return {r, 0.0};
  double t = r * std::sqrt((n - 2.0) / (1.0 - r * r));
  boost::math::students_t dist(n - 2.0);
  double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  return {r, p};
}

std::pair<double, double> spearman_permutation(const std::vector<double>& x,
                                               const std::vector<double>& y) {
  check_pair_sizes(x, y);
  if (x.size() > 10) throw DegenerateInput("exact permutation limited to n <= 10");
  double r_obs = rank_correlation(x, y);

  std::vector<double> perm = y;
  std::sort(perm.begin(), perm.end());
  long long total = 0, at_least = 0;
  do {
    ++total;
    double r;
    try {
      r = rank_correlation(x, perm);
    } catch (const DegenerateInput&) {
      continue;  // fully tied permutation of a tie-heavy sample
    }
    if (std::abs(r) >= std::abs(r_obs) - 1e-12) ++at_least;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {r_obs, static_cast<double>(at_least) / static_cast<double>(total)};
}

std::pair<double, double> chi_square_2x2(const std::array<std::array<double, 2>, 2>& t) {
  double r0 = t[0][0] + t[0][1];
  double r1 = t[1][0] + t[1][1];
  double c0 = t[0][0] + t[1][0];
  double c1 = t[0][1] + t[1][1];
  if (r0 == 0.0 || r1 == 0.0 || c0 == 0.0 || c1 == 0.0) {
    throw ZeroMarginal("chi-square table has an empty row or column");
  }
  double n = r0 + r1;
  double det = t[0][0] * t[1][1] - t[0][1] * t[1][0];
  double chi2 = n * det * det / (r0 * r1 * c0 * c1);
  double p = std::erfc(std::sqrt(chi2 / 2.0));
  return {chi2, p};
}

std::vector<LogOddsResult> fightin_words(const std::map<std::string, long long>& counts_a,
                                         const std::map<std::string, long long>& counts_b,
                                         const std::map<std::string, long long>& prior_counts,
                                         double smoothing, double prior_scale) {
  std::map<std::string, double> alpha;
  for (const auto& [w, c] : prior_counts) alpha[w] = prior_scale * static_cast<double>(c);
  for (const auto& [w, c] : counts_a) alpha.try_emplace(w, 0.0);
  for (const auto& [w, c] : counts_b) alpha.try_emplace(w, 0.0);
  if (alpha.empty()) throw EmptyCorpus("no words to compare");
  for (auto& [w, a] : alpha) a += smoothing;

  double alpha0 = 0.0;
  for (const auto& [w, a] : alpha) alpha0 += a;
  auto count_in = [](const std::map<std::string, long long>& m, const std::string& w) {
    auto it = m.find(w);
    return it == m.end() ? 0ll : it->second;
  };
  double n_a = 0.0, n_b = 0.0;
  for (const auto& [w, a] : alpha) {
    n_a += static_cast<double>(count_in(counts_a, w));
    n_b += static_cast<double>(count_in(counts_b, w));
  }

  std::vector<LogOddsResult> out;
  out.reserve(alpha.size());
  for (const auto& [w, a_w] : alpha) {
    LogOddsResult r;
    r.word = w;
    r.count_a = count_in(counts_a, w);
    r.count_b = count_in(counts_b, w);
    double ya = static_cast<double>(r.count_a) + a_w;
    double yb = static_cast<double>(r.count_b) + a_w;
    r.delta = std::log(ya / (n_a + alpha0 - ya)) - std::log(yb / (n_b + alpha0 - yb));
    r.variance = 1.0 / ya + 1.0 / yb;
    r.z = r.delta / std::sqrt(r.variance);
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [](const LogOddsResult& a, const LogOddsResult& b) {
    if (a.z != b.z) return a.z > b.z;
    return a.word < b.word;
  });
  return out;
}

std::map<std::string, long long> verb_counts(const std::vector<ScoredSentence>& records,
                                             ScoreBand band, double hi, double lo,
                                             double mid_band) {
  std::map<std::string, long long> counts;
  for (const auto& r : records) {
    if (!r.sentence.verb_lemma) continue;
    bool in_band = false;
    switch (band) {
      case ScoreBand::kHigh: in_band = r.score_a > hi; break;
      case ScoreBand::kLow: in_band = r.score_a < lo; break;
      case ScoreBand::kMid: in_band = std::abs(r.score_a) < mid_band; break;
    }
    if (in_band) ++counts[*r.sentence.verb_lemma];
  }
  return counts;
}

AblationResult ablate_pronoun(
    const std::vector<std::pair<ScoredSentence, PronounDistribution>>& records,
    const PronounInventory& inventory, const std::string& pronoun_to_remove) {
  PronounInventory working =
      pronoun_to_remove.empty() ? inventory : inventory.without(pronoun_to_remove);

  AblationResult result;
  result.modified.reserve(records.size());
  std::vector<double> before, after;
  before.reserve(records.size());
  after.reserve(records.size());
  for (const auto& [scored, dist] : records) {
    ScoredSentence re = score_sentence(scored.sentence, dist.probabilities, working);
    before.push_back(scored.score_a);
    after.push_back(re.score_a);
    result.modified.push_back(std::move(re));
  }

  try {
    result.spearman_r = rank_correlation(before, after);
  } catch (const DegenerateInput&) {
    result.spearman_r = before == after ? 1.0 : 0.0;
  }
  return result;
}

std::vector<ScoredSentence> filter_by_verbs(const std::vector<ScoredSentence>& records,
                                            const std::set<std::string>& verbs,
                                            VerbFilterMode /*mode*/) {
  std::vector<ScoredSentence> kept;
  kept.reserve(records.size());
  for (const auto& r : records) {
    if (r.sentence.verb_lemma && verbs.count(*r.sentence.verb_lemma) != 0) continue;
    kept.push_back(r);
  }
  return kept;
}

std::vector<std::pair<std::string, long long>> entity_frequency_report(
    const std::vector<std::string>& chunk_heads, std::size_t top_k) {
  std::map<std::string, long long> counts;
  for (const auto& h : chunk_heads) ++counts[h];
  std::vector<std::pair<std::string, long long>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > top_k) ranked.resize(top_k);
  return ranked;
}

}  // namespace anthro
