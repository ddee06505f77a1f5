#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "anthroscore/analytics.hpp"
#include "anthroscore/errors.hpp"

using namespace anthro;

namespace {

// Independent rank assignment: 1 + (count below) + (ties - 1) / 2.
std::vector<double> oracle_ranks(const std::vector<double>& v) {
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double below = 0, equal = 0;
    for (double x : v) {
      if (x < v[i]) ++below;
      if (x == v[i]) ++equal;
    }
    ranks[i] = 1.0 + below + (equal - 1.0) / 2.0;
  }
  return ranks;
}

double oracle_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  double num = n * sxy - sx * sy;
  double den = std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
  return num / den;
}

double oracle_spearman(const std::vector<double>& x, const std::vector<double>& y) {
  return oracle_pearson(oracle_ranks(x), oracle_ranks(y));
}

// Recursive exhaustive permutation count, independent of std::next_permutation.
void permute_count(std::vector<double>& pool, std::vector<double>& acc,
                   const std::vector<double>& x, double r_obs, long long& total,
                   long long& hits) {
  if (pool.empty()) {
    ++total;
    if (std::abs(oracle_spearman(x, acc)) >= std::abs(r_obs) - 1e-12) ++hits;
    return;
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    double v = pool[i];
    pool.erase(pool.begin() + static_cast<long>(i));
    acc.push_back(v);
    permute_count(pool, acc, x, r_obs, total, hits);
    acc.pop_back();
    pool.insert(pool.begin() + static_cast<long>(i), v);
  }
}

ScoredSentence rec(double a, const std::string& verb = "", const std::string& src = "papers") {
  ScoredSentence s;
  s.score_a = a;
  s.sentence.source = src;
  if (!verb.empty()) s.sentence.verb_lemma = verb;
  return s;
}

}  // namespace

TEST_CASE("spearman matches the rank-then-pearson oracle for n <= 8") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> values(0, 5);  // small range forces ties
  for (int n = 3; n <= 8; ++n) {
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<double> x(n), y(n);
      for (auto& v : x) v = values(rng);
      for (auto& v : y) v = values(rng);
      bool cx = std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; });
      bool cy = std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; });
      if (cx || cy) {
        CHECK_THROWS_AS(spearman(x, y), DegenerateInput);
        continue;
      }
      auto [r, p] = spearman(x, y);
      CHECK(r == doctest::Approx(oracle_spearman(x, y)).epsilon(1e-12));
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
    }
  }
}

TEST_CASE("perfect monotone inputs give |r| = 1 and p = 0") {
  std::vector<double> x{1, 2, 3, 4};
  std::vector<double> up{10, 20, 30, 40}, down{9, 7, 5, 3};
  CHECK(spearman(x, up) == std::pair<double, double>{1.0, 0.0});
  CHECK(spearman(x, down) == std::pair<double, double>{-1.0, 0.0});
}

TEST_CASE("permutation p matches exhaustive enumeration for n <= 7") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> values(0, 4);
  for (int n = 3; n <= 7; ++n) {
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<double> x(n), y(n);
      for (auto& v : x) v = values(rng);
      for (auto& v : y) v = values(rng);
      bool cx = std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; });
      bool cy = std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; });
      if (cx || cy) continue;
      auto [r, p] = spearman_permutation(x, y);

      long long total = 0, hits = 0;
      std::vector<double> pool = y, acc;
      permute_count(pool, acc, x, r, total, hits);
      CHECK(p == doctest::Approx(static_cast<double>(hits) /
                                 static_cast<double>(total)).epsilon(1e-12));
    }
  }
}

TEST_CASE("chi-square matches the sum of (O-E)^2/E on random tables") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> counts(1, 200);
  for (int trial = 0; trial < 100; ++trial) {
    std::array<std::array<double, 2>, 2> t;
    for (auto& row : t) {
      for (auto& cell : row) cell = counts(rng);
    }
    double n = t[0][0] + t[0][1] + t[1][0] + t[1][1];
    double oracle = 0.0;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        double e = (t[i][0] + t[i][1]) * (t[0][j] + t[1][j]) / n;
        oracle += (t[i][j] - e) * (t[i][j] - e) / e;
      }
    }
    auto [chi2, p] = chi_square_2x2(t);
    CHECK(chi2 == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }
}

TEST_CASE("uniform table gives chi2 = 0, p = 1; empty margins throw") {
  auto [chi2, p] = chi_square_2x2({{{10, 10}, {10, 10}}});
  CHECK(chi2 == 0.0);
  CHECK(p == 1.0);
  CHECK_THROWS_AS(chi_square_2x2({{{0, 0}, {5, 5}}}), ZeroMarginal);
  CHECK_THROWS_AS(chi_square_2x2({{{0, 5}, {0, 5}}}), ZeroMarginal);
}

TEST_CASE("weighted log-odds matches the direct formula and is antisymmetric") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> count(0, 50);
  std::uniform_int_distribution<int> vocab(2, 20);
  const double smoothing = 0.01;
  for (int trial = 0; trial < 60; ++trial) {
    int v = vocab(rng);
    std::map<std::string, long long> a, b, prior;
    for (int w = 0; w < v; ++w) {
      std::string word = "w" + std::to_string(w);
      a[word] = count(rng);
      b[word] = count(rng);
      prior[word] = count(rng);
    }
    auto rows = fightin_words(a, b, prior, smoothing);

    double alpha0 = 0, n_a = 0, n_b = 0;
    for (const auto& [w, c] : prior) alpha0 += c + smoothing;
    for (const auto& [w, c] : a) n_a += c;
    for (const auto& [w, c] : b) n_b += c;
    for (const auto& row : rows) {
      double aw = prior.at(row.word) + smoothing;
      double ya = a.at(row.word) + aw;
      double yb = b.at(row.word) + aw;
      double delta = std::log(ya / (n_a + alpha0 - ya)) - std::log(yb / (n_b + alpha0 - yb));
      double var = 1.0 / ya + 1.0 / yb;
      CHECK(row.delta == doctest::Approx(delta).epsilon(1e-9));
      CHECK(row.variance == doctest::Approx(var).epsilon(1e-9));
      CHECK(row.z == doctest::Approx(delta / std::sqrt(var)).epsilon(1e-9));
    }

    // Swapping the corpora negates every delta and z exactly.
    auto swapped = fightin_words(b, a, prior, smoothing);
    std::map<std::string, LogOddsResult> by_word;
    for (const auto& row : swapped) by_word[row.word] = row;
    for (const auto& row : rows) {
      CHECK(row.delta == doctest::Approx(-by_word[row.word].delta).epsilon(1e-12));
      CHECK(row.z == doctest::Approx(-by_word[row.word].z).epsilon(1e-12));
    }
  }
}

TEST_CASE("log-odds output is ranked by z and rejects empty input") {
  auto rows = fightin_words({{"up", 30}, {"down", 1}}, {{"up", 1}, {"down", 30}},
                            {{"up", 5}, {"down", 5}});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].word == "up");
  CHECK(rows[0].z > 0);
  CHECK(rows[1].z < 0);
  CHECK_THROWS_AS(fightin_words({}, {}, {}), EmptyCorpus);
}

TEST_CASE("verb counts split records into the three bands") {
  std::vector<ScoredSentence> records{rec(1.5, "learn"), rec(1.2, "learn"),
                                      rec(-1.4, "propose"), rec(0.1, "hold"),
                                      rec(-0.3, "hold"),    rec(0.9, "drift"),
                                      rec(2.0, "")};
  auto high = verb_counts(records, ScoreBand::kHigh);
  auto low = verb_counts(records, ScoreBand::kLow);
  auto mid = verb_counts(records, ScoreBand::kMid);
  CHECK(high == std::map<std::string, long long>{{"learn", 2}});
  CHECK(low == std::map<std::string, long long>{{"propose", 1}});
  CHECK(mid == std::map<std::string, long long>{{"hold", 2}});
}

TEST_CASE("group means and CIs are seed-deterministic") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<ScoredSentence> records;
  for (int i = 0; i < 40; ++i) {
    records.push_back(rec(noise(rng), "", i % 2 ? "papers" : "news"));
  }
  auto key_fn = [](const ScoredSentence& s) {
    return std::vector<std::string>{s.sentence.source};
  };
  auto g1 = group_mean_ci(records, key_fn, 1000, 42);
  auto g2 = group_mean_ci(records, key_fn, 1000, 42);
  auto g3 = group_mean_ci(records, key_fn, 1000, 43);
  REQUIRE(g1.size() == 2);
  for (std::size_t i = 0; i < g1.size(); ++i) {
    CHECK(g1[i].ci_low == g2[i].ci_low);
    CHECK(g1[i].ci_high == g2[i].ci_high);
    CHECK(g1[i].ci_low <= g1[i].mean_a);
    CHECK(g1[i].mean_a <= g1[i].ci_high);
  }
  CHECK(g1[0].ci_low != g3[0].ci_low);  // different seed, different resamples

  // Multi-key records land in every listed group.
  auto multi = group_mean_ci(records, [](const ScoredSentence&) {
    return std::vector<std::string>{"a", "b"};
  });
  REQUIRE(multi.size() == 2);
  CHECK(multi[0].n == records.size());
  CHECK(multi[0].mean_a == multi[1].mean_a);
}

TEST_CASE("identity ablation is bitwise and removal follows hand summation") {
  auto inv = PronounInventory::bundled();
  StubBackend stub = StubBackend::lexical();
  std::vector<std::pair<ScoredSentence, PronounDistribution>> records;
  for (const std::string text : {"[MASK] halts.", "[MASK] learns chess.",
                                 "We propose [MASK] here.", "[MASK] waits."}) {
    auto dist = stub.fill_mask_pronouns(text, inv);
    MaskedSentence ms;
    ms.masked_sentence = text;
    records.emplace_back(score_sentence(ms, dist.probabilities, inv), dist);
  }

  auto identity = ablate_pronoun(records, inv, "");
  CHECK(identity.spearman_r == 1.0);
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(identity.modified[i].score_a == records[i].first.score_a);
  }

  auto removed = ablate_pronoun(records, inv, "she");
  for (std::size_t i = 0; i < records.size(); ++i) {
    double ph = 0, pn = 0;
    for (const auto& p : inv.human()) {
      if (p != "she") ph += records[i].second.probabilities.at(p) + 1e-12;
    }
    for (const auto& p : inv.non_human()) {
      pn += records[i].second.probabilities.at(p) + 1e-12;
    }
    CHECK(removed.modified[i].score_a ==
          doctest::Approx(std::log(ph) - std::log(pn)).epsilon(1e-12));
  }

  CHECK_THROWS_AS(ablate_pronoun(records, inv, "they"), UnknownPronoun);
}

TEST_CASE("verb filtering drops matching records only") {
  std::vector<ScoredSentence> records{rec(1.0, "show"), rec(0.5, "learn"),
                                      rec(-0.5, ""), rec(0.2, "show")};
  auto kept = filter_by_verbs(records, {"show"}, VerbFilterMode::kDropSentences);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].sentence.verb_lemma == "learn");
  CHECK_FALSE(kept[1].sentence.verb_lemma.has_value());
}

TEST_CASE("entity frequency report ranks by count then name") {
  auto ranked = entity_frequency_report(
      {"model", "system", "model", "agent", "system", "model", "agent"}, 2);
  REQUIRE(ranked.size() == 2);
  CHECK(ranked[0] == std::pair<std::string, long long>{"model", 3});
  CHECK(ranked[1] == std::pair<std::string, long long>{"agent", 2});
  auto all = entity_frequency_report({"b", "a"}, 10);
  CHECK(all[0].first == "a");  // tie broken alphabetically
}
