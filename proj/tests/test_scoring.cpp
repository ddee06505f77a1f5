#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "anthroscore/errors.hpp"
#include "anthroscore/pronouns.hpp"
#include "anthroscore/scoring.hpp"

using namespace anthro;

namespace {

std::map<std::string, double> random_distribution(std::mt19937_64& rng,
                                                  const PronounInventory& inv) {
  std::uniform_real_distribution<double> u(1e-6, 1.0);
  std::map<std::string, double> dist;
  for (const auto& p : inv.all()) dist[p] = u(rng);
  return dist;
}

MaskedSentence sentence_fixture() {
  MaskedSentence ms;
  ms.doc_id = "d1";
  ms.original_sentence = "The system halts.";
  ms.masked_sentence = "[MASK] halts.";
  ms.entity_surface = "The system";
  ms.span_begin = 0;
  ms.span_len = 10;
  return ms;
}

}  // namespace

TEST_CASE("bundled inventory matches the published pronoun lists") {
  auto inv = PronounInventory::bundled();
  CHECK(inv.human() == std::vector<std::string>{"he", "she", "her", "him", "He",
                                                "She", "Her"});
  CHECK(inv.non_human() == std::vector<std::string>{"it", "its", "It", "Its"});
  CHECK(inv.all().size() == 11);
  CHECK(inv.all().front() == "he");  // human block first: the wire order
}

TEST_CASE("inventory rejects empty, overlapping, and duplicated lists") {
  CHECK_THROWS_AS(PronounInventory({}, {"it"}), ConfigError);
  CHECK_THROWS_AS(PronounInventory({"he"}, {}), ConfigError);
  CHECK_THROWS_AS(PronounInventory({"he", "it"}, {"it"}), ConfigError);
  CHECK_THROWS_AS(PronounInventory({"he", "he"}, {"it"}), ConfigError);
}

TEST_CASE("fingerprint ignores list order but not membership") {
  PronounInventory a({"he", "she"}, {"it", "its"});
  PronounInventory b({"she", "he"}, {"its", "it"});
  PronounInventory c({"he", "she"}, {"it"});
  CHECK(a.fingerprint() == b.fingerprint());
  CHECK(a.fingerprint() != c.fingerprint());
}

TEST_CASE("without removes one pronoun and guards the last one") {
  auto inv = PronounInventory::bundled();
  auto reduced = inv.without("she");
  CHECK(reduced.human().size() == 6);
  CHECK(reduced.non_human().size() == 4);
  CHECK_THROWS_AS(inv.without("they"), UnknownPronoun);
  PronounInventory tiny({"he"}, {"it"});
  CHECK_THROWS_AS(tiny.without("he"), LastPronoun);
  CHECK_THROWS_AS(tiny.without("it"), LastPronoun);
}

TEST_CASE("aggregation sums each class and requires every pronoun") {
  PronounInventory inv({"he", "she"}, {"it"});
  std::map<std::string, double> dist{{"he", 0.1}, {"she", 0.2}, {"it", 0.3}};
  auto [h, n] = aggregate_pronoun_probabilities(dist, inv, 0.0);
  CHECK(h == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(n == doctest::Approx(0.3).epsilon(1e-12));
  dist.erase("she");
  CHECK_THROWS_AS(aggregate_pronoun_probabilities(dist, inv), MissingPronoun);
}

TEST_CASE("uniform probabilities give ln(7/4) on the bundled inventory") {
  auto inv = PronounInventory::bundled();
  std::map<std::string, double> dist;
  for (const auto& p : inv.all()) dist[p] = 0.01;
  auto scored = score_sentence(sentence_fixture(), dist, inv);
  CHECK(scored.score_a == doctest::Approx(std::log(7.0 / 4.0)).epsilon(1e-12));
}

TEST_CASE("zero masses raise instead of producing infinities") {
  PronounInventory inv({"he"}, {"it"});
  std::map<std::string, double> dist{{"he", 0.0}, {"it", 0.5}};
  CHECK_THROWS_AS(score_sentence(sentence_fixture(), dist, inv, 0.0),
                  ZeroProbabilityMass);
  // With the default epsilon the same input is finite.
  auto scored = score_sentence(sentence_fixture(), dist, inv);
  CHECK(std::isfinite(scored.score_a));
}

TEST_CASE("randomized scoring properties hold over 1000 distributions") {
  auto inv = PronounInventory::bundled();
  PronounInventory swapped(inv.non_human(), inv.human());
  std::mt19937_64 rng(20240617);
  auto ms = sentence_fixture();

  for (int i = 0; i < 1000; ++i) {
    auto dist = random_distribution(rng, inv);
    auto scored = score_sentence(ms, dist, inv, 0.0);

    // e^A equals the probability ratio.
    CHECK(std::exp(scored.score_a) ==
          doctest::Approx(scored.p_human / scored.p_non_human).epsilon(1e-9));

    // Scale invariance: rescaling all probabilities cancels in the ratio.
    auto scaled = dist;
    for (auto& [k, v] : scaled) v *= 0.37;
    CHECK(score_sentence(ms, scaled, inv, 0.0).score_a ==
          doctest::Approx(scored.score_a).epsilon(1e-9));

    // Antisymmetry: swapping the class lists negates the score.
    CHECK(score_sentence(ms, dist, swapped, 0.0).score_a ==
          doctest::Approx(-scored.score_a).epsilon(1e-9));

    // Monotonicity: raising a human pronoun raises the score.
    auto bumped = dist;
    bumped["she"] += 0.25;
    CHECK(score_sentence(ms, bumped, inv, 0.0).score_a > scored.score_a);
  }
}

TEST_CASE("mean requires a non-empty collection") {
  CHECK_THROWS_AS(mean_anthroscore({}), EmptyCollection);
  ScoredSentence a, b;
  a.score_a = 1.0;
  b.score_a = 2.0;
  CHECK(mean_anthroscore({a, b}) == doctest::Approx(1.5));
}

TEST_CASE("extremes partition uses strict thresholds") {
  std::vector<ScoredSentence> scores(5);
  scores[0].score_a = 1.5;
  scores[1].score_a = 1.0;  // boundary: excluded
  scores[2].score_a = 0.0;
  scores[3].score_a = -1.0;  // boundary: excluded
  scores[4].score_a = -2.0;
  auto parts = partition_extremes(scores, 1.0, -1.0);
  CHECK(parts.high.size() == 1);
  CHECK(parts.low.size() == 1);
  CHECK_THROWS_AS(partition_extremes(scores, -1.0, 1.0), InvalidThresholds);
}

TEST_CASE("round_trips validates the mask placeholder substitution") {
  auto ms = sentence_fixture();
  CHECK(ms.round_trips());
  ms.masked_sentence = "[MASK] stops.";
  CHECK_FALSE(ms.round_trips());
}
