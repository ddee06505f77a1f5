#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "anthroscore/backend.hpp"
#include "anthroscore/cache.hpp"
#include "anthroscore/errors.hpp"
#include "anthroscore/scoring.hpp"

using namespace anthro;

namespace {

std::string temp_path(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "anthro-tests";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::filesystem::remove(path);
  return path.string();
}

}  // namespace

TEST_CASE("uniform stub echoes one probability for every pronoun") {
  auto inv = PronounInventory::bundled();
  auto stub = StubBackend::uniform(0.03);
  auto dist = stub.fill_mask_pronouns("[MASK] runs fast.", inv);
  CHECK(dist.probabilities.size() == 11);
  for (const auto& [p, v] : dist.probabilities) CHECK(v == 0.03);
  CHECK(dist.model_id == "stub-uniform");
}

TEST_CASE("table stub is a lookup table with zero default") {
  auto inv = PronounInventory::bundled();
  std::map<std::string, double> table{{"he", 0.3}, {"it", 0.1}};
  auto stub = StubBackend::table(table);
  auto dist = stub.fill_mask_pronouns("[MASK] halts.", inv);
  CHECK(dist.probabilities.at("he") == 0.3);
  CHECK(dist.probabilities.at("it") == 0.1);
  CHECK(dist.probabilities.at("she") == 0.0);
}

TEST_CASE("stub requires exactly one mask placeholder") {
  auto inv = PronounInventory::bundled();
  auto stub = StubBackend::uniform();
  CHECK_THROWS_AS(stub.fill_mask_pronouns("no mask here", inv),
                  MaskTokenizationError);
  CHECK_THROWS_AS(stub.fill_mask_pronouns("[MASK] and [MASK]", inv),
                  MaskTokenizationError);
  CHECK(count_mask_placeholders("[MASK] x [MASK]") == 2);
}

TEST_CASE("lexical stub is deterministic and cue-driven") {
  auto inv = PronounInventory::bundled();
  auto stub = StubBackend::lexical();
  MaskedSentence ms;

  auto score_of = [&](const std::string& text) {
    auto dist = stub.fill_mask_pronouns(text, inv);
    auto [h, n] = aggregate_pronoun_probabilities(dist.probabilities, inv);
    return std::log(h) - std::log(n);
  };

  // Same text, same distribution, bitwise.
  auto a = stub.fill_mask_pronouns("[MASK] halts.", inv);
  auto b = stub.fill_mask_pronouns("[MASK] halts.", inv);
  CHECK(a.probabilities == b.probabilities);

  // No cues: scores stay near zero.  One human cue: above 1.  One
  // non-human cue: below -1.  Balanced cues cancel.
  CHECK(std::abs(score_of("[MASK] halts.")) < 0.2);
  CHECK(score_of("[MASK] learns chess.") > 1.0);
  CHECK(score_of("We propose [MASK] here.") < -1.0);
  CHECK(std::abs(score_of("We propose that [MASK] learns chess.")) < 0.2);
}

TEST_CASE("cache round-trips distributions bitwise across reopen") {
  auto path = temp_path("cache-roundtrip.log");
  CacheKey key{"stub-lexical", "[MASK] halts.", PronounInventory::bundled().fingerprint()};
  PronounDistribution value;
  value.model_id = "stub-lexical";
  value.probabilities = {{"he", 0.123456789012345}, {"it", 0.9e-7}};
  value.resolved_variants = {{"he", {"he", "Ġhe"}}};

  {
    DistributionCache cache(path);
    CHECK_FALSE(cache.get(key).has_value());
    cache.put(key, value);
    CHECK(cache.get(key)->probabilities == value.probabilities);
  }
  DistributionCache reopened(path);
  REQUIRE(reopened.get(key).has_value());
  CHECK(reopened.get(key)->probabilities == value.probabilities);
  CHECK(reopened.get(key)->resolved_variants == value.resolved_variants);
  CHECK(reopened.size() == 1);
}

TEST_CASE("cache keys distinguish model, sentence, and inventory") {
  auto path = temp_path("cache-keys.log");
  DistributionCache cache(path);
  PronounDistribution value;
  value.probabilities = {{"he", 0.5}};
  CacheKey key{"m1", "s1", 1};
  cache.put(key, value);
  CHECK(cache.get({"m2", "s1", 1}) == std::nullopt);
  CHECK(cache.get({"m1", "s2", 1}) == std::nullopt);
  CHECK(cache.get({"m1", "s1", 2}) == std::nullopt);
  CHECK(cache.get(key).has_value());
}

TEST_CASE("a truncated record tail is skipped, earlier records survive") {
  auto path = temp_path("cache-truncated.log");
  CacheKey key{"m", "s", 7};
  PronounDistribution value;
  value.probabilities = {{"he", 0.25}};
  {
    DistributionCache cache(path);
    cache.put(key, value);
  }
  {
    // Append a length prefix promising more bytes than exist.
    std::ofstream out(path, std::ios::binary | std::ios::app);
    const char partial[] = {'\xff', '\x00', '\x00', '\x00', '{', '"'};
    out.write(partial, sizeof(partial));
  }
  DistributionCache cache(path);
  CHECK(cache.size() == 1);
  CHECK(cache.get(key).has_value());
}

TEST_CASE("a corrupted checksum is treated as a miss") {
  auto path = temp_path("cache-corrupt.log");
  CacheKey key{"m", "s", 7};
  PronounDistribution value;
  value.probabilities = {{"he", 0.25}};
  {
    DistributionCache cache(path);
    cache.put(key, value);
  }
  {
    // Flip a byte inside the JSON payload, keeping the length intact.
    std::fstream f(path, std::ios::binary | std::ios::in | std::ios::out);
    f.seekp(20);
    f.put('X');
  }
  DistributionCache cache(path);
  CHECK(cache.size() == 0);
}

TEST_CASE("cached backend is transparent and avoids repeat queries") {
  auto path = temp_path("cache-backend.log");
  auto inv = PronounInventory::bundled();
  BackendDescriptor desc;
  desc.kind = BackendKind::kStub;
  desc.model_id = "stub-lexical";

  auto direct = make_backend(desc);
  auto cached = make_backend(desc, path);
  auto d1 = direct->fill_mask_pronouns("[MASK] learns chess.", inv);
  auto c1 = cached->fill_mask_pronouns("[MASK] learns chess.", inv);
  CHECK(c1.probabilities == d1.probabilities);

  // Second call comes from the store, bitwise identical.
  auto c2 = cached->fill_mask_pronouns("[MASK] learns chess.", inv);
  CHECK(c2.probabilities == c1.probabilities);

  // A fresh process (new cache object) still hits.
  auto reopened = make_backend(desc, path);
  CHECK(reopened->fill_mask_pronouns("[MASK] learns chess.", inv).probabilities ==
        c1.probabilities);
}

TEST_CASE("backend descriptor validation names the missing field") {
  BackendDescriptor desc;
  desc.kind = BackendKind::kRemote;
  desc.endpoint = "";
  CHECK_THROWS_AS(desc.validate(), ConfigError);
  desc.endpoint = "http://127.0.0.1:1";
  desc.mask_token = "";
  CHECK_THROWS_AS(desc.validate(), ConfigError);
}
