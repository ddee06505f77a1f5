#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "anthroscore/backend.hpp"

namespace anthro {

struct CacheKey {
  std::string model_id;
  std::string masked_sentence;
  std::uint64_t inventory_fingerprint = 0;

  std::string composite() const;
};

// Persistent read-through cache of pronoun distributions.  Storage is an
// append-only record log: each record is a 4-byte little-endian length
// followed by that many bytes of JSON {key, value, checksum}.  Corrupt or
// truncated records are treated as misses with a warning on stderr.
// Writes are serialized internally; readers never observe torn entries.
class DistributionCache {
 public:
  explicit DistributionCache(std::string path);

  std::optional<PronounDistribution> get(const CacheKey& key) const;
  void put(const CacheKey& key, const PronounDistribution& value);

  std::size_t size() const;
  const std::string& path() const { return path_; }

 private:
  void load();

  std::string path_;
  mutable std::mutex mutex_;
  std::unordered_map<std::string, PronounDistribution> entries_;
};

// Wraps another backend; identical inputs hit the persistent store
// instead of re-querying.  Stored probabilities are returned bitwise.
class CachedBackend : public FillMaskBackend {
 public:
  CachedBackend(std::unique_ptr<FillMaskBackend> inner,
                std::shared_ptr<DistributionCache> cache);

  PronounDistribution fill_mask_pronouns(
      const std::string& masked_sentence,
      const PronounInventory& inventory) const override;

  const std::string& model_id() const override { return inner_->model_id(); }

  const DistributionCache& cache() const { return *cache_; }

 private:
  std::unique_ptr<FillMaskBackend> inner_;
  std::shared_ptr<DistributionCache> cache_;
};

}  // namespace anthro
