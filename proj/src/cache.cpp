#include "anthroscore/cache.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "anthroscore/errors.hpp"
#include "anthroscore/serialize.hpp"

namespace anthro {

using nlohmann::json;

std::string CacheKey::composite() const {
  return model_id + "\x1f" + std::to_string(inventory_fingerprint) + "\x1f" +
         masked_sentence;
}

namespace {

std::uint64_t record_checksum(const json& key, const json& value) {
  return fnv1a(key.dump() + "\x1f" + value.dump());
}

json key_to_json(const CacheKey& key) {
  json j;
  j["model_id"] = key.model_id;
  j["masked_sentence"] = key.masked_sentence;
  j["inventory_fingerprint"] = key.inventory_fingerprint;
  return j;
}

CacheKey key_from_json(const json& j) {
  CacheKey k;
  k.model_id = j.at("model_id").get<std::string>();
  k.masked_sentence = j.at("masked_sentence").get<std::string>();
  k.inventory_fingerprint = j.at("inventory_fingerprint").get<std::uint64_t>();
  return k;
}

}  // namespace

DistributionCache::DistributionCache(std::string path) : path_(std::move(path)) {
  if (path_.empty()) throw ConfigError("cache path must be non-empty");
  load();
}

void DistributionCache::load() {
  std::ifstream in(path_, std::ios::binary);
  if (!in) return;  // cold cache
  while (true) {
    unsigned char len_bytes[4];
    if (!in.read(reinterpret_cast<char*>(len_bytes), 4)) break;
    std::uint32_t len = static_cast<std::uint32_t>(len_bytes[0]) |
                        (static_cast<std::uint32_t>(len_bytes[1]) << 8) |
                        (static_cast<std::uint32_t>(len_bytes[2]) << 16) |
                        (static_cast<std::uint32_t>(len_bytes[3]) << 24);
    std::string payload(len, '\0');
    if (!in.read(payload.data(), len)) {
      std::cerr << "warning: truncated cache record in " << path_ << ", ignoring tail\n";
      break;
    }
    try {
      json j = json::parse(payload);
      std::uint64_t expected = j.at("checksum").get<std::uint64_t>();
      if (record_checksum(j.at("key"), j.at("value")) != expected) {
        std::cerr << "warning: cache checksum mismatch in " << path_
                  << ", treating record as miss\n";
        continue;
      }
      CacheKey key = key_from_json(j["key"]);
      entries_[key.composite()] = distribution_from_json(j["value"]);
    } catch (const json::exception& e) {
      std::cerr << "warning: corrupt cache record in " << path_ << ": " << e.what()
                << "\n";
    }
  }
}

std::optional<PronounDistribution> DistributionCache::get(const CacheKey& key) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = entries_.find(key.composite());
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void DistributionCache::put(const CacheKey& key, const PronounDistribution& value) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = entries_.emplace(key.composite(), value);
  if (!inserted) return;  // already persisted

  json record;
  record["key"] = key_to_json(key);
  record["value"] = to_json(value);
  record["checksum"] = record_checksum(record["key"], record["value"]);
  std::string payload = record.dump();
  std::uint32_t len = static_cast<std::uint32_t>(payload.size());
  unsigned char len_bytes[4] = {
      static_cast<unsigned char>(len & 0xff),
      static_cast<unsigned char>((len >> 8) & 0xff),
      static_cast<unsigned char>((len >> 16) & 0xff),
      static_cast<unsigned char>((len >> 24) & 0xff)};
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out) throw ConfigError("cannot append to cache file: " + path_);
  out.write(reinterpret_cast<char*>(len_bytes), 4);
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  out.flush();
}

std::size_t DistributionCache::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_.size();
}

CachedBackend::CachedBackend(std::unique_ptr<FillMaskBackend> inner,
                             std::shared_ptr<DistributionCache> cache)
    : inner_(std::move(inner)), cache_(std::move(cache)) {}

PronounDistribution CachedBackend::fill_mask_pronouns(
    const std::string& masked_sentence, const PronounInventory& inventory) const {
  CacheKey key{inner_->model_id(), masked_sentence, inventory.fingerprint()};
  if (auto hit = cache_->get(key)) return *hit;
  PronounDistribution fresh = inner_->fill_mask_pronouns(masked_sentence, inventory);
  cache_->put(key, fresh);
  return fresh;
}

}  // namespace anthro
