#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace anthro {

// The surface-form pronoun lists that define the human and non-human
// probability masses.  Lists are validated on construction: non-empty,
// disjoint, duplicate-free.
class PronounInventory {
 public:
  PronounInventory(std::vector<std::string> human,
                   std::vector<std::string> non_human);

  // Bundled default: he, she, her, him, He, She, Her / it, its, It, Its.
  static PronounInventory bundled();

  // File with "[human]" / "[non_human]" section markers, one pronoun per
  // line, '#' comments.
  static PronounInventory load(const std::string& path);

  const std::vector<std::string>& human() const { return human_; }
  const std::vector<std::string>& non_human() const { return non_human_; }

  // Union of both lists in declaration order (human first).  This is the
  // "targets" order on the wire.
  std::vector<std::string> all() const;

  bool contains(const std::string& pronoun) const;

  // Order-insensitive digest of both lists.  Two inventories that differ
  // only in list order fingerprint identically.
  std::uint64_t fingerprint() const;

  // Copy with one pronoun removed from whichever list holds it.
  // Throws UnknownPronoun / LastPronoun.
  PronounInventory without(const std::string& pronoun) const;

 private:
  std::vector<std::string> human_;
  std::vector<std::string> non_human_;
};

// FNV-1a, used for fingerprints and seed derivation throughout.
std::uint64_t fnv1a(const std::string& data, std::uint64_t seed = 14695981039346656037ull);

}  // namespace anthro
