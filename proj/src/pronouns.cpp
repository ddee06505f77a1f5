#include "anthroscore/pronouns.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "anthroscore/errors.hpp"

namespace anthro {

std::uint64_t fnv1a(const std::string& data, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

void validate_list(const std::vector<std::string>& list, const char* name) {
  if (list.empty()) {
    throw ConfigError(std::string("pronoun list '") + name + "' is empty");
  }
  std::set<std::string> seen;
  for (const auto& p : list) {
    if (p.empty()) {
      throw ConfigError(std::string("empty pronoun in list '") + name + "'");
    }
    if (!seen.insert(p).second) {
      throw ConfigError("duplicate pronoun '" + p + "' in list '" + name + "'");
    }
  }
}

}  // namespace

PronounInventory::PronounInventory(std::vector<std::string> human,
                                   std::vector<std::string> non_human)
    : human_(std::move(human)), non_human_(std::move(non_human)) {
  validate_list(human_, "human");
  validate_list(non_human_, "non_human");
  for (const auto& p : human_) {
    if (std::find(non_human_.begin(), non_human_.end(), p) != non_human_.end()) {
      throw ConfigError("pronoun '" + p + "' appears in both lists");
    }
  }
}

PronounInventory PronounInventory::bundled() {
  return PronounInventory({"he", "she", "her", "him", "He", "She", "Her"},
                          {"it", "its", "It", "Its"});
}

PronounInventory PronounInventory::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open pronoun inventory file: " + path);
  }
  std::vector<std::string> human, non_human;
  std::vector<std::string>* current = nullptr;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t");
    line = line.substr(first, last - first + 1);
    if (line[0] == '#') continue;
    if (line == "[human]") {
      current = &human;
    } else if (line == "[non_human]") {
      current = &non_human;
    } else if (current == nullptr) {
      throw ConfigError("pronoun file " + path + ": entry before section marker");
    } else {
      current->push_back(line);
    }
  }
  return PronounInventory(std::move(human), std::move(non_human));
}

std::vector<std::string> PronounInventory::all() const {
  std::vector<std::string> out = human_;
  out.insert(out.end(), non_human_.begin(), non_human_.end());
  return out;
}

bool PronounInventory::contains(const std::string& pronoun) const {
  return std::find(human_.begin(), human_.end(), pronoun) != human_.end() ||
         std::find(non_human_.begin(), non_human_.end(), pronoun) != non_human_.end();
}

std::uint64_t PronounInventory::fingerprint() const {
  auto digest_sorted = [](std::vector<std::string> list, std::uint64_t h) {
    std::sort(list.begin(), list.end());
    for (const auto& p : list) {
      h = fnv1a(p, h);
      h = fnv1a("\x1f", h);  // separator, not a valid pronoun byte sequence
    }
    return h;
  };
  std::uint64_t h = digest_sorted(human_, fnv1a("human"));
  h = digest_sorted(non_human_, fnv1a("non_human", h));
  return h;
}

PronounInventory PronounInventory::without(const std::string& pronoun) const {
  auto drop = [&](const std::vector<std::string>& list) {
    std::vector<std::string> out;
    for (const auto& p : list) {
      if (p != pronoun) out.push_back(p);
    }
    return out;
  };
  bool in_human = std::find(human_.begin(), human_.end(), pronoun) != human_.end();
  bool in_non = std::find(non_human_.begin(), non_human_.end(), pronoun) != non_human_.end();
  if (!in_human && !in_non) {
    throw UnknownPronoun("pronoun '" + pronoun + "' not in inventory");
  }
  if ((in_human && human_.size() == 1) || (in_non && non_human_.size() == 1)) {
    throw LastPronoun("removing '" + pronoun + "' would empty a pronoun list");
  }
  return PronounInventory(in_human ? drop(human_) : human_,
                          in_non ? drop(non_human_) : non_human_);
}

}  // namespace anthro
