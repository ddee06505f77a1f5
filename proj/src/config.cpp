#include "anthroscore/config.hpp"

#include <fstream>
#include <set>

#include "anthroscore/errors.hpp"

namespace anthro {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double d = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key + ": not a number: " + value);
  }
}

}  // namespace

void apply_config_key(RunConfig& c, const std::string& key, const std::string& raw) {
  std::string value = unquote(trim(raw));
  if (key == "corpus") {
    c.corpus_path = value;
  } else if (key == "lexicon") {
    c.lexicon = value;
  } else if (key == "data_dir") {
    c.data_dir = value;
  } else if (key == "backend") {
    if (value == "stub") {
      c.backend.kind = BackendKind::kStub;
    } else if (value == "remote") {
      c.backend.kind = BackendKind::kRemote;
    } else {
      throw ConfigError("backend: expected stub or remote, got " + value);
    }
  } else if (key == "model") {
    c.backend.model_id = value;
  } else if (key == "endpoint") {
    c.backend.endpoint = value;
  } else if (key == "mask_token") {
    c.backend.mask_token = value;
  } else if (key == "cache") {
    c.cache_path = value;
  } else if (key == "pronouns") {
    c.pronouns_path = value;
  } else if (key == "hi") {
    c.hi = parse_double(key, value);
  } else if (key == "lo") {
    c.lo = parse_double(key, value);
  } else if (key == "prior_band") {
    c.prior_band = parse_double(key, value);
  } else if (key == "seed") {
    try {
      c.seed = std::stoull(value);
    } catch (const std::exception&) {
      throw ConfigError("seed: not an unsigned integer: " + value);
    }
  } else if (key == "output_dir") {
    c.output_dir = value;
  } else if (key == "workers") {
    try {
      c.workers = std::stoi(value);
    } catch (const std::exception&) {
      throw ConfigError("workers: not an integer: " + value);
    }
  } else if (key == "conllu") {
    c.conllu_path = value;
  } else if (key == "conllu_manifest") {
    c.conllu_manifest = value;
  } else if (key == "filter_keywords") {
    c.filter_keywords_path = value;
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  RunConfig c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#' || stripped[0] == '[') continue;
    auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(stripped.substr(0, eq));
    std::string value = stripped.substr(eq + 1);
    auto hash = value.find('#');
    if (hash != std::string::npos && value.find('"') == std::string::npos) {
      value = value.substr(0, hash);
    }
    apply_config_key(c, key, value);
  }
  return c;
}

void RunConfig::validate() const {
  if (prior_band <= 0.0) throw ConfigError("prior_band: must be > 0");
  if (hi <= prior_band) throw ConfigError("hi: must exceed prior_band");
  if (hi <= lo_threshold()) throw ConfigError("lo: must be below hi");
  if (workers < 1) throw ConfigError("workers: must be >= 1");
  if (conllu_path.empty() != conllu_manifest.empty()) {
    throw ConfigError("conllu: conllu and conllu_manifest must be set together");
  }
  backend.validate();
}

EntityLexicon resolve_lexicon(const RunConfig& config) {
  static const std::set<std::string> bundled{"artifact", "lm", "human"};
  std::string path = config.lexicon;
  if (bundled.count(config.lexicon) != 0) {
    path = config.data_dir + "/lexicons/" + config.lexicon + ".txt";
  }
  return EntityLexicon::load(config.lexicon, path);
}

PronounInventory resolve_inventory(const RunConfig& config) {
  if (config.pronouns_path.empty()) return PronounInventory::bundled();
  return PronounInventory::load(config.pronouns_path);
}

}  // namespace anthro
