#include "anthroscore/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "anthroscore/analytics.hpp"
#include "anthroscore/cache.hpp"
#include "anthroscore/errors.hpp"
#include "anthroscore/serialize.hpp"

namespace anthro {

namespace {

using nlohmann::json;

std::string fmt(double d) { return json(d).dump(); }

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> read_keyword_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open keyword file: " + path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    words.push_back(line.substr(b, e - b + 1));
  }
  return words;
}

void write_output(const RunConfig& config, const std::string& name,
                  const std::string& contents) {
  std::filesystem::create_directories(config.output_dir);
  atomic_write_file(config.output_dir + "/" + name, contents);
}

std::string jsonl_string(const std::vector<json>& rows) {
  std::ostringstream out;
  write_jsonl(out, rows);
  return out.str();
}

std::vector<ScoredSentence> load_scored(const RunConfig& config) {
  std::string path = config.output_dir + "/scored.jsonl";
  if (!std::filesystem::exists(path)) {
    throw ConfigError("no scored output at " + path + "; run score first");
  }
  return read_scored_jsonl(path);
}

std::string lower(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Head word of a chunk: its final alphanumeric token, case-folded.
std::string chunk_head(const std::string& chunk) {
  std::vector<std::string> words;
  std::string current;
  for (char c : chunk) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '-') {
      current += c;
    } else if (!current.empty()) {
      words.push_back(current);
      current.clear();
    }
  }
  if (!current.empty()) words.push_back(current);
  return words.empty() ? "" : lower(words.back());
}

std::vector<SemanticTriple> triples_for(const std::string& sentence,
                                        const std::string& doc_id, int sentence_index,
                                        const ParseIndex* parses) {
  if (parses != nullptr) {
    const ConlluSentence* parse = parses->find(doc_id, sentence_index);
    if (parse != nullptr) return extract_triples_conllu(sentence, *parse, sentence_index);
  }
  return extract_triples_builtin(sentence, sentence_index);
}

// Grouped means over original/modified record sets, keyed by source and
// by matched entity keyword.
std::string side_by_side_csv(const std::vector<ScoredSentence>& original,
                             const std::vector<ScoredSentence>& modified) {
  struct Acc {
    std::size_t n_orig = 0, n_mod = 0;
    double sum_orig = 0.0, sum_mod = 0.0;
  };
  std::map<std::string, Acc> groups;
  auto add = [&](const ScoredSentence& s, bool is_mod) {
    std::vector<std::string> keys{"all:all", "source:" + s.sentence.source,
                                  "entity:" + s.sentence.entity_keyword};
    for (const auto& k : keys) {
      Acc& a = groups[k];
      if (is_mod) {
        ++a.n_mod;
        a.sum_mod += s.score_a;
      } else {
        ++a.n_orig;
        a.sum_orig += s.score_a;
      }
    }
  };
  for (const auto& s : original) add(s, false);
  for (const auto& s : modified) add(s, true);

  std::ostringstream out;
  out << "scope,key,n_original,mean_original,n_modified,mean_modified\n";
  for (const auto& [key, a] : groups) {
    auto colon = key.find(':');
    out << key.substr(0, colon) << "," << csv_escape(key.substr(colon + 1)) << ","
        << a.n_orig << ","
        << (a.n_orig ? fmt(a.sum_orig / static_cast<double>(a.n_orig)) : "") << ","
        << a.n_mod << ","
        << (a.n_mod ? fmt(a.sum_mod / static_cast<double>(a.n_mod)) : "") << "\n";
  }
  return out.str();
}

std::string grouped_csv(const std::vector<GroupedScore>& groups) {
  std::ostringstream out;
  out << "group,n,mean_a,ci_low,ci_high\n";
  for (const auto& g : groups) {
    out << csv_escape(g.group_key) << "," << g.n << "," << fmt(g.mean_a) << ","
        << fmt(g.ci_low) << "," << fmt(g.ci_high) << "\n";
  }
  return out.str();
}

std::string log_odds_csv(const std::vector<LogOddsResult>& rows, double min_abs_z) {
  std::ostringstream out;
  out << "word,count_high,count_low,delta,variance,z\n";
  for (const auto& r : rows) {
    if (std::abs(r.z) <= min_abs_z) continue;
    out << csv_escape(r.word) << "," << r.count_a << "," << r.count_b << ","
        << fmt(r.delta) << "," << fmt(r.variance) << "," << fmt(r.z) << "\n";
  }
  return out.str();
}

}  // namespace

std::vector<MaskedSentence> build_masked_corpus(const std::vector<Document>& docs,
                                                const EntityLexicon& lexicon,
                                                const ParseIndex* parses,
                                                std::size_t* duplicates_removed) {
  std::vector<MaskedSentence> all;
  for (const auto& doc : docs) {
    validate_document(doc);
    auto spans = split_sentences(doc.text);
    for (std::size_t si = 0; si < spans.size(); ++si) {
      std::string sentence = doc.text.substr(spans[si].begin, spans[si].len);
      int index = static_cast<int>(si);
      auto triples = triples_for(sentence, doc.doc_id, index, parses);
      for (const auto& mention : find_entity_mentions(sentence, triples, lexicon)) {
        MaskedSentence ms = mask_mention(sentence, mention);
        ms.doc_id = doc.doc_id;
        ms.sentence_index = index;
        ms.source = doc.source;
        ms.date = doc.date;
        ms.categories = doc.categories;
        all.push_back(std::move(ms));
      }
    }
  }
  std::size_t before = all.size();
  all = deduplicate(all);
  if (duplicates_removed != nullptr) *duplicates_removed = before - all.size();
  std::stable_sort(all.begin(), all.end(),
                   [](const MaskedSentence& a, const MaskedSentence& b) {
                     if (a.doc_id != b.doc_id) return a.doc_id < b.doc_id;
                     if (a.sentence_index != b.sentence_index) {
                       return a.sentence_index < b.sentence_index;
                     }
                     return a.span_begin < b.span_begin;
                   });
  return all;
}

ScoreOutcome score_sentences(const std::vector<MaskedSentence>& sentences,
                             const FillMaskBackend& backend,
                             const PronounInventory& inventory, int workers) {
  struct Slot {
    std::optional<ScoredSentence> scored;
    std::string error;
  };
  std::vector<Slot> slots(sentences.size());

  auto work = [&](int worker) {
    for (std::size_t i = static_cast<std::size_t>(worker); i < sentences.size();
         i += static_cast<std::size_t>(workers)) {
      try {
        auto dist = backend.fill_mask_pronouns(sentences[i].masked_sentence, inventory);
        slots[i].scored = score_sentence(sentences[i], dist.probabilities, inventory);
      } catch (const Error& e) {
        slots[i].error = e.what();
      }
    }
  };

  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  ScoreOutcome outcome;
  outcome.masked_total = sentences.size();
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (slots[i].scored) {
      outcome.scored.push_back(std::move(*slots[i].scored));
    } else {
      outcome.errors.push_back({sentences[i].doc_id, sentences[i].sentence_index,
                                sentences[i].masked_sentence, slots[i].error});
    }
  }
  return outcome;
}

int cmd_score(const RunConfig& config) {
  config.validate();
  auto docs = read_documents_jsonl(config.corpus_path);
  if (docs.empty()) throw ConfigError("corpus: no documents in " + config.corpus_path);

  if (!config.filter_keywords_path.empty()) {
    auto keywords = read_keyword_file(config.filter_keywords_path);
    std::vector<Document> kept;
    for (auto& d : docs) {
      if (filter_lm_documents(d, keywords)) kept.push_back(std::move(d));
    }
    docs = std::move(kept);
    if (docs.empty()) throw ConfigError("corpus: no documents match the keyword filter");
  }

  EntityLexicon lexicon = resolve_lexicon(config);
  PronounInventory inventory = resolve_inventory(config);

  std::optional<ParseIndex> parses;
  if (!config.conllu_path.empty()) {
    parses.emplace(parse_conllu_file(config.conllu_path),
                   read_conllu_manifest(config.conllu_manifest));
  }

  std::size_t duplicates = 0;
  auto masked = build_masked_corpus(docs, lexicon, parses ? &*parses : nullptr,
                                    &duplicates);

  auto backend = make_backend(config.backend, config.cache_path);
  ScoreOutcome outcome = score_sentences(masked, *backend, inventory, config.workers);
  outcome.documents = docs.size();
  outcome.duplicates_removed = duplicates;

  std::vector<json> rows;
  rows.reserve(outcome.scored.size());
  for (const auto& s : outcome.scored) rows.push_back(to_json(s));
  write_output(config, "scored.jsonl", jsonl_string(rows));

  std::vector<json> error_rows;
  for (const auto& e : outcome.errors) {
    error_rows.push_back({{"doc_id", e.doc_id},
                          {"sentence_index", e.sentence_index},
                          {"masked_sentence", e.masked_sentence},
                          {"error", e.message}});
  }
  write_output(config, "errors.jsonl", jsonl_string(error_rows));

  json summary{{"documents", outcome.documents},
               {"masked_sentences", outcome.masked_total},
               {"duplicates_removed", outcome.duplicates_removed},
               {"scored", outcome.scored.size()},
               {"skipped", outcome.errors.size()},
               {"model", backend->model_id()}};
  if (outcome.scored.empty()) {
    summary["mean_a"] = nullptr;
    summary["n_high"] = 0;
    summary["n_low"] = 0;
  } else {
    summary["mean_a"] = mean_anthroscore(outcome.scored);
    auto parts = partition_extremes(outcome.scored, config.hi, config.lo_threshold());
    summary["n_high"] = parts.high.size();
    summary["n_low"] = parts.low.size();
  }
  write_output(config, "summary.json", summary.dump(2) + "\n");

  return outcome.errors.empty() ? 0 : 2;
}

int cmd_analyze(const RunConfig& config, const std::string& group_by) {
  config.validate();
  auto scored = load_scored(config);

  std::size_t skipped = 0;
  std::function<std::vector<std::string>(const ScoredSentence&)> key_fn;
  if (group_by == "source") {
    key_fn = [](const ScoredSentence& s) {
      return std::vector<std::string>{s.sentence.source};
    };
  } else if (group_by == "entity") {
    key_fn = [](const ScoredSentence& s) {
      return std::vector<std::string>{s.sentence.entity_keyword};
    };
  } else if (group_by == "category") {
    key_fn = [&skipped](const ScoredSentence& s) {
      if (s.sentence.categories.empty()) ++skipped;
      return s.sentence.categories;
    };
  } else if (group_by == "year") {
    key_fn = [&skipped](const ScoredSentence& s) -> std::vector<std::string> {
      if (!s.sentence.date) {
        ++skipped;
        return {};
      }
      return {s.sentence.date->substr(0, 4)};
    };
  } else {
    throw ConfigError("group_by: expected category, year, entity, or source, got " +
                      group_by);
  }

  auto groups = group_mean_ci(scored, key_fn, 1000, config.seed);
  if (skipped > 0) {
    std::cerr << "warning: " << skipped << " records lack " << group_by
              << " metadata and were skipped\n";
  }
  write_output(config, "groups_" + group_by + ".csv", grouped_csv(groups));

  if (group_by == "year") {
    std::sort(groups.begin(), groups.end(),
              [](const GroupedScore& a, const GroupedScore& b) {
                return a.group_key < b.group_key;
              });
    TrendResult trend;
    for (const auto& g : groups) {
      trend.keys.push_back(g.group_key);
      trend.values.push_back(g.mean_a);
    }
    if (trend.keys.size() >= 3) {
      std::vector<double> idx(trend.keys.size());
      std::iota(idx.begin(), idx.end(), 0.0);
      try {
        std::tie(trend.spearman_r, trend.p_value) = spearman(idx, trend.values);
      } catch (const DegenerateInput&) {
        std::cerr << "warning: constant year means; trend undefined\n";
      }
    } else if (trend.keys.size() == 2) {
      std::cerr << "warning: only 2 years; trend reported without a p-value\n";
      trend.spearman_r = trend.values[1] > trend.values[0]   ? 1.0
                         : trend.values[1] < trend.values[0] ? -1.0
                                                             : 0.0;
    } else {
      std::cerr << "warning: fewer than 2 years; no trend\n";
    }
    std::ostringstream out;
    out << "n_years,spearman_r,p_value\n"
        << trend.keys.size() << "," << fmt(trend.spearman_r) << ","
        << fmt(trend.p_value) << "\n";
    write_output(config, "trend_year.csv", out.str());
  }
  return 0;
}

int cmd_verbs(const RunConfig& config) {
  config.validate();
  auto scored = load_scored(config);
  double lo = config.lo_threshold();
  auto high = verb_counts(scored, ScoreBand::kHigh, config.hi, lo, config.prior_band);
  auto low = verb_counts(scored, ScoreBand::kLow, config.hi, lo, config.prior_band);
  auto prior = verb_counts(scored, ScoreBand::kMid, config.hi, lo, config.prior_band);
  auto rows = fightin_words(high, low, prior);
  write_output(config, "verbs.csv", log_odds_csv(rows, -1.0));
  write_output(config, "verbs_significant.csv", log_odds_csv(rows, 1.96));
  return 0;
}

int cmd_ablate(const RunConfig& config, const std::string& ablation) {
  config.validate();
  auto scored = load_scored(config);
  std::vector<ScoredSentence> modified;
  double spearman_r = std::numeric_limits<double>::quiet_NaN();

  if (ablation.rfind("pronoun:", 0) == 0) {
    std::string pronoun = ablation.substr(8);
    if (config.cache_path.empty()) {
      throw ConfigError("cache: pronoun ablation needs cached distributions; rerun "
                        "score with cache set");
    }
    DistributionCache cache(config.cache_path);
    PronounInventory inventory = resolve_inventory(config);
    std::vector<std::pair<ScoredSentence, PronounDistribution>> records;
    records.reserve(scored.size());
    for (const auto& s : scored) {
      CacheKey key{config.backend.model_id, s.sentence.masked_sentence,
                   inventory.fingerprint()};
      auto dist = cache.get(key);
      if (!dist) {
        throw ConfigError("cache: no cached distribution for a sentence of " +
                          s.sentence.doc_id + "; rerun score with cache set");
      }
      records.emplace_back(s, std::move(*dist));
    }
    AblationResult result = ablate_pronoun(records, inventory, pronoun);
    modified = std::move(result.modified);
    spearman_r = result.spearman_r;
  } else if (ablation == "reporting_verbs") {
    auto verbs = read_keyword_file(config.data_dir + "/lexicons/reporting_verbs.txt");
    modified = filter_by_verbs(scored, {verbs.begin(), verbs.end()},
                               VerbFilterMode::kDropSentences);
  } else if (ablation.rfind("top_verbs:", 0) == 0) {
    std::size_t k = 0;
    try {
      k = std::stoul(ablation.substr(10));
    } catch (const std::exception&) {
      throw ConfigError("ablation: top_verbs needs a count, got " + ablation);
    }
    double lo = config.lo_threshold();
    auto rows = fightin_words(
        verb_counts(scored, ScoreBand::kHigh, config.hi, lo, config.prior_band),
        verb_counts(scored, ScoreBand::kLow, config.hi, lo, config.prior_band),
        verb_counts(scored, ScoreBand::kMid, config.hi, lo, config.prior_band));
    std::sort(rows.begin(), rows.end(), [](const LogOddsResult& a, const LogOddsResult& b) {
      if (std::abs(a.z) != std::abs(b.z)) return std::abs(a.z) > std::abs(b.z);
      return a.word < b.word;
    });
    std::set<std::string> top;
    for (const auto& r : rows) {
      if (top.size() >= k) break;
      top.insert(r.word);
    }
    modified = filter_by_verbs(scored, top, VerbFilterMode::kDropVerbs);
  } else {
    throw ConfigError("ablation: expected pronoun:<w>, reporting_verbs, or "
                      "top_verbs:<k>, got " + ablation);
  }

  write_output(config, "ablation.csv", side_by_side_csv(scored, modified));
  std::ostringstream summary;
  summary << "ablation,n_original,n_modified,mean_original,mean_modified,spearman_r\n"
          << csv_escape(ablation) << "," << scored.size() << "," << modified.size()
          << "," << (scored.empty() ? "" : fmt(mean_anthroscore(scored))) << ","
          << (modified.empty() ? "" : fmt(mean_anthroscore(modified))) << ","
          << (std::isnan(spearman_r) ? "" : fmt(spearman_r)) << "\n";
  write_output(config, "ablation_summary.csv", summary.str());
  return 0;
}

int cmd_freq_report(const RunConfig& config, std::size_t top_k) {
  config.validate();
  auto docs = read_documents_jsonl(config.corpus_path);
  if (docs.empty()) throw ConfigError("corpus: no documents in " + config.corpus_path);

  std::optional<ParseIndex> parses;
  if (!config.conllu_path.empty()) {
    parses.emplace(parse_conllu_file(config.conllu_path),
                   read_conllu_manifest(config.conllu_manifest));
  }

  std::vector<std::string> heads;
  for (const auto& doc : docs) {
    validate_document(doc);
    auto spans = split_sentences(doc.text);
    for (std::size_t si = 0; si < spans.size(); ++si) {
      std::string sentence = doc.text.substr(spans[si].begin, spans[si].len);
      auto triples = triples_for(sentence, doc.doc_id, static_cast<int>(si),
                                 parses ? &*parses : nullptr);
      for (const auto& t : triples) {
        std::string h = chunk_head(t.subject.text);
        if (!h.empty()) heads.push_back(h);
        if (t.object) {
          h = chunk_head(t.object->text);
          if (!h.empty()) heads.push_back(h);
        }
      }
    }
  }

  auto ranked = entity_frequency_report(heads, top_k);
  std::ostringstream out;
  out << "head,count\n";
  for (const auto& [head, count] : ranked) {
    out << csv_escape(head) << "," << count << "\n";
  }
  write_output(config, "frequency.csv", out.str());
  return 0;
}

}  // namespace anthro
