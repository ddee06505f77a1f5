#include "anthroscore/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "anthroscore/errors.hpp"

namespace anthro {

namespace {

std::string lower(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '\'';
}

const std::unordered_set<std::string>& determiners() {
  static const std::unordered_set<std::string> set = {
      "the", "a", "an", "this", "that", "these", "those", "our", "its", "their",
      "his", "her", "my", "your", "such", "each", "every", "all", "some", "no",
      "any", "both", "most", "many", "several", "various", "more", "other",
      "another", "numerous"};
  return set;
}

const std::unordered_set<std::string>& auxiliaries() {
  static const std::unordered_set<std::string> set = {
      "is", "are", "was", "were", "be", "been", "being", "am", "has", "have",
      "had", "do", "does", "did", "can", "could", "will", "would", "shall",
      "should", "may", "might", "must"};
  return set;
}

const std::unordered_set<std::string>& prepositions() {
  static const std::unordered_set<std::string> set = {
      "of", "in", "on", "at", "by", "for", "with", "to", "from", "into",
      "over", "under", "between", "through", "during", "against", "about",
      "across", "after", "before", "without", "within", "via", "per", "upon",
      "toward", "towards", "among", "along", "like", "off", "out", "up",
      "down", "than", "as", "onto"};
  return set;
}

const std::unordered_set<std::string>& clause_markers() {
  static const std::unordered_set<std::string> set = {
      "and", "or", "but", "nor", "so", "yet", "while", "when", "if",
      "whether", "because", "since", "although", "though", "that", "which",
      "who", "whom", "whose", "where", "how", "why", "what", "unless",
      "until", "whereas", "not"};
  return set;
}

const std::unordered_set<std::string>& subject_pronouns() {
  static const std::unordered_set<std::string> set = {"we", "they", "i", "you",
                                                      "he", "she", "it", "one"};
  return set;
}

const std::unordered_set<std::string>& adverb_list() {
  static const std::unordered_set<std::string> set = {
      "also", "then", "thus", "hence", "here", "there", "now", "often",
      "still", "already", "recently", "meanwhile", "moreover", "furthermore",
      "however", "therefore", "finally", "together", "well", "further",
      "instead", "even", "first", "second"};
  return set;
}

// Base verb forms recognized without inflectional morphology.  Drawn from
// verbs common in scholarly abstracts and news prose; nouns that double
// as entity keywords are deliberately absent.
const std::unordered_set<std::string>& base_verbs() {
  static const std::unordered_set<std::string> set = {
      "achieve", "learn", "guide", "show", "embed", "fool", "find", "need",
      "assist", "follow", "search", "mislead", "inspire", "win", "demonstrate",
      "benefit", "try", "face", "deceive", "plan", "make", "steer", "attempt",
      "retrain", "train", "require", "motivate", "tackle", "see", "hide",
      "recommend", "discover", "participate", "pass", "check", "suggest",
      "decide", "aim", "move", "propose", "present", "outperform", "develop",
      "evaluate", "improve", "introduce", "allow", "use", "compare", "extend",
      "implement", "give", "apply", "consist", "validate", "design", "yield",
      "analyze", "combine", "test", "leverage", "deploy", "adapt", "build",
      "generalize", "enhance", "devise", "become", "optimize", "reduce",
      "derive", "utilize", "scale", "study", "run", "modify", "converge",
      "illustrate", "assess", "increase", "provide", "contain", "surpass",
      "maximize", "perform", "complement", "depend", "simplify", "say",
      "hire", "beat", "encounter", "create", "help", "generate", "parse",
      "enable", "suffer", "construct", "capture", "obtain", "fail",
      "encourage", "struggle", "understand", "select", "extract", "tend",
      "predict", "handle", "lack", "encode", "deal", "identify", "ask",
      "prevent", "distinguish", "establish", "respond", "ignore", "report",
      "inform", "choose", "interpret", "detect", "seem", "rely", "explore",
      "employ", "adopt", "investigate", "include", "prove", "augment",
      "involve", "tune", "conduct", "indicate", "support", "confirm", "add",
      "argue", "agree", "warn", "advise", "claim", "declare", "express",
      "conclude", "admit", "assure", "justify", "emphasize", "assert",
      "accept", "know", "think", "believe", "remember", "forget", "guess",
      "pretend", "dream", "mean", "suspect", "suppose", "feel", "assume",
      "work", "reject", "convert", "deliver", "arrive", "schedule", "solve",
      "produce", "process", "compute", "estimate", "classify", "cluster",
      "outline", "propagate", "refine", "exploit", "mimic", "defeat", "pick",
      "bet", "integrate", "compete", "cut", "take", "want", "refuse"};
  return set;
}

struct Token {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
  bool punct_after = false;  // comma/semicolon/colon/period between this and next
  std::string lower_text;
};

std::vector<Token> tokenize(const std::string& sentence) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < sentence.size()) {
    if (!is_word_char(sentence[i])) {
      if (!tokens.empty() &&
          (sentence[i] == ',' || sentence[i] == ';' || sentence[i] == ':' ||
           sentence[i] == '.' || sentence[i] == '(' || sentence[i] == ')' ||
           sentence[i] == '?' || sentence[i] == '!')) {
        tokens.back().punct_after = true;
      }
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < sentence.size() && is_word_char(sentence[i])) ++i;
    // Trim leading/trailing hyphens and apostrophes.
    std::size_t b = start, e = i;
    while (b < e && (sentence[b] == '-' || sentence[b] == '\'')) ++b;
    while (e > b && (sentence[e - 1] == '-' || sentence[e - 1] == '\'')) --e;
    if (b == e) continue;
    Token t;
    t.begin = b;
    t.end = e;
    t.text = sentence.substr(b, e - b);
    t.lower_text = lower(t.text);
    tokens.push_back(std::move(t));
  }
  return tokens;
}

bool is_function_word(const std::string& lw) {
  return determiners().count(lw) || auxiliaries().count(lw) ||
         prepositions().count(lw) || clause_markers().count(lw);
}

bool is_adverbish(const Token& t) {
  const std::string& w = t.lower_text;
  if (adverb_list().count(w)) return true;
  return w.size() > 3 && w.compare(w.size() - 2, 2, "ly") == 0;
}

bool is_content(const Token& t) {
  return !is_function_word(t.lower_text) && !is_adverbish(t) &&
         !subject_pronouns().count(t.lower_text);
}

bool all_lower_alpha(const std::string& w) {
  for (char c : w) {
    if (!std::islower(static_cast<unsigned char>(c))) return false;
  }
  return !w.empty();
}

bool ends_with(const std::string& w, const char* suffix) {
  std::size_t n = std::strlen(suffix);
  return w.size() >= n && w.compare(w.size() - n, n, suffix) == 0;
}

// Finite-verb candidate by morphology: -ed past forms, or lowercase -s
// forms preceded by chunk material.
bool morph_verb_ed(const Token& t) {
  const std::string& w = t.lower_text;
  if (w.size() < 4 || w.find('-') != std::string::npos) return false;
  if (!all_lower_alpha(t.text)) return false;
  if (is_function_word(w) || is_adverbish(t)) return false;
  return ends_with(w, "ed");
}

bool morph_verb_s(const Token& t) {
  const std::string& w = t.lower_text;
  if (w.size() < 4 || w.find('-') != std::string::npos) return false;
  if (!all_lower_alpha(t.text)) return false;
  if (is_function_word(w) || is_adverbish(t)) return false;
  if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is")) return false;
  return w.back() == 's';
}

bool base_verb(const Token& t) {
  return all_lower_alpha(t.text) && base_verbs().count(t.lower_text) > 0;
}

}  // namespace

// --- lemmatizer ---

std::string lemmatize_verb(const std::string& word) {
  static const std::unordered_map<std::string, std::string> irregular = {
      {"is", "be"},       {"are", "be"},      {"was", "be"},     {"were", "be"},
      {"been", "be"},     {"being", "be"},    {"am", "be"},      {"has", "have"},
      {"had", "have"},    {"having", "have"}, {"does", "do"},    {"did", "do"},
      {"done", "do"},     {"doing", "do"},    {"said", "say"},   {"made", "make"},
      {"took", "take"},   {"taken", "take"},  {"gave", "give"},  {"given", "give"},
      {"found", "find"},  {"saw", "see"},     {"seen", "see"},   {"got", "get"},
      {"went", "go"},     {"goes", "go"},     {"won", "win"},    {"ran", "run"},
      {"became", "become"}, {"built", "build"}, {"chose", "choose"},
      {"chosen", "choose"}, {"knew", "know"}, {"known", "know"},
      {"thought", "think"}, {"felt", "feel"}, {"meant", "mean"},
      {"understood", "understand"}, {"dealt", "deal"}, {"kept", "keep"},
      {"led", "lead"},    {"left", "leave"},  {"held", "hold"},  {"grew", "grow"},
      {"grown", "grow"},  {"drew", "draw"},   {"drawn", "draw"},
      {"wrote", "write"}, {"written", "write"}, {"appeared", "appear"},
      {"focused", "focus"}, {"focuses", "focus"}, {"examined", "examine"},
      {"processes", "process"}, {"processed", "process"}, {"addresses", "address"},
      {"addressed", "address"}, {"betting", "bet"}, {"cutting", "cut"},
      {"using", "use"}, {"used", "use"}, {"uses", "use"}};

  std::string w = lower(word);
  auto it = irregular.find(w);
  if (it != irregular.end()) return it->second;

  auto dedouble = [](std::string stem) {
    std::size_t n = stem.size();
    if (n >= 2 && stem[n - 1] == stem[n - 2] &&
        std::string("bdgklmnprt").find(stem[n - 1]) != std::string::npos) {
      stem.pop_back();
    }
    return stem;
  };
  // Stems that lost a final 'e' to suffixation get it restored.
  auto restore_e = [](std::string stem) {
    static const std::set<std::string> pairs = {
        "at", "bl", "iz", "yz", "uc", "id", "ev", "ov", "ag", "os",
        "us", "ut", "ir", "ar", "or", "ak", "ul", "in"};
    if (stem.size() >= 2 && pairs.count(stem.substr(stem.size() - 2))) {
      // Keep plain -ain/-oin/-een stems (train, join) without an 'e'.
      if (ends_with(stem, "in") &&
          (ends_with(stem, "ain") || ends_with(stem, "oin") || ends_with(stem, "een"))) {
        return stem;
      }
      stem += 'e';
    }
    return stem;
  };

  if (w.size() > 4 && ends_with(w, "ies")) return w.substr(0, w.size() - 3) + "y";
  if (ends_with(w, "sses")) return w.substr(0, w.size() - 2);
  if (w.size() > 4 && (ends_with(w, "ches") || ends_with(w, "shes") ||
                       ends_with(w, "xes") || ends_with(w, "zes") ||
                       ends_with(w, "oes"))) {
    return w.substr(0, w.size() - 2);
  }
  if (w.size() > 3 && ends_with(w, "es")) return w.substr(0, w.size() - 1);
  if (w.size() > 3 && w.back() == 's' && !ends_with(w, "ss") && !ends_with(w, "us") &&
      !ends_with(w, "is")) {
    return w.substr(0, w.size() - 1);
  }
  if (w.size() > 4 && ends_with(w, "ied")) return w.substr(0, w.size() - 3) + "y";
  if (w.size() > 4 && ends_with(w, "eed")) return w.substr(0, w.size() - 1);
  if (w.size() > 4 && ends_with(w, "ed")) {
    return restore_e(dedouble(w.substr(0, w.size() - 2)));
  }
  if (w.size() > 5 && ends_with(w, "ing")) {
    return restore_e(dedouble(w.substr(0, w.size() - 3)));
  }
  return w;
}

// --- sentence segmentation ---

namespace {

const std::unordered_set<std::string>& abbreviations() {
  static const std::unordered_set<std::string> set = {
      "e.g", "i.e", "etc", "vs", "cf", "al", "et", "fig", "figs", "eq",
      "eqs", "sec", "secs", "ref", "refs", "dr", "mr", "mrs", "ms", "prof",
      "no", "nos", "resp", "approx", "ca", "inc", "ltd", "st", "jr", "sr",
      "vol", "pp", "dept", "univ"};
  return set;
}

// Word immediately preceding position `pos` (exclusive), letters and
// periods only, lowercased.
std::string word_before(const std::string& text, std::size_t pos) {
  std::size_t end = pos;
  std::size_t start = end;
  while (start > 0) {
    char c = text[start - 1];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '.') {
      --start;
    } else {
      break;
    }
  }
  std::string w = text.substr(start, end - start);
  while (!w.empty() && w.front() == '.') w.erase(w.begin());
  return lower(w);
}

}  // namespace

std::vector<CharSpan> split_sentences(const std::string& text) {
  std::vector<CharSpan> spans;
  std::size_t n = text.size();
  std::size_t start = 0;
  while (start < n && std::isspace(static_cast<unsigned char>(text[start]))) ++start;

  auto emit = [&](std::size_t begin, std::size_t end) {
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    if (end > begin) spans.push_back({begin, end - begin});
  };

  std::size_t i = start;
  while (i < n) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') {
      ++i;
      continue;
    }
    if (c == '.') {
      // Decimal number: digit on both sides.
      if (i > 0 && i + 1 < n && std::isdigit(static_cast<unsigned char>(text[i - 1])) &&
          std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
        ++i;
        continue;
      }
      std::string prev = word_before(text, i);
      bool single_initial = prev.size() == 1 && i > 0 &&
                            std::isupper(static_cast<unsigned char>(text[i - 1]));
      if (abbreviations().count(prev) || single_initial) {
        ++i;
        continue;
      }
    }
    // Absorb terminal cluster and closing quotes/brackets.
    std::size_t end = i + 1;
    while (end < n && (text[end] == '.' || text[end] == '!' || text[end] == '?' ||
                       text[end] == '"' || text[end] == '\'' || text[end] == ')' ||
                       text[end] == ']')) {
      ++end;
    }
    // Must be followed by whitespace then a plausible sentence opener.
    std::size_t next = end;
    while (next < n && std::isspace(static_cast<unsigned char>(text[next]))) ++next;
    if (next == end && next < n) {
      i = end;
      continue;  // no whitespace after the terminal
    }
    bool opener = next >= n;
    if (next < n) {
      char o = text[next];
      if (std::isupper(static_cast<unsigned char>(o)) ||
          std::isdigit(static_cast<unsigned char>(o))) {
        opener = true;
      } else if ((o == '"' || o == '\'' || o == '(') && next + 1 < n &&
                 std::isupper(static_cast<unsigned char>(text[next + 1]))) {
        opener = true;
      }
    }
    if (!opener) {
      i = end;
      continue;
    }
    emit(start, end);
    start = next;
    i = next;
  }
  if (start < n) emit(start, n);
  if (spans.empty()) {
    std::size_t b = 0, e = n;
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    if (e > b) spans.push_back({b, e - b});
  }
  return spans;
}

// --- triple extraction ---

namespace {

Chunk make_chunk(const std::string& sentence, const std::vector<Token>& tokens,
                 std::size_t first, std::size_t last) {
  Chunk c;
  c.span.begin = tokens[first].begin;
  c.span.len = tokens[last].end - tokens[first].begin;
  c.text = sentence.substr(c.span.begin, c.span.len);
  return c;
}

// Walks left from `from` collecting determiner/modifier/noun material and
// "and" coordination; stops at clause punctuation, function words other
// than determiners, and previously consumed tokens.
bool collect_subject_left(const std::string& sentence, const std::vector<Token>& tokens,
                          const std::vector<bool>& consumed, std::size_t from,
                          Chunk* out, std::size_t* first_tok, std::size_t* last_tok) {
  if (from >= tokens.size()) return false;
  bool any = false;
  std::size_t first = from, last = from;
  for (std::size_t p = from + 1; p-- > 0;) {
    const Token& t = tokens[p];
    if (consumed[p]) break;
    const std::string& w = t.lower_text;
    bool chunkable;
    if (w == "and") {
      // Coordination is chunkable only strictly inside the chunk, with
      // nominal material on its left.
      chunkable = any && p > 0 &&
                  (is_content(tokens[p - 1]) ||
                   determiners().count(tokens[p - 1].lower_text));
    } else if (w == "that" && any && p + 1 < tokens.size() &&
               determiners().count(tokens[p + 1].lower_text)) {
      // "that" right before another determiner is a complementizer
      // ("That the model converges ..."), not part of the noun phrase.
      chunkable = false;
    } else {
      chunkable = is_content(t) || determiners().count(w) ||
                  subject_pronouns().count(w);
    }
    if (!chunkable) break;
    if (!any) last = p;
    any = true;
    first = p;
    if (p > 0 && tokens[p - 1].punct_after) break;  // clause boundary
  }
  if (!any) return false;
  // Trim leading "and" and trailing determiners.
  while (first < last && tokens[first].lower_text == "and") ++first;
  std::size_t last_idx = last;
  while (last_idx > first && (determiners().count(tokens[last_idx].lower_text) ||
                              tokens[last_idx].lower_text == "and")) {
    --last_idx;
  }
  if (!(is_content(tokens[last_idx]) ||
        subject_pronouns().count(tokens[last_idx].lower_text))) {
    return false;
  }
  *out = make_chunk(sentence, tokens, first, last_idx);
  *first_tok = first;
  *last_tok = last_idx;
  return true;
}

// Collects a noun chunk starting at `from` going right; stops before
// prepositions, auxiliaries, clause markers, and after punctuation.
bool collect_chunk_right(const std::string& sentence, const std::vector<Token>& tokens,
                         std::size_t from, Chunk* out, std::size_t* next) {
  std::size_t n = tokens.size();
  if (from >= n) return false;
  const Token& t0 = tokens[from];
  if (!(is_content(t0) || determiners().count(t0.lower_text) ||
        subject_pronouns().count(t0.lower_text))) {
    return false;
  }
  std::size_t k = from;
  std::size_t last = from;
  while (k < n) {
    const Token& t = tokens[k];
    const std::string& w = t.lower_text;
    bool chunkable = is_content(t) || determiners().count(w) ||
                     (k == from && subject_pronouns().count(w));
    if (w == "and" && k > from && k + 1 < n && is_content(tokens[k + 1]) &&
        !tokens[k - 1].punct_after) {
      chunkable = true;
    }
    if (!chunkable) break;
    last = k;
    if (t.punct_after) break;
    ++k;
  }
  // Trim trailing determiners/"and".
  while (last > from && (determiners().count(tokens[last].lower_text) ||
                         tokens[last].lower_text == "and")) {
    --last;
  }
  if (!(is_content(tokens[last]) || subject_pronouns().count(tokens[last].lower_text))) {
    return false;
  }
  *out = make_chunk(sentence, tokens, from, last);
  *next = last + 1;
  return true;
}

struct VerbGroup {
  std::size_t start = 0;
  std::size_t end = 0;  // inclusive
  std::size_t main = 0;
};

// Detects a verb group starting at token i, or returns false.
bool verb_group_at(const std::vector<Token>& tokens, std::size_t i, VerbGroup* out) {
  std::size_t n = tokens.size();
  const Token& t = tokens[i];
  if (auxiliaries().count(t.lower_text)) {
    std::size_t j = i;
    while (j + 1 < n && !tokens[j].punct_after &&
           auxiliaries().count(tokens[j + 1].lower_text)) {
      ++j;
    }
    if (j + 1 < n && !tokens[j].punct_after && tokens[j + 1].lower_text == "not") ++j;
    while (j + 1 < n && !tokens[j].punct_after && is_adverbish(tokens[j + 1])) ++j;
    std::size_t main = j;  // bare copula by default
    if (j + 1 < n && !tokens[j].punct_after) {
      const Token& next = tokens[j + 1];
      bool verbal_morph = ends_with(next.lower_text, "ing") ||
                          ends_with(next.lower_text, "ed") ||
                          ends_with(next.lower_text, "en");
      if (is_content(next) && (verbal_morph || base_verbs().count(next.lower_text))) {
        ++j;
        main = j;
      }
    }
    out->start = i;
    out->end = j;
    out->main = main;
    return true;
  }
  bool prev_chunky = i > 0 && !tokens[i - 1].punct_after &&
                     (is_content(tokens[i - 1]) ||
                      subject_pronouns().count(tokens[i - 1].lower_text));
  if (prev_chunky && (base_verb(t) || morph_verb_ed(t) || morph_verb_s(t))) {
    // A plural noun directly before an auxiliary is a subject, not a verb.
    if (morph_verb_s(t) && i + 1 < n && auxiliaries().count(tokens[i + 1].lower_text)) {
      return false;
    }
    out->start = i;
    out->end = i;
    out->main = i;
    return true;
  }
  return false;
}

const std::unordered_set<std::string>& gerund_preps() {
  static const std::unordered_set<std::string> set = {
      "for", "by", "of", "in", "while", "when", "after", "before", "without"};
  return set;
}

}  // namespace

std::vector<SemanticTriple> extract_triples_builtin(const std::string& sentence,
                                                    int sentence_index) {
  std::vector<Token> tokens = tokenize(sentence);
  std::size_t n = tokens.size();
  std::vector<bool> consumed(n, false);
  std::vector<SemanticTriple> triples;
  struct PendingGerund {
    std::string verb_lemma;
    Chunk object;
  };
  std::vector<PendingGerund> pending;

  std::size_t i = 0;
  while (i < n) {
    VerbGroup group;
    if (verb_group_at(tokens, i, &group)) {
      Chunk subject;
      std::size_t sub_first = 0, sub_last = 0;
      bool has_subject =
          i > 0 && !tokens[i - 1].punct_after &&
          collect_subject_left(sentence, tokens, consumed, i - 1, &subject,
                               &sub_first, &sub_last);
      if (has_subject) {
        for (std::size_t k = sub_first; k <= sub_last; ++k) consumed[k] = true;
      }
      for (std::size_t k = group.start; k <= group.end; ++k) consumed[k] = true;

      std::size_t pos = group.end + 1;
      while (pos < n && is_adverbish(tokens[pos]) && !tokens[pos].punct_after) ++pos;

      std::optional<Chunk> object;
      Chunk obj;
      std::size_t next_pos = pos;
      bool group_has_punct = tokens[group.end].punct_after;
      if (!group_has_punct && pos < n && tokens[pos].lower_text != "to" &&
          collect_chunk_right(sentence, tokens, pos, &obj, &next_pos)) {
        object = obj;
        for (std::size_t k = pos; k < next_pos; ++k) consumed[k] = true;
      }

      if (has_subject) {
        SemanticTriple triple;
        triple.sentence_index = sentence_index;
        triple.subject = subject;
        triple.verb_lemma = lemmatize_verb(tokens[group.main].text);
        triple.object = object;
        triples.push_back(triple);
      }

      // Infinitive complement: "... to fool these algorithms".
      std::size_t after_obj = next_pos;
      bool obj_punct = object && tokens[after_obj - 1].punct_after;
      if (!obj_punct && after_obj < n && tokens[after_obj].lower_text == "to" &&
          !tokens[after_obj].punct_after && after_obj + 1 < n) {
        const Token& inf = tokens[after_obj + 1];
        if (all_lower_alpha(inf.text) &&
            (base_verbs().count(inf.lower_text) || ends_with(inf.lower_text, "ize"))) {
          consumed[after_obj] = true;
          consumed[after_obj + 1] = true;
          Chunk inf_obj;
          std::size_t inf_next = after_obj + 2;
          bool has_inf_obj =
              !inf.punct_after &&
              collect_chunk_right(sentence, tokens, after_obj + 2, &inf_obj, &inf_next);
          if (has_inf_obj) {
            for (std::size_t k = after_obj + 2; k < inf_next; ++k) consumed[k] = true;
          }
          if (has_subject) {
            SemanticTriple chain;
            chain.sentence_index = sentence_index;
            chain.subject = subject;
            chain.verb_lemma = lemmatize_verb(inf.text);
            if (has_inf_obj) chain.object = inf_obj;
            triples.push_back(chain);
          }
          next_pos = inf_next;
        }
      }
      i = std::max(next_pos, group.end + 1);
      continue;
    }
    // Gerund after a preposition: "for training the model".
    if (gerund_preps().count(tokens[i].lower_text) && !tokens[i].punct_after &&
        i + 1 < n) {
      const Token& g = tokens[i + 1];
      if (all_lower_alpha(g.text) && g.lower_text.size() > 5 &&
          ends_with(g.lower_text, "ing") && !is_function_word(g.lower_text) &&
          !g.punct_after) {
        Chunk obj;
        std::size_t next_pos = i + 2;
        if (collect_chunk_right(sentence, tokens, i + 2, &obj, &next_pos)) {
          for (std::size_t k = i; k < next_pos; ++k) consumed[k] = true;
          pending.push_back({lemmatize_verb(g.text), obj});
          i = next_pos;
          continue;
        }
      }
    }
    ++i;
  }

  // Gerund complements inherit the clause subject.
  if (!pending.empty() && !triples.empty()) {
    for (const auto& p : pending) {
      SemanticTriple triple;
      triple.sentence_index = sentence_index;
      triple.subject = triples.front().subject;
      triple.verb_lemma = p.verb_lemma;
      triple.object = p.object;
      triples.push_back(triple);
    }
  }
  return triples;
}

// --- entity lexicon ---

EntityLexicon::EntityLexicon(std::string name, std::vector<std::string> keywords,
                             bool allow_plural)
    : name_(std::move(name)), allow_plural_(allow_plural) {
  std::set<std::string> seen;
  for (auto& kw : keywords) {
    std::string folded = lower(kw);
    if (folded.empty()) continue;
    if (seen.insert(folded).second) keywords_.push_back(folded);
  }
  if (keywords_.empty()) {
    throw ConfigError("entity lexicon '" + name_ + "' has no keywords");
  }
  // Longest keyword wins: more words first, then longer strings.
  std::stable_sort(keywords_.begin(), keywords_.end(),
                   [](const std::string& a, const std::string& b) {
                     auto words = [](const std::string& s) {
                       return std::count(s.begin(), s.end(), ' ') + 1;
                     };
                     if (words(a) != words(b)) return words(a) > words(b);
                     return a.size() > b.size();
                   });
}

EntityLexicon EntityLexicon::load(const std::string& name, const std::string& path,
                                  bool allow_plural) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open lexicon file: " + path);
  std::vector<std::string> keywords;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t");
    line = line.substr(first, last - first + 1);
    if (line[0] == '#') continue;
    keywords.push_back(line);
  }
  return EntityLexicon(name, std::move(keywords), allow_plural);
}

namespace {

bool word_matches(const std::string& chunk_word, const std::string& keyword_word,
                  bool allow_plural) {
  if (chunk_word == keyword_word) return true;
  if (!allow_plural) return false;
  return chunk_word == keyword_word + "s" || chunk_word == keyword_word + "es";
}

std::vector<std::string> phrase_words(const std::string& phrase) {
  std::vector<std::string> words;
  std::string current;
  for (char c : phrase) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) {
        words.push_back(current);
        current.clear();
      }
    } else {
      current += c;
    }
  }
  if (!current.empty()) words.push_back(current);
  return words;
}

}  // namespace

std::optional<std::string> EntityLexicon::match_chunk(
    const std::vector<std::string>& chunk_words) const {
  if (chunk_words.empty()) return std::nullopt;
  std::vector<std::string> folded;
  folded.reserve(chunk_words.size());
  for (const auto& w : chunk_words) folded.push_back(lower(w));
  for (const auto& kw : keywords_) {
    std::vector<std::string> kws = phrase_words(kw);
    if (kws.size() > folded.size()) continue;
    bool ok = true;
    for (std::size_t i = 0; i < kws.size(); ++i) {
      const std::string& cw = folded[folded.size() - kws.size() + i];
      const std::string& kwi = kws[i];
      bool last = i + 1 == kws.size();
      if (!(last ? word_matches(cw, kwi, allow_plural_) : cw == kwi)) {
        ok = false;
        break;
      }
    }
    if (ok) return kw;
  }
  return std::nullopt;
}

// --- mentions & masking ---

std::vector<EntityMention> find_entity_mentions(const std::string& sentence,
                                                const std::vector<SemanticTriple>& triples,
                                                const EntityLexicon& lexicon) {
  std::vector<EntityMention> mentions;
  std::set<std::pair<std::size_t, std::size_t>> seen_spans;
  auto consider = [&](const Chunk& chunk, GrammaticalRole role,
                      const std::string& verb) {
    auto span_key = std::make_pair(chunk.span.begin, chunk.span.len);
    if (seen_spans.count(span_key)) return;
    std::vector<std::string> words;
    for (const auto& t : tokenize(chunk.text)) words.push_back(t.text);
    auto keyword = lexicon.match_chunk(words);
    if (!keyword) return;
    seen_spans.insert(span_key);
    EntityMention m;
    m.chunk = chunk;
    m.keyword = *keyword;
    m.role = role;
    if (!verb.empty()) m.verb_lemma = verb;
    mentions.push_back(std::move(m));
  };
  for (const auto& triple : triples) {
    consider(triple.subject, GrammaticalRole::kSubject, triple.verb_lemma);
    if (triple.object) consider(*triple.object, GrammaticalRole::kObject, triple.verb_lemma);
  }
  std::sort(mentions.begin(), mentions.end(),
            [](const EntityMention& a, const EntityMention& b) {
              return a.chunk.span.begin < b.chunk.span.begin;
            });
  (void)sentence;
  return mentions;
}

MaskedSentence mask_mention(const std::string& sentence, const EntityMention& mention) {
  const CharSpan& span = mention.chunk.span;
  if (span.end() > sentence.size() ||
      sentence.compare(span.begin, span.len, mention.chunk.text) != 0) {
    throw OverlappingMask("mention span does not match sentence text");
  }
  if (mention.chunk.text.find(kMaskPlaceholder) != std::string::npos ||
      sentence.find(kMaskPlaceholder) != std::string::npos) {
    throw OverlappingMask("sentence already contains a mask placeholder");
  }
  MaskedSentence ms;
  ms.original_sentence = sentence;
  ms.entity_surface = mention.chunk.text;
  ms.entity_keyword = mention.keyword;
  ms.span_begin = span.begin;
  ms.span_len = span.len;
  ms.role = mention.role;
  ms.verb_lemma = mention.verb_lemma;
  ms.masked_sentence = sentence.substr(0, span.begin) + kMaskPlaceholder +
                       sentence.substr(span.end());
  return ms;
}

std::vector<MaskedSentence> deduplicate(const std::vector<MaskedSentence>& records) {
  std::vector<MaskedSentence> out;
  std::unordered_set<std::string> seen;
  for (const auto& r : records) {
    if (seen.insert(r.masked_sentence).second) out.push_back(r);
  }
  return out;
}

// --- LM-paper filter ---

namespace {

// Word-boundary tokenization: non-alphanumeric characters, including
// hyphens, are boundaries.
std::vector<std::string> boundary_tokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!current.empty()) {
      tokens.push_back(current);
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(current);
  return tokens;
}

}  // namespace

bool contains_phrase(const std::string& haystack, const std::string& phrase,
                     bool allow_plural) {
  std::vector<std::string> hay = boundary_tokens(haystack);
  std::vector<std::string> needle = boundary_tokens(phrase);
  if (needle.empty() || needle.size() > hay.size()) return false;
  for (std::size_t i = 0; i + needle.size() <= hay.size(); ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < needle.size(); ++j) {
      bool last = j + 1 == needle.size();
      if (!(last ? word_matches(hay[i + j], needle[j], allow_plural)
                 : hay[i + j] == needle[j])) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

bool filter_lm_documents(const Document& doc, const std::vector<std::string>& lm_keywords) {
  for (const auto& kw : lm_keywords) {
    if (contains_phrase(doc.text, kw)) return true;
    if (doc.title && contains_phrase(*doc.title, kw)) return true;
  }
  return false;
}

// --- document validation ---

void validate_document(const Document& doc) {
  if (doc.doc_id.empty()) throw ConfigError("document with empty doc_id");
  if (doc.source != "papers" && doc.source != "news" && doc.source != "other") {
    throw ConfigError("document " + doc.doc_id + ": invalid source '" + doc.source + "'");
  }
  if (doc.date) {
    const std::string& d = *doc.date;
    bool ok = d.size() == 10 && d[4] == '-' && d[7] == '-';
    if (ok) {
      for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
        if (!std::isdigit(static_cast<unsigned char>(d[i]))) ok = false;
      }
    }
    if (ok) {
      int year = std::stoi(d.substr(0, 4));
      int month = std::stoi(d.substr(5, 2));
      int day = std::stoi(d.substr(8, 2));
      static const int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
      bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
      int max_day = month >= 1 && month <= 12 ? days[month - 1] : 0;
      if (month == 2 && leap) max_day = 29;
      ok = month >= 1 && month <= 12 && day >= 1 && day <= max_day;
    }
    if (!ok) {
      throw ConfigError("document " + doc.doc_id + ": invalid date '" + d + "'");
    }
  }
}

}  // namespace anthro
