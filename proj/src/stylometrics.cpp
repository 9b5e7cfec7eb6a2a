#include "encore/stylometrics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "encore/errors.hpp"

namespace encore::stylometrics {

namespace {

bool is_letter(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return is_letter(c) || is_digit(c); }

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_vowel(char c) {
  switch (c) {
    case 'a': case 'e': case 'i': case 'o': case 'u': case 'y': return true;
    default: return false;
  }
}

const std::unordered_set<std::string>& articles() {
  static const std::unordered_set<std::string> set = {"a", "an", "the"};
  return set;
}

const std::unordered_set<std::string>& prepositions() {
  static const std::unordered_set<std::string> set = {
      "aboard", "about", "above", "across", "after", "against", "along", "amid",
      "among", "around", "at", "before", "behind", "below", "beneath", "beside",
      "besides", "between", "beyond", "by", "despite", "down", "during", "except",
      "for", "from", "in", "inside", "into", "near", "of", "off", "on", "onto",
      "out", "outside", "over", "past", "per", "since", "through", "throughout",
      "till", "to", "toward", "towards", "under", "underneath", "until", "unto",
      "up", "upon", "via", "with", "within", "without"};
  return set;
}

const std::unordered_set<std::string>& pronouns() {
  static const std::unordered_set<std::string> set = {
      "i", "you", "he", "she", "it", "we", "they", "me", "him", "her", "us",
      "them", "my", "your", "his", "its", "our", "their", "mine", "yours",
      "hers", "ours", "theirs", "myself", "yourself", "himself", "herself",
      "itself", "ourselves", "yourselves", "themselves", "who", "whom", "whose",
      "which", "what", "this", "that", "these", "those", "someone", "somebody",
      "something", "anyone", "anybody", "anything", "everyone", "everybody",
      "everything", "nobody", "nothing", "none", "one", "ones"};
  return set;
}

const std::unordered_set<std::string>& interjections() {
  static const std::unordered_set<std::string> set = {
      "oh", "ah", "aha", "alas", "bravo", "hey", "hooray", "hurrah", "oops",
      "ouch", "ugh", "wow", "yay", "whoa", "hmm", "psst", "shh"};
  return set;
}

// Auxiliaries plus a few verbs too common to leave to suffix rules.
const std::unordered_set<std::string>& verbs() {
  static const std::unordered_set<std::string> set = {
      "be", "am", "is", "are", "was", "were", "been", "being", "have", "has",
      "had", "having", "do", "does", "did", "doing", "will", "would", "shall",
      "should", "may", "might", "must", "can", "could", "ought", "go", "goes",
      "went", "gone", "come", "comes", "came", "get", "gets", "got", "make",
      "makes", "made", "take", "takes", "took", "see", "sees", "saw", "seen",
      "know", "knows", "knew", "sing", "sings", "sang", "sung", "play", "plays",
      "played", "hear", "hears", "heard", "feel", "feels", "felt", "love",
      "loves", "loved", "bring", "brings", "brought", "join", "joins", "joined",
      "let", "lets", "say", "says", "said", "give", "gives", "gave", "conducts",
      "conduct", "conducted", "performs", "perform", "performed", "presents",
      "present", "presented", "returns", "return", "returned"};
  return set;
}

const std::unordered_set<std::string>& adverbs() {
  static const std::unordered_set<std::string> set = {
      "not", "n't", "very", "too", "also", "so", "just", "now", "then", "here",
      "there", "always", "never", "often", "soon", "again", "once", "twice",
      "quite", "rather", "almost", "away", "back", "still", "yet", "even",
      "ever", "already", "together", "well", "more", "most", "less", "least"};
  return set;
}

// Conjunctions sit outside both formality groups; they count as "other".
const std::unordered_set<std::string>& conjunctions() {
  static const std::unordered_set<std::string> set = {
      "and", "but", "or", "nor", "because", "although", "though", "whereas",
      "unless", "while", "if", "whether", "than", "when", "where", "as"};
  return set;
}

const std::unordered_set<std::string>& adjectives() {
  static const std::unordered_set<std::string> set = {
      "good", "great", "new", "old", "young", "big", "small", "grand", "fine",
      "bold", "bright", "rare", "dark", "warm", "sweet", "live", "free",
      "famous", "classic", "modern", "major", "minor", "other", "own", "same",
      "few", "several", "each", "every", "many", "much", "all", "both", "last",
      "first", "next"};
  return set;
}

const std::unordered_map<std::string, PosClass>& suffix_exceptions() {
  static const std::unordered_map<std::string, PosClass> map = {
      {"family", PosClass::noun},   {"assembly", PosClass::noun},
      {"supply", PosClass::noun},   {"reply", PosClass::noun},
      {"italy", PosClass::noun},    {"july", PosClass::noun},
      {"lily", PosClass::noun},     {"only", PosClass::adverb},
      {"early", PosClass::adjective}, {"evening", PosClass::noun},
      {"morning", PosClass::noun},  {"string", PosClass::noun},
      {"spring", PosClass::noun},   {"ceiling", PosClass::noun},
      {"music", PosClass::noun},    {"public", PosClass::noun},
      {"hundred", PosClass::noun},  {"sacred", PosClass::adjective},
      {"beloved", PosClass::adjective}};
  return map;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

TokenizerConfig TokenizerConfig::defaults() {
  TokenizerConfig config;
  config.abbreviations = {"dr", "mr", "mrs", "ms", "prof", "st", "jr", "sr",
                          "vs", "etc", "no", "op", "approx", "feat", "arr"};
  return config;
}

bool is_word(std::string_view token) {
  return std::any_of(token.begin(), token.end(), [](char c) { return is_letter(c); });
}

TokenizedDoc tokenize(std::string_view text, const TokenizerConfig& config) {
  TokenizedDoc doc;

  // Lexing: a token is a maximal alphanumeric run (apostrophes and hyphens
  // joining letters, periods and commas joining digits), or a single
  // non-space character.
  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    if (is_alnum(c)) {
      size_t start = i++;
      while (i < n) {
        if (is_alnum(text[i])) { ++i; continue; }
        bool joiner =
            ((text[i] == '\'' || text[i] == '-') && i + 1 < n && is_letter(text[i - 1]) && is_letter(text[i + 1])) ||
            ((text[i] == '.' || text[i] == ',') && i + 1 < n && is_digit(text[i - 1]) && is_digit(text[i + 1]));
        if (!joiner) break;
        ++i;
      }
      doc.tokens.emplace_back(text.substr(start, i - start));
    } else {
      doc.tokens.emplace_back(1, c);
      ++i;
    }
  }

  for (const auto& tok : doc.tokens) {
    if (is_word(tok)) {
      ++doc.word_count;
      doc.syllable_count += static_cast<size_t>(count_syllables(tok));
    }
  }
  if (doc.word_count == 0) throw DataError("tokenize: document contains no words");

  // Sentence segmentation over tokens. A terminator closes the current
  // sentence only if it already contains a word, and a "." is ignored right
  // after an abbreviation.
  size_t begin = 0;
  bool has_word = false;
  for (size_t t = 0; t < doc.tokens.size(); ++t) {
    const std::string& tok = doc.tokens[t];
    if (is_word(tok)) { has_word = true; continue; }
    if (tok != "." && tok != "!" && tok != "?") continue;
    if (!has_word) continue;
    if (tok == "." && t > 0 && config.abbreviations.count(lower(doc.tokens[t - 1]))) continue;
    doc.sentences.emplace_back(begin, t + 1);
    begin = t + 1;
    has_word = false;
  }
  if (has_word) {
    doc.sentences.emplace_back(begin, doc.tokens.size());
  } else if (begin < doc.tokens.size() && !doc.sentences.empty()) {
    doc.sentences.back().second = doc.tokens.size();  // trailing symbols
  }
  doc.sentence_count = doc.sentences.size();
  return doc;
}

const std::map<std::string, int>& default_syllable_overrides() {
  static const std::map<std::string, int> overrides = {
      {"business", 2}, {"every", 2},   {"everything", 3}, {"everyone", 3},
      {"somewhere", 2}, {"favorite", 3}, {"chocolate", 2},  {"camera", 2},
      {"interesting", 3}, {"wednesday", 2}, {"beautiful", 3}};
  return overrides;
}

int count_syllables(std::string_view word, const std::map<std::string, int>* overrides) {
  std::string w;
  w.reserve(word.size());
  for (char c : word) {
    if (is_letter(c)) w.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (w.empty()) throw ContractError("count_syllables: word has no letters");

  const auto& table = overrides ? *overrides : default_syllable_overrides();
  if (auto it = table.find(w); it != table.end()) return it->second;

  int groups = 0;
  bool in_group = false;
  for (char c : w) {
    if (is_vowel(c)) {
      if (!in_group) { ++groups; in_group = true; }
    } else {
      in_group = false;
    }
  }

  // Trailing silent e; consonant+"le" endings keep theirs ("table").
  if (w.size() >= 2 && w.back() == 'e' && !is_vowel(w[w.size() - 2])) {
    bool cons_le = w.size() >= 3 && w[w.size() - 2] == 'l' && !is_vowel(w[w.size() - 3]);
    if (!cons_le) --groups;
  }
  return std::max(groups, 1);
}

double fk_grade(const TokenizedDoc& doc) {
  if (doc.word_count == 0 || doc.sentence_count == 0)
    throw ContractError("fk_grade: document must have at least one word and one sentence");
  double words = static_cast<double>(doc.word_count);
  double sentences = static_cast<double>(doc.sentence_count);
  double syllables = static_cast<double>(doc.syllable_count);
  return 0.39 * (words / sentences) + 11.8 * (syllables / words) - 15.59;
}

const char* to_string(PosClass c) {
  switch (c) {
    case PosClass::noun: return "noun";
    case PosClass::adjective: return "adjective";
    case PosClass::preposition: return "preposition";
    case PosClass::article: return "article";
    case PosClass::pronoun: return "pronoun";
    case PosClass::verb: return "verb";
    case PosClass::adverb: return "adverb";
    case PosClass::interjection: return "interjection";
    case PosClass::other: return "other";
  }
  return "?";
}

PosClass tag_word(std::string_view word) {
  std::string w = lower(word);

  if (articles().count(w)) return PosClass::article;
  if (prepositions().count(w)) return PosClass::preposition;
  if (pronouns().count(w)) return PosClass::pronoun;
  if (interjections().count(w)) return PosClass::interjection;
  if (conjunctions().count(w)) return PosClass::other;
  if (verbs().count(w)) return PosClass::verb;
  if (adverbs().count(w)) return PosClass::adverb;
  if (adjectives().count(w)) return PosClass::adjective;

  if (auto it = suffix_exceptions().find(w); it != suffix_exceptions().end()) return it->second;

  if (w.size() > 3 && ends_with(w, "ly")) return PosClass::adverb;
  if (w.size() > 4 && ends_with(w, "ing")) return PosClass::verb;
  if (w.size() > 4 && (ends_with(w, "ize") || ends_with(w, "ise"))) return PosClass::verb;
  if (w.size() > 3 && ends_with(w, "ed")) return PosClass::verb;
  for (const char* suffix : {"ous", "ful", "less", "able", "ible", "ish", "ive", "ical", "esque"}) {
    if (w.size() > 4 && ends_with(w, suffix)) return PosClass::adjective;
  }
  return PosClass::noun;
}

PosProfile pos_tag(const TokenizedDoc& doc) {
  if (doc.word_count == 0) throw ContractError("pos_tag: document has no words");
  std::array<long, kPosClassCount> counts{};
  for (const auto& tok : doc.tokens) {
    if (!is_word(tok)) continue;
    ++counts[static_cast<int>(tag_word(tok))];
  }
  PosProfile profile;
  for (int c = 0; c < kPosClassCount; ++c)
    profile.freq[c] = 100.0 * static_cast<double>(counts[c]) / static_cast<double>(doc.word_count);
  return profile;
}

double formality(const PosProfile& p) {
  return (p[PosClass::noun] + p[PosClass::adjective] + p[PosClass::preposition] +
          p[PosClass::article] - p[PosClass::pronoun] - p[PosClass::verb] -
          p[PosClass::adverb] - p[PosClass::interjection] + 100.0) / 2.0;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ContractError("pearson: length mismatch");
  if (x.size() < 2) throw ContractError("pearson: need at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
  mx /= n; my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw DataError("pearson: zero variance, correlation undefined");
  return sxy / std::sqrt(sxx * syy);
}

PolyFit polyfit(std::span<const double> x, std::span<const double> y, int degree) {
  if (degree != 1 && degree != 2) throw ContractError("polyfit: degree must be 1 or 2");
  if (x.size() != y.size()) throw ContractError("polyfit: length mismatch");
  if (x.size() <= static_cast<size_t>(degree)) throw ContractError("polyfit: need more points than degree");

  std::set<double> distinct(x.begin(), x.end());
  if (distinct.size() < static_cast<size_t>(degree) + 1)
    throw DataError("polyfit: singular fit, need " + std::to_string(degree + 1) + " distinct x values");

  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(n, degree + 1);
  Eigen::VectorXd target(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double xi = x[static_cast<size_t>(i)];
    double pow = 1.0;
    for (int d = 0; d <= degree; ++d) {
      design(i, d) = pow;
      pow *= xi;
    }
    target(i) = y[static_cast<size_t>(i)];
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < degree + 1) throw DataError("polyfit: singular fit, rank-deficient design");
  Eigen::VectorXd coeffs = qr.solve(target);

  PolyFit fit;
  fit.coeffs.assign(coeffs.data(), coeffs.data() + coeffs.size());
  fit.rss = (design * coeffs - target).squaredNorm();
  return fit;
}

StyleReport style_report(const std::vector<ingest::Performance>& catalog,
                         const std::vector<ingest::Transaction>& txs,
                         const TokenizerConfig& config) {
  StyleReport report;

  std::unordered_map<std::string, long> sold;  // non-subscription seats
  for (const auto& tx : txs) {
    if (tx.price_group == ingest::PriceGroup::subscription) continue;
    sold[tx.performance_id] += tx.seats;
  }

  for (const auto& p : catalog) {
    if (!p.description || p.capacity < 1) continue;
    TokenizedDoc doc;
    try {
      doc = tokenize(*p.description, config);
    } catch (const DataError&) {
      report.diagnostics.push_back(p.performance_id + ": description has no words, skipped");
      continue;
    }
    StyleRecord rec;
    rec.performance_id = p.performance_id;
    rec.readability = fk_grade(doc);
    rec.formality = formality(pos_tag(doc));
    rec.length = static_cast<long>(doc.tokens.size());
    double pct = 0.0;
    if (auto it = sold.find(p.performance_id); it != sold.end())
      pct = static_cast<double>(it->second) / static_cast<double>(p.capacity);
    if (pct > 1.0) {
      report.diagnostics.push_back(p.performance_id + ": seats sold exceed capacity, clamped");
      pct = 1.0;
    }
    rec.pct_seats_sold = pct;
    report.records.push_back(std::move(rec));
  }

  if (report.records.size() < 3)
    throw DataError("style_report: need at least 3 performances with descriptions, have " +
                    std::to_string(report.records.size()));

  std::vector<double> pct;
  pct.reserve(report.records.size());
  for (const auto& r : report.records) pct.push_back(r.pct_seats_sold);

  auto analyze = [&](const std::string& name, int degree, auto getter) {
    MetricAnalysis m;
    m.metric = name;
    m.degree = degree;
    std::vector<double> values;
    values.reserve(report.records.size());
    for (const auto& r : report.records) values.push_back(getter(r));
    try {
      m.correlation = pearson(values, pct);
    } catch (const DataError& e) {
      m.note = e.what();
    }
    try {
      m.fit = polyfit(values, pct, degree);
      if (degree == 2 && m.fit->coeffs[2] != 0.0)
        m.vertex = -m.fit->coeffs[1] / (2.0 * m.fit->coeffs[2]);
    } catch (const DataError& e) {
      if (!m.note) m.note = e.what();
    }
    return m;
  };

  report.readability = analyze("readability", 2, [](const StyleRecord& r) { return r.readability; });
  report.formality = analyze("formality", 1, [](const StyleRecord& r) { return r.formality; });
  report.length = analyze("length", 1, [](const StyleRecord& r) { return static_cast<double>(r.length); });
  return report;
}

}  // namespace encore::stylometrics
