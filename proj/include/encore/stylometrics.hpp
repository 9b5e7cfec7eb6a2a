#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "encore/ingest.hpp"

namespace encore::stylometrics {

// Tokens are words or symbols. A word is any token containing at least one
// letter. Sentence ranges are [begin, end) token indices.
struct TokenizedDoc {
  std::vector<std::string> tokens;
  std::vector<std::pair<size_t, size_t>> sentences;
  size_t word_count = 0;
  size_t sentence_count = 0;
  size_t syllable_count = 0;
};

struct TokenizerConfig {
  // Lowercased, without the trailing period: a "." directly after one of
  // these words does not end a sentence.
  std::set<std::string> abbreviations;

  static TokenizerConfig defaults();
};

bool is_word(std::string_view token);

TokenizedDoc tokenize(std::string_view text, const TokenizerConfig& config = TokenizerConfig::defaults());

// Heuristic: maximal vowel groups (a e i o u y), minus a trailing silent e
// (kept for consonant+"le" endings), floored at 1. The overrides table wins.
int count_syllables(std::string_view word,
                    const std::map<std::string, int>* overrides = nullptr);

const std::map<std::string, int>& default_syllable_overrides();

// 0.39 * words/sentences + 11.8 * syllables/words - 15.59
double fk_grade(const TokenizedDoc& doc);

enum class PosClass : int {
  noun = 0, adjective, preposition, article, pronoun, verb, adverb, interjection, other
};
inline constexpr int kPosClassCount = 9;
const char* to_string(PosClass c);

// Tags a single word in isolation (lexicon lookup, then suffix rules,
// default noun).
PosClass tag_word(std::string_view word);

// Frequencies per 100 words; entries sum to 100.
struct PosProfile {
  std::array<double, kPosClassCount> freq{};
  double operator[](PosClass c) const { return freq[static_cast<int>(c)]; }
};

PosProfile pos_tag(const TokenizedDoc& doc);

// Heylighen-Dewaele F-score:
// (noun + adjective + preposition + article - pronoun - verb - adverb
//  - interjection + 100) / 2
double formality(const PosProfile& profile);

double pearson(std::span<const double> x, std::span<const double> y);

struct PolyFit {
  std::vector<double> coeffs;  // ascending powers
  double rss = 0.0;
};

PolyFit polyfit(std::span<const double> x, std::span<const double> y, int degree);

struct StyleRecord {
  std::string performance_id;
  double readability = 0.0;
  double formality = 0.0;
  long length = 0;  // tokens
  double pct_seats_sold = 0.0;
};

struct MetricAnalysis {
  std::string metric;
  int degree = 1;
  std::optional<double> correlation;  // absent when undefined (zero variance)
  std::optional<PolyFit> fit;
  std::optional<double> vertex;  // degree-2 fits only
  std::optional<std::string> note;
};

struct StyleReport {
  std::vector<StyleRecord> records;
  MetricAnalysis readability;  // degree-2 fit
  MetricAnalysis formality;    // degree-1 fit
  MetricAnalysis length;       // degree-1 fit
  std::vector<std::string> diagnostics;
};

// Per-show style metrics against the share of capacity sold, subscription
// tickets excluded. Needs at least three shows with descriptions.
StyleReport style_report(const std::vector<ingest::Performance>& catalog,
                         const std::vector<ingest::Transaction>& txs,
                         const TokenizerConfig& config = TokenizerConfig::defaults());

}  // namespace encore::stylometrics
