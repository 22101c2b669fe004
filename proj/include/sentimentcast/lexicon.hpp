#pragma once

// Sentiment lexicon construction from a master word dictionary.
//
// The dictionary rows carry a word, per-category flags and corpus
// frequency statistics. Positive and negative words above a frequency
// cut-off are kept and same-root words are collapsed into a shared prefix,
// so one prefix matches every inflection of the root.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "sentimentcast/csv.hpp"
#include "sentimentcast/error.hpp"

namespace sentimentcast {

enum class Category { positive, negative, other };

struct DictEntry {
  std::string word;
  Category category = Category::other;
  double word_proportion = 0.0;
  long long doc_count = 0;
  double std_dev_proportion = 0.0;
  long long word_count = 0;

  friend bool operator==(const DictEntry&, const DictEntry&) = default;
};

/// Non-fatal findings while reading a dictionary (skipped rows, dual flags).
struct ParseIssue {
  std::size_t line = 0;
  std::string message;
};

struct DictionaryParse {
  std::vector<DictEntry> entries;
  std::vector<ParseIssue> issues;
};

/// Column names of the master dictionary. Defaults follow the public
/// Loughran-McDonald master dictionary layout. A category column is "set"
/// when its value is positive (the dictionary stores the year the word was
/// added; removed words carry a negative year).
struct DictionaryColumns {
  std::string word = "Word";
  std::string positive = "Positive";
  std::string negative = "Negative";
  std::string proportion = "Word Proportion";
  std::string doc_count = "Doc Count";
  std::string std_dev = "Std Dev";
  std::string word_count = "Word Count";
};

inline constexpr double kDefaultFrequencyThreshold = 1e-6;
inline constexpr std::size_t kDefaultMinRootLength = 5;
inline constexpr std::size_t kMinPrefixLength = 3;

inline bool is_lower_word(std::string_view w) {
  return !w.empty() && std::all_of(w.begin(), w.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

inline DictionaryParse parse_master_dictionary(std::string_view csv_text,
                                               const DictionaryColumns& columns = {}) {
  const auto records = csv::parse(csv_text);
  if (records.empty()) throw Error(ErrorKind::empty_input, "dictionary has no header");

  const csv::Header header(records.front());
  const std::size_t word_col = header.require(columns.word);
  const std::size_t pos_col = header.require(columns.positive);
  const std::size_t neg_col = header.require(columns.negative);
  const std::size_t prop_col = header.require(columns.proportion);
  const std::size_t docs_col = header.require(columns.doc_count);
  const auto std_col = header.find(columns.std_dev);
  const auto count_col = header.find(columns.word_count);

  if (records.size() == 1) throw Error(ErrorKind::empty_input, "dictionary has no data rows");

  DictionaryParse out;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    auto field = [&](std::size_t col) -> std::string_view {
      return col < rec.fields.size() ? std::string_view(rec.fields[col]) : std::string_view{};
    };
    auto reject = [&](const std::string& why) { out.issues.push_back({rec.line, why}); };

    DictEntry e;
    e.word = csv::lower_copy(csv::trim_copy(field(word_col)));
    if (!is_lower_word(e.word)) {
      reject("word '" + e.word + "' is not purely alphabetic; row skipped");
      continue;
    }
    const auto pos = csv::parse_double(field(pos_col));
    const auto neg = csv::parse_double(field(neg_col));
    const auto prop = csv::parse_double(field(prop_col));
    const auto docs = csv::parse_double(field(docs_col));
    if (!pos || !neg || !prop || !docs) {
      reject("unparsable numeric field for '" + e.word + "'; row skipped");
      continue;
    }
    if (*prop < 0.0 || *prop > 1.0 || *docs < 0.0) {
      reject("out-of-range proportion or document count for '" + e.word + "'; row skipped");
      continue;
    }
    e.word_proportion = *prop;
    e.doc_count = static_cast<long long>(*docs);
    if (std_col) {
      auto sd = csv::parse_double(field(*std_col));
      if (!sd) {
        reject("unparsable std-dev for '" + e.word + "'; row skipped");
        continue;
      }
      e.std_dev_proportion = *sd;
    }
    if (count_col) {
      auto wc = csv::parse_double(field(*count_col));
      if (!wc || *wc < 0.0) {
        reject("unparsable word count for '" + e.word + "'; row skipped");
        continue;
      }
      e.word_count = static_cast<long long>(*wc);
    }

    const bool is_pos = *pos > 0.0;
    const bool is_neg = *neg > 0.0;
    if (is_pos && is_neg) {
      out.issues.push_back({rec.line, "'" + e.word + "' flagged both positive and negative; treated as negative"});
      e.category = Category::negative;
    } else if (is_neg) {
      e.category = Category::negative;
    } else if (is_pos) {
      e.category = Category::positive;
    }
    out.entries.push_back(std::move(e));
  }
  return out;
}

/// Keeps entries whose word proportion strictly exceeds `threshold`.
inline std::vector<DictEntry> filter_by_frequency(const std::vector<DictEntry>& entries,
                                                  double threshold = kDefaultFrequencyThreshold) {
  std::vector<DictEntry> out;
  std::copy_if(entries.begin(), entries.end(), std::back_inserter(out),
               [threshold](const DictEntry& e) { return e.word_proportion > threshold; });
  return out;
}

inline std::size_t common_prefix_length(std::string_view a, std::string_view b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return i;
}

/// Drops every string that extends another string of the set. Input must be
/// sorted; in sorted order a string's shortest surviving prefix is always the
/// most recently kept element.
inline std::vector<std::string> make_prefix_free(const std::vector<std::string>& sorted) {
  std::vector<std::string> out;
  for (const auto& s : sorted) {
    if (!out.empty() && s.starts_with(out.back())) continue;
    out.push_back(s);
  }
  return out;
}

/// Collapses same-root words into their longest common prefix.
///
/// Words are sorted and grouped greedily: the next word joins the current
/// group while it shares at least `min_root` leading letters with the
/// group's running common prefix (fewer when either string is shorter than
/// `min_root`). Each group becomes its common prefix; the result is sorted,
/// deduplicated and prefix-free.
inline std::vector<std::string> collapse_roots(std::vector<std::string> words,
                                               std::size_t min_root = kDefaultMinRootLength) {
  for (const auto& w : words) {
    if (!is_lower_word(w)) throw Error(ErrorKind::parse, "word '" + w + "' must be lowercase letters only");
  }
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());

  std::vector<std::string> roots;
  for (const auto& w : words) {
    if (!roots.empty()) {
      std::string& root = roots.back();
      const std::size_t shared = common_prefix_length(root, w);
      const std::size_t needed = std::min({min_root, root.size(), w.size()});
      if (shared >= needed && shared > 0) {
        root.resize(shared);
        continue;
      }
    }
    roots.push_back(w);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return make_prefix_free(roots);
}

struct SentimentLexicon {
  std::set<std::string> positive_prefixes;
  std::set<std::string> negative_prefixes;
  double threshold_used = kDefaultFrequencyThreshold;
  std::size_t raw_positive = 0;
  std::size_t raw_negative = 0;

  friend bool operator==(const SentimentLexicon&, const SentimentLexicon&) = default;
};

/// Throws prefix-collision when a prefix of one polarity equals or extends
/// a prefix of the other, since a token could then match both sides.
inline void check_polarity_disjoint(const std::set<std::string>& positive,
                                    const std::set<std::string>& negative) {
  for (const auto& p : positive) {
    for (const auto& n : negative) {
      if (p.starts_with(n) || n.starts_with(p)) {
        const std::string& shorter = p.size() <= n.size() ? p : n;
        throw Error(ErrorKind::prefix_collision,
                    "prefix '" + shorter + "' collides across polarities ('" + p + "' vs '" + n + "')");
      }
    }
  }
}

inline void check_prefix_free(const std::set<std::string>& prefixes, std::string_view side) {
  std::string_view last;
  bool have_last = false;
  for (const auto& p : prefixes) {
    if (p.size() < kMinPrefixLength) {
      throw Error(ErrorKind::parse, std::string(side) + " prefix '" + p + "' is shorter than 3 letters");
    }
    if (!is_lower_word(p)) throw Error(ErrorKind::parse, std::string(side) + " prefix '" + p + "' is not lowercase letters");
    if (have_last && p.starts_with(last)) {
      throw Error(ErrorKind::parse, std::string(side) + " prefixes are not prefix-free: '" + std::string(last) + "' and '" + p + "'");
    }
    last = p;
    have_last = true;
  }
}

/// Validates the lexicon invariants (prefix-free sides, minimum prefix
/// length, cross-polarity disjointness).
inline void validate(const SentimentLexicon& lex) {
  check_prefix_free(lex.positive_prefixes, "positive");
  check_prefix_free(lex.negative_prefixes, "negative");
  check_polarity_disjoint(lex.positive_prefixes, lex.negative_prefixes);
}

inline SentimentLexicon build_lexicon(const std::vector<DictEntry>& entries,
                                      double threshold = kDefaultFrequencyThreshold,
                                      std::size_t min_root = kDefaultMinRootLength) {
  if (min_root < kMinPrefixLength) {
    throw Error(ErrorKind::usage, "minimum root length must be at least " + std::to_string(kMinPrefixLength));
  }
  SentimentLexicon lex;
  lex.threshold_used = threshold;

  std::vector<std::string> pos_words, neg_words;
  for (const auto& e : entries) {
    if (e.category == Category::positive) ++lex.raw_positive;
    if (e.category == Category::negative) ++lex.raw_negative;
  }
  for (const auto& e : filter_by_frequency(entries, threshold)) {
    // Words shorter than the minimum prefix length would match too broadly.
    if (e.word.size() < kMinPrefixLength) continue;
    if (e.category == Category::positive) pos_words.push_back(e.word);
    if (e.category == Category::negative) neg_words.push_back(e.word);
  }

  auto pos = collapse_roots(std::move(pos_words), min_root);
  auto neg = collapse_roots(std::move(neg_words), min_root);
  if (pos.empty()) throw Error(ErrorKind::degenerate_lexicon, "no positive words above threshold");
  if (neg.empty()) throw Error(ErrorKind::degenerate_lexicon, "no negative words above threshold");

  lex.positive_prefixes = {pos.begin(), pos.end()};
  lex.negative_prefixes = {neg.begin(), neg.end()};
  check_polarity_disjoint(lex.positive_prefixes, lex.negative_prefixes);
  return lex;
}

/// `prefix,polarity` CSV with header, sorted by prefix then polarity.
inline std::string write_lexicon_csv(const SentimentLexicon& lex) {
  std::vector<std::pair<std::string, std::string_view>> rows;
  for (const auto& p : lex.positive_prefixes) rows.emplace_back(p, "positive");
  for (const auto& n : lex.negative_prefixes) rows.emplace_back(n, "negative");
  std::sort(rows.begin(), rows.end());
  std::string out = "prefix,polarity\n";
  for (const auto& [prefix, polarity] : rows) {
    out += prefix;
    out += ',';
    out += polarity;
    out += '\n';
  }
  return out;
}

inline SentimentLexicon read_lexicon_csv(std::string_view text) {
  const auto records = csv::parse(text);
  if (records.empty()) throw Error(ErrorKind::empty_input, "lexicon file is empty");
  const csv::Header header(records.front());
  const std::size_t prefix_col = header.require("prefix");
  const std::size_t polarity_col = header.require("polarity");

  SentimentLexicon lex;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() <= std::max(prefix_col, polarity_col)) {
      throw Error(ErrorKind::parse, "line " + std::to_string(rec.line) + ": too few fields");
    }
    const std::string prefix = csv::trim_copy(rec.fields[prefix_col]);
    const std::string polarity = csv::lower_copy(csv::trim_copy(rec.fields[polarity_col]));
    if (polarity == "positive") {
      lex.positive_prefixes.insert(prefix);
    } else if (polarity == "negative") {
      lex.negative_prefixes.insert(prefix);
    } else {
      throw Error(ErrorKind::parse, "line " + std::to_string(rec.line) + ": unknown polarity '" + polarity + "'");
    }
  }
  lex.raw_positive = lex.positive_prefixes.size();
  lex.raw_negative = lex.negative_prefixes.size();
  validate(lex);
  return lex;
}

}  // namespace sentimentcast
