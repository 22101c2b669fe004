#include <gtest/gtest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "sentimentcast/lexicon.hpp"

namespace sc = sentimentcast;

namespace {

const char* kHeader = "Word,Word Proportion,Doc Count,Negative,Positive\n";

std::string fixture_path(const std::string& name) { return std::string(SC_TEST_DATA) + "/" + name; }

sc::DictEntry entry(std::string word, sc::Category cat, double prop) {
  sc::DictEntry e;
  e.word = std::move(word);
  e.category = cat;
  e.word_proportion = prop;
  return e;
}

}  // namespace

TEST(ParseMasterDictionary, MapsFieldsAndLowercases) {
  const auto parsed = sc::parse_master_dictionary(std::string(kHeader) + "ABANDON,2.3e-5,1200,2009,0\n");
  ASSERT_EQ(parsed.entries.size(), 1u);
  const auto& e = parsed.entries[0];
  EXPECT_EQ(e.word, "abandon");
  EXPECT_EQ(e.category, sc::Category::negative);
  EXPECT_DOUBLE_EQ(e.word_proportion, 2.3e-5);
  EXPECT_EQ(e.doc_count, 1200);
  EXPECT_TRUE(parsed.issues.empty());
}

TEST(ParseMasterDictionary, HeaderOnlyIsEmptyInput) {
  try {
    sc::parse_master_dictionary(kHeader);
    FAIL();
  } catch (const sc::Error& e) {
    EXPECT_EQ(e.kind(), sc::ErrorKind::empty_input);
  }
  EXPECT_THROW(sc::parse_master_dictionary(""), sc::Error);
}

TEST(ParseMasterDictionary, DualFlagResolvesNegativeWithWarning) {
  const auto parsed = sc::parse_master_dictionary(std::string(kHeader) + "volatile,3e-5,100,2009,2009\n");
  ASSERT_EQ(parsed.entries.size(), 1u);
  EXPECT_EQ(parsed.entries[0].category, sc::Category::negative);
  ASSERT_EQ(parsed.issues.size(), 1u);
  EXPECT_EQ(parsed.issues[0].line, 2u);
  EXPECT_NE(parsed.issues[0].message.find("both"), std::string::npos);
}

TEST(ParseMasterDictionary, RemovedWordsCarryNegativeYearAndAreUnflagged) {
  const auto parsed = sc::parse_master_dictionary(std::string(kHeader) + "gain,3e-5,100,0,-2020\n");
  ASSERT_EQ(parsed.entries.size(), 1u);
  EXPECT_EQ(parsed.entries[0].category, sc::Category::other);
}

TEST(ParseMasterDictionary, MissingColumnNamesIt) {
  try {
    sc::parse_master_dictionary("Word,Doc Count,Negative,Positive\nloss,1,2009,0\n");
    FAIL();
  } catch (const sc::Error& e) {
    EXPECT_EQ(e.kind(), sc::ErrorKind::schema);
    EXPECT_NE(std::string(e.what()).find("Word Proportion"), std::string::npos);
  }
}

TEST(ParseMasterDictionary, UnparsableNumericsAreReported) {
  const auto parsed =
      sc::parse_master_dictionary(std::string(kHeader) + "loss,abc,10,2009,0\ngain,3e-5,10,0,2009\n");
  ASSERT_EQ(parsed.entries.size(), 1u);
  EXPECT_EQ(parsed.entries[0].word, "gain");
  ASSERT_EQ(parsed.issues.size(), 1u);
  EXPECT_EQ(parsed.issues[0].line, 2u);
}

TEST(ParseMasterDictionary, CustomColumnNames) {
  sc::DictionaryColumns cols;
  cols.word = "term";
  cols.proportion = "freq";
  cols.doc_count = "docs";
  cols.negative = "neg";
  cols.positive = "pos";
  const auto parsed = sc::parse_master_dictionary("term,freq,docs,neg,pos\nSlump,2e-5,3,1,0\n", cols);
  ASSERT_EQ(parsed.entries.size(), 1u);
  EXPECT_EQ(parsed.entries[0].word, "slump");
}

TEST(FilterByFrequency, StrictThreshold) {
  const std::vector<sc::DictEntry> in = {entry("above", sc::Category::negative, 2e-6),
                                         entry("boundary", sc::Category::negative, 1e-6)};
  const auto out = sc::filter_by_frequency(in, 1e-6);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].word, "above");
}

TEST(FilterByFrequency, ZeroThresholdIsIdentity) {
  const std::vector<sc::DictEntry> in = {entry("one", sc::Category::negative, 1e-9),
                                         entry("two", sc::Category::positive, 0.5)};
  EXPECT_EQ(sc::filter_by_frequency(in, 0.0), in);
}

TEST(CollapseRoots, SharedRootCollapses) {
  EXPECT_EQ(sc::collapse_roots({"bankrupt", "bankruptcies", "bankruptcy"}), std::vector<std::string>{"bankrupt"});
}

TEST(CollapseRoots, SingletonAndShortWordsKept) {
  EXPECT_EQ(sc::collapse_roots({"profit"}), std::vector<std::string>{"profit"});
  EXPECT_EQ(sc::collapse_roots({"loss", "gain"}), (std::vector<std::string>{"gain", "loss"}));
}

TEST(CollapseRoots, ShortSharedPrefixDoesNotMerge) {
  EXPECT_EQ(sc::collapse_roots({"gain", "gamble"}), (std::vector<std::string>{"gain", "gamble"}));
  EXPECT_EQ(sc::collapse_roots({"abandon", "abate"}), (std::vector<std::string>{"abandon", "abate"}));
}

TEST(CollapseRoots, ShortWordMergesWithItsInflections) {
  EXPECT_EQ(sc::collapse_roots({"gain", "gains", "gained"}), std::vector<std::string>{"gain"});
}

TEST(CollapseRoots, MinRootIsConfigurable) {
  EXPECT_EQ(sc::collapse_roots({"decline", "decrease"}, 3), std::vector<std::string>{"dec"});
  EXPECT_EQ(sc::collapse_roots({"decline", "decrease"}, 5), (std::vector<std::string>{"decline", "decrease"}));
}

TEST(CollapseRoots, RejectsNonLetters) {
  EXPECT_THROW(sc::collapse_roots({"loss", "write-off"}), sc::Error);
  EXPECT_THROW(sc::collapse_roots({"Loss"}), sc::Error);
}

TEST(BuildLexicon, TwelveRowFixtureMatchesHandDerivedSets) {
  const auto parsed = sc::parse_master_dictionary(sc::csv::read_file(fixture_path("dictionary_12.csv")));
  ASSERT_EQ(parsed.entries.size(), 12u);
  const auto lex = sc::build_lexicon(parsed.entries, 1e-6);
  EXPECT_EQ(lex.negative_prefixes, (std::set<std::string>{"abandon", "bankrupt", "loss"}));
  EXPECT_EQ(lex.positive_prefixes, (std::set<std::string>{"gain", "profitab"}));
  EXPECT_EQ(lex.raw_negative, 8u);
  EXPECT_EQ(lex.raw_positive, 4u);
  EXPECT_DOUBLE_EQ(lex.threshold_used, 1e-6);
}

TEST(BuildLexicon, AllBelowThresholdIsDegenerate) {
  const std::vector<sc::DictEntry> in = {entry("loss", sc::Category::negative, 1e-7),
                                         entry("gain", sc::Category::positive, 1e-7)};
  try {
    sc::build_lexicon(in, 1e-6);
    FAIL();
  } catch (const sc::Error& e) {
    EXPECT_EQ(e.kind(), sc::ErrorKind::degenerate_lexicon);
  }
}

TEST(BuildLexicon, CrossPolarityCollisionNamesPrefix) {
  const std::vector<sc::DictEntry> in = {entry("gain", sc::Category::positive, 1e-4),
                                         entry("gainsay", sc::Category::negative, 1e-4)};
  try {
    sc::build_lexicon(in, 1e-6);
    FAIL();
  } catch (const sc::Error& e) {
    EXPECT_EQ(e.kind(), sc::ErrorKind::prefix_collision);
    EXPECT_NE(std::string(e.what()).find("'gain'"), std::string::npos);
  }
}

TEST(LexiconCsv, SortedStableFormat) {
  sc::SentimentLexicon lex;
  lex.positive_prefixes = {"profit", "gain"};
  lex.negative_prefixes = {"loss"};
  EXPECT_EQ(sc::write_lexicon_csv(lex), "prefix,polarity\ngain,positive\nloss,negative\nprofit,positive\n");
  const auto back = sc::read_lexicon_csv(sc::write_lexicon_csv(lex));
  EXPECT_EQ(back.positive_prefixes, lex.positive_prefixes);
  EXPECT_EQ(back.negative_prefixes, lex.negative_prefixes);
}

TEST(LexiconCsv, ReadRejectsInvalidLexicons) {
  EXPECT_THROW(sc::read_lexicon_csv("prefix,polarity\nloss,negative\nlosses,negative\n"), sc::Error);
  EXPECT_THROW(sc::read_lexicon_csv("prefix,polarity\nloss,negative\nloss,positive\n"), sc::Error);
  EXPECT_THROW(sc::read_lexicon_csv("prefix,polarity\nup,positive\n"), sc::Error);
  EXPECT_THROW(sc::read_lexicon_csv("prefix,polarity\nloss,neutral\n"), sc::Error);
}

TEST(CollapseRoots, PropertiesOnRandomWordLists) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> words;
    const int count = 1 + static_cast<int>(rng() % 40);
    for (int i = 0; i < count; ++i) {
      std::string w;
      const int len = 1 + static_cast<int>(rng() % 10);
      for (int k = 0; k < len; ++k) w.push_back(static_cast<char>('a' + rng() % 3));
      words.push_back(w);
    }
    const auto once = sc::collapse_roots(words);
    EXPECT_EQ(sc::collapse_roots(once), once);
    for (const auto& w : words) {
      int covering = 0;
      for (const auto& p : once) covering += w.starts_with(p) ? 1 : 0;
      EXPECT_EQ(covering, 1) << w;
    }
  }
}

TEST(BuildLexicon, MinRootBelowPrefixLengthRejected) {
  const std::vector<sc::DictEntry> in = {entry("loss", sc::Category::negative, 1e-4),
                                         entry("gain", sc::Category::positive, 1e-4)};
  EXPECT_THROW(sc::build_lexicon(in, 1e-6, 2), sc::Error);
  EXPECT_NO_THROW(sc::build_lexicon(in, 1e-6, 3));
}
