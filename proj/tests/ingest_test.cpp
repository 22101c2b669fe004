#include <gtest/gtest.h>

#include <algorithm>
#include <cctype>
#include <random>
#include <string>

#include "sentimentcast/ingest.hpp"

namespace sc = sentimentcast;

namespace {

const std::string kData = SC_TEST_DATA;
const std::string kSite = kData + "/fixtures/site2";
const std::string kStart = "http://news.example.com/q/h?s=RDS-A";

sc::SentimentLexicon small_lexicon() { return sc::read_lexicon_csv(sc::csv::read_file(kData + "/lexicon_small.csv")); }

sc::CrawlOptions crawl_options(std::size_t pages, std::size_t concurrency = 1) {
  sc::CrawlOptions o;
  o.max_pages = pages;
  o.concurrency = concurrency;
  return o;
}

std::string index_page(const std::string& block) {
  return "<html><body><div class=\"yfi_quote_headline\">" + block + "</div></body></html>";
}

}  // namespace

TEST(ResolveUrl, RelativeForms) {
  const std::string base = "http://news.example.com/q/h?s=RDS-A";
  EXPECT_EQ(sc::resolve_url(base, "/news/a.html"), "http://news.example.com/news/a.html");
  EXPECT_EQ(sc::resolve_url(base, "../news/a.html"), "http://news.example.com/news/a.html");
  EXPECT_EQ(sc::resolve_url(base, "a.html"), "http://news.example.com/q/a.html");
  EXPECT_EQ(sc::resolve_url(base, "?s=BP"), "http://news.example.com/q/h?s=BP");
  EXPECT_EQ(sc::resolve_url(base, "//cdn.example.com/x"), "http://cdn.example.com/x");
  EXPECT_EQ(sc::resolve_url(base, "https://other.org/p#frag"), "https://other.org/p");
  EXPECT_EQ(sc::resolve_url("http://h.com", "x"), "http://h.com/x");
}

TEST(ExtractHeadlineLinks, FixturePageOne) {
  const auto page = sc::extract_headline_links(sc::csv::read_file(kSite + "/index1.html"), kStart);
  ASSERT_EQ(page.refs.size(), 3u);
  EXPECT_EQ(page.refs[0].date, sc::Date(2016, 3, 14));
  EXPECT_EQ(page.refs[0].url, "http://news.example.com/news/shell-profit-a1.html");
  EXPECT_EQ(page.refs[0].title, "Shell profit beats forecasts");
  EXPECT_EQ(page.refs[1].date, sc::Date(2016, 3, 14));
  EXPECT_EQ(page.refs[1].url, "http://news.example.com/news/oil-recession-a2.html");
  EXPECT_EQ(page.refs[2].date, sc::Date(2016, 3, 11));
  EXPECT_EQ(page.refs[2].url, "http://news.example.com/news/weak-demand-a3.html");
  ASSERT_TRUE(page.older_page.has_value());
  EXPECT_EQ(*page.older_page, "http://news.example.com/q/h?s=RDS-A&t=2016-03-11T09:00:00-05:00");
}

TEST(ExtractHeadlineLinks, NoPaginationAnchor) {
  const auto page = sc::extract_headline_links(sc::csv::read_file(kSite + "/index2.html"), kStart);
  EXPECT_EQ(page.refs.size(), 3u);
  EXPECT_FALSE(page.older_page.has_value());
}

TEST(ExtractHeadlineLinks, MissingBlock) {
  try {
    sc::extract_headline_links("", kStart);
    FAIL();
  } catch (const sc::Error& e) {
    EXPECT_EQ(e.kind(), sc::ErrorKind::block_not_found);
  }
  EXPECT_THROW(sc::extract_headline_links("<html><body><a href=x>y</a></body></html>", kStart), sc::Error);
}

TEST(ExtractHeadlineLinks, LinksBeforeAnyDateAreSkipped) {
  const auto page =
      sc::extract_headline_links(index_page("<a href=/a>undated</a><h3>2016-01-04</h3><a href=/b>dated</a>"), kStart);
  ASSERT_EQ(page.refs.size(), 1u);
  EXPECT_EQ(page.refs[0].url, "http://news.example.com/b");
  EXPECT_EQ(page.refs[0].date, sc::Date(2016, 1, 4));
}

TEST(ExtractHeadlineLinks, ConfigurableLayout) {
  sc::SiteLayout layout;
  layout.news_block = "#stream";
  layout.date_heading = "h4.day";
  layout.older_link_text = "Next page";
  const std::string page_html =
      "<section id=stream><h4 class=day>Jan 5, 2016</h4><a href=/x>x</a></section><a href=/p2>Next page</a>";
  const auto page = sc::extract_headline_links(page_html, kStart, layout);
  ASSERT_EQ(page.refs.size(), 1u);
  EXPECT_EQ(page.refs[0].date, sc::Date(2016, 1, 5));
  EXPECT_EQ(page.older_page, "http://news.example.com/p2");
}

TEST(ExtractArticleText, StripsMarkup) {
  EXPECT_EQ(sc::extract_article_text("<p>Profit rose.</p><script>x</script>"), "Profit rose.");
  EXPECT_EQ(sc::extract_article_text("<div><b>bankruptcy</b> looms</div>"), "bankruptcy looms");
  EXPECT_EQ(sc::extract_article_text("<html><body><div></div></body></html>"), "");
}

TEST(ExtractArticleText, UsesConfiguredRegion) {
  sc::SiteLayout layout;
  layout.article_body = "div.story";
  EXPECT_EQ(sc::extract_article_text("<body><nav>Markets gain</nav><div class=story>Loss</div></body>", layout), "Loss");
}

TEST(CountSentiment, Examples) {
  sc::SentimentLexicon lex;
  lex.negative_prefixes = {"bankrupt", "recession"};
  lex.positive_prefixes = {"profit"};
  EXPECT_EQ(sc::count_sentiment("Company faces bankruptcy amid recession fears", lex), (sc::SentimentCount{0, 2}));
  EXPECT_EQ(sc::count_sentiment("", lex), (sc::SentimentCount{0, 0}));
  EXPECT_EQ(sc::count_sentiment("profitable quarter; profits up", lex), (sc::SentimentCount{2, 0}));
}

TEST(CountSentiment, MatchesAnchoredAtTokenStart) {
  sc::SentimentLexicon lex;
  lex.negative_prefixes = {"loss"};
  lex.positive_prefixes = {"gain"};
  EXPECT_EQ(sc::count_sentiment("glossy again regain", lex), (sc::SentimentCount{0, 0}));
  EXPECT_EQ(sc::count_sentiment("loss-making gain2gain", lex), (sc::SentimentCount{2, 1}));
}

TEST(CountSentiment, CaseAndPunctuationInsensitiveAndAdditive) {
  const auto lex = small_lexicon();
  const sc::PrefixMatcher matcher(lex);
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyz ,.;!-0123";
  const std::vector<std::string> words = {"profit", "losses", "weakness", "gains", "strongly", "declined",
                                          "recessionary", "bankruptcy", "oil", "demand"};
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto make_text = [&] {
      std::string t;
      const int n = static_cast<int>(rng() % 12);
      for (int i = 0; i < n; ++i) {
        if (rng() % 2) t += words[rng() % words.size()];
        else for (int k = 0; k < 4; ++k) t.push_back(alphabet[rng() % alphabet.size()]);
        t.push_back(" ,.;!-"[rng() % 6]);
      }
      return t;
    };
    const std::string a = make_text();
    const std::string b = make_text();
    std::string upper = a;
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    EXPECT_EQ(sc::count_sentiment(upper, matcher), sc::count_sentiment(a, matcher));
    EXPECT_EQ(sc::count_sentiment(a + " " + b, matcher), sc::count_sentiment(a, matcher) + sc::count_sentiment(b, matcher));
  }
}

TEST(AggregateDaily, SumsPerDateAscending) {
  const sc::Date d1(2016, 3, 1), d2(2016, 3, 2);
  const auto rows = sc::aggregate_daily({{d2, {5, 0}}, {d1, {1, 2}}, {d1, {0, 3}}});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (sc::DailySentiment{d1, 1, 5, 2}));
  EXPECT_EQ(rows[1], (sc::DailySentiment{d2, 5, 0, 1}));
  EXPECT_TRUE(sc::aggregate_daily({}).empty());
  EXPECT_EQ(sc::aggregate_daily({{d1, {0, 0}}}).at(0).article_count, 1);
}

TEST(Crawl, RecordedSiteMatchesGolden) {
  sc::RecordedFetcher fetcher(kSite);
  const auto result = sc::crawl(fetcher, kStart, small_lexicon(), crawl_options(10));
  EXPECT_EQ(result.pages_visited, 2u);
  EXPECT_EQ(result.articles_counted, 5u);
  EXPECT_TRUE(result.warnings.empty());
  EXPECT_EQ(sc::write_sentiment_csv(result.days), sc::csv::read_file(kData + "/golden_sentiment_site2.csv"));
}

TEST(Crawl, MaxPagesCutsPagination) {
  sc::RecordedFetcher fetcher(kSite);
  const auto result = sc::crawl(fetcher, kStart, small_lexicon(), crawl_options(1));
  EXPECT_EQ(result.pages_visited, 1u);
  EXPECT_EQ(sc::write_sentiment_csv(result.days), sc::csv::read_file(kData + "/golden_sentiment_site2_page1.csv"));
}

TEST(Crawl, ConcurrentFetchGivesSameOutput) {
  class ConcurrentRecorded : public sc::RecordedFetcher {
   public:
    using RecordedFetcher::RecordedFetcher;
    bool concurrent() const override { return true; }
  };
  ConcurrentRecorded fetcher(kSite);
  const auto result = sc::crawl(fetcher, kStart, small_lexicon(), crawl_options(10, 4));
  EXPECT_EQ(sc::write_sentiment_csv(result.days), sc::csv::read_file(kData + "/golden_sentiment_site2.csv"));
}

TEST(Crawl, FirstPageFailureIsNoData) {
  sc::MapFetcher fetcher;
  try {
    sc::crawl(fetcher, kStart, small_lexicon());
    FAIL();
  } catch (const sc::Error& e) {
    EXPECT_EQ(e.kind(), sc::ErrorKind::no_data);
  }
}

TEST(Crawl, ArticleFailureSkippedAndDuplicatesFetchedOnce) {
  sc::MapFetcher fetcher;
  fetcher.add("http://h.com/1", index_page("<h3>2016-01-05</h3><a href=/a>a</a><a href=/missing>m</a>"
                                           "<a href=/a>a again</a>") +
                                    "<a href=/2>Older Headlines</a>");
  fetcher.add("http://h.com/2", index_page("<h3>2016-01-04</h3><a href=/a>a</a><a href=/b>b</a>") +
                                    "<a href=/3>Older Headlines</a>");
  fetcher.add("http://h.com/a", "<p>profit gains</p>");
  fetcher.add("http://h.com/b", "<p>losses</p>");
  const auto result = sc::crawl(fetcher, "http://h.com/1", small_lexicon());
  EXPECT_EQ(fetcher.requests().at("http://h.com/a"), 1);
  ASSERT_EQ(result.days.size(), 2u);
  EXPECT_EQ(result.days[0], (sc::DailySentiment{sc::Date(2016, 1, 4), 0, 1, 1}));
  EXPECT_EQ(result.days[1], (sc::DailySentiment{sc::Date(2016, 1, 5), 2, 0, 1}));
  // One skipped article, one failed third index page.
  EXPECT_EQ(result.warnings.size(), 2u);
  EXPECT_EQ(result.pages_visited, 2u);
}

TEST(Crawl, DeterministicUnderRecordedFetcher) {
  sc::RecordedFetcher f1(kSite), f2(kSite);
  EXPECT_EQ(sc::crawl(f1, kStart, small_lexicon()).days, sc::crawl(f2, kStart, small_lexicon()).days);
}

TEST(SentimentCsv, RoundTripAndEmpty) {
  const std::vector<sc::DailySentiment> rows = {{sc::Date(2016, 3, 10), 0, 4, 1}, {sc::Date(2016, 3, 11), 2, 4, 2}};
  EXPECT_EQ(sc::read_sentiment_csv(sc::write_sentiment_csv(rows)), rows);
  EXPECT_EQ(sc::write_sentiment_csv({}), "date,positive,negative,articles\n");
  EXPECT_TRUE(sc::read_sentiment_csv(sc::write_sentiment_csv({})).empty());
}

TEST(SentimentCsv, NegativeCountReportsLine) {
  try {
    sc::read_sentiment_csv("date,positive,negative,articles\n2016-03-10,0,4,1\n2016-03-11,-1,4,2\n");
    FAIL();
  } catch (const sc::Error& e) {
    EXPECT_EQ(e.kind(), sc::ErrorKind::parse);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}
