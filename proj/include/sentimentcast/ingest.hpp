#pragma once

// News ingestion: walk a company news index page by page, read every linked
// article, count lexicon hits and aggregate the counts per calendar day.

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sentimentcast/csv.hpp"
#include "sentimentcast/date.hpp"
#include "sentimentcast/error.hpp"
#include "sentimentcast/html.hpp"
#include "sentimentcast/lexicon.hpp"

namespace sentimentcast {

struct HeadlineRef {
  Date date;
  std::string url;
  std::string title;

  friend bool operator==(const HeadlineRef&, const HeadlineRef&) = default;
};

struct SentimentCount {
  long long positive = 0;
  long long negative = 0;

  SentimentCount& operator+=(const SentimentCount& o) {
    positive += o.positive;
    negative += o.negative;
    return *this;
  }
  friend SentimentCount operator+(SentimentCount a, const SentimentCount& b) { return a += b; }
  friend bool operator==(const SentimentCount&, const SentimentCount&) = default;
};

struct DailySentiment {
  Date date;
  long long positive = 0;
  long long negative = 0;
  long long article_count = 0;

  friend bool operator==(const DailySentiment&, const DailySentiment&) = default;
};

/// Where things live on a news index page. Selectors use the syntax of
/// html::Selector. Defaults describe the classic Yahoo Finance headline
/// listing: dated <h3> headings followed by lists of article links.
struct SiteLayout {
  std::string news_block = ".yfi_quote_headline";
  std::string date_heading = "h3";
  std::string headline_link = "a";
  std::string older_link_text = "Older Headlines";
  std::string article_body = "";  // empty: the document <body>
};

struct IndexPage {
  std::vector<HeadlineRef> refs;
  std::optional<std::string> older_page;
};

namespace detail {

inline std::string_view url_scheme(std::string_view url) {
  const auto colon = url.find(':');
  if (colon == std::string_view::npos || colon == 0) return {};
  for (std::size_t i = 0; i < colon; ++i) {
    const char c = url[i];
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') return {};
  }
  return url.substr(0, colon);
}

inline std::string remove_dot_segments(std::string_view path) {
  std::vector<std::string> out;
  std::size_t i = 0;
  const bool trailing = path.ends_with("/") || path.ends_with("/.") || path.ends_with("/..");
  while (i <= path.size()) {
    const auto slash = path.find('/', i);
    const auto stop = slash == std::string_view::npos ? path.size() : slash;
    const std::string_view seg = path.substr(i, stop - i);
    if (seg == "..") {
      if (!out.empty()) out.pop_back();
    } else if (seg != "." && !seg.empty()) {
      out.emplace_back(seg);
    }
    if (slash == std::string_view::npos) break;
    i = slash + 1;
  }
  std::string result;
  for (const auto& s : out) result += "/" + s;
  if (trailing || result.empty()) result += "/";
  return result;
}

}  // namespace detail

inline bool is_absolute_url(std::string_view url) {
  const auto scheme = detail::url_scheme(url);
  return !scheme.empty() && url.substr(scheme.size()).starts_with("://") && url.size() > scheme.size() + 3;
}

/// Resolves `ref` against the absolute `base` URL. Fragments are dropped.
inline std::string resolve_url(std::string_view base, std::string_view ref) {
  std::string r(csv::trim_copy(ref));
  if (auto hash = r.find('#'); hash != std::string::npos) r.erase(hash);
  if (is_absolute_url(r)) return r;

  const auto scheme = detail::url_scheme(base);
  const auto authority_start = scheme.size() + 3;
  const auto path_start = base.find('/', authority_start);
  const std::string origin(base.substr(0, path_start == std::string_view::npos ? base.size() : path_start));
  std::string base_path =
      path_start == std::string_view::npos ? std::string("/") : std::string(base.substr(path_start));
  std::string base_query;
  if (auto q = base_path.find('?'); q != std::string::npos) {
    base_query = base_path.substr(q);
    base_path.erase(q);
  }
  if (auto h = base_path.find('#'); h != std::string::npos) base_path.erase(h);

  if (r.empty()) return origin + base_path + base_query;
  if (r.starts_with("//")) return std::string(scheme) + ":" + r;
  if (r.front() == '?') return origin + base_path + r;

  std::string query;
  if (auto q = r.find('?'); q != std::string::npos) {
    query = r.substr(q);
    r.erase(q);
  }
  std::string path;
  if (r.front() == '/') {
    path = r;
  } else {
    path = base_path.substr(0, base_path.rfind('/') + 1) + r;
  }
  return origin + detail::remove_dot_segments(path) + query;
}

/// Finds the article links of one index page, each dated by the nearest
/// preceding date heading inside the news block, plus the "older" link.
inline IndexPage extract_headline_links(std::string_view index_html, std::string_view base_url,
                                        const SiteLayout& layout = {}) {
  const html::Document doc(index_html);
  const html::Selector block_sel(layout.news_block);
  const html::Node* block = html::find_first(doc.root(), block_sel);
  if (!block) throw Error(ErrorKind::block_not_found, "news block '" + layout.news_block + "' not found");

  IndexPage page;
  const std::string older_text = csv::lower_copy(layout.older_link_text);
  const html::Node* older_anchor = nullptr;
  html::visit(doc.root(), [&](const html::Node& n) {
    if (older_anchor || n.kind != html::Node::Kind::element || n.tag != "a" || !n.attribute("href")) return;
    if (csv::lower_copy(html::text_content(n)) == older_text) older_anchor = &n;
  });
  if (older_anchor) page.older_page = resolve_url(base_url, *older_anchor->attribute("href"));

  const html::Selector heading_sel(layout.date_heading);
  const html::Selector link_sel(layout.headline_link);
  std::optional<Date> current;
  std::set<std::string> seen;
  html::visit(*block, [&](const html::Node& n) {
    if (n.kind != html::Node::Kind::element) return;
    if (heading_sel.matches(n)) {
      current = parse_loose_date(html::text_content(n));
      return;
    }
    if (&n == older_anchor || n.tag != "a" || !link_sel.matches(n)) return;
    const std::string* href = n.attribute("href");
    if (!href || href->empty() || !current) return;
    std::string url = resolve_url(base_url, *href);
    if (!is_absolute_url(url) || !seen.insert(url).second) return;
    page.refs.push_back({*current, std::move(url), html::text_content(n)});
  });
  return page;
}

/// Visible text of the article's main content region.
inline std::string extract_article_text(std::string_view article_html, const SiteLayout& layout = {}) {
  const html::Document doc(article_html);
  const html::Node* region = nullptr;
  if (!layout.article_body.empty()) region = html::find_first(doc.root(), html::Selector(layout.article_body));
  if (!region) region = html::find_first(doc.root(), html::Selector("body"));
  if (!region) region = &doc.root();
  return html::text_content(*region);
}

/// Splits text into lowercase tokens: maximal runs of ASCII letters.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : text) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
      cur.push_back(static_cast<char>(c | 0x20));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

/// Start-anchored prefix lookup over both lexicon sides.
class PrefixMatcher {
 public:
  explicit PrefixMatcher(const SentimentLexicon& lex) {
    for (const auto& p : lex.positive_prefixes) add(p, Category::positive);
    for (const auto& n : lex.negative_prefixes) add(n, Category::negative);
  }

  Category classify(std::string_view token) const {
    const std::size_t longest = std::min(token.size(), max_len_);
    for (std::size_t len = min_len_; len <= longest; ++len) {
      if (auto it = prefixes_.find(std::string(token.substr(0, len))); it != prefixes_.end()) return it->second;
    }
    return Category::other;
  }

 private:
  void add(const std::string& p, Category c) {
    prefixes_.emplace(p, c);
    min_len_ = std::min(min_len_, p.size());
    max_len_ = std::max(max_len_, p.size());
  }

  std::unordered_map<std::string, Category> prefixes_;
  std::size_t min_len_ = static_cast<std::size_t>(-1);
  std::size_t max_len_ = 0;
};

inline SentimentCount count_sentiment(std::string_view text, const PrefixMatcher& matcher) {
  SentimentCount out;
  for (const auto& token : tokenize(text)) {
    switch (matcher.classify(token)) {
      case Category::positive: ++out.positive; break;
      case Category::negative: ++out.negative; break;
      case Category::other: break;
    }
  }
  return out;
}

inline SentimentCount count_sentiment(std::string_view text, const SentimentLexicon& lex) {
  return count_sentiment(text, PrefixMatcher(lex));
}

inline std::vector<DailySentiment> aggregate_daily(const std::vector<std::pair<Date, SentimentCount>>& items) {
  std::map<Date, DailySentiment> days;
  for (const auto& [date, count] : items) {
    auto& row = days[date];
    row.date = date;
    row.positive += count.positive;
    row.negative += count.negative;
    ++row.article_count;
  }
  std::vector<DailySentiment> out;
  out.reserve(days.size());
  for (auto& [_, row] : days) out.push_back(row);
  return out;
}

/// Source of page HTML. `fetch` throws Error(fetch) when a page is
/// unavailable.
class PageFetcher {
 public:
  virtual ~PageFetcher() = default;
  virtual std::string fetch(const std::string& url) = 0;
  /// Whether `fetch` may be called from several threads at once.
  virtual bool concurrent() const { return false; }
};

/// Serves pages from a fixture directory. `manifest.csv` (columns url,path)
/// maps each URL to a file path relative to the directory.
class RecordedFetcher : public PageFetcher {
 public:
  explicit RecordedFetcher(std::filesystem::path dir) : dir_(std::move(dir)) {
    const auto manifest = dir_ / "manifest.csv";
    const auto records = csv::parse(csv::read_file(manifest.string()));
    if (records.empty()) throw Error(ErrorKind::empty_input, "empty manifest: " + manifest.string());
    const csv::Header header(records.front());
    const std::size_t url_col = header.require("url");
    const std::size_t path_col = header.require("path");
    for (std::size_t r = 1; r < records.size(); ++r) {
      const auto& f = records[r].fields;
      if (f.size() <= std::max(url_col, path_col)) {
        throw Error(ErrorKind::parse, manifest.string() + " line " + std::to_string(records[r].line) + ": too few fields");
      }
      pages_[csv::trim_copy(f[url_col])] = csv::trim_copy(f[path_col]);
    }
  }

  std::string fetch(const std::string& url) override {
    auto it = pages_.find(url);
    if (it == pages_.end()) throw Error(ErrorKind::fetch, "no recorded page for " + url);
    try {
      return csv::read_file((dir_ / it->second).string());
    } catch (const Error& e) {
      throw Error(ErrorKind::fetch, e.what());
    }
  }

  std::size_t size() const { return pages_.size(); }

 private:
  std::filesystem::path dir_;
  std::unordered_map<std::string, std::string> pages_;
};

/// In-memory fetcher, mostly for tests.
class MapFetcher : public PageFetcher {
 public:
  MapFetcher() = default;
  explicit MapFetcher(std::unordered_map<std::string, std::string> pages) : pages_(std::move(pages)) {}

  void add(std::string url, std::string body) { pages_[std::move(url)] = std::move(body); }

  std::string fetch(const std::string& url) override {
    ++requests_[url];
    auto it = pages_.find(url);
    if (it == pages_.end()) throw Error(ErrorKind::fetch, "no page for " + url);
    return it->second;
  }

  const std::unordered_map<std::string, int>& requests() const { return requests_; }

 private:
  std::unordered_map<std::string, std::string> pages_;
  std::unordered_map<std::string, int> requests_;
};

struct CrawlOptions {
  std::size_t max_pages = 10;
  std::size_t concurrency = 1;  // article fetches in flight per index page
  SiteLayout layout;
};

struct CrawlResult {
  std::vector<DailySentiment> days;
  std::vector<std::string> warnings;
  std::size_t pages_visited = 0;
  std::size_t articles_counted = 0;
};

/// Walks index pages through their "older" links, counting every distinct
/// article once. Article failures are skipped with a warning; an index page
/// failure after the first ends the walk with partial results.
inline CrawlResult crawl(PageFetcher& fetcher, const std::string& start_url, const SentimentLexicon& lexicon,
                         const CrawlOptions& options = {}) {
  if (options.max_pages < 1) throw Error(ErrorKind::usage, "max_pages must be at least 1");
  const PrefixMatcher matcher(lexicon);
  CrawlResult result;

  struct Counted {
    Date date;
    std::string url;
    SentimentCount count;
  };
  std::vector<Counted> counted;
  std::unordered_set<std::string> fetched;
  std::set<std::string> visited_pages;

  std::optional<std::string> next = start_url;
  while (next && result.pages_visited < options.max_pages) {
    const std::string page_url = *next;
    next.reset();
    if (!visited_pages.insert(page_url).second) {
      result.warnings.push_back("pagination loop at " + page_url + "; stopping");
      break;
    }

    IndexPage page;
    try {
      page = extract_headline_links(fetcher.fetch(page_url), page_url, options.layout);
    } catch (const Error& e) {
      if (result.pages_visited == 0) throw Error(ErrorKind::no_data, "first index page unusable: " + std::string(e.what()));
      result.warnings.push_back("index page " + page_url + " failed (" + e.what() + "); stopping with partial results");
      break;
    }
    ++result.pages_visited;

    std::vector<HeadlineRef> todo;
    for (auto& ref : page.refs) {
      if (fetched.insert(ref.url).second) todo.push_back(std::move(ref));
    }

    auto count_one = [&](const HeadlineRef& ref) -> std::optional<SentimentCount> {
      try {
        return count_sentiment(extract_article_text(fetcher.fetch(ref.url), options.layout), matcher);
      } catch (const Error&) {
        return std::nullopt;
      }
    };

    std::vector<std::optional<SentimentCount>> counts(todo.size());
    if (options.concurrency > 1 && fetcher.concurrent()) {
      for (std::size_t start = 0; start < todo.size(); start += options.concurrency) {
        const std::size_t stop = std::min(todo.size(), start + options.concurrency);
        std::vector<std::future<std::optional<SentimentCount>>> inflight;
        for (std::size_t k = start; k < stop; ++k) {
          inflight.push_back(std::async(std::launch::async, count_one, std::cref(todo[k])));
        }
        for (std::size_t k = start; k < stop; ++k) counts[k] = inflight[k - start].get();
      }
    } else {
      for (std::size_t k = 0; k < todo.size(); ++k) counts[k] = count_one(todo[k]);
    }

    for (std::size_t k = 0; k < todo.size(); ++k) {
      if (!counts[k]) {
        result.warnings.push_back("article " + todo[k].url + " could not be fetched; skipped");
        continue;
      }
      counted.push_back({todo[k].date, todo[k].url, *counts[k]});
    }
    next = page.older_page;
  }

  std::sort(counted.begin(), counted.end(),
            [](const Counted& a, const Counted& b) { return std::tie(a.date, a.url) < std::tie(b.date, b.url); });
  std::vector<std::pair<Date, SentimentCount>> items;
  items.reserve(counted.size());
  for (const auto& c : counted) items.emplace_back(c.date, c.count);
  result.articles_counted = items.size();
  result.days = aggregate_daily(items);
  return result;
}

inline std::string write_sentiment_csv(const std::vector<DailySentiment>& rows) {
  std::string out = "date,positive,negative,articles\n";
  for (const auto& r : rows) {
    out += r.date.iso() + "," + std::to_string(r.positive) + "," + std::to_string(r.negative) + "," +
           std::to_string(r.article_count) + "\n";
  }
  return out;
}

inline std::vector<DailySentiment> read_sentiment_csv(std::string_view text) {
  const auto records = csv::parse(text);
  if (records.empty()) throw Error(ErrorKind::empty_input, "sentiment file is empty");
  const csv::Header header(records.front());
  const std::size_t date_col = header.require("date");
  const std::size_t pos_col = header.require("positive");
  const std::size_t neg_col = header.require("negative");
  const std::size_t art_col = header.require("articles");

  std::vector<DailySentiment> rows;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    auto fail = [&](const std::string& why) {
      throw Error(ErrorKind::parse, "line " + std::to_string(rec.line) + ": " + why);
    };
    if (rec.fields.size() < header.size()) fail("expected " + std::to_string(header.size()) + " fields");
    const auto date = parse_iso_date(rec.fields[date_col]);
    const auto pos = csv::parse_integer(rec.fields[pos_col]);
    const auto neg = csv::parse_integer(rec.fields[neg_col]);
    const auto art = csv::parse_integer(rec.fields[art_col]);
    if (!date) fail("bad date '" + rec.fields[date_col] + "'");
    if (!pos || !neg || !art) fail("bad count");
    if (*pos < 0 || *neg < 0 || *art < 0) fail("negative count");
    rows.push_back({*date, *pos, *neg, *art});
  }
  return rows;
}

}  // namespace sentimentcast
