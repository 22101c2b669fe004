// Library walkthrough: count sentiment in two snippets, then train the
// 5-3-1 news-aware network on a synthetic market and report test metrics.

#include <cstdio>

#include "sentimentcast/sentimentcast.hpp"

namespace sc = sentimentcast;

int main() {
  sc::SentimentLexicon lexicon;
  lexicon.positive_prefixes = {"profit", "gain", "strong"};
  lexicon.negative_prefixes = {"bankrupt", "loss", "recession"};
  for (const char* text : {"Profits surge on strong demand", "Losses deepen as recession fears grow"}) {
    const auto c = sc::count_sentiment(text, lexicon);
    std::printf("%-40s positive=%lld negative=%lld\n", text, c.positive, c.negative);
  }

  const auto market = sc::generate_market({});
  const auto rows = sc::join(market.quotes, market.sentiment).rows;
  sc::ExperimentOptions options;
  options.seed = 7;
  for (const auto& cfg : sc::standard_suite()) {
    if (cfg.name != "row4" && cfg.name != "row8") continue;
    const auto run = sc::run_config(rows, cfg, sc::config_seed(options.seed, cfg, 0), options);
    std::printf("%s %-5s (%s): relative error %.3f%%, adjusted R^2 %.3f%%\n", cfg.name.c_str(), cfg.arch().c_str(),
                cfg.inputs_label(",").c_str(), run.result.relative_error_pct, run.result.adjusted_r2_pct);
  }
  return 0;
}
