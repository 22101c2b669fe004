#pragma once

// Seeded synthetic market: trading-day closes driven by their own lags and
// by a latent daily mood that also sets the positive/negative word counts.
//
//   close[t] = level + drift * t + sum_i ar[i] * (close[t-i] - level - drift * (t-i))
//              + sentiment_weight * (p[t] - n[t]) + noise_sd * e[t]
//   p[t] ~ round(max(0, word_mean + word_spread * mood[t] + e'))
//   n[t] ~ round(max(0, word_mean - word_spread * mood[t] + e''))

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "sentimentcast/dataset.hpp"
#include "sentimentcast/date.hpp"
#include "sentimentcast/ingest.hpp"
#include "sentimentcast/rng.hpp"

namespace sentimentcast {

struct SyntheticMarket {
  std::size_t days = 200;
  std::uint64_t seed = 1;
  Date start{2015, 6, 1};
  double level = 60.0;
  std::array<double, 3> ar{0.95, 0.0, 0.0};
  double drift = 0.0;  // trend per trading day
  double sentiment_weight = 0.3;
  double noise_sd = 0.15;
  double word_mean = 6.0;
  double word_spread = 3.0;
  double word_noise_sd = 1.0;
  double volume_mean = 3.0e6;
};

struct SyntheticSeries {
  std::vector<QuoteBar> quotes;
  std::vector<DailySentiment> sentiment;
};

inline SyntheticSeries generate_market(const SyntheticMarket& m) {
  std::mt19937_64 rng(m.seed);
  SyntheticSeries out;
  std::vector<double> closes;
  Date day = m.start;
  auto next_trading_day = [](Date d) {
    do {
      d = Date::from_ordinal(d.ordinal() + 1);
    } while (std::chrono::weekday(std::chrono::sys_days{std::chrono::days{d.ordinal()}}).iso_encoding() > 5);
    return d;
  };
  if (std::chrono::weekday(std::chrono::sys_days{std::chrono::days{day.ordinal()}}).iso_encoding() > 5) {
    day = next_trading_day(day);
  }

  for (std::size_t t = 0; t < m.days; ++t) {
    const double mood = standard_normal(rng);
    const double p = std::round(std::max(0.0, m.word_mean + m.word_spread * mood + m.word_noise_sd * standard_normal(rng)));
    const double n = std::round(std::max(0.0, m.word_mean - m.word_spread * mood + m.word_noise_sd * standard_normal(rng)));
    auto trend = [&](double at) { return m.level + m.drift * at; };
    const double now = static_cast<double>(t);
    double close = trend(now);
    for (std::size_t i = 0; i < m.ar.size(); ++i) {
      const double back = now - 1.0 - static_cast<double>(i);
      const double past = t > i ? closes[t - 1 - i] : trend(back);
      close += m.ar[i] * (past - trend(back));
    }
    close += m.sentiment_weight * (p - n) + m.noise_sd * standard_normal(rng);
    close = std::max(close, 0.01);
    closes.push_back(close);

    const double volume = std::round(m.volume_mean * std::exp(0.25 * standard_normal(rng)));
    out.quotes.push_back({day, std::round(close * 1e4) / 1e4, volume});
    out.sentiment.push_back({day, static_cast<long long>(p), static_cast<long long>(n),
                             1 + static_cast<long long>(rng() % 4)});
    day = next_trading_day(day);
  }
  return out;
}

inline std::string write_quotes_csv(const std::vector<QuoteBar>& quotes) {
  std::string out = "Date,Open,High,Low,Close,Volume,Adj Close\n";
  for (const auto& q : quotes) {
    const std::string c = csv::format_fixed(q.close, 4);
    out += q.date.iso() + "," + c + "," + c + "," + c + "," + c + "," + csv::format_fixed(q.volume, 0) + "," + c + "\n";
  }
  return out;
}

}  // namespace sentimentcast
