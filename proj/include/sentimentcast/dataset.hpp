#pragma once

// Quote history + daily sentiment -> feature matrices for each experiment
// configuration, with a chronological train/test split and min-max scaling
// fitted on the training window only.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sentimentcast/csv.hpp"
#include "sentimentcast/date.hpp"
#include "sentimentcast/error.hpp"
#include "sentimentcast/ingest.hpp"
#include "sentimentcast/matrix.hpp"

namespace sentimentcast {

struct QuoteBar {
  Date date;
  double close = 0.0;
  double volume = 0.0;

  friend bool operator==(const QuoteBar&, const QuoteBar&) = default;
};

struct ObservationRow {
  Date date;
  double close = 0.0;
  double volume = 0.0;
  double positive = 0.0;
  double negative = 0.0;

  friend bool operator==(const ObservationRow&, const ObservationRow&) = default;
};

/// Network inputs. c1..c3 are closes 1..3 trading days back; d is the day
/// offset from the first usable observation; p_over_n is p / max(n, 1).
enum class Input { p, n, p_over_n, c1, c2, c3, d, v };

constexpr std::string_view input_name(Input in) {
  switch (in) {
    case Input::p: return "p";
    case Input::n: return "n";
    case Input::p_over_n: return "p/n";
    case Input::c1: return "c1";
    case Input::c2: return "c2";
    case Input::c3: return "c3";
    case Input::d: return "d";
    case Input::v: return "v";
  }
  return "?";
}

inline std::optional<Input> parse_input(std::string_view s) {
  for (Input in : {Input::p, Input::n, Input::p_over_n, Input::c1, Input::c2, Input::c3, Input::d, Input::v}) {
    if (s == input_name(in)) return in;
  }
  if (s == "p_over_n") return Input::p_over_n;
  return std::nullopt;
}

constexpr std::size_t input_lag(Input in) {
  switch (in) {
    case Input::c1: return 1;
    case Input::c2: return 2;
    case Input::c3: return 3;
    default: return 0;
  }
}

struct ExperimentConfig {
  std::string name;
  std::vector<Input> inputs;
  std::vector<std::size_t> hidden_layers;
  std::optional<int> table_row;

  std::size_t max_lag() const {
    std::size_t lag = 0;
    for (Input in : inputs) lag = std::max(lag, input_lag(in));
    return lag;
  }

  /// Layer sizes including input and the single output, e.g. {5, 3, 1}.
  std::vector<std::size_t> layer_sizes() const {
    std::vector<std::size_t> sizes{inputs.size()};
    sizes.insert(sizes.end(), hidden_layers.begin(), hidden_layers.end());
    sizes.push_back(1);
    return sizes;
  }

  std::string arch() const {
    std::string out;
    for (std::size_t s : layer_sizes()) {
      if (!out.empty()) out += '-';
      out += std::to_string(s);
    }
    return out;
  }

  std::string inputs_label(std::string_view sep = " ") const {
    std::string out;
    for (Input in : inputs) {
      if (!out.empty()) out += sep;
      out += input_name(in);
    }
    return out;
  }

  void validate() const {
    if (inputs.empty()) throw Error(ErrorKind::usage, "config '" + name + "' has no inputs");
    for (std::size_t h : hidden_layers) {
      if (h < 1) throw Error(ErrorKind::usage, "config '" + name + "' has an empty hidden layer");
    }
  }
};

struct Dataset {
  std::vector<std::string> columns;
  Matrix features;
  std::vector<double> targets;
  std::vector<Date> dates;  // date of each target
};

// ---------------------------------------------------------------------------
// Quotes

inline std::vector<QuoteBar> read_quotes_csv(std::string_view csv_text) {
  const auto records = csv::parse(csv_text);
  if (records.empty()) throw Error(ErrorKind::empty_input, "quote file is empty");
  const csv::Header header(records.front());
  const std::size_t date_col = header.require("Date");
  const std::size_t close_col = header.require("Close");
  const std::size_t volume_col = header.require("Volume");

  std::vector<QuoteBar> bars;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    auto fail = [&](const std::string& why) {
      throw Error(ErrorKind::parse, "quotes line " + std::to_string(rec.line) + ": " + why);
    };
    if (rec.fields.size() <= std::max({date_col, close_col, volume_col})) fail("too few fields");
    const auto date = parse_iso_date(rec.fields[date_col]);
    const auto close = csv::parse_double(rec.fields[close_col]);
    const auto volume = csv::parse_double(rec.fields[volume_col]);
    if (!date) fail("bad date '" + rec.fields[date_col] + "'");
    if (!close || *close <= 0.0) fail("bad close '" + rec.fields[close_col] + "'");
    if (!volume || *volume < 0.0) fail("bad volume '" + rec.fields[volume_col] + "'");
    bars.push_back({*date, *close, *volume});
  }
  std::stable_sort(bars.begin(), bars.end(), [](const QuoteBar& a, const QuoteBar& b) { return a.date < b.date; });
  for (std::size_t i = 1; i < bars.size(); ++i) {
    if (bars[i].date == bars[i - 1].date) {
      throw Error(ErrorKind::duplicate_date, "duplicate quote date " + bars[i].date.iso());
    }
  }
  return bars;
}

// ---------------------------------------------------------------------------
// Join

struct JoinResult {
  std::vector<ObservationRow> rows;
  std::size_t dropped_days = 0;
  long long dropped_positive = 0;
  long long dropped_negative = 0;
};

/// Left join on quote dates. Trading days without news get zero counts;
/// news days without a trading session are dropped and tallied.
inline JoinResult join(const std::vector<QuoteBar>& quotes, const std::vector<DailySentiment>& sentiments) {
  JoinResult out;
  out.rows.reserve(quotes.size());
  std::size_t s = 0;
  for (const auto& q : quotes) {
    while (s < sentiments.size() && sentiments[s].date < q.date) {
      ++out.dropped_days;
      out.dropped_positive += sentiments[s].positive;
      out.dropped_negative += sentiments[s].negative;
      ++s;
    }
    ObservationRow row{q.date, q.close, q.volume, 0.0, 0.0};
    if (s < sentiments.size() && sentiments[s].date == q.date) {
      row.positive = static_cast<double>(sentiments[s].positive);
      row.negative = static_cast<double>(sentiments[s].negative);
      ++s;
    }
    out.rows.push_back(row);
  }
  for (; s < sentiments.size(); ++s) {
    ++out.dropped_days;
    out.dropped_positive += sentiments[s].positive;
    out.dropped_negative += sentiments[s].negative;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Features

struct FeatureOptions {
  /// Target is close[t + horizon]; 0 means same-day close.
  std::size_t horizon = 0;
  /// Leading rows reserved as lag context. The effective context is the
  /// larger of this and the config's own maximum lag, so configs sharing a
  /// context value emit rows for the same dates.
  std::size_t context = 0;
};

inline Dataset build_features(const std::vector<ObservationRow>& rows, const ExperimentConfig& config,
                              const FeatureOptions& options = {}) {
  config.validate();
  const std::size_t context = std::max(config.max_lag(), options.context);
  const std::size_t required = context + options.horizon + 1;
  if (rows.size() < required) {
    throw Error(ErrorKind::insufficient_data, "config '" + config.name + "' needs at least " +
                                                  std::to_string(required) + " rows, have " +
                                                  std::to_string(rows.size()));
  }

  Dataset ds;
  for (Input in : config.inputs) ds.columns.emplace_back(input_name(in));
  const long first_day = rows[context].date.ordinal();
  std::vector<double> values(config.inputs.size());
  for (std::size_t t = context; t + options.horizon < rows.size(); ++t) {
    const auto& row = rows[t];
    for (std::size_t k = 0; k < config.inputs.size(); ++k) {
      switch (config.inputs[k]) {
        case Input::p: values[k] = row.positive; break;
        case Input::n: values[k] = row.negative; break;
        case Input::p_over_n: values[k] = row.positive / std::max(row.negative, 1.0); break;
        case Input::c1: values[k] = rows[t - 1].close; break;
        case Input::c2: values[k] = rows[t - 2].close; break;
        case Input::c3: values[k] = rows[t - 3].close; break;
        case Input::d: values[k] = static_cast<double>(row.date.ordinal() - first_day); break;
        case Input::v: values[k] = row.volume; break;
      }
    }
    ds.features.push_row(values);
    ds.targets.push_back(rows[t + options.horizon].close);
    ds.dates.push_back(rows[t + options.horizon].date);
  }
  return ds;
}

// ---------------------------------------------------------------------------
// Scaling

struct ColumnRange {
  double min = 0.0;
  double max = 1.0;

  double scale(double x) const { return (x - min) / (max - min); }
  double unscale(double x) const { return x * (max - min) + min; }

  friend bool operator==(const ColumnRange&, const ColumnRange&) = default;
};

/// Per-column affine map onto [0, 1] over the fitted rows. Values outside
/// the fitted range map outside [0, 1]; nothing is clamped.
class MinMaxScaler {
 public:
  MinMaxScaler() = default;
  explicit MinMaxScaler(std::vector<ColumnRange> ranges) : ranges_(std::move(ranges)) {}

  template <RowSource Rows>
  static MinMaxScaler fit(const Rows& rows, const std::vector<std::string>& names = {}) {
    if (rows.size() == 0) throw Error(ErrorKind::insufficient_data, "cannot fit scaler on zero rows");
    const auto first = rows.row(0);
    std::vector<ColumnRange> ranges(first.size());
    for (std::size_t c = 0; c < first.size(); ++c) ranges[c] = {first[c], first[c]};
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto row = rows.row(r);
      for (std::size_t c = 0; c < row.size(); ++c) {
        ranges[c].min = std::min(ranges[c].min, row[c]);
        ranges[c].max = std::max(ranges[c].max, row[c]);
      }
    }
    for (std::size_t c = 0; c < ranges.size(); ++c) {
      if (!(ranges[c].min < ranges[c].max)) {
        const std::string label = c < names.size() ? names[c] : "#" + std::to_string(c);
        throw Error(ErrorKind::degenerate_column, "column '" + label + "' is constant over the training rows");
      }
    }
    return MinMaxScaler(std::move(ranges));
  }

  template <ValueSource Values>
  static ColumnRange fit_values(const Values& values, std::string_view name = "target") {
    if (values.size() == 0) throw Error(ErrorKind::insufficient_data, "cannot fit scaler on zero values");
    ColumnRange range{values[0], values[0]};
    for (std::size_t i = 1; i < values.size(); ++i) {
      range.min = std::min(range.min, values[i]);
      range.max = std::max(range.max, values[i]);
    }
    if (!(range.min < range.max)) {
      throw Error(ErrorKind::degenerate_column, "column '" + std::string(name) + "' is constant over the training rows");
    }
    return range;
  }

  std::size_t width() const { return ranges_.size(); }
  const std::vector<ColumnRange>& ranges() const { return ranges_; }

  std::vector<double> transform(std::span<const double> row) const {
    check(row.size());
    std::vector<double> out(row.size());
    for (std::size_t c = 0; c < row.size(); ++c) out[c] = ranges_[c].scale(row[c]);
    return out;
  }

  std::vector<double> inverse(std::span<const double> row) const {
    check(row.size());
    std::vector<double> out(row.size());
    for (std::size_t c = 0; c < row.size(); ++c) out[c] = ranges_[c].unscale(row[c]);
    return out;
  }

  Matrix transform(const Matrix& m) const {
    Matrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      const auto row = transform(m.row(r));
      std::copy(row.begin(), row.end(), out.row(r).begin());
    }
    return out;
  }

  friend bool operator==(const MinMaxScaler&, const MinMaxScaler&) = default;

 private:
  void check(std::size_t width) const {
    if (width != ranges_.size()) {
      throw Error(ErrorKind::dimension, "expected " + std::to_string(ranges_.size()) + " columns, got " +
                                            std::to_string(width));
    }
  }

  std::vector<ColumnRange> ranges_;
};

/// A dataset cut to train_len + test_len rows with its fitted scalers.
struct ScaledDataset {
  Dataset raw;
  Matrix features;              // scaled
  std::vector<double> targets;  // scaled
  MinMaxScaler feature_scaler;
  ColumnRange target_scaler;
  std::size_t train_len = 0;
  std::size_t test_len = 0;

  std::size_t size() const { return train_len + test_len; }
};

inline constexpr std::size_t kDefaultTrainLength = 175;
inline constexpr std::size_t kDefaultTestLength = 20;

/// Keeps the first train_len + test_len rows and fits both scalers on the
/// first train_len rows only. When `log` is set, every row read during
/// fitting is recorded there.
inline ScaledDataset split_and_scale(const Dataset& ds, std::size_t train_len = kDefaultTrainLength,
                                     std::size_t test_len = kDefaultTestLength, AccessLog* log = nullptr) {
  const std::size_t needed = train_len + test_len;
  if (train_len == 0) throw Error(ErrorKind::usage, "training window must be non-empty");
  if (ds.features.rows() < needed) {
    throw Error(ErrorKind::insufficient_data, "need " + std::to_string(needed) + " feature rows, have " +
                                                  std::to_string(ds.features.rows()));
  }

  ScaledDataset out;
  out.train_len = train_len;
  out.test_len = test_len;
  if (log) {
    TrackedRows tracked_rows(ds.features, *log);
    TrackedValues tracked_targets(ds.targets, *log);
    out.feature_scaler = MinMaxScaler::fit(HeadRows(tracked_rows, train_len), ds.columns);
    out.target_scaler = MinMaxScaler::fit_values(HeadValues(tracked_targets, train_len));
  } else {
    out.feature_scaler = MinMaxScaler::fit(HeadRows(ds.features, train_len), ds.columns);
    out.target_scaler = MinMaxScaler::fit_values(HeadValues(ds.targets, train_len));
  }

  out.raw.columns = ds.columns;
  for (std::size_t r = 0; r < needed; ++r) out.raw.features.push_row(ds.features.row(r));
  out.raw.targets.assign(ds.targets.begin(), ds.targets.begin() + static_cast<std::ptrdiff_t>(needed));
  out.raw.dates.assign(ds.dates.begin(), ds.dates.begin() + static_cast<std::ptrdiff_t>(needed));
  out.features = out.feature_scaler.transform(out.raw.features);
  out.targets.reserve(needed);
  for (double t : out.raw.targets) out.targets.push_back(out.target_scaler.scale(t));
  return out;
}

/// Debug export: `date,target,<input columns>` with raw values.
inline std::string write_dataset_csv(const Dataset& ds) {
  std::string out = "date,target";
  for (const auto& c : ds.columns) out += "," + c;
  out += '\n';
  for (std::size_t r = 0; r < ds.features.rows(); ++r) {
    out += ds.dates[r].iso() + "," + csv::format_exact(ds.targets[r]);
    for (double v : ds.features.row(r)) out += "," + csv::format_exact(v);
    out += '\n';
  }
  return out;
}

}  // namespace sentimentcast
