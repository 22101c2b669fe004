#pragma once

// The eight-configuration forecasting experiment: for every input set,
// build features, scale on the training window, train, and score.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "sentimentcast/dataset.hpp"
#include "sentimentcast/eval.hpp"
#include "sentimentcast/matrix.hpp"
#include "sentimentcast/neuralnet.hpp"
#include "sentimentcast/plot.hpp"

namespace sentimentcast {

/// Input sets and architectures of the published comparison, rows 1-8.
inline std::vector<ExperimentConfig> standard_suite() {
  using enum Input;
  return {
      {"row1", {p, n}, {}, 1},
      {"row2", {p, n, c1}, {}, 2},
      {"row3", {p, n, c1, c2}, {2}, 3},
      {"row4", {p, n, c1, c2, c3}, {3}, 4},
      {"row5", {p, n, c1, c2, c3, d}, {3}, 5},
      {"row6", {p, n, c1, c2, c3, d, v}, {3}, 6},
      {"row7", {p_over_n, c1, c2, d}, {2}, 7},
      {"row8", {c1, c2, c3, d}, {3}, 8},
  };
}

/// Parses an input list such as "p,n,c1" or "p n c1".
inline std::vector<Input> parse_input_list(std::string_view text) {
  std::vector<Input> out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    auto in = parse_input(token);
    if (!in) throw Error(ErrorKind::usage, "unknown input '" + token + "'");
    out.push_back(*in);
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ' || c == ';') flush();
    else token.push_back(c);
  }
  flush();
  return out;
}

/// Parses hidden layer sizes from an architecture string like "5-3-1":
/// the first and last numbers must equal the input count and 1.
inline std::vector<std::size_t> parse_hidden_layers(std::string_view arch, std::size_t input_count) {
  std::vector<std::size_t> sizes;
  std::string token;
  for (std::size_t i = 0; i <= arch.size(); ++i) {
    if (i == arch.size() || arch[i] == '-') {
      const auto n = csv::parse_integer(token);
      if (!n || *n < 1) throw Error(ErrorKind::usage, "bad architecture '" + std::string(arch) + "'");
      sizes.push_back(static_cast<std::size_t>(*n));
      token.clear();
    } else {
      token.push_back(arch[i]);
    }
  }
  if (sizes.size() < 2 || sizes.front() != input_count || sizes.back() != 1) {
    throw Error(ErrorKind::usage, "architecture '" + std::string(arch) + "' must start with " +
                                      std::to_string(input_count) + " and end with 1");
  }
  return {sizes.begin() + 1, sizes.end() - 1};
}

inline constexpr std::size_t kSuiteContext = 3;

struct ExperimentOptions {
  std::uint64_t seed = 1;
  std::size_t train_len = kDefaultTrainLength;
  std::size_t test_len = kDefaultTestLength;
  FeatureOptions features{0, kSuiteContext};
  TrainConfig training;
  Activation activation = Activation::logistic;
  RelativeErrorMode relative_error = RelativeErrorMode::mean;
  std::size_t jobs = 1;
};

struct ConfigRun {
  ExperimentConfig config;
  ExperimentResult result;
  Mlp model;
  TrainHistory history;
  ScaledDataset data;
  std::vector<double> train_predictions;  // price units
};

/// Network seed for a config: the shared seed offset by the config's row.
inline std::uint64_t config_seed(std::uint64_t seed, const ExperimentConfig& config, std::size_t position) {
  return seed + static_cast<std::uint64_t>(config.table_row ? *config.table_row : static_cast<int>(position) + 1);
}

/// Builds, trains and scores one configuration. When `fit_log` is given,
/// every dataset row read while fitting scalers or training is recorded
/// there; evaluation reads are not.
inline ConfigRun run_config(const std::vector<ObservationRow>& rows, const ExperimentConfig& config,
                            std::uint64_t network_seed, const ExperimentOptions& options,
                            AccessLog* fit_log = nullptr, const EpochLogger& logger = {}) {
  ConfigRun run;
  run.config = config;
  const Dataset ds = build_features(rows, config, options.features);
  run.data = split_and_scale(ds, options.train_len, options.test_len, fit_log);
  const ScaledDataset& data = run.data;

  const Mlp initial = init({config.layer_sizes(), options.activation, network_seed});
  TrainResult trained;
  if (fit_log) {
    TrackedRows tracked_x(data.features, *fit_log);
    TrackedValues tracked_t(data.targets, *fit_log);
    trained = train(initial, HeadRows(tracked_x, data.train_len), HeadValues(tracked_t, data.train_len), options.training,
                    logger);
  } else {
    trained = train(initial, HeadRows(data.features, data.train_len), HeadValues(data.targets, data.train_len),
                    options.training, logger);
  }
  run.model = std::move(trained.model);
  run.history = std::move(trained.history);

  const auto scaled_pred = predict_scaled(run.model, data.features);
  std::vector<double> prices(scaled_pred.size());
  for (std::size_t i = 0; i < prices.size(); ++i) prices[i] = data.target_scaler.unscale(scaled_pred[i]);

  const std::span<const double> scaled_all(scaled_pred);
  const std::span<const double> target_all(data.targets);
  const std::span<const double> price_all(prices);
  const std::span<const double> actual_all(data.raw.targets);
  const std::size_t n_train = data.train_len;
  const std::size_t n_test = data.test_len;

  auto& res = run.result;
  res.config_name = config.name;
  res.arch = config.arch();
  res.inputs = config.inputs_label();
  res.training_mse_pct = mse_pct(scaled_all.first(n_train), target_all.first(n_train));
  if (n_test > 0) {
    res.relative_error_pct =
        relative_error_pct(price_all.subspan(n_train, n_test), actual_all.subspan(n_train, n_test), options.relative_error);
    res.adjusted_r2_pct =
        adjusted_r2_pct(price_all.subspan(n_train, n_test), actual_all.subspan(n_train, n_test), config.inputs.size());
  }
  res.predictions.assign(prices.begin() + static_cast<std::ptrdiff_t>(n_train), prices.end());
  if (config.table_row) res.published = published_result(*config.table_row);
  run.train_predictions.assign(prices.begin(), prices.begin() + static_cast<std::ptrdiff_t>(n_train));
  return run;
}

inline std::vector<ConfigRun> run_experiment(const std::vector<ObservationRow>& rows,
                                             const std::vector<ExperimentConfig>& suite,
                                             const ExperimentOptions& options) {
  std::vector<ConfigRun> runs(suite.size());
  if (options.jobs > 1) {
    std::vector<std::future<ConfigRun>> pending;
    for (std::size_t i = 0; i < suite.size(); ++i) {
      pending.push_back(std::async(std::launch::async, [&, i] {
        return run_config(rows, suite[i], config_seed(options.seed, suite[i], i), options);
      }));
      if (pending.size() == options.jobs || i + 1 == suite.size()) {
        const std::size_t first = i + 1 - pending.size();
        for (std::size_t k = 0; k < pending.size(); ++k) runs[first + k] = pending[k].get();
        pending.clear();
      }
    }
  } else {
    for (std::size_t i = 0; i < suite.size(); ++i) {
      runs[i] = run_config(rows, suite[i], config_seed(options.seed, suite[i], i), options);
    }
  }
  return runs;
}

/// Full series (training then test window) for plotting, 1-based indices.
inline std::vector<PredictionPoint> prediction_series(const ConfigRun& run) {
  std::vector<PredictionPoint> points;
  const auto& data = run.data;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const bool train = i < data.train_len;
    const double predicted = train ? run.train_predictions[i] : run.result.predictions[i - data.train_len];
    points.push_back({static_cast<long long>(i + 1), data.raw.dates[i].iso(), data.raw.targets[i], predicted,
                      train ? "train" : "test"});
  }
  return points;
}

/// Note printed with every results report.
inline constexpr std::string_view kMetricFootnote =
    "train_mse_pct = MSE on [0,1]-scaled training targets x 100; rel_err_pct = mean absolute percentage error "
    "over the test window; adj_r2_pct = adjusted R^2 x 100 over the test window (k = input count). "
    "published_* columns are the reference values from the original news corpus.";

/// Writes results.csv plus predictions_<config>.csv and plot_<config>.svg
/// for every run into `out_dir`, in suite order.
inline std::vector<std::filesystem::path> write_experiment_outputs(const std::vector<ConfigRun>& runs,
                                                                   const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  std::vector<ExperimentResult> results;
  for (const auto& run : runs) results.push_back(run.result);
  written.push_back(out_dir / "results.csv");
  csv::write_file(written.back().string(), write_results_csv(results));
  for (const auto& run : runs) {
    const auto series = prediction_series(run);
    written.push_back(out_dir / ("predictions_" + run.config.name + ".csv"));
    csv::write_file(written.back().string(), write_predictions_csv(series));
    written.push_back(out_dir / ("plot_" + run.config.name + ".svg"));
    const std::string title = run.config.name + " (" + run.config.inputs_label(", ") + "; " + run.config.arch() + ")";
    csv::write_file(written.back().string(), render_svg(series, title));
  }
  return written;
}

}  // namespace sentimentcast
