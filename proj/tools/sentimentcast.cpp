// sentimentcast: build a sentiment lexicon, scan company news, and run the
// news-aware price forecasting experiment.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "http_fetcher.hpp"
#include "sentimentcast/sentimentcast.hpp"

namespace sc = sentimentcast;
namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kDataError = 2, kDiverged = 3 };

struct GlobalFlags {
  std::uint64_t seed = 1;
  double threshold = sc::kDefaultFrequencyThreshold;
  std::size_t horizon = 0;
  std::string out_dir = ".";
};

struct TrainingFlags {
  sc::TrainConfig config;
  std::string activation = "logistic";

  void attach(CLI::App* cmd) {
    cmd->add_option("--epochs", config.max_epochs, "Maximum training epochs")->capture_default_str();
    cmd->add_option("--learning-rate", config.learning_rate, "Gradient descent step size")->capture_default_str();
    cmd->add_option("--momentum", config.momentum, "Momentum coefficient in [0,1)")->capture_default_str();
    cmd->add_option("--target-mse", config.target_mse, "Stop once normalized training MSE reaches this")
        ->capture_default_str();
    cmd->add_option("--activation", activation, "Hidden activation: logistic or tanh")->capture_default_str();
    cmd->add_option("--log-every", config.log_every, "Print training MSE every N epochs (0: off)");
  }
};

struct ConfigFlags {
  int row = 4;
  std::string inputs;
  std::string arch;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", row, "Standard configuration 1-8 selecting inputs and architecture")->capture_default_str();
    cmd->add_option("--inputs", inputs, "Custom input list, e.g. \"p,n,c1\" (overrides --config)");
    cmd->add_option("--arch", arch, "Architecture for --inputs, e.g. 3-2-1");
  }

  sc::ExperimentConfig resolve() const {
    if (!inputs.empty()) {
      sc::ExperimentConfig cfg;
      cfg.name = "custom";
      cfg.inputs = sc::parse_input_list(inputs);
      if (!arch.empty()) cfg.hidden_layers = sc::parse_hidden_layers(arch, cfg.inputs.size());
      cfg.validate();
      return cfg;
    }
    for (const auto& cfg : sc::standard_suite()) {
      if (cfg.table_row == row) return cfg;
    }
    throw sc::Error(sc::ErrorKind::usage, "--config must be between 1 and 8");
  }
};

std::vector<sc::ObservationRow> load_rows(const std::string& quotes_path, const std::string& sentiment_path) {
  const auto quotes = sc::read_quotes_csv(sc::csv::read_file(quotes_path));
  const auto sentiment = sc::read_sentiment_csv(sc::csv::read_file(sentiment_path));
  auto joined = sc::join(quotes, sentiment);
  if (joined.dropped_days > 0) {
    std::cerr << "warning: " << joined.dropped_days << " sentiment day(s) without a trading session dropped\n";
  }
  return std::move(joined.rows);
}

void print_result(const sc::ExperimentResult& r) {
  std::printf("%-6s %-6s %-18s train_mse=%.4f%%  rel_err=%.3f%%  adj_r2=%.3f%%", r.config_name.c_str(), r.arch.c_str(),
              r.inputs.c_str(), r.training_mse_pct, r.relative_error_pct, r.adjusted_r2_pct);
  if (r.published) {
    const auto& p = *r.published;
    std::printf("   [published: %.4f%% / %.2f%% / %.3f%%]", p.mse_pct, p.rel_err_pct, p.adj_r2_pct);
  }
  std::printf("\n");
}

sc::EpochLogger stderr_logger(const std::string& label) {
  return [label](std::size_t epoch, double mse) {
    std::fprintf(stderr, "%s epoch %zu mse %.6g\n", label.c_str(), epoch, mse);
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"News-sentiment lexicon, crawler and neural price forecasting experiment"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags global;
  app.add_option("--seed", global.seed, "Random seed for network initialization")->capture_default_str();
  app.add_option("--threshold", global.threshold, "Dictionary word-proportion cut-off (strictly greater)")
      ->capture_default_str();
  app.add_option("--horizon", global.horizon, "Forecast horizon in trading days (0: same-day close)")
      ->capture_default_str();
  app.add_option("--out-dir", global.out_dir, "Directory for experiment outputs")->capture_default_str();

  // build-lexicon
  auto* lex_cmd = app.add_subcommand("build-lexicon", "Build a prefix lexicon from a master dictionary");
  std::string dictionary_path, lexicon_out = "lexicon.csv";
  std::size_t min_root = sc::kDefaultMinRootLength;
  sc::DictionaryColumns columns;
  lex_cmd->add_option("--dictionary", dictionary_path, "Master dictionary CSV")->required();
  lex_cmd->add_option("--out", lexicon_out, "Lexicon CSV to write")->capture_default_str();
  lex_cmd->add_option("--min-root", min_root, "Minimum shared prefix length for root collapsing")->capture_default_str();
  lex_cmd->add_option("--word-column", columns.word)->capture_default_str();
  lex_cmd->add_option("--positive-column", columns.positive)->capture_default_str();
  lex_cmd->add_option("--negative-column", columns.negative)->capture_default_str();
  lex_cmd->add_option("--proportion-column", columns.proportion)->capture_default_str();
  lex_cmd->add_option("--doc-count-column", columns.doc_count)->capture_default_str();

  // scan-news
  auto* scan_cmd = app.add_subcommand("scan-news", "Crawl a news index and write daily sentiment counts");
  std::string scan_lexicon, start_url, fixtures_dir, sentiment_out = "sentiment.csv";
  sc::CrawlOptions crawl_options;
  int delay_ms = 1000;
  scan_cmd->add_option("--lexicon", scan_lexicon, "Lexicon CSV (prefix,polarity)")->required();
  scan_cmd->add_option("--start-url", start_url, "First news index page")->required();
  scan_cmd->add_option("--max-pages", crawl_options.max_pages, "Index pages to walk")->capture_default_str();
  scan_cmd->add_option("--fixtures", fixtures_dir, "Serve pages from a recorded fixture directory");
  scan_cmd->add_option("--out", sentiment_out, "Sentiment CSV to write")->capture_default_str();
  scan_cmd->add_option("--concurrency", crawl_options.concurrency, "Article fetches in flight")->capture_default_str();
  scan_cmd->add_option("--delay-ms", delay_ms, "Minimum spacing between live requests")->capture_default_str();
  scan_cmd->add_option("--news-block", crawl_options.layout.news_block)->capture_default_str();
  scan_cmd->add_option("--date-heading", crawl_options.layout.date_heading)->capture_default_str();
  scan_cmd->add_option("--headline-link", crawl_options.layout.headline_link)->capture_default_str();
  scan_cmd->add_option("--older-text", crawl_options.layout.older_link_text)->capture_default_str();
  scan_cmd->add_option("--article-body", crawl_options.layout.article_body);

  // assemble
  auto* asm_cmd = app.add_subcommand("assemble", "Join quotes with sentiment and export one config's features");
  std::string quotes_path, sentiment_path, dataset_out = "dataset.csv";
  ConfigFlags asm_config;
  asm_cmd->add_option("--quotes", quotes_path, "Quote history CSV")->required();
  asm_cmd->add_option("--sentiment", sentiment_path, "Daily sentiment CSV")->required();
  asm_cmd->add_option("--out", dataset_out, "Dataset CSV to write")->capture_default_str();
  asm_config.attach(asm_cmd);

  // train
  auto* train_cmd = app.add_subcommand("train", "Train and evaluate a single configuration");
  ConfigFlags train_config;
  TrainingFlags train_flags;
  std::string model_out, predictions_out;
  std::size_t train_len = sc::kDefaultTrainLength, test_len = sc::kDefaultTestLength;
  train_cmd->add_option("--quotes", quotes_path, "Quote history CSV")->required();
  train_cmd->add_option("--sentiment", sentiment_path, "Daily sentiment CSV")->required();
  train_cmd->add_option("--model-out", model_out, "Write the trained model here");
  train_cmd->add_option("--predictions-out", predictions_out, "Write the prediction series CSV here");
  train_cmd->add_option("--train-len", train_len)->capture_default_str();
  train_cmd->add_option("--test-len", test_len)->capture_default_str();
  train_config.attach(train_cmd);
  train_flags.attach(train_cmd);

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "Run all eight configurations and write reports");
  TrainingFlags exp_flags;
  std::size_t jobs = 1;
  std::string rel_mode = "mean";
  exp_cmd->add_option("--quotes", quotes_path, "Quote history CSV")->required();
  exp_cmd->add_option("--sentiment", sentiment_path, "Daily sentiment CSV")->required();
  exp_cmd->add_option("--jobs", jobs, "Configurations trained in parallel")->capture_default_str();
  exp_cmd->add_option("--relative-error", rel_mode, "Relative error reading: mean, max or rms")->capture_default_str();
  exp_flags.attach(exp_cmd);

  // plot
  auto* plot_cmd = app.add_subcommand("plot", "Render a prediction series CSV as SVG");
  std::string plot_in, plot_out = "plot.svg", plot_title;
  plot_cmd->add_option("--predictions", plot_in, "Prediction series CSV")->required();
  plot_cmd->add_option("--out", plot_out, "SVG file to write")->capture_default_str();
  plot_cmd->add_option("--title", plot_title, "Chart title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*lex_cmd) {
      const auto parsed = sc::parse_master_dictionary(sc::csv::read_file(dictionary_path), columns);
      for (const auto& issue : parsed.issues) std::cerr << "warning: line " << issue.line << ": " << issue.message << "\n";
      const auto lexicon = sc::build_lexicon(parsed.entries, global.threshold, min_root);
      sc::csv::write_file(lexicon_out, sc::write_lexicon_csv(lexicon));
      std::printf("dictionary: %zu positive, %zu negative words\n", lexicon.raw_positive, lexicon.raw_negative);
      std::printf("threshold: %g (word proportion, strict >)\n", lexicon.threshold_used);
      std::printf("lexicon: %zu positive, %zu negative prefixes -> %s\n", lexicon.positive_prefixes.size(),
                  lexicon.negative_prefixes.size(), lexicon_out.c_str());
    } else if (*scan_cmd) {
      const auto lexicon = sc::read_lexicon_csv(sc::csv::read_file(scan_lexicon));
      std::unique_ptr<sc::PageFetcher> fetcher;
      if (!fixtures_dir.empty()) {
        fetcher = std::make_unique<sc::RecordedFetcher>(fixtures_dir);
      } else {
        fetcher = std::make_unique<sc::HttpFetcher>(std::chrono::milliseconds(delay_ms));
      }
      const auto result = sc::crawl(*fetcher, start_url, lexicon, crawl_options);
      for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
      sc::csv::write_file(sentiment_out, sc::write_sentiment_csv(result.days));
      std::printf("pages: %zu, articles: %zu, days: %zu -> %s\n", result.pages_visited, result.articles_counted,
                  result.days.size(), sentiment_out.c_str());
    } else if (*asm_cmd) {
      const auto rows = load_rows(quotes_path, sentiment_path);
      const auto cfg = asm_config.resolve();
      const auto ds = sc::build_features(rows, cfg, {global.horizon, sc::kSuiteContext});
      sc::csv::write_file(dataset_out, sc::write_dataset_csv(ds));
      std::printf("%zu joined rows -> %zu feature rows (%s) -> %s\n", rows.size(), ds.features.rows(),
                  cfg.inputs_label(",").c_str(), dataset_out.c_str());
    } else if (*train_cmd) {
      const auto rows = load_rows(quotes_path, sentiment_path);
      const auto cfg = train_config.resolve();
      sc::ExperimentOptions options;
      options.seed = global.seed;
      options.train_len = train_len;
      options.test_len = test_len;
      options.features.horizon = global.horizon;
      options.training = train_flags.config;
      options.activation = sc::parse_activation(train_flags.activation);
      const auto run = sc::run_config(rows, cfg, sc::config_seed(global.seed, cfg, 0), options, nullptr,
                                      stderr_logger(cfg.name));
      print_result(run.result);
      std::printf("epochs: %zu, final normalized training MSE: %.6g\n", run.history.mse.size(),
                  run.history.mse.empty() ? 0.0 : run.history.mse.back());
      if (!model_out.empty()) sc::csv::write_file(model_out, sc::save_model(run.model));
      if (!predictions_out.empty()) {
        sc::csv::write_file(predictions_out, sc::write_predictions_csv(sc::prediction_series(run)));
      }
    } else if (*exp_cmd) {
      const auto rows = load_rows(quotes_path, sentiment_path);
      const std::size_t needed = sc::kDefaultTrainLength + sc::kDefaultTestLength + sc::kSuiteContext + global.horizon;
      if (rows.size() < needed) {
        throw sc::Error(sc::ErrorKind::insufficient_data, "experiment needs at least " + std::to_string(needed) +
                                                              " joined rows, have " + std::to_string(rows.size()));
      }
      sc::ExperimentOptions options;
      options.seed = global.seed;
      options.features.horizon = global.horizon;
      options.training = exp_flags.config;
      options.activation = sc::parse_activation(exp_flags.activation);
      options.relative_error = sc::parse_relative_error_mode(rel_mode);
      options.jobs = jobs;
      const auto runs = sc::run_experiment(rows, sc::standard_suite(), options);
      for (const auto& run : runs) print_result(run.result);
      const auto written = sc::write_experiment_outputs(runs, global.out_dir);
      std::printf("note: %s\n", std::string(sc::kMetricFootnote).c_str());
      std::printf("wrote %zu files to %s\n", written.size(), global.out_dir.c_str());
    } else if (*plot_cmd) {
      const auto points = sc::read_predictions_csv(sc::csv::read_file(plot_in));
      sc::csv::write_file(plot_out, sc::render_svg(points, plot_title));
      std::printf("%zu points -> %s\n", points.size(), plot_out.c_str());
    }
  } catch (const sc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case sc::ErrorKind::usage: return kUsage;
      case sc::ErrorKind::diverged: return kDiverged;
      default: return kDataError;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kOk;
}
