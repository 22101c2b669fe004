#include <gtest/gtest.h>

#include <filesystem>
#include <string>
#include <vector>

#include "sentimentcast/experiment.hpp"
#include "sentimentcast/synthetic.hpp"

namespace sc = sentimentcast;

namespace {

std::vector<sc::ObservationRow> market_rows(std::uint64_t seed) {
  sc::SyntheticMarket m;
  m.seed = seed;
  const auto series = sc::generate_market(m);
  return sc::join(series.quotes, series.sentiment).rows;
}

sc::ExperimentOptions quick_options() {
  sc::ExperimentOptions o;
  o.training.max_epochs = 300;
  return o;
}

std::vector<sc::PredictionPoint> plot_fixture() {
  return {{1, "2016-01-04", 10.0, 10.5, "train"},
          {2, "2016-01-05", 12.0, 11.0, "train"},
          {3, "2016-01-06", 11.0, 11.5, "train"},
          {4, "2016-01-07", 13.0, 12.0, "test"},
          {5, "2016-01-08", 14.0, 13.5, "test"}};
}

std::string slurp(const std::filesystem::path& p) { return sc::csv::read_file(p.string()); }

}  // namespace

TEST(Suite, EightConfigsWithExpectedShapes) {
  const auto suite = sc::standard_suite();
  ASSERT_EQ(suite.size(), 8u);
  const char* arches[] = {"2-1", "3-1", "4-2-1", "5-3-1", "6-3-1", "7-3-1", "4-2-1", "4-3-1"};
  for (std::size_t i = 0; i < suite.size(); ++i) {
    EXPECT_EQ(suite[i].arch(), arches[i]) << suite[i].name;
    EXPECT_EQ(suite[i].table_row, static_cast<int>(i + 1));
    EXPECT_EQ(sc::published_result(*suite[i].table_row)->arch, suite[i].arch());
  }
  EXPECT_EQ(suite[6].inputs_label(), "p/n c1 c2 d");
}

TEST(Suite, ParsesCustomConfigs) {
  const auto inputs = sc::parse_input_list("p,n c1");
  EXPECT_EQ(inputs, (std::vector<sc::Input>{sc::Input::p, sc::Input::n, sc::Input::c1}));
  EXPECT_EQ(sc::parse_hidden_layers("3-4-1", 3), std::vector<std::size_t>{4});
  EXPECT_EQ(sc::parse_hidden_layers("3-1", 3), std::vector<std::size_t>{});
  EXPECT_THROW(sc::parse_hidden_layers("4-2-1", 3), sc::Error);
  EXPECT_THROW(sc::parse_hidden_layers("3-2-2", 3), sc::Error);
  EXPECT_THROW(sc::parse_input_list("p,q"), sc::Error);
}

TEST(PredictionsCsv, RoundTrip) {
  const auto points = plot_fixture();
  EXPECT_EQ(sc::read_predictions_csv(sc::write_predictions_csv(points)), points);
  EXPECT_THROW(sc::read_predictions_csv(""), sc::Error);
  EXPECT_THROW(sc::read_predictions_csv("index,date,actual,predicted,split\n"), sc::Error);
  EXPECT_THROW(sc::read_predictions_csv("index,date,actual,predicted,split\n1,d,1,2,holdout\n"), sc::Error);
}

TEST(Svg, MatchesGolden) {
  EXPECT_EQ(sc::render_svg(plot_fixture(), "demo & test"), slurp(std::string(SC_TEST_DATA) + "/plot_golden.svg"));
}

TEST(Svg, SinglePointAndEmpty) {
  const std::vector<sc::PredictionPoint> one = {{1, "2016-01-04", 10.0, 10.0, "test"}};
  const auto svg = sc::render_svg(one);
  EXPECT_NE(svg.find("<circle"), std::string::npos);
  EXPECT_EQ(svg.find("<polyline"), std::string::npos);
  EXPECT_EQ(svg.find("stroke-dasharray"), std::string::npos);
  EXPECT_THROW(sc::render_svg({}), sc::Error);
}

TEST(Svg, TrainOnlyHasNoDivider) {
  auto points = plot_fixture();
  for (auto& p : points) p.split = "train";
  EXPECT_EQ(sc::render_svg(points).find("stroke-dasharray"), std::string::npos);
}

TEST(RunConfig, ScoresTheTestWindow) {
  const auto rows = market_rows(3);
  const auto suite = sc::standard_suite();
  const auto run = sc::run_config(rows, suite[3], 5, quick_options());
  EXPECT_EQ(run.data.train_len, 175u);
  EXPECT_EQ(run.data.test_len, 20u);
  EXPECT_EQ(run.result.predictions.size(), 20u);
  EXPECT_EQ(run.train_predictions.size(), 175u);
  EXPECT_EQ(run.result.arch, "5-3-1");
  EXPECT_GT(run.result.adjusted_r2_pct, 0.0);
  EXPECT_LT(run.result.relative_error_pct, 10.0);
  ASSERT_TRUE(run.result.published.has_value());
  const auto series = sc::prediction_series(run);
  ASSERT_EQ(series.size(), 195u);
  EXPECT_EQ(series[174].split, "train");
  EXPECT_EQ(series[175].split, "test");
}

TEST(RunConfig, NeverReadsTestRowsWhileFitting) {
  const auto rows = market_rows(4);
  const auto suite = sc::standard_suite();
  for (const auto& config : suite) {
    sc::AccessLog log;
    sc::run_config(rows, config, 1, quick_options(), &log);
    EXPECT_FALSE(log.empty());
    EXPECT_FALSE(log.any_at_or_after(175)) << config.name << " read row " << log.max_index();
    EXPECT_EQ(log.max_index(), 174u);
  }
}

TEST(RunConfig, TestRowsDoNotInfluenceTheModel) {
  auto rows = market_rows(6);
  const auto config = sc::standard_suite()[4];
  const auto base = sc::run_config(rows, config, 2, quick_options());
  // Perturb only the last 20 feature rows (the test window) and compare.
  for (std::size_t i = rows.size() - 20; i < rows.size(); ++i) {
    rows[i].close *= 1.5;
    rows[i].positive += 7;
  }
  const auto changed = sc::run_config(rows, config, 2, quick_options());
  EXPECT_EQ(sc::save_model(base.model), sc::save_model(changed.model));
}

TEST(Experiment, DeterministicOutputs) {
  const auto rows = market_rows(7);
  const auto tmp = std::filesystem::temp_directory_path() / "sentimentcast_experiment_test";
  std::filesystem::remove_all(tmp);
  auto options = quick_options();
  const auto a = sc::write_experiment_outputs(sc::run_experiment(rows, sc::standard_suite(), options), tmp / "a");
  options.jobs = 4;
  const auto b = sc::write_experiment_outputs(sc::run_experiment(rows, sc::standard_suite(), options), tmp / "b");
  ASSERT_EQ(a.size(), 17u);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].filename(), b[i].filename());
    EXPECT_EQ(slurp(a[i]), slurp(b[i])) << a[i];
  }
  std::filesystem::remove_all(tmp);
}
