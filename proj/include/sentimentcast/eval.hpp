#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sentimentcast/csv.hpp"
#include "sentimentcast/error.hpp"

namespace sentimentcast {

namespace detail {

inline void require_same_nonempty(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::length_mismatch, "prediction and actual lengths differ (" + std::to_string(a.size()) +
                                                " vs " + std::to_string(b.size()) + ")");
  }
  if (a.empty()) throw Error(ErrorKind::length_mismatch, "empty series");
}

}  // namespace detail

/// Mean squared error times 100. Meant for values on the normalized
/// [0, 1] target scale, where it reads as a percentage.
inline double mse_pct(std::span<const double> pred, std::span<const double> actual) {
  detail::require_same_nonempty(pred, actual);
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double e = pred[i] - actual[i];
    sum += e * e;
  }
  return sum / static_cast<double>(pred.size()) * 100.0;
}

enum class RelativeErrorMode {
  mean,  // mean absolute percentage error
  max,   // worst single-point percentage error
  rms,   // root mean square of the relative errors
};

inline RelativeErrorMode parse_relative_error_mode(std::string_view s) {
  if (s == "mean" || s == "mape") return RelativeErrorMode::mean;
  if (s == "max") return RelativeErrorMode::max;
  if (s == "rms") return RelativeErrorMode::rms;
  throw Error(ErrorKind::usage, "unknown relative error mode '" + std::string(s) + "'");
}

/// Relative forecasting error in percent; by default the mean of
/// |pred - actual| / actual.
inline double relative_error_pct(std::span<const double> pred, std::span<const double> actual,
                                 RelativeErrorMode mode = RelativeErrorMode::mean) {
  detail::require_same_nonempty(pred, actual);
  double acc = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (actual[i] == 0.0) throw Error(ErrorKind::zero_denominator, "actual value is zero at index " + std::to_string(i));
    const double rel = std::abs(pred[i] - actual[i]) / std::abs(actual[i]);
    switch (mode) {
      case RelativeErrorMode::mean: acc += rel; break;
      case RelativeErrorMode::max: acc = std::max(acc, rel); break;
      case RelativeErrorMode::rms: acc += rel * rel; break;
    }
  }
  const double n = static_cast<double>(pred.size());
  switch (mode) {
    case RelativeErrorMode::mean: return acc / n * 100.0;
    case RelativeErrorMode::max: return acc * 100.0;
    case RelativeErrorMode::rms: return std::sqrt(acc / n) * 100.0;
  }
  return 0.0;
}

inline double r_squared(std::span<const double> pred, std::span<const double> actual) {
  detail::require_same_nonempty(pred, actual);
  double mean = 0.0;
  for (double a : actual) mean += a;
  mean /= static_cast<double>(actual.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    ss_res += (actual[i] - pred[i]) * (actual[i] - pred[i]);
    ss_tot += (actual[i] - mean) * (actual[i] - mean);
  }
  if (!(ss_tot > 0.0)) throw Error(ErrorKind::zero_variance, "actual series is constant");
  return 1.0 - ss_res / ss_tot;
}

/// Adjusted coefficient of determination for k regressors, in percent:
/// 1 - (1 - R^2)(n - 1)/(n - k - 1).
inline double adjusted_r2_pct(std::span<const double> pred, std::span<const double> actual, std::size_t k) {
  detail::require_same_nonempty(pred, actual);
  const std::size_t n = actual.size();
  if (n <= k + 1) {
    throw Error(ErrorKind::insufficient_dof, "need more than " + std::to_string(k + 1) + " points, have " +
                                                 std::to_string(n));
  }
  const double r2 = r_squared(pred, actual);
  const double adj = 1.0 - (1.0 - r2) * static_cast<double>(n - 1) / static_cast<double>(n - k - 1);
  return adj * 100.0;
}

/// Reference results reported for the original news corpus. Shown next to
/// our own numbers; never used in computation.
struct PublishedResult {
  int row = 0;
  std::string_view inputs;
  std::string_view arch;
  double mse_pct = 0.0;
  double rel_err_pct = 0.0;
  double adj_r2_pct = 0.0;
};

inline constexpr std::array<PublishedResult, 8> kPublishedTable = {{
    {1, "p n", "2-1", 4.9047, 19.28, 97.188},
    {2, "p n c1", "3-1", 0.2138, 1.04, 99.497},
    {3, "p n c1 c2", "4-2-1", 0.2128, 1.35, 99.956},
    {4, "p n c1 c2 c3", "5-3-1", 0.1825, 0.55, 99.955},
    {5, "p n c1 c2 c3 d", "6-3-1", 0.1639, 0.88, 99.959},
    {6, "p n c1 c2 c3 d v", "7-3-1", 0.1236, 3.92, 99.802},
    {7, "p/n c1 c2 d", "4-2-1", 0.1715, 2.10, 99.925},
    {8, "c1 c2 c3 d", "4-3-1", 0.1929, 4.28, 99.710},
}};

inline std::optional<PublishedResult> published_result(int row) {
  for (const auto& r : kPublishedTable) {
    if (r.row == row) return r;
  }
  return std::nullopt;
}

struct ExperimentResult {
  std::string config_name;
  std::string arch;
  std::string inputs;
  double training_mse_pct = 0.0;
  double relative_error_pct = 0.0;
  double adjusted_r2_pct = 0.0;
  std::vector<double> predictions;  // test window, price units
  std::optional<PublishedResult> published;
};

inline std::string write_results_csv(const std::vector<ExperimentResult>& results) {
  std::string out = "config,arch,inputs,train_mse_pct,rel_err_pct,adj_r2_pct,published_mse_pct,published_rel_err_pct,published_adj_r2_pct\n";
  for (const auto& r : results) {
    out += r.config_name + "," + r.arch + "," + r.inputs + "," + csv::format_fixed(r.training_mse_pct, 6) + "," +
           csv::format_fixed(r.relative_error_pct, 6) + "," + csv::format_fixed(r.adjusted_r2_pct, 6);
    if (r.published) {
      const auto& p = *r.published;
      out += "," + csv::format_fixed(p.mse_pct, 4) + "," + csv::format_fixed(p.rel_err_pct, 2) + "," +
             csv::format_fixed(p.adj_r2_pct, 3);
    } else {
      out += ",,,";
    }
    out += '\n';
  }
  return out;
}

}  // namespace sentimentcast
