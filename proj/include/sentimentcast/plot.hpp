#pragma once

// Actual-vs-predicted price charts as standalone SVG. Output is a pure
// function of the input series; coordinates are rounded to 3 decimals.

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sentimentcast/csv.hpp"
#include "sentimentcast/error.hpp"

namespace sentimentcast {

struct PredictionPoint {
  long long index = 0;  // 1-based position in the series
  std::string date;
  double actual = 0.0;
  double predicted = 0.0;
  std::string split;  // "train" or "test"

  friend bool operator==(const PredictionPoint&, const PredictionPoint&) = default;
};

inline std::string write_predictions_csv(const std::vector<PredictionPoint>& points) {
  std::string out = "index,date,actual,predicted,split\n";
  for (const auto& p : points) {
    out += std::to_string(p.index) + "," + p.date + "," + csv::format_fixed(p.actual, 6) + "," +
           csv::format_fixed(p.predicted, 6) + "," + p.split + "\n";
  }
  return out;
}

inline std::vector<PredictionPoint> read_predictions_csv(std::string_view text) {
  const auto records = csv::parse(text);
  if (records.empty()) throw Error(ErrorKind::empty_input, "prediction file is empty");
  const csv::Header header(records.front());
  const std::size_t index_col = header.require("index");
  const std::size_t date_col = header.require("date");
  const std::size_t actual_col = header.require("actual");
  const std::size_t pred_col = header.require("predicted");
  const std::size_t split_col = header.require("split");

  std::vector<PredictionPoint> points;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    auto fail = [&](const std::string& why) {
      throw Error(ErrorKind::parse, "line " + std::to_string(rec.line) + ": " + why);
    };
    if (rec.fields.size() < header.size()) fail("expected " + std::to_string(header.size()) + " fields");
    const auto index = csv::parse_integer(rec.fields[index_col]);
    const auto actual = csv::parse_double(rec.fields[actual_col]);
    const auto pred = csv::parse_double(rec.fields[pred_col]);
    if (!index) fail("bad index");
    if (!actual || !pred) fail("bad value");
    std::string split = csv::trim_copy(rec.fields[split_col]);
    if (split != "train" && split != "test") fail("split must be train or test");
    points.push_back({*index, csv::trim_copy(rec.fields[date_col]), *actual, *pred, std::move(split)});
  }
  if (points.empty()) throw Error(ErrorKind::empty_input, "prediction file has no rows");
  return points;
}

namespace detail {

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

struct PlotStyle {
  double width = 800.0;
  double height = 400.0;
  double margin_left = 70.0;
  double margin_right = 20.0;
  double margin_top = 40.0;
  double margin_bottom = 40.0;
  std::string actual_color = "#1f4e99";
  std::string predicted_color = "#d9480f";
};

inline std::string render_svg(const std::vector<PredictionPoint>& points, std::string_view title = "",
                              const PlotStyle& style = {}) {
  if (points.empty()) throw Error(ErrorKind::empty_input, "nothing to plot");
  auto fmt = [](double v) { return csv::format_fixed(v, 3); };

  long long lo_x = points.front().index, hi_x = points.front().index;
  double lo_y = points.front().actual, hi_y = points.front().actual;
  for (const auto& p : points) {
    lo_x = std::min(lo_x, p.index);
    hi_x = std::max(hi_x, p.index);
    lo_y = std::min({lo_y, p.actual, p.predicted});
    hi_y = std::max({hi_y, p.actual, p.predicted});
  }
  const double left = style.margin_left;
  const double right = style.width - style.margin_right;
  const double top = style.margin_top;
  const double bottom = style.height - style.margin_bottom;
  auto sx = [&](double x) {
    if (hi_x == lo_x) return (left + right) / 2.0;
    return left + (x - static_cast<double>(lo_x)) / static_cast<double>(hi_x - lo_x) * (right - left);
  };
  auto sy = [&](double y) {
    if (hi_y == lo_y) return (top + bottom) / 2.0;
    return bottom - (y - lo_y) / (hi_y - lo_y) * (bottom - top);
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(style.width) + "\" height=\"" +
         fmt(style.height) + "\" viewBox=\"0 0 " + fmt(style.width) + " " + fmt(style.height) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + fmt(style.width) + "\" height=\"" + fmt(style.height) +
         "\" fill=\"white\"/>\n";
  out += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(top) + "\" width=\"" + fmt(right - left) + "\" height=\"" +
         fmt(bottom - top) + "\" fill=\"none\" stroke=\"#999999\"/>\n";
  if (!title.empty()) {
    out += "<text x=\"" + fmt(left) + "\" y=\"" + fmt(top - 15.0) + "\" font-family=\"sans-serif\" font-size=\"14\">" +
           detail::xml_escape(title) + "</text>\n";
  }
  out += "<text x=\"" + fmt(left - 5.0) + "\" y=\"" + fmt(top + 4.0) +
         "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" + fmt(hi_y) + "</text>\n";
  out += "<text x=\"" + fmt(left - 5.0) + "\" y=\"" + fmt(bottom + 4.0) +
         "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" + fmt(lo_y) + "</text>\n";
  out += "<text x=\"" + fmt(left) + "\" y=\"" + fmt(bottom + 18.0) + "\" font-family=\"sans-serif\" font-size=\"11\">" +
         std::to_string(lo_x) + "</text>\n";
  out += "<text x=\"" + fmt(right) + "\" y=\"" + fmt(bottom + 18.0) +
         "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" + std::to_string(hi_x) + "</text>\n";

  // Train/test boundary at the last training index.
  const PredictionPoint* last_train = nullptr;
  for (const auto& p : points) {
    if (p.split == "train" && (!last_train || p.index > last_train->index)) last_train = &p;
  }
  const bool has_test = std::any_of(points.begin(), points.end(), [](const auto& p) { return p.split == "test"; });
  if (last_train && has_test) {
    const double x = sx(static_cast<double>(last_train->index));
    out += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(top) + "\" x2=\"" + fmt(x) + "\" y2=\"" + fmt(bottom) +
           "\" stroke=\"#555555\" stroke-dasharray=\"4 3\"/>\n";
  }

  auto series = [&](bool actual, const std::string& color) {
    if (points.size() == 1) {
      const auto& p = points.front();
      out += "<circle cx=\"" + fmt(sx(static_cast<double>(p.index))) + "\" cy=\"" +
             fmt(sy(actual ? p.actual : p.predicted)) + "\" r=\"3.000\" fill=\"" + color + "\"/>\n";
      return;
    }
    out += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.500\" points=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& p = points[i];
      if (i) out += ' ';
      out += fmt(sx(static_cast<double>(p.index))) + "," + fmt(sy(actual ? p.actual : p.predicted));
    }
    out += "\"/>\n";
  };
  series(true, style.actual_color);
  series(false, style.predicted_color);

  out += "<text x=\"" + fmt(right - 150.0) + "\" y=\"" + fmt(top + 15.0) + "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" +
         style.actual_color + "\">actual</text>\n";
  out += "<text x=\"" + fmt(right - 150.0) + "\" y=\"" + fmt(top + 30.0) + "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" +
         style.predicted_color + "\">predicted</text>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace sentimentcast
