#pragma once

#include <algorithm>
#include <cassert>
#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

#include "sentimentcast/error.hpp"

namespace sentimentcast {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return rows_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  void push_row(std::span<const double> values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    if (values.size() != cols_) throw Error(ErrorKind::dimension, "row width mismatch");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Anything that hands out feature rows by index.
template <class R>
concept RowSource = requires(const R& r, std::size_t i) {
  { r.size() } -> std::convertible_to<std::size_t>;
  { r.row(i) } -> std::convertible_to<std::span<const double>>;
};

/// Anything that hands out scalar values by index.
template <class V>
concept ValueSource = requires(const V& v, std::size_t i) {
  { v.size() } -> std::convertible_to<std::size_t>;
  { v[i] } -> std::convertible_to<double>;
};

/// The first `count` rows of another row source. Only those rows are
/// reachable through the view.
template <RowSource R>
class HeadRows {
 public:
  HeadRows(const R& source, std::size_t count) : source_(&source), count_(std::min(count, source.size())) {}
  std::size_t size() const { return count_; }
  std::span<const double> row(std::size_t i) const {
    assert(i < count_);
    return source_->row(i);
  }

 private:
  const R* source_;
  std::size_t count_;
};

template <ValueSource V>
class HeadValues {
 public:
  HeadValues(const V& source, std::size_t count) : source_(&source), count_(std::min(count, source.size())) {}
  std::size_t size() const { return count_; }
  double operator[](std::size_t i) const {
    assert(i < count_);
    return (*source_)[i];
  }

 private:
  const V* source_;
  std::size_t count_;
};

/// Records which indices were read. Lets tests prove that a computation
/// never touched data outside its intended window.
class AccessLog {
 public:
  void record(std::size_t i) { touched_.push_back(i); }
  bool empty() const { return touched_.empty(); }
  std::size_t max_index() const { return touched_.empty() ? 0 : *std::max_element(touched_.begin(), touched_.end()); }
  std::size_t count() const { return touched_.size(); }
  void clear() { touched_.clear(); }
  bool any_at_or_after(std::size_t first) const {
    return std::any_of(touched_.begin(), touched_.end(), [first](std::size_t i) { return i >= first; });
  }

 private:
  std::vector<std::size_t> touched_;
};

template <RowSource R>
class TrackedRows {
 public:
  TrackedRows(const R& source, AccessLog& log) : source_(&source), log_(&log) {}
  std::size_t size() const { return source_->size(); }
  std::span<const double> row(std::size_t i) const {
    log_->record(i);
    return source_->row(i);
  }

 private:
  const R* source_;
  AccessLog* log_;
};

template <ValueSource V>
class TrackedValues {
 public:
  TrackedValues(const V& source, AccessLog& log) : source_(&source), log_(&log) {}
  std::size_t size() const { return source_->size(); }
  double operator[](std::size_t i) const {
    log_->record(i);
    return (*source_)[i];
  }

 private:
  const V* source_;
  AccessLog* log_;
};

}  // namespace sentimentcast
