#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sentimentcast {

enum class ErrorKind {
  usage,
  io,
  empty_input,
  schema,
  parse,
  duplicate_date,
  degenerate_lexicon,
  prefix_collision,
  block_not_found,
  fetch,
  no_data,
  insufficient_data,
  degenerate_column,
  dimension,
  diverged,
  length_mismatch,
  zero_denominator,
  insufficient_dof,
  zero_variance,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::usage: return "usage";
    case ErrorKind::io: return "io";
    case ErrorKind::empty_input: return "empty-input";
    case ErrorKind::schema: return "schema";
    case ErrorKind::parse: return "parse";
    case ErrorKind::duplicate_date: return "duplicate-date";
    case ErrorKind::degenerate_lexicon: return "degenerate-lexicon";
    case ErrorKind::prefix_collision: return "prefix-collision";
    case ErrorKind::block_not_found: return "block-not-found";
    case ErrorKind::fetch: return "fetch";
    case ErrorKind::no_data: return "no-data";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::degenerate_column: return "degenerate-column";
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::diverged: return "diverged";
    case ErrorKind::length_mismatch: return "length-mismatch";
    case ErrorKind::zero_denominator: return "zero-denominator";
    case ErrorKind::insufficient_dof: return "insufficient-dof";
    case ErrorKind::zero_variance: return "zero-variance";
  }
  return "unknown";
}

/// Every failure in the library is reported as an Error carrying a kind,
/// so callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sentimentcast
