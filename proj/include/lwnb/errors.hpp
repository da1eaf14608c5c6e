#pragma once

#include <stdexcept>
#include <string>

namespace lwnb {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad caller input: out-of-range k, fold count exceeding n, mismatched
/// vector lengths and the like.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

/// CSV ingestion failure. Carries the offending 1-based row/column so the
/// message can name the exact cell.
class CsvError : public Error {
 public:
  enum class Kind {
    empty_file,
    bad_header,
    bad_arity,
    bad_number,
    missing_class_label,
    bad_config,
  };

  CsvError(Kind kind, std::string msg, long row = -1, long column = -1)
      : Error(std::move(msg)), kind(kind), row(row), column(column) {}

  Kind kind;
  long row;     // 1-based data row, -1 if not applicable
  long column;  // 1-based column, -1 if not applicable
};

}  // namespace lwnb
