// Errors raised by the text readers.
#pragma once

#include <stdexcept>
#include <string>

namespace kinex {

enum class ParseErrorKind {
  syntax,
  duplicate_group_label,
  missing_platform_name,
  invalid_value,
  non_integral_span,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        kind_(kind),
        line_(line),
        detail_(message) {}

  ParseErrorKind kind() const noexcept { return kind_; }
  /// 1-based; 0 when the error concerns the document as a whole.
  int line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ParseErrorKind kind_;
  int line_;
  std::string detail_;
};

}  // namespace kinex
