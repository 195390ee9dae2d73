#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fuzzproc {

enum class ErrorKind {
  UnknownLabel,
  DuplicateLabel,
  GradeOutOfRange,
  BlockingViolation,
  UniverseMismatch,
  BudgetExceeded,
  InvalidArgument,
  ParseError,
  UnknownIdentifier,
  DuplicateDefinition,
  MissingUniverse,
};

inline constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::GradeOutOfRange: return "GradeOutOfRange";
    case ErrorKind::BlockingViolation: return "BlockingViolation";
    case ErrorKind::UniverseMismatch: return "UniverseMismatch";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorKind::DuplicateDefinition: return "DuplicateDefinition";
    case ErrorKind::MissingUniverse: return "MissingUniverse";
  }
  return "Unknown";
}

/// 1-based position in a script.
struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;

  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<SourcePos> pos = std::nullopt)
      : std::runtime_error(decorate(kind, message, pos)),
        kind_(kind),
        detail_(message),
        pos_(pos) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::optional<SourcePos>& position() const noexcept { return pos_; }

 private:
  static std::string decorate(ErrorKind kind, const std::string& message,
                              const std::optional<SourcePos>& pos) {
    std::string out(to_string(kind));
    if (pos) {
      out += " at line " + std::to_string(pos->line) + ", column " +
             std::to_string(pos->column);
    }
    out += ": " + message;
    return out;
  }

  ErrorKind kind_;
  std::string detail_;
  std::optional<SourcePos> pos_;
};

/// Syntax error. Carries the offending token text and the set of token
/// descriptions that would have been accepted at that point.
class ParseError : public Error {
 public:
  ParseError(SourcePos pos, std::string token, std::vector<std::string> expected)
      : Error(ErrorKind::ParseError, describe(token, expected), pos),
        token_(std::move(token)),
        expected_(std::move(expected)) {}

  std::size_t line() const noexcept { return position()->line; }
  std::size_t column() const noexcept { return position()->column; }
  const std::string& token() const noexcept { return token_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string describe(const std::string& token,
                              const std::vector<std::string>& expected) {
    std::string out = "unexpected " + token;
    if (!expected.empty()) {
      out += ", expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
        out += expected[i];
      }
    }
    return out;
  }

  std::string token_;
  std::vector<std::string> expected_;
};

}  // namespace fuzzproc
