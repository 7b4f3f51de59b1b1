#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace codetales::js {

/// 1-based position range; `end_column` is exclusive.
struct SourceSpan {
  int line = 1;
  int column = 1;
  int end_line = 1;
  int end_column = 1;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
  friend auto operator<=>(const SourceSpan&, const SourceSpan&) = default;
};

/// Program text as loaded for exercises. Tabs become two spaces and CRLF
/// becomes LF on construction, so columns are stable across editors.
class SourceText {
 public:
  SourceText() = default;
  explicit SourceText(std::string_view text, std::string name = "<input>");

  const std::string& text() const noexcept { return text_; }
  const std::string& name() const noexcept { return name_; }

 private:
  std::string text_;
  std::string name_;
};

/// Base for lexer and parser diagnostics.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& message, SourceSpan span)
      : std::runtime_error(message), span_(span) {}

  const SourceSpan& span() const noexcept { return span_; }
  /// "line:col: message"
  std::string located() const;

 private:
  SourceSpan span_;
};

class LexError : public SyntaxError {
 public:
  LexError(const std::string& message, SourceSpan span, char offending)
      : SyntaxError(message, span), offending_(offending) {}
  char offending() const noexcept { return offending_; }

 private:
  char offending_;
};

class ParseError : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

}  // namespace codetales::js
