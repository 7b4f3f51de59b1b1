#pragma once

#include <string>
#include <vector>

#include "codetales/js/ast.hpp"

namespace codetales::js {

/// Width of one indentation level in canonical output.
inline constexpr int kIndentWidth = 2;

/// One line of canonical output with its nesting depth and unindented text.
struct PrintedLine {
  int indent = 0;
  std::string text;
};

/// Canonical formatting: one statement per line, 2-space indentation, no
/// trailing newline. print(parse(print(ast))) == print(ast).
std::string print(const ProgramAst& program);
std::vector<PrintedLine> print_lines(const ProgramAst& program);
std::string print(const Expr& expr);

/// Double-quoted literal form of a string with escapes.
std::string quote_string(std::string_view value);

}  // namespace codetales::js
