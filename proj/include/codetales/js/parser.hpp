#pragma once

#include "codetales/js/ast.hpp"
#include "codetales/js/token.hpp"

namespace codetales::js {

/// Maximum nesting of statements plus expressions accepted by the parser.
inline constexpr int kMaxNesting = 200;

/// Parses a whole program. Throws ParseError for syntax errors and for any
/// construct outside the supported subset (the message names it).
ProgramAst parse(const TokenList& tokens);

/// Parses a single expression that must consume every token. Node ids start
/// at `first_id`.
ExprPtr parse_expression(const TokenList& tokens, NodeId first_id = 1);

/// tokenize + parse.
ProgramAst parse_program(const SourceText& src);
ExprPtr parse_expression_text(std::string_view text, NodeId first_id = 1);

}  // namespace codetales::js
