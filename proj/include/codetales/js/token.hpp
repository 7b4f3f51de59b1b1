#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "codetales/js/source.hpp"

namespace codetales::js {

enum class TokenKind {
  Keyword,
  Identifier,
  Number,
  String,
  Boolean,
  Punctuation,
  Operator,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::Punctuation;
  std::string lexeme;
  SourceSpan span;
  /// Whitespace and comments between the previous token and this one.
  std::string leading_trivia;

  bool is(TokenKind k, std::string_view text) const { return kind == k && lexeme == text; }
  bool is_punct(std::string_view text) const { return is(TokenKind::Punctuation, text); }
  bool is_op(std::string_view text) const { return is(TokenKind::Operator, text); }
  bool is_keyword(std::string_view text) const { return is(TokenKind::Keyword, text); }
};

struct TokenList {
  std::vector<Token> tokens;
  /// Whitespace and comments after the last token.
  std::string trailing_trivia;

  std::size_t size() const noexcept { return tokens.size(); }
  bool empty() const noexcept { return tokens.empty(); }
  const Token& operator[](std::size_t i) const { return tokens[i]; }
};

}  // namespace codetales::js
