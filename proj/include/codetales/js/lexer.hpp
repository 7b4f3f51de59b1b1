#pragma once

#include <string>

#include "codetales/js/source.hpp"
#include "codetales/js/token.hpp"

namespace codetales::js {

/// Splits source into tokens. Throws LexError on an unterminated string or
/// comment, or a character outside the language.
TokenList tokenize(const SourceText& src);

/// Concatenates trivia and lexemes; equals the tokenized text byte-for-byte.
std::string reconstruct(const TokenList& tokens);

/// Keywords recognised by the lexer, including reserved words the parser
/// rejects with a named diagnostic.
bool is_keyword(std::string_view word);

}  // namespace codetales::js
