#include "codetales/js/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace codetales::js {

namespace {

constexpr std::array kKeywords = {
    "let",    "const",    "var",     "if",     "else",   "while",  "for",        "function",
    "return", "null",     "break",   "continue", "do",   "switch", "case",       "default",
    "new",    "this",     "class",   "try",    "catch",  "finally", "throw",     "typeof",
    "instanceof", "in",   "delete",  "void",   "async",  "await",  "yield",      "import",
    "export", "debugger", "with",    "extends", "super",
};

// Longest first within each length bucket; matched greedily.
constexpr std::array kOperators = {
    ">>>=", "===", "!==", "**=", "...", ">>>", "<<=", ">>=", "&&=", "||=", "?""?=",
    "==",   "!=",  "<=",  ">=",  "&&",  "||",  "?""?", "?.", "=>",  "++",  "--",
    "+=",   "-=",  "*=",  "/=",  "%=",  "**",  "<<",  ">>",  "&=",  "|=",  "^=",
    "=",    "<",   ">",   "+",   "-",   "*",   "/",   "%",   "!",   "&",   "|",
    "^",    "~",   "?",
};

constexpr std::string_view kPunctuation = "(){}[];,:.";

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool ident_part(char c) {
  return ident_start(c) || std::isdigit(static_cast<unsigned char>(c));
}
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  TokenList run() {
    TokenList out;
    while (true) {
      std::string trivia = skip_trivia();
      if (pos_ >= text_.size()) {
        out.trailing_trivia = std::move(trivia);
        return out;
      }
      Token tok = next();
      tok.leading_trivia = std::move(trivia);
      out.tokens.push_back(std::move(tok));
    }
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  SourceSpan here(int width = 1) const { return {line_, col_, line_, col_ + width}; }

  std::string skip_trivia() {
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = peek();
      if (c == ' ' || c == '\n' || c == '\r' || c == '\t' || c == '\f' || c == '\v') {
        bump();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < text_.size() && peek() != '\n') bump();
      } else if (c == '/' && peek(1) == '*') {
        SourceSpan open = here(2);
        bump();
        bump();
        while (true) {
          if (pos_ >= text_.size()) throw LexError("unterminated comment", open, '/');
          if (peek() == '*' && peek(1) == '/') {
            bump();
            bump();
            break;
          }
          bump();
        }
      } else {
        break;
      }
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Token make(TokenKind kind, std::size_t start, int line, int col) const {
    Token t;
    t.kind = kind;
    t.lexeme = std::string(text_.substr(start, pos_ - start));
    t.span = {line, col, line, col + static_cast<int>(pos_ - start)};
    return t;
  }

  Token next() {
    const std::size_t start = pos_;
    const int line = line_;
    const int col = col_;
    const char c = peek();

    if (ident_start(c)) {
      while (pos_ < text_.size() && ident_part(peek())) bump();
      Token t = make(TokenKind::Identifier, start, line, col);
      if (t.lexeme == "true" || t.lexeme == "false") {
        t.kind = TokenKind::Boolean;
      } else if (is_keyword(t.lexeme)) {
        t.kind = TokenKind::Keyword;
      }
      return t;
    }

    if (digit(c) || (c == '.' && digit(peek(1)))) return number(start, line, col);

    if (c == '"' || c == '\'') return string(start, line, col);

    if (c == '`') throw LexError("template literals are not supported", here(), c);

    for (std::string_view op : kOperators) {
      if (text_.substr(pos_, op.size()) == op) {
        // "?." followed by a digit is a conditional followed by a number.
        if (op == "?." && digit(peek(2))) continue;
        for (std::size_t i = 0; i < op.size(); ++i) bump();
        return make(TokenKind::Operator, start, line, col);
      }
    }

    if (kPunctuation.find(c) != std::string_view::npos) {
      bump();
      return make(TokenKind::Punctuation, start, line, col);
    }

    std::string shown = std::isprint(static_cast<unsigned char>(c)) ? std::string(1, c)
                                                                    : std::string("\\x") +
                                                                          "0123456789abcdef"[(c >> 4) & 0xF] +
                                                                          "0123456789abcdef"[c & 0xF];
    throw LexError("unexpected character '" + shown + "'", here(), c);
  }

  Token number(std::size_t start, int line, int col) {
    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      bump();
      bump();
      if (!std::isxdigit(static_cast<unsigned char>(peek())))
        throw LexError("malformed hexadecimal literal", here(), peek());
      while (std::isxdigit(static_cast<unsigned char>(peek()))) bump();
    } else {
      while (digit(peek())) bump();
      if (peek() == '.') {
        bump();
        while (digit(peek())) bump();
      }
      if (peek() == 'e' || peek() == 'E') {
        std::size_t save = pos_;
        int save_col = col_;
        bump();
        if (peek() == '+' || peek() == '-') bump();
        if (!digit(peek())) {
          pos_ = save;
          col_ = save_col;
        } else {
          while (digit(peek())) bump();
        }
      }
    }
    if (ident_start(peek()) || digit(peek()))
      throw LexError("identifier starts immediately after numeric literal", here(), peek());
    return make(TokenKind::Number, start, line, col);
  }

  Token string(std::size_t start, int line, int col) {
    const char quote = peek();
    bump();
    while (true) {
      if (pos_ >= text_.size() || peek() == '\n') {
        throw LexError("unterminated string", {line, col, line, col_}, quote);
      }
      char c = peek();
      bump();
      if (c == quote) break;
      if (c == '\\') {
        if (pos_ >= text_.size()) throw LexError("unterminated string", {line, col, line, col_}, quote);
        bump();
      }
    }
    return make(TokenKind::String, start, line, col);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Number: return "number";
    case TokenKind::String: return "string";
    case TokenKind::Boolean: return "boolean";
    case TokenKind::Punctuation: return "punctuation";
    case TokenKind::Operator: return "operator";
  }
  return "?";
}

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

TokenList tokenize(const SourceText& src) { return Lexer(src.text()).run(); }

std::string reconstruct(const TokenList& tokens) {
  std::string out;
  for (const Token& t : tokens.tokens) {
    out += t.leading_trivia;
    out += t.lexeme;
  }
  out += tokens.trailing_trivia;
  return out;
}

}  // namespace codetales::js
