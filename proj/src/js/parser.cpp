#include "codetales/js/parser.hpp"

#include <optional>

#include "codetales/js/lexer.hpp"
#include "codetales/js/number.hpp"

namespace codetales::js {

namespace {

std::string decode_string(const Token& tok) {
  const std::string& raw = tok.lexeme;
  std::string out;
  for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
    char c = raw[i];
    if (c != '\\') {
      out += c;
      continue;
    }
    char e = raw[++i];
    switch (e) {
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case 'r': out += '\r'; break;
      case 'b': out += '\b'; break;
      case 'f': out += '\f'; break;
      case 'v': out += '\v'; break;
      case '0': out += '\0'; break;
      case '\n': break;
      case 'u': {
        unsigned code = 0;
        std::size_t j = i + 1;
        int n = 0;
        for (; n < 4 && j + 1 < raw.size() && std::isxdigit(static_cast<unsigned char>(raw[j])); ++n, ++j)
          code = code * 16 + static_cast<unsigned>(std::isdigit(static_cast<unsigned char>(raw[j]))
                                                       ? raw[j] - '0'
                                                       : (std::tolower(raw[j]) - 'a' + 10));
        if (n != 4) throw ParseError("malformed \\u escape", tok.span);
        i = j - 1;
        if (code < 0x80) {
          out += static_cast<char>(code);
        } else if (code < 0x800) {
          out += static_cast<char>(0xC0 | (code >> 6));
          out += static_cast<char>(0x80 | (code & 0x3F));
        } else {
          out += static_cast<char>(0xE0 | (code >> 12));
          out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
          out += static_cast<char>(0x80 | (code & 0x3F));
        }
        break;
      }
      default: out += e; break;
    }
  }
  return out;
}

std::string_view unsupported_keyword(std::string_view kw) {
  if (kw == "break") return "'break' statements are not supported";
  if (kw == "continue") return "'continue' statements are not supported";
  if (kw == "do") return "do...while loops are not supported";
  if (kw == "switch" || kw == "case" || kw == "default") return "switch statements are not supported";
  if (kw == "new") return "'new' expressions are not supported";
  if (kw == "this") return "'this' is not supported";
  if (kw == "class" || kw == "extends" || kw == "super") return "classes are not supported";
  if (kw == "try" || kw == "catch" || kw == "finally" || kw == "throw") return "exceptions are not supported";
  if (kw == "typeof") return "the 'typeof' operator is not supported";
  if (kw == "instanceof") return "the 'instanceof' operator is not supported";
  if (kw == "in") return "the 'in' operator is not supported";
  if (kw == "delete") return "the 'delete' operator is not supported";
  if (kw == "void") return "the 'void' operator is not supported";
  if (kw == "async" || kw == "await") return "async functions are not supported";
  if (kw == "yield") return "generators are not supported";
  if (kw == "import" || kw == "export") return "modules are not supported";
  if (kw == "with") return "'with' statements are not supported";
  if (kw == "debugger") return "'debugger' statements are not supported";
  return {};
}

std::string_view unsupported_operator(std::string_view op) {
  if (op == "?") return "the conditional (ternary) operator is not supported";
  if (op == "=>") return "arrow functions are not supported";
  if (op == "**" || op == "**=") return "the exponentiation operator is not supported";
  if (op == "?.") return "optional chaining is not supported";
  if (op == "?""?" || op == "?""?=") return "nullish coalescing is not supported";
  if (op == "...") return "spread syntax is not supported";
  if (op == "&&=" || op == "||=") return "logical assignment is not supported";
  if (op == "&" || op == "|" || op == "^" || op == "~" || op == "<<" || op == ">>" || op == ">>>" ||
      op == "&=" || op == "|=" || op == "^=" || op == "<<=" || op == ">>=" || op == ">>>=")
    return "bitwise operators are not supported";
  return {};
}

class Parser {
 public:
  Parser(const TokenList& tokens, NodeId first_id) : toks_(tokens.tokens), next_id_(first_id) {}

  ProgramAst program() {
    ProgramAst out;
    while (!at_end()) out.body.push_back(statement(Context::TopLevel));
    out.next_id = next_id_;
    return out;
  }

  ExprPtr lone_expression() {
    if (at_end()) throw ParseError("expected an expression", end_span());
    ExprPtr e = expression();
    if (!at_end()) throw error_at(cur(), "unexpected token '" + cur().lexeme + "' after expression");
    return e;
  }

 private:
  enum class Context { TopLevel, FunctionBody, Block, SingleStatement };

  // Token access ---------------------------------------------------------------

  bool at_end() const { return pos_ >= toks_.size(); }
  const Token& cur() const { return toks_[pos_]; }
  const Token* peek(std::size_t ahead = 0) const {
    return pos_ + ahead < toks_.size() ? &toks_[pos_ + ahead] : nullptr;
  }

  SourceSpan end_span() const {
    if (toks_.empty()) return {};
    const SourceSpan& s = toks_.back().span;
    return {s.end_line, s.end_column, s.end_line, s.end_column};
  }

  const Token& advance() {
    const Token& t = toks_[pos_++];
    last_end_ = t.span;
    return t;
  }

  bool check_punct(std::string_view p) const { return !at_end() && cur().is_punct(p); }
  bool check_op(std::string_view p) const { return !at_end() && cur().is_op(p); }
  bool check_keyword(std::string_view p) const { return !at_end() && cur().is_keyword(p); }

  bool accept_punct(std::string_view p) {
    if (!check_punct(p)) return false;
    advance();
    return true;
  }

  ParseError error_at(const Token& t, const std::string& message) const { return ParseError(message, t.span); }

  [[noreturn]] void fail_expected(std::string_view what, std::string_view where) const {
    std::string msg = "expected " + std::string(what);
    if (!where.empty()) msg += " " + std::string(where);
    if (at_end()) throw ParseError(msg + " but reached end of input", end_span());
    reject_if_unsupported(cur());
    throw ParseError(msg + " but found '" + cur().lexeme + "'", cur().span);
  }

  void expect_punct(std::string_view p, std::string_view where = {}) {
    if (!accept_punct(p)) fail_expected("'" + std::string(p) + "'", where);
  }

  void reject_if_unsupported(const Token& t) const {
    if (t.kind == TokenKind::Keyword) {
      auto what = unsupported_keyword(t.lexeme);
      if (!what.empty()) throw ParseError(std::string(what), t.span);
    }
    if (t.kind == TokenKind::Operator) {
      auto what = unsupported_operator(t.lexeme);
      if (!what.empty()) throw ParseError(std::string(what), t.span);
    }
  }

  // Node construction ----------------------------------------------------------

  NodeId fresh_id() { return next_id_++; }

  static SourceSpan cover(const SourceSpan& from, const SourceSpan& to) {
    return {from.line, from.column, to.end_line, to.end_column};
  }

  template <typename T>
  ExprPtr make_expr(SourceSpan span, T&& kind) {
    auto e = std::make_unique<Expr>();
    e->id = fresh_id();
    e->span = span;
    e->kind = std::forward<T>(kind);
    return e;
  }

  template <typename T>
  StmtPtr make_stmt(SourceSpan span, T&& kind) {
    auto s = std::make_unique<Stmt>();
    s->id = fresh_id();
    s->span = span;
    s->kind = std::forward<T>(kind);
    return s;
  }

  Identifier identifier(std::string_view where) {
    if (at_end() || cur().kind != TokenKind::Identifier) fail_expected("an identifier", where);
    const Token& t = advance();
    return Identifier{fresh_id(), t.lexeme, t.span};
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p(p) {
      if (++p.depth_ > kMaxNesting) {
        SourceSpan s = p.at_end() ? p.end_span() : p.cur().span;
        throw ParseError("program is nested too deeply", s);
      }
    }
    ~DepthGuard() { --p.depth_; }
    Parser& p;
  };

  // Statements -----------------------------------------------------------------

  StmtPtr statement(Context ctx) {
    DepthGuard guard(*this);
    const Token& t = cur();
    if (t.kind == TokenKind::Keyword) {
      if (t.lexeme == "let" || t.lexeme == "const" || t.lexeme == "var") {
        if (ctx == Context::SingleStatement && t.lexeme != "var")
          throw error_at(t, "a '" + t.lexeme + "' declaration needs braces around it here");
        StmtPtr decl = var_decl();
        expect_punct(";", "after the declaration");
        decl->span = cover(decl->span, last_end_);
        return decl;
      }
      if (t.lexeme == "function") {
        if (ctx == Context::Block || ctx == Context::SingleStatement)
          throw error_at(t, "function declarations inside blocks are not supported");
        return function_decl();
      }
      if (t.lexeme == "return") return return_stmt(ctx);
      if (t.lexeme == "if") return if_stmt();
      if (t.lexeme == "while") return while_stmt();
      if (t.lexeme == "for") return for_stmt();
      if (t.lexeme == "else") throw error_at(t, "'else' without a matching 'if'");
      reject_if_unsupported(t);
    }
    if (t.is_punct("{")) return block();
    if (t.is_punct(";")) throw error_at(t, "empty statements are not supported");
    return expression_statement();
  }

  StmtPtr var_decl() {
    const Token& kw = advance();
    VarDecl decl;
    decl.kind = kw.lexeme == "let" ? DeclKind::Let : kw.lexeme == "const" ? DeclKind::Const : DeclKind::Var;
    do {
      if (!at_end() && (cur().is_punct("[") || cur().is_punct("{")))
        throw error_at(cur(), "destructuring is not supported");
      Declarator d;
      d.name = identifier("in the declaration");
      if (!at_end() && cur().is_op("=")) {
        advance();
        d.init = assignment();
      } else if (decl.kind == DeclKind::Const) {
        throw ParseError("missing initializer in const declaration", d.name.span);
      }
      decl.declarators.push_back(std::move(d));
    } while (accept_punct(","));
    return make_stmt(cover(kw.span, last_end_), std::move(decl));
  }

  StmtPtr function_decl() {
    const Token& kw = advance();
    FunctionDecl fn;
    fn.name = identifier("after 'function'");
    expect_punct("(", "after the function name");
    if (!check_punct(")")) {
      do {
        if (check_op("...")) throw error_at(cur(), "rest parameters are not supported");
        fn.params.push_back(identifier("in the parameter list"));
        if (check_op("=")) throw error_at(cur(), "default parameters are not supported");
      } while (accept_punct(","));
    }
    expect_punct(")", "after the parameters");
    expect_punct("{", "to start the function body");
    ++function_depth_;
    while (!check_punct("}")) {
      if (at_end()) fail_expected("'}'", "to close the function body");
      fn.body.push_back(statement(Context::FunctionBody));
    }
    --function_depth_;
    advance();
    return make_stmt(cover(kw.span, last_end_), std::move(fn));
  }

  StmtPtr return_stmt(Context) {
    const Token& kw = advance();
    if (function_depth_ == 0) throw error_at(kw, "'return' outside of a function");
    ReturnStmt ret;
    if (!check_punct(";")) ret.value = expression();
    expect_punct(";", "after the return statement");
    return make_stmt(cover(kw.span, last_end_), std::move(ret));
  }

  ExprPtr paren_condition(std::string_view keyword) {
    expect_punct("(", "after '" + std::string(keyword) + "'");
    ExprPtr test = expression();
    expect_punct(")", "after the condition");
    return test;
  }

  StmtPtr if_stmt() {
    const Token& kw = advance();
    IfStmt s;
    s.test = paren_condition("if");
    s.consequent = statement(Context::SingleStatement);
    if (check_keyword("else")) {
      advance();
      s.alternate = statement(Context::SingleStatement);
    }
    return make_stmt(cover(kw.span, last_end_), std::move(s));
  }

  StmtPtr while_stmt() {
    const Token& kw = advance();
    WhileStmt s;
    s.test = paren_condition("while");
    s.body = statement(Context::SingleStatement);
    return make_stmt(cover(kw.span, last_end_), std::move(s));
  }

  void reject_for_in_of(const Token& at) const {
    if (at_end()) return;
    if (cur().is_keyword("in")) throw error_at(at, "for...in loops are not supported");
    if (cur().kind == TokenKind::Identifier && cur().lexeme == "of")
      throw error_at(at, "for...of loops are not supported");
  }

  StmtPtr for_stmt() {
    const Token& kw = advance();
    if (!check_punct("(")) {
      // "for x in y" style headers: name the construct rather than the paren.
      const Token* a = peek();
      const Token* b = peek(1);
      if (a && b && (b->is_keyword("in") || (b->kind == TokenKind::Identifier && b->lexeme == "of"))) {
        throw error_at(kw, b->is_keyword("in") ? "for...in loops are not supported"
                                               : "for...of loops are not supported");
      }
      fail_expected("'('", "after 'for'");
    }
    advance();
    {
      std::size_t i = 0;
      if (check_keyword("let") || check_keyword("const") || check_keyword("var")) i = 1;
      const Token* name = peek(i);
      const Token* next = peek(i + 1);
      if (name && next && name->kind == TokenKind::Identifier) {
        if (next->is_keyword("in")) throw error_at(kw, "for...in loops are not supported");
        if (next->kind == TokenKind::Identifier && next->lexeme == "of")
          throw error_at(kw, "for...of loops are not supported");
      }
    }
    ForStmt s;
    if (!check_punct(";")) {
      if (check_keyword("let") || check_keyword("const") || check_keyword("var")) {
        s.init = var_decl();
      } else {
        ExprPtr e = expression();
        SourceSpan span = e->span;
        s.init = make_stmt(span, ExprStmt{std::move(e)});
      }
      reject_for_in_of(kw);
    }
    expect_punct(";", "after the loop initializer");
    if (!check_punct(";")) s.test = expression();
    expect_punct(";", "after the loop condition");
    if (!check_punct(")")) s.update = expression();
    expect_punct(")", "after the loop header");
    s.body = statement(Context::SingleStatement);
    return make_stmt(cover(kw.span, last_end_), std::move(s));
  }

  StmtPtr block() {
    const Token& open = advance();
    BlockStmt b;
    while (!check_punct("}")) {
      if (at_end()) fail_expected("'}'", "to close the block");
      b.body.push_back(statement(Context::Block));
    }
    advance();
    return make_stmt(cover(open.span, last_end_), std::move(b));
  }

  StmtPtr expression_statement() {
    ExprPtr e = expression();
    SourceSpan start = e->span;
    expect_punct(";", "after the expression");
    return make_stmt(cover(start, last_end_), ExprStmt{std::move(e)});
  }

  // Expressions ----------------------------------------------------------------

  ExprPtr expression() {
    ExprPtr e = assignment();
    if (check_punct(",")) throw error_at(cur(), "the comma operator is not supported");
    return e;
  }

  static std::optional<AssignOp> assign_op(const Token& t) {
    if (t.kind != TokenKind::Operator) return std::nullopt;
    if (t.lexeme == "=") return AssignOp::Assign;
    if (t.lexeme == "+=") return AssignOp::Add;
    if (t.lexeme == "-=") return AssignOp::Sub;
    if (t.lexeme == "*=") return AssignOp::Mul;
    if (t.lexeme == "/=") return AssignOp::Div;
    if (t.lexeme == "%=") return AssignOp::Mod;
    return std::nullopt;
  }

  ExprPtr assignment() {
    DepthGuard guard(*this);
    ExprPtr left = logical_or();
    if (at_end()) return left;
    if (auto op = assign_op(cur())) {
      const Token& op_tok = advance();
      if (!left->is<IdentExpr>() && !left->is<MemberExpr>())
        throw error_at(op_tok, "invalid assignment target");
      ExprPtr value = assignment();
      SourceSpan span = cover(left->span, value->span);
      return make_expr(span, AssignExpr{*op, std::move(left), std::move(value)});
    }
    reject_if_unsupported(cur());
    return left;
  }

  ExprPtr logical_or() {
    ExprPtr left = logical_and();
    while (check_op("||")) {
      advance();
      ExprPtr right = logical_and();
      SourceSpan span = cover(left->span, right->span);
      left = make_expr(span, BinaryExpr{BinaryOp::Or, std::move(left), std::move(right)});
    }
    return left;
  }

  ExprPtr logical_and() {
    ExprPtr left = equality();
    while (check_op("&&")) {
      advance();
      ExprPtr right = equality();
      SourceSpan span = cover(left->span, right->span);
      left = make_expr(span, BinaryExpr{BinaryOp::And, std::move(left), std::move(right)});
    }
    return left;
  }

  ExprPtr equality() {
    ExprPtr left = relational();
    while (!at_end()) {
      BinaryOp op;
      if (check_op("==")) op = BinaryOp::Eq;
      else if (check_op("!=")) op = BinaryOp::NotEq;
      else if (check_op("===")) op = BinaryOp::StrictEq;
      else if (check_op("!==")) op = BinaryOp::StrictNotEq;
      else break;
      advance();
      ExprPtr right = relational();
      SourceSpan span = cover(left->span, right->span);
      left = make_expr(span, BinaryExpr{op, std::move(left), std::move(right)});
    }
    return left;
  }

  ExprPtr relational() {
    ExprPtr left = additive();
    while (!at_end()) {
      BinaryOp op;
      if (check_op("<")) op = BinaryOp::Lt;
      else if (check_op("<=")) op = BinaryOp::LtEq;
      else if (check_op(">")) op = BinaryOp::Gt;
      else if (check_op(">=")) op = BinaryOp::GtEq;
      else {
        if (check_keyword("in") || check_keyword("instanceof")) reject_if_unsupported(cur());
        break;
      }
      advance();
      ExprPtr right = additive();
      SourceSpan span = cover(left->span, right->span);
      left = make_expr(span, BinaryExpr{op, std::move(left), std::move(right)});
    }
    return left;
  }

  ExprPtr additive() {
    ExprPtr left = multiplicative();
    while (check_op("+") || check_op("-")) {
      BinaryOp op = cur().lexeme == "+" ? BinaryOp::Add : BinaryOp::Sub;
      advance();
      ExprPtr right = multiplicative();
      SourceSpan span = cover(left->span, right->span);
      left = make_expr(span, BinaryExpr{op, std::move(left), std::move(right)});
    }
    return left;
  }

  ExprPtr multiplicative() {
    ExprPtr left = unary();
    while (check_op("*") || check_op("/") || check_op("%")) {
      BinaryOp op = cur().lexeme == "*" ? BinaryOp::Mul : cur().lexeme == "/" ? BinaryOp::Div : BinaryOp::Mod;
      advance();
      ExprPtr right = unary();
      SourceSpan span = cover(left->span, right->span);
      left = make_expr(span, BinaryExpr{op, std::move(left), std::move(right)});
    }
    if (!at_end() && cur().kind == TokenKind::Operator) {
      auto what = unsupported_operator(cur().lexeme);
      if (!what.empty() && cur().lexeme != "=>" && cur().lexeme != "?" && cur().lexeme != "?.")
        reject_if_unsupported(cur());
    }
    return left;
  }

  ExprPtr unary() {
    DepthGuard guard(*this);
    if (at_end()) fail_expected("an expression", "");
    const Token& t = cur();
    if (t.is_op("!") || t.is_op("-")) {
      advance();
      ExprPtr operand = unary();
      SourceSpan span = cover(t.span, operand->span);
      return make_expr(span, UnaryExpr{t.lexeme == "!" ? UnaryOp::Not : UnaryOp::Negate, std::move(operand)});
    }
    if (t.is_op("+")) throw error_at(t, "the unary plus operator is not supported");
    if (t.is_op("++") || t.is_op("--")) {
      advance();
      ExprPtr target = unary();
      if (!target->is<IdentExpr>() && !target->is<MemberExpr>())
        throw ParseError("invalid increment/decrement target", target->span);
      SourceSpan span = cover(t.span, target->span);
      return make_expr(span, UpdateExpr{t.lexeme == "++", true, std::move(target)});
    }
    return postfix();
  }

  ExprPtr postfix() {
    ExprPtr e = call_member();
    if (!at_end() && (cur().is_op("++") || cur().is_op("--"))) {
      // A line break before ++/-- would start a new statement; semicolons are
      // mandatory here so only same-line postfix operators are accepted.
      if (cur().span.line != e->span.end_line) return e;
      const Token& op = advance();
      if (!e->is<IdentExpr>() && !e->is<MemberExpr>())
        throw error_at(op, "invalid increment/decrement target");
      SourceSpan span = cover(e->span, op.span);
      return make_expr(span, UpdateExpr{op.lexeme == "++", false, std::move(e)});
    }
    return e;
  }

  ExprPtr call_member() {
    ExprPtr e = primary();
    while (!at_end()) {
      if (cur().is_punct(".")) {
        advance();
        if (at_end() || (cur().kind != TokenKind::Identifier && cur().kind != TokenKind::Keyword &&
                         cur().kind != TokenKind::Boolean))
          fail_expected("a property name", "after '.'");
        const Token& name = advance();
        MemberExpr m;
        m.property = Identifier{fresh_id(), name.lexeme, name.span};
        SourceSpan span = cover(e->span, name.span);
        m.object = std::move(e);
        e = make_expr(span, std::move(m));
      } else if (cur().is_punct("[")) {
        advance();
        ExprPtr index = expression();
        expect_punct("]", "after the index");
        MemberExpr m;
        SourceSpan span = cover(e->span, last_end_);
        m.object = std::move(e);
        m.index = std::move(index);
        e = make_expr(span, std::move(m));
      } else if (cur().is_punct("(")) {
        advance();
        CallExpr c;
        if (!check_punct(")")) {
          do {
            if (check_op("...")) reject_if_unsupported(cur());
            c.args.push_back(assignment());
          } while (accept_punct(","));
        }
        expect_punct(")", "after the call arguments");
        SourceSpan span = cover(e->span, last_end_);
        c.callee = std::move(e);
        e = make_expr(span, std::move(c));
      } else if (cur().is_op("?.")) {
        reject_if_unsupported(cur());
      } else {
        break;
      }
    }
    return e;
  }

  ExprPtr primary() {
    if (at_end()) fail_expected("an expression", "");
    const Token& t = cur();
    switch (t.kind) {
      case TokenKind::Number:
        advance();
        return make_expr(t.span, NumberLit{parse_number_literal(t.lexeme)});
      case TokenKind::String:
        advance();
        return make_expr(t.span, StringLit{decode_string(t)});
      case TokenKind::Boolean:
        advance();
        return make_expr(t.span, BooleanLit{t.lexeme == "true"});
      case TokenKind::Identifier: {
        advance();
        if (check_op("=>")) reject_if_unsupported(cur());
        return make_expr(t.span, IdentExpr{t.lexeme});
      }
      case TokenKind::Keyword:
        if (t.lexeme == "null") {
          advance();
          return make_expr(t.span, NullLit{});
        }
        if (t.lexeme == "function") throw error_at(t, "function expressions are not supported");
        reject_if_unsupported(t);
        throw error_at(t, "unexpected keyword '" + t.lexeme + "'");
      case TokenKind::Punctuation:
        if (t.lexeme == "(") {
          advance();
          if (check_punct(")")) {
            advance();
            if (check_op("=>")) reject_if_unsupported(cur());
            throw error_at(t, "empty parentheses are not an expression");
          }
          ExprPtr inner = expression();
          expect_punct(")", "to close the parenthesis");
          if (check_op("=>")) reject_if_unsupported(cur());
          return inner;
        }
        if (t.lexeme == "[") return array_literal();
        if (t.lexeme == "{") return object_literal();
        break;
      case TokenKind::Operator:
        reject_if_unsupported(t);
        break;
    }
    throw error_at(t, "unexpected token '" + t.lexeme + "'");
  }

  ExprPtr array_literal() {
    const Token& open = advance();
    ArrayLit arr;
    while (!check_punct("]")) {
      if (check_punct(",")) throw error_at(cur(), "array holes are not supported");
      if (check_op("...")) reject_if_unsupported(cur());
      arr.elements.push_back(assignment());
      if (!accept_punct(",")) break;
    }
    expect_punct("]", "to close the array");
    return make_expr(cover(open.span, last_end_), std::move(arr));
  }

  ExprPtr object_literal() {
    const Token& open = advance();
    ObjectLit obj;
    while (!check_punct("}")) {
      if (at_end()) fail_expected("'}'", "to close the object");
      const Token& key = cur();
      Property p;
      if (key.kind == TokenKind::Identifier || key.kind == TokenKind::Keyword || key.kind == TokenKind::Boolean) {
        advance();
        p.key = Identifier{fresh_id(), key.lexeme, key.span};
      } else if (key.kind == TokenKind::String) {
        advance();
        p.key = Identifier{fresh_id(), decode_string(key), key.span};
      } else if (key.kind == TokenKind::Number) {
        advance();
        p.key = Identifier{fresh_id(), format_number(parse_number_literal(key.lexeme)), key.span};
      } else if (key.is_punct("[")) {
        throw error_at(key, "computed property names are not supported");
      } else if (key.is_op("...")) {
        reject_if_unsupported(key);
      } else {
        fail_expected("a property name", "in the object literal");
      }
      if (check_punct(",") || check_punct("}"))
        throw ParseError("shorthand properties are not supported", p.key.span);
      if (check_punct("(")) throw ParseError("object methods are not supported", p.key.span);
      expect_punct(":", "after the property name");
      p.value = assignment();
      obj.properties.push_back(std::move(p));
      if (!accept_punct(",")) break;
    }
    expect_punct("}", "to close the object");
    return make_expr(cover(open.span, last_end_), std::move(obj));
  }

  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
  NodeId next_id_;
  SourceSpan last_end_{};
  int depth_ = 0;
  int function_depth_ = 0;
};

}  // namespace

ProgramAst parse(const TokenList& tokens) { return Parser(tokens, 1).program(); }

ExprPtr parse_expression(const TokenList& tokens, NodeId first_id) {
  return Parser(tokens, first_id).lone_expression();
}

ProgramAst parse_program(const SourceText& src) { return parse(tokenize(src)); }

ExprPtr parse_expression_text(std::string_view text, NodeId first_id) {
  return parse_expression(tokenize(SourceText(text)), first_id);
}

}  // namespace codetales::js
