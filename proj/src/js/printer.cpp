#include "codetales/js/printer.hpp"

#include <cctype>

#include "codetales/js/lexer.hpp"
#include "codetales/js/number.hpp"

namespace codetales::js {

namespace {

enum Prec : int {
  kAssign = 1,
  kOr,
  kAnd,
  kEquality,
  kRelational,
  kAdditive,
  kMultiplicative,
  kPrefix,
  kPostfix,
  kCallMember,
  kPrimary,
};

int precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::Or: return kOr;
    case BinaryOp::And: return kAnd;
    case BinaryOp::Eq:
    case BinaryOp::NotEq:
    case BinaryOp::StrictEq:
    case BinaryOp::StrictNotEq: return kEquality;
    case BinaryOp::Lt:
    case BinaryOp::LtEq:
    case BinaryOp::Gt:
    case BinaryOp::GtEq: return kRelational;
    case BinaryOp::Add:
    case BinaryOp::Sub: return kAdditive;
    case BinaryOp::Mul:
    case BinaryOp::Div:
    case BinaryOp::Mod: return kMultiplicative;
  }
  return kPrimary;
}

int precedence(const Expr& e) {
  return std::visit(
      [](const auto& k) -> int {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, BinaryExpr>) return precedence(k.op);
        else if constexpr (std::is_same_v<T, AssignExpr>) return kAssign;
        else if constexpr (std::is_same_v<T, UnaryExpr>) return kPrefix;
        else if constexpr (std::is_same_v<T, UpdateExpr>) return k.prefix ? kPrefix : kPostfix;
        else if constexpr (std::is_same_v<T, CallExpr> || std::is_same_v<T, MemberExpr>) return kCallMember;
        else return kPrimary;
      },
      e.kind);
}

bool valid_identifier(std::string_view name) {
  if (name.empty() || is_keyword(name)) return false;
  if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_' || name[0] == '$')) return false;
  for (char c : name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$')) return false;
  return true;
}

std::string expr_text(const Expr& e, int min_prec);

std::string wrap(const Expr& e, int min_prec) {
  std::string text = expr_text(e, kAssign);
  if (precedence(e) < min_prec) return "(" + text + ")";
  return text;
}

std::string expr_text(const Expr& e, int min_prec) {
  if (precedence(e) < min_prec) return "(" + expr_text(e, kAssign) + ")";
  return std::visit(
      [&](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, NumberLit>) {
          return format_number(k.value);
        } else if constexpr (std::is_same_v<T, StringLit>) {
          return quote_string(k.value);
        } else if constexpr (std::is_same_v<T, BooleanLit>) {
          return k.value ? "true" : "false";
        } else if constexpr (std::is_same_v<T, NullLit>) {
          return "null";
        } else if constexpr (std::is_same_v<T, IdentExpr>) {
          return k.name;
        } else if constexpr (std::is_same_v<T, ArrayLit>) {
          std::string out = "[";
          for (std::size_t i = 0; i < k.elements.size(); ++i) {
            if (i) out += ", ";
            out += wrap(*k.elements[i], kAssign);
          }
          return out + "]";
        } else if constexpr (std::is_same_v<T, ObjectLit>) {
          if (k.properties.empty()) return "{}";
          std::string out = "{";
          for (std::size_t i = 0; i < k.properties.size(); ++i) {
            if (i) out += ", ";
            const auto& key = k.properties[i].key.name;
            out += valid_identifier(key) ? key : quote_string(key);
            out += ": " + wrap(*k.properties[i].value, kAssign);
          }
          return out + "}";
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          int p = precedence(k.op);
          return wrap(*k.left, p) + " " + std::string(to_string(k.op)) + " " + wrap(*k.right, p + 1);
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          std::string operand = wrap(*k.operand, kPrefix);
          if (k.op == UnaryOp::Negate) {
            if (!operand.empty() && operand.front() == '-') operand = "(" + operand + ")";
            return "-" + operand;
          }
          return "!" + operand;
        } else if constexpr (std::is_same_v<T, UpdateExpr>) {
          const char* op = k.increment ? "++" : "--";
          std::string target = wrap(*k.target, kCallMember);
          return k.prefix ? op + target : target + op;
        } else if constexpr (std::is_same_v<T, AssignExpr>) {
          return wrap(*k.target, kCallMember) + " " + std::string(to_string(k.op)) + " " + wrap(*k.value, kAssign);
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          std::string out = wrap(*k.callee, kCallMember) + "(";
          for (std::size_t i = 0; i < k.args.size(); ++i) {
            if (i) out += ", ";
            out += wrap(*k.args[i], kAssign);
          }
          return out + ")";
        } else if constexpr (std::is_same_v<T, MemberExpr>) {
          std::string object = wrap(*k.object, kCallMember);
          if (k.object->template is<NumberLit>()) object = "(" + object + ")";
          if (k.computed()) return object + "[" + wrap(*k.index, kAssign) + "]";
          return object + "." + k.property.name;
        }
      },
      e.kind);
}

class LinePrinter {
 public:
  std::vector<PrintedLine> lines;

  void statements(const std::vector<StmtPtr>& body, int indent) {
    for (const auto& s : body) statement(*s, indent);
  }

  void statement(const Stmt& s, int indent) {
    std::visit([&](const auto& k) { emit(k, indent); }, s.kind);
  }

 private:
  void line(int indent, std::string text) { lines.push_back({indent, std::move(text)}); }

  static std::string decl_text(const VarDecl& d) {
    std::string out(to_string(d.kind));
    for (std::size_t i = 0; i < d.declarators.size(); ++i) {
      out += i ? ", " : " ";
      out += d.declarators[i].name.name;
      if (d.declarators[i].init) out += " = " + wrap(*d.declarators[i].init, kAssign);
    }
    return out;
  }

  void emit(const VarDecl& d, int indent) { line(indent, decl_text(d) + ";"); }

  void emit(const FunctionDecl& f, int indent) {
    std::string head = "function " + f.name.name + "(";
    for (std::size_t i = 0; i < f.params.size(); ++i) {
      if (i) head += ", ";
      head += f.params[i].name;
    }
    head += ")";
    if (f.body.empty()) {
      line(indent, head + " {}");
      return;
    }
    line(indent, head + " {");
    statements(f.body, indent + 1);
    line(indent, "}");
  }

  void emit(const ReturnStmt& r, int indent) {
    line(indent, r.value ? "return " + wrap(*r.value, kAssign) + ";" : "return;");
  }

  void emit(const ExprStmt& e, int indent) {
    std::string text = wrap(*e.expr, kAssign);
    if (!text.empty() && text.front() == '{') text = "(" + text + ")";
    line(indent, text + ";");
  }

  void emit(const BlockStmt& b, int indent) {
    if (b.body.empty()) {
      line(indent, "{}");
      return;
    }
    line(indent, "{");
    statements(b.body, indent + 1);
    line(indent, "}");
  }

  // Prints `head` followed by `body`. Block bodies open on the head line;
  // others go on their own indented line. Returns true when the last emitted
  // line is a closing brace that a following `else` may join.
  bool headed(std::string head, const Stmt& body, int indent) {
    if (const auto* b = body.as<BlockStmt>()) {
      if (b->body.empty()) {
        line(indent, head + " {}");
        return false;
      }
      line(indent, head + " {");
      statements(b->body, indent + 1);
      line(indent, "}");
      return true;
    }
    line(indent, std::move(head));
    statement(body, indent + 1);
    return false;
  }

  void emit_if(const IfStmt& s, int indent, std::string prefix) {
    bool joinable = headed(prefix + "if (" + wrap(*s.test, kAssign) + ")", *s.consequent, indent);
    if (!s.alternate) return;
    std::string else_head;
    if (joinable) {
      lines.pop_back();
      else_head = "} else";
    } else {
      else_head = "else";
    }
    if (const auto* nested = s.alternate->as<IfStmt>()) {
      emit_if(*nested, indent, else_head + " ");
      return;
    }
    headed(else_head, *s.alternate, indent);
  }

  void emit(const IfStmt& s, int indent) { emit_if(s, indent, ""); }

  void emit(const WhileStmt& s, int indent) {
    headed("while (" + wrap(*s.test, kAssign) + ")", *s.body, indent);
  }

  void emit(const ForStmt& s, int indent) {
    std::string head = "for (";
    if (s.init) {
      if (const auto* d = s.init->as<VarDecl>()) head += decl_text(*d);
      else if (const auto* e = s.init->as<ExprStmt>()) head += wrap(*e->expr, kAssign);
    }
    head += ";";
    if (s.test) head += " " + wrap(*s.test, kAssign);
    head += ";";
    if (s.update) head += " " + wrap(*s.update, kAssign);
    head += ")";
    headed(std::move(head), *s.body, indent);
  }
};

}  // namespace

std::string quote_string(std::string_view value) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out = "\"";
  for (char c : value) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\v': out += "\\v"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20 || c == 0x7f) {
          out += "\\u00";
          out += kHex[(c >> 4) & 0xF];
          out += kHex[c & 0xF];
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

std::vector<PrintedLine> print_lines(const ProgramAst& program) {
  LinePrinter p;
  p.statements(program.body, 0);
  return std::move(p.lines);
}

std::string print(const ProgramAst& program) {
  std::string out;
  for (const auto& l : print_lines(program)) {
    if (!out.empty()) out += '\n';
    out += std::string(static_cast<std::size_t>(l.indent * kIndentWidth), ' ') + l.text;
  }
  return out;
}

std::string print(const Expr& expr) { return expr_text(expr, kAssign); }

}  // namespace codetales::js
