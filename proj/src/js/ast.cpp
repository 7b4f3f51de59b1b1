#include "codetales/js/ast.hpp"

#include "codetales/js/number.hpp"
#include "codetales/js/printer.hpp"

namespace codetales::js {

std::string_view to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Eq: return "==";
    case BinaryOp::NotEq: return "!=";
    case BinaryOp::StrictEq: return "===";
    case BinaryOp::StrictNotEq: return "!==";
    case BinaryOp::Lt: return "<";
    case BinaryOp::LtEq: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::GtEq: return ">=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
  }
  return "?";
}

std::string_view to_string(AssignOp op) {
  switch (op) {
    case AssignOp::Assign: return "=";
    case AssignOp::Add: return "+=";
    case AssignOp::Sub: return "-=";
    case AssignOp::Mul: return "*=";
    case AssignOp::Div: return "/=";
    case AssignOp::Mod: return "%=";
  }
  return "?";
}

std::string_view to_string(DeclKind kind) {
  switch (kind) {
    case DeclKind::Let: return "let";
    case DeclKind::Const: return "const";
    case DeclKind::Var: return "var";
  }
  return "?";
}

namespace {

void dump_stmt(const Stmt& s, std::string& out);

void dump_expr(const Expr& e, std::string& out) {
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, NumberLit>) {
          out += "(num " + format_number(k.value) + ")";
        } else if constexpr (std::is_same_v<T, StringLit>) {
          out += "(str " + quote_string(k.value) + ")";
        } else if constexpr (std::is_same_v<T, BooleanLit>) {
          out += k.value ? "(bool true)" : "(bool false)";
        } else if constexpr (std::is_same_v<T, NullLit>) {
          out += "(null)";
        } else if constexpr (std::is_same_v<T, IdentExpr>) {
          out += "(id " + k.name + ")";
        } else if constexpr (std::is_same_v<T, ArrayLit>) {
          out += "(array";
          for (const auto& el : k.elements) {
            out += ' ';
            dump_expr(*el, out);
          }
          out += ")";
        } else if constexpr (std::is_same_v<T, ObjectLit>) {
          out += "(object";
          for (const auto& p : k.properties) {
            out += " (" + quote_string(p.key.name) + " ";
            dump_expr(*p.value, out);
            out += ")";
          }
          out += ")";
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          out += "(" + std::string(to_string(k.op)) + " ";
          dump_expr(*k.left, out);
          out += ' ';
          dump_expr(*k.right, out);
          out += ")";
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          out += k.op == UnaryOp::Not ? "(! " : "(neg ";
          dump_expr(*k.operand, out);
          out += ")";
        } else if constexpr (std::is_same_v<T, AssignExpr>) {
          out += "(" + std::string(to_string(k.op)) + " ";
          dump_expr(*k.target, out);
          out += ' ';
          dump_expr(*k.value, out);
          out += ")";
        } else if constexpr (std::is_same_v<T, UpdateExpr>) {
          out += std::string("(") + (k.increment ? "++" : "--") + (k.prefix ? "pre " : "post ");
          dump_expr(*k.target, out);
          out += ")";
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          out += "(call ";
          dump_expr(*k.callee, out);
          for (const auto& a : k.args) {
            out += ' ';
            dump_expr(*a, out);
          }
          out += ")";
        } else if constexpr (std::is_same_v<T, MemberExpr>) {
          out += k.computed() ? "([] " : "(. ";
          dump_expr(*k.object, out);
          out += ' ';
          if (k.computed()) dump_expr(*k.index, out);
          else out += k.property.name;
          out += ")";
        }
      },
      e.kind);
}

void dump_body(const std::vector<StmtPtr>& body, std::string& out) {
  for (const auto& s : body) {
    out += ' ';
    dump_stmt(*s, out);
  }
}

void dump_opt_expr(const ExprPtr& e, std::string& out) {
  if (e) dump_expr(*e, out);
  else out += "_";
}

void dump_stmt(const Stmt& s, std::string& out) {
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, VarDecl>) {
          out += "(" + std::string(to_string(k.kind));
          for (const auto& d : k.declarators) {
            out += " (" + d.name.name;
            if (d.init) {
              out += ' ';
              dump_expr(*d.init, out);
            }
            out += ")";
          }
          out += ")";
        } else if constexpr (std::is_same_v<T, FunctionDecl>) {
          out += "(function " + k.name.name + " (";
          for (std::size_t i = 0; i < k.params.size(); ++i) {
            if (i) out += ' ';
            out += k.params[i].name;
          }
          out += ")";
          dump_body(k.body, out);
          out += ")";
        } else if constexpr (std::is_same_v<T, ReturnStmt>) {
          out += "(return";
          if (k.value) {
            out += ' ';
            dump_expr(*k.value, out);
          }
          out += ")";
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          out += "(if ";
          dump_expr(*k.test, out);
          out += ' ';
          dump_stmt(*k.consequent, out);
          if (k.alternate) {
            out += ' ';
            dump_stmt(*k.alternate, out);
          }
          out += ")";
        } else if constexpr (std::is_same_v<T, WhileStmt>) {
          out += "(while ";
          dump_expr(*k.test, out);
          out += ' ';
          dump_stmt(*k.body, out);
          out += ")";
        } else if constexpr (std::is_same_v<T, ForStmt>) {
          out += "(for ";
          if (k.init) dump_stmt(*k.init, out);
          else out += "_";
          out += ' ';
          dump_opt_expr(k.test, out);
          out += ' ';
          dump_opt_expr(k.update, out);
          out += ' ';
          dump_stmt(*k.body, out);
          out += ")";
        } else if constexpr (std::is_same_v<T, BlockStmt>) {
          out += "(block";
          dump_body(k.body, out);
          out += ")";
        } else if constexpr (std::is_same_v<T, ExprStmt>) {
          out += "(expr ";
          dump_expr(*k.expr, out);
          out += ")";
        }
      },
      s.kind);
}

}  // namespace

std::string dump(const ProgramAst& program) {
  std::string out = "(program";
  dump_body(program.body, out);
  return out + ")";
}

std::string dump(const Expr& expr) {
  std::string out;
  dump_expr(expr, out);
  return out;
}

bool structurally_equal(const ProgramAst& a, const ProgramAst& b) { return dump(a) == dump(b); }

}  // namespace codetales::js
