#include "codetales/js/identifiers.hpp"

#include <algorithm>

namespace codetales::js {

std::string_view to_string(IdentifierRole role) {
  switch (role) {
    case IdentifierRole::Declaration: return "declaration";
    case IdentifierRole::Reference: return "reference";
    case IdentifierRole::MemberProperty: return "member-property";
  }
  return "?";
}

void walk(const Expr& expr, const std::function<void(const Expr&)>& on_expr) {
  if (on_expr) on_expr(expr);
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ArrayLit>) {
          for (const auto& e : k.elements) walk(*e, on_expr);
        } else if constexpr (std::is_same_v<T, ObjectLit>) {
          for (const auto& p : k.properties) walk(*p.value, on_expr);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          walk(*k.left, on_expr);
          walk(*k.right, on_expr);
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          walk(*k.operand, on_expr);
        } else if constexpr (std::is_same_v<T, AssignExpr>) {
          walk(*k.target, on_expr);
          walk(*k.value, on_expr);
        } else if constexpr (std::is_same_v<T, UpdateExpr>) {
          walk(*k.target, on_expr);
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          walk(*k.callee, on_expr);
          for (const auto& a : k.args) walk(*a, on_expr);
        } else if constexpr (std::is_same_v<T, MemberExpr>) {
          walk(*k.object, on_expr);
          if (k.index) walk(*k.index, on_expr);
        }
      },
      expr.kind);
}

void walk(const Stmt& stmt, const std::function<void(const Stmt&)>& on_stmt,
          const std::function<void(const Expr&)>& on_expr) {
  if (on_stmt) on_stmt(stmt);
  auto expr = [&](const ExprPtr& e) {
    if (e) walk(*e, on_expr);
  };
  auto sub = [&](const StmtPtr& s) {
    if (s) walk(*s, on_stmt, on_expr);
  };
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, VarDecl>) {
          for (const auto& d : k.declarators) expr(d.init);
        } else if constexpr (std::is_same_v<T, FunctionDecl>) {
          for (const auto& s : k.body) sub(s);
        } else if constexpr (std::is_same_v<T, ReturnStmt>) {
          expr(k.value);
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          expr(k.test);
          sub(k.consequent);
          sub(k.alternate);
        } else if constexpr (std::is_same_v<T, WhileStmt>) {
          expr(k.test);
          sub(k.body);
        } else if constexpr (std::is_same_v<T, ForStmt>) {
          sub(k.init);
          expr(k.test);
          expr(k.update);
          sub(k.body);
        } else if constexpr (std::is_same_v<T, BlockStmt>) {
          for (const auto& s : k.body) sub(s);
        } else if constexpr (std::is_same_v<T, ExprStmt>) {
          expr(k.expr);
        }
      },
      stmt.kind);
}

void walk(const ProgramAst& program, const std::function<void(const Stmt&)>& on_stmt,
          const std::function<void(const Expr&)>& on_expr) {
  for (const auto& s : program.body) walk(*s, on_stmt, on_expr);
}

std::vector<IdentifierOccurrence> collect_identifiers(const ProgramAst& program) {
  std::vector<IdentifierOccurrence> out;
  auto add = [&](const Identifier& id, IdentifierRole role) { out.push_back({id.id, id.name, role, id.span}); };
  walk(
      program,
      [&](const Stmt& s) {
        if (const auto* d = s.as<VarDecl>()) {
          for (const auto& decl : d->declarators) add(decl.name, IdentifierRole::Declaration);
        } else if (const auto* f = s.as<FunctionDecl>()) {
          add(f->name, IdentifierRole::Declaration);
          for (const auto& p : f->params) add(p, IdentifierRole::Declaration);
        }
      },
      [&](const Expr& e) {
        if (const auto* id = e.as<IdentExpr>()) {
          out.push_back({e.id, id->name, IdentifierRole::Reference, e.span});
        } else if (const auto* m = e.as<MemberExpr>()) {
          if (!m->computed()) add(m->property, IdentifierRole::MemberProperty);
        } else if (const auto* o = e.as<ObjectLit>()) {
          for (const auto& p : o->properties) add(p.key, IdentifierRole::MemberProperty);
        }
      });
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.span.line, a.span.column) < std::tie(b.span.line, b.span.column);
  });
  return out;
}

}  // namespace codetales::js
