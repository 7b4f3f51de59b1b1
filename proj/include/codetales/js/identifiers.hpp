#pragma once

#include <functional>
#include <string>
#include <vector>

#include "codetales/js/ast.hpp"

namespace codetales::js {

enum class IdentifierRole { Declaration, Reference, MemberProperty };

std::string_view to_string(IdentifierRole role);

struct IdentifierOccurrence {
  NodeId node = 0;
  std::string name;
  IdentifierRole role = IdentifierRole::Reference;
  SourceSpan span;
};

/// Every identifier in source order. Member-property names (after `.` and
/// object literal keys) are included with their own role so callers can
/// filter them.
std::vector<IdentifierOccurrence> collect_identifiers(const ProgramAst& program);

/// Pre-order traversal. Either callback may be empty.
void walk(const ProgramAst& program, const std::function<void(const Stmt&)>& on_stmt,
          const std::function<void(const Expr&)>& on_expr);
void walk(const Stmt& stmt, const std::function<void(const Stmt&)>& on_stmt,
          const std::function<void(const Expr&)>& on_expr);
void walk(const Expr& expr, const std::function<void(const Expr&)>& on_expr);

}  // namespace codetales::js
