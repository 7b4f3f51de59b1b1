#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "codetales/js/source.hpp"

namespace codetales::js {

using NodeId = std::uint32_t;

/// A name occurring in a declaration, parameter list or property position.
struct Identifier {
  NodeId id = 0;
  std::string name;
  SourceSpan span;
};

struct Expr;
struct Stmt;
using ExprPtr = std::unique_ptr<Expr>;
using StmtPtr = std::unique_ptr<Stmt>;

// Expressions -----------------------------------------------------------------

struct NumberLit {
  double value = 0;
};
struct StringLit {
  std::string value;
};
struct BooleanLit {
  bool value = false;
};
struct NullLit {};
struct IdentExpr {
  std::string name;
};
struct ArrayLit {
  std::vector<ExprPtr> elements;
};
struct Property {
  Identifier key;
  ExprPtr value;
};
struct ObjectLit {
  std::vector<Property> properties;
};

enum class BinaryOp {
  Add, Sub, Mul, Div, Mod,
  Eq, NotEq, StrictEq, StrictNotEq,
  Lt, LtEq, Gt, GtEq,
  And, Or,
};
struct BinaryExpr {
  BinaryOp op;
  ExprPtr left;
  ExprPtr right;
};

enum class UnaryOp { Not, Negate };
struct UnaryExpr {
  UnaryOp op;
  ExprPtr operand;
};

enum class AssignOp { Assign, Add, Sub, Mul, Div, Mod };
struct AssignExpr {
  AssignOp op;
  ExprPtr target;  // IdentExpr or MemberExpr
  ExprPtr value;
};

struct UpdateExpr {
  bool increment = true;
  bool prefix = false;
  ExprPtr target;
};

struct CallExpr {
  ExprPtr callee;
  std::vector<ExprPtr> args;
};

/// `object.property` when `index` is null, otherwise `object[index]`.
struct MemberExpr {
  ExprPtr object;
  Identifier property;
  ExprPtr index;
  bool computed() const noexcept { return index != nullptr; }
};

struct Expr {
  using Kind = std::variant<NumberLit, StringLit, BooleanLit, NullLit, IdentExpr, ArrayLit, ObjectLit,
                            BinaryExpr, UnaryExpr, AssignExpr, UpdateExpr, CallExpr, MemberExpr>;
  NodeId id = 0;
  SourceSpan span;
  Kind kind;

  template <typename T>
  const T* as() const noexcept { return std::get_if<T>(&kind); }
  template <typename T>
  bool is() const noexcept { return std::holds_alternative<T>(kind); }
};

// Statements ------------------------------------------------------------------

enum class DeclKind { Let, Const, Var };

struct Declarator {
  Identifier name;
  ExprPtr init;  // may be null
};
struct VarDecl {
  DeclKind kind = DeclKind::Let;
  std::vector<Declarator> declarators;
};
struct FunctionDecl {
  Identifier name;
  std::vector<Identifier> params;
  std::vector<StmtPtr> body;
};
struct ReturnStmt {
  ExprPtr value;  // may be null
};
struct IfStmt {
  ExprPtr test;
  StmtPtr consequent;
  StmtPtr alternate;  // may be null
};
struct WhileStmt {
  ExprPtr test;
  StmtPtr body;
};
struct ForStmt {
  StmtPtr init;  // VarDecl, ExprStmt or null
  ExprPtr test;  // may be null
  ExprPtr update;  // may be null
  StmtPtr body;
};
struct BlockStmt {
  std::vector<StmtPtr> body;
};
struct ExprStmt {
  ExprPtr expr;
};

struct Stmt {
  using Kind = std::variant<VarDecl, FunctionDecl, ReturnStmt, IfStmt, WhileStmt, ForStmt, BlockStmt, ExprStmt>;
  NodeId id = 0;
  SourceSpan span;
  Kind kind;

  template <typename T>
  const T* as() const noexcept { return std::get_if<T>(&kind); }
  template <typename T>
  bool is() const noexcept { return std::holds_alternative<T>(kind); }
};

struct ProgramAst {
  std::vector<StmtPtr> body;
  /// Ids are assigned densely from 1; this is one past the largest.
  NodeId next_id = 1;
};

std::string_view to_string(BinaryOp op);
std::string_view to_string(AssignOp op);
std::string_view to_string(DeclKind kind);

/// Compact s-expression of the tree without ids or spans. Two programs are
/// structurally equal iff their dumps are equal.
std::string dump(const ProgramAst& program);
std::string dump(const Expr& expr);

bool structurally_equal(const ProgramAst& a, const ProgramAst& b);

}  // namespace codetales::js
