#pragma once

// Internal runtime for the tree-walking evaluator. Heap objects are owned by
// the Interpreter that created them and die with it; Values hold plain
// pointers into that arena.

#include <deque>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "codetales/js/ast.hpp"
#include "codetales/trace/trace.hpp"

namespace codetales::trace::detail {

struct Undefined {
  friend bool operator==(Undefined, Undefined) { return true; }
};
struct Null {
  friend bool operator==(Null, Null) { return true; }
};

struct ArrayObject;
struct PlainObject;
struct FunctionObject;

using Value = std::variant<Undefined, Null, bool, double, std::string, ArrayObject*, PlainObject*, FunctionObject*>;

struct ArrayObject {
  std::vector<Value> items;
};

struct PlainObject {
  std::vector<std::pair<std::string, Value>> props;

  const Value* find(std::string_view key) const;
  void set(std::string key, Value value);
  /// Own keys in enumeration order: integer keys ascending, then insertion order.
  std::vector<std::string> keys() const;
};

class Interpreter;
struct Environment;

using NativeFn = Value (*)(Interpreter&, const Value& self, std::span<const Value> args);

struct FunctionObject {
  std::string name;
  const js::FunctionDecl* decl = nullptr;
  Environment* closure = nullptr;
  NativeFn native = nullptr;
  Value receiver;         // bound `self` for methods
  bool mutates = false;   // native changes its receiver
};

enum class BindingKind { Let, Const, Var, Param, Function, Builtin };

struct Binding {
  std::string name;
  Value value;
  BindingKind kind = BindingKind::Let;
  bool initialized = false;
  bool traced = false;  // has a declare or write event
  std::uint32_t declared_at = 0;
  std::string last_rendered;
};

struct Environment {
  int id = 0;
  Environment* parent = nullptr;
  bool function_scope = false;
  std::vector<Binding> bindings;

  Binding* find_local(std::string_view name);
};

/// Thrown for program-level errors; becomes RunStatusKind::RuntimeError.
struct RuntimeError {
  std::string message;
};
struct BudgetExhausted {};

// Value semantics --------------------------------------------------------------

bool is_container(const Value& v);
bool truthy(const Value& v);
double to_number(const Value& v);
std::string to_display_string(const Value& v);
/// Objects become strings, primitives pass through.
Value to_primitive(const Value& v);
bool strict_equals(const Value& a, const Value& b);
bool loose_equals(const Value& a, const Value& b);
/// Deep structural equality used by unit tests of learner code.
bool deep_equals(const Value& a, const Value& b);
std::string_view type_name(const Value& v);

/// Maximum elements or keys rendered before "... N more items".
inline constexpr std::size_t kRenderLimit = 100;
/// Largest string or array the runtime will build.
inline constexpr std::size_t kMaxLength = 1u << 20;

std::string render(const Value& v);
/// console.log formatting: strings as-is, everything else rendered.
std::string render_log_argument(const Value& v);

std::string to_fixed(double value, int digits);

// Interpreter ------------------------------------------------------------------

class Interpreter {
 public:
  explicit Interpreter(EvalOptions options);
  Interpreter(const Interpreter&) = delete;
  Interpreter& operator=(const Interpreter&) = delete;

  /// Runs the program; throws RuntimeError or BudgetExhausted.
  void run(const js::ProgramAst& program);
  /// Evaluates an expression in the program's top-level scope.
  Value eval_top_level(const js::Expr& expr);

  RunOutcome take_outcome(RunStatus status);

  // Used by natives.
  void charge(std::size_t work);
  ArrayObject* new_array(std::vector<Value> items = {});
  PlainObject* new_object();
  FunctionObject* new_native(std::string name, NativeFn fn, Value receiver = Undefined{}, bool mutates = false);
  void print_line(std::string line) { output_.push_back(std::move(line)); }
  int current_line() const noexcept { return line_; }

  Value get_property(const Value& object, const Value& key, std::string_view shown);

 private:
  enum class Flow { Normal, Return };
  struct Completion {
    Flow flow = Flow::Normal;
    Value value;
  };

  struct EnvScope {
    EnvScope(Interpreter& in, Environment* env) : in(in), saved(in.env_) { in.env_ = env; }
    ~EnvScope() { in.env_ = saved; }
    Interpreter& in;
    Environment* saved;
  };

  void tick();
  Environment* new_env(Environment* parent, bool function_scope);
  void install_builtins();

  void hoist(const std::vector<js::StmtPtr>& body, Environment* env, bool function_scope);
  void hoist_vars(const js::Stmt& stmt, Environment* env);
  void declare_lexical(const js::VarDecl& decl, Environment* env);

  Completion exec(const js::Stmt& stmt);
  Completion exec_body(const std::vector<js::StmtPtr>& body);
  Completion exec_block(const std::vector<js::StmtPtr>& body);
  void exec_var_decl(const js::VarDecl& decl);

  Value eval(const js::Expr& expr);
  Value eval_binary(const js::BinaryExpr& b);
  Value eval_assign(const js::Expr& expr, const js::AssignExpr& a);
  Value eval_update(const js::Expr& expr, const js::UpdateExpr& u);
  Value eval_call(const js::Expr& expr, const js::CallExpr& c);
  Value call_function(FunctionObject* fn, std::vector<Value> args);
  Value apply_arith(js::AssignOp op, const Value& left, const Value& right);

  Binding& resolve(const std::string& name, Environment** where = nullptr);
  Binding& resolve_initialized(const std::string& name, Environment** where = nullptr);
  void set_property(const Value& object, const Value& key, Value value, std::string_view shown);

  void emit_event(EventKind kind, int line, const Binding& b, std::string value, int scope);
  void write_binding(Binding& b, Value value, int line, int scope);
  void initialize_binding(Binding& b, Value value, int line, int scope);
  void note_mutation();
  void rescan_chain();

  EvalOptions options_;
  std::deque<std::unique_ptr<ArrayObject>> arrays_;
  std::deque<std::unique_ptr<PlainObject>> objects_;
  std::deque<std::unique_ptr<FunctionObject>> functions_;
  std::deque<std::unique_ptr<Environment>> envs_;

  Environment* builtins_ = nullptr;
  Environment* global_ = nullptr;
  Environment* env_ = nullptr;
  int next_env_id_ = 0;
  int depth_ = 0;
  int line_ = 0;
  std::uint64_t steps_ = 0;
  std::uint64_t mutations_ = 0;

  std::vector<std::string> output_;
  std::vector<TraceEvent> events_;
  std::vector<std::string> variables_;
  std::map<js::NodeId, LoopStats> loops_;
};

}  // namespace codetales::trace::detail
