#include <algorithm>
#include <cmath>

#include "codetales/js/printer.hpp"
#include "runtime.hpp"

namespace codetales::trace::detail {

namespace {

bool has_lexical(const std::vector<js::StmtPtr>& body) {
  return std::any_of(body.begin(), body.end(), [](const js::StmtPtr& s) {
    const auto* d = s->as<js::VarDecl>();
    return d && d->kind != js::DeclKind::Var;
  });
}

Binding fresh_binding(std::string name, BindingKind kind) {
  Binding b;
  b.name = std::move(name);
  b.kind = kind;
  return b;
}

[[noreturn]] void already_declared(const std::string& name) {
  throw RuntimeError{"SyntaxError: Identifier '" + name + "' has already been declared"};
}

}  // namespace

Interpreter::Interpreter(EvalOptions options) : options_(options) {
  builtins_ = new_env(nullptr, true);
  builtins_->id = -1;
  next_env_id_ = 0;
  install_builtins();
  global_ = new_env(builtins_, true);
  env_ = global_;
}

void Interpreter::tick() {
  if (++steps_ > options_.budget) throw BudgetExhausted{};
}

void Interpreter::charge(std::size_t work) {
  steps_ += work;
  if (steps_ > options_.budget) throw BudgetExhausted{};
}

Environment* Interpreter::new_env(Environment* parent, bool function_scope) {
  auto env = std::make_unique<Environment>();
  env->id = next_env_id_++;
  env->parent = parent;
  env->function_scope = function_scope;
  envs_.push_back(std::move(env));
  return envs_.back().get();
}

ArrayObject* Interpreter::new_array(std::vector<Value> items) {
  auto a = std::make_unique<ArrayObject>();
  a->items = std::move(items);
  arrays_.push_back(std::move(a));
  return arrays_.back().get();
}

PlainObject* Interpreter::new_object() {
  objects_.push_back(std::make_unique<PlainObject>());
  return objects_.back().get();
}

FunctionObject* Interpreter::new_native(std::string name, NativeFn fn, Value receiver, bool mutates) {
  auto f = std::make_unique<FunctionObject>();
  f->name = std::move(name);
  f->native = fn;
  f->receiver = std::move(receiver);
  f->mutates = mutates;
  functions_.push_back(std::move(f));
  return functions_.back().get();
}

// Events -------------------------------------------------------------------------

void Interpreter::emit_event(EventKind kind, int line, const Binding& b, std::string value, int scope) {
  TraceEvent e;
  e.step = static_cast<std::uint32_t>(events_.size() + 1);
  e.line = line;
  e.kind = kind;
  e.name = b.name;
  e.value = std::move(value);
  e.scope = scope;
  if (kind != EventKind::Read && std::find(variables_.begin(), variables_.end(), b.name) == variables_.end())
    variables_.push_back(b.name);
  events_.push_back(std::move(e));
}

void Interpreter::initialize_binding(Binding& b, Value value, int line, int scope) {
  b.value = std::move(value);
  b.initialized = true;
  b.last_rendered = render(b.value);
  emit_event(EventKind::Declare, line, b, b.last_rendered, scope);
  if (!b.traced) b.declared_at = static_cast<std::uint32_t>(events_.size());
  b.traced = true;
}

void Interpreter::write_binding(Binding& b, Value value, int line, int scope) {
  if (!b.initialized) throw RuntimeError{"ReferenceError: Cannot access '" + b.name + "' before initialization"};
  if (b.kind == BindingKind::Const) throw RuntimeError{"TypeError: Assignment to constant variable."};
  if (b.kind == BindingKind::Builtin) throw RuntimeError{"TypeError: cannot assign to built-in '" + b.name + "'"};
  b.value = std::move(value);
  b.last_rendered = render(b.value);
  emit_event(EventKind::Write, line, b, b.last_rendered, scope);
  if (!b.traced) b.declared_at = static_cast<std::uint32_t>(events_.size());
  b.traced = true;
}

void Interpreter::note_mutation() {
  ++mutations_;
  rescan_chain();
}

void Interpreter::rescan_chain() {
  for (Environment* e = env_; e && e != builtins_; e = e->parent) {
    for (auto& b : e->bindings) {
      if (!b.initialized || !b.traced || !is_container(b.value)) continue;
      std::string now = render(b.value);
      if (now == b.last_rendered) continue;
      b.last_rendered = now;
      emit_event(EventKind::Write, line_, b, std::move(now), e->id);
    }
  }
}

// Scopes -------------------------------------------------------------------------

Binding& Interpreter::resolve(const std::string& name, Environment** where) {
  for (Environment* e = env_; e; e = e->parent) {
    if (Binding* b = e->find_local(name)) {
      if (where) *where = e;
      return *b;
    }
  }
  throw RuntimeError{"ReferenceError: " + name + " is not defined"};
}

Binding& Interpreter::resolve_initialized(const std::string& name, Environment** where) {
  Binding& b = resolve(name, where);
  if (!b.initialized) throw RuntimeError{"ReferenceError: Cannot access '" + name + "' before initialization"};
  return b;
}

void Interpreter::declare_lexical(const js::VarDecl& decl, Environment* env) {
  for (const auto& d : decl.declarators) {
    if (env->find_local(d.name.name)) already_declared(d.name.name);
    Binding b;
    b.name = d.name.name;
    b.kind = decl.kind == js::DeclKind::Const ? BindingKind::Const : BindingKind::Let;
    env->bindings.push_back(std::move(b));
  }
}

void Interpreter::hoist_vars(const js::Stmt& stmt, Environment* env) {
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, js::VarDecl>) {
          if (k.kind != js::DeclKind::Var) return;
          for (const auto& d : k.declarators) {
            if (Binding* existing = env->find_local(d.name.name)) {
              if (existing->kind == BindingKind::Let || existing->kind == BindingKind::Const)
                already_declared(d.name.name);
              continue;
            }
            // Exists (as undefined) from scope entry; traced once its statement runs.
            env->bindings.push_back(fresh_binding(d.name.name, BindingKind::Var));
            env->bindings.back().initialized = true;
          }
        } else if constexpr (std::is_same_v<T, js::IfStmt>) {
          hoist_vars(*k.consequent, env);
          if (k.alternate) hoist_vars(*k.alternate, env);
        } else if constexpr (std::is_same_v<T, js::WhileStmt>) {
          hoist_vars(*k.body, env);
        } else if constexpr (std::is_same_v<T, js::ForStmt>) {
          if (k.init) hoist_vars(*k.init, env);
          hoist_vars(*k.body, env);
        } else if constexpr (std::is_same_v<T, js::BlockStmt>) {
          for (const auto& s : k.body) hoist_vars(*s, env);
        }
      },
      stmt.kind);
}

void Interpreter::hoist(const std::vector<js::StmtPtr>& body, Environment* env, bool function_scope) {
  for (const auto& s : body) {
    if (const auto* d = s->as<js::VarDecl>(); d && d->kind != js::DeclKind::Var) declare_lexical(*d, env);
  }
  for (const auto& s : body) {
    const auto* f = s->as<js::FunctionDecl>();
    if (!f) continue;
    auto fn = std::make_unique<FunctionObject>();
    fn->name = f->name.name;
    fn->decl = f;
    fn->closure = env;
    functions_.push_back(std::move(fn));
    if (Binding* existing = env->find_local(f->name.name)) {
      if (existing->kind == BindingKind::Let || existing->kind == BindingKind::Const) already_declared(f->name.name);
      existing->value = functions_.back().get();
      continue;
    }
    Binding b;
    b.name = f->name.name;
    b.kind = BindingKind::Function;
    b.value = functions_.back().get();
    b.initialized = true;
    env->bindings.push_back(std::move(b));
  }
  if (function_scope) {
    for (const auto& s : body) hoist_vars(*s, env);
  }
}

// Statements ---------------------------------------------------------------------

void Interpreter::run(const js::ProgramAst& program) {
  EnvScope scope(*this, global_);
  hoist(program.body, global_, true);
  exec_body(program.body);
}

Value Interpreter::eval_top_level(const js::Expr& expr) {
  EnvScope scope(*this, global_);
  return eval(expr);
}

Interpreter::Completion Interpreter::exec_body(const std::vector<js::StmtPtr>& body) {
  for (const auto& s : body) {
    Completion c = exec(*s);
    if (c.flow == Flow::Return) return c;
  }
  return {};
}

Interpreter::Completion Interpreter::exec_block(const std::vector<js::StmtPtr>& body) {
  if (!has_lexical(body)) return exec_body(body);
  Environment* block = new_env(env_, false);
  EnvScope scope(*this, block);
  hoist(body, block, false);
  return exec_body(body);
}

void Interpreter::exec_var_decl(const js::VarDecl& decl) {
  for (const auto& d : decl.declarators) {
    const int line = d.name.span.line;
    if (decl.kind == js::DeclKind::Var) {
      Environment* where = nullptr;
      if (resolve(d.name.name, &where).traced && !d.init) continue;
      Value v = d.init ? eval(*d.init) : Value(Undefined{});
      Binding& b = resolve(d.name.name, &where);
      if (b.traced) write_binding(b, std::move(v), line, where->id);
      else initialize_binding(b, std::move(v), line, where->id);
      continue;
    }
    if (decl.kind == js::DeclKind::Const && !d.init)
      throw RuntimeError{"SyntaxError: Missing initializer in const declaration"};
    Value v = d.init ? eval(*d.init) : Value(Undefined{});
    Binding* b = env_->find_local(d.name.name);
    if (!b) throw RuntimeError{"internal error: '" + d.name.name + "' was not hoisted"};
    initialize_binding(*b, std::move(v), line, env_->id);
  }
}

Interpreter::Completion Interpreter::exec(const js::Stmt& stmt) {
  tick();
  line_ = stmt.span.line;
  return std::visit(
      [&](const auto& k) -> Completion {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, js::VarDecl>) {
          exec_var_decl(k);
          return {};
        } else if constexpr (std::is_same_v<T, js::FunctionDecl>) {
          return {};
        } else if constexpr (std::is_same_v<T, js::ReturnStmt>) {
          return {Flow::Return, k.value ? eval(*k.value) : Value(Undefined{})};
        } else if constexpr (std::is_same_v<T, js::IfStmt>) {
          if (truthy(eval(*k.test))) return exec(*k.consequent);
          if (k.alternate) return exec(*k.alternate);
          return {};
        } else if constexpr (std::is_same_v<T, js::WhileStmt>) {
          auto& stats = loops_[stmt.id];
          stats.line = stmt.span.line;
          ++stats.entries;
          while (true) {
            tick();
            if (!truthy(eval(*k.test))) break;
            ++loops_[stmt.id].iterations;
            Completion c = exec(*k.body);
            if (c.flow == Flow::Return) return c;
          }
          return {};
        } else if constexpr (std::is_same_v<T, js::ForStmt>) {
          auto& stats = loops_[stmt.id];
          stats.line = stmt.span.line;
          ++stats.entries;
          Environment* loop_env = env_;
          const auto* init_decl = k.init ? k.init->template as<js::VarDecl>() : nullptr;
          if (init_decl && init_decl->kind != js::DeclKind::Var) loop_env = new_env(env_, false);
          EnvScope scope(*this, loop_env);
          if (init_decl && init_decl->kind != js::DeclKind::Var) declare_lexical(*init_decl, loop_env);
          if (k.init) exec(*k.init);
          while (true) {
            tick();
            if (k.test && !truthy(eval(*k.test))) break;
            ++loops_[stmt.id].iterations;
            Completion c = exec(*k.body);
            if (c.flow == Flow::Return) return c;
            if (k.update) eval(*k.update);
          }
          return {};
        } else if constexpr (std::is_same_v<T, js::BlockStmt>) {
          return exec_block(k.body);
        } else if constexpr (std::is_same_v<T, js::ExprStmt>) {
          eval(*k.expr);
          return {};
        }
      },
      stmt.kind);
}

// Expressions --------------------------------------------------------------------

Value Interpreter::eval(const js::Expr& expr) {
  tick();
  line_ = expr.span.line;
  return std::visit(
      [&](const auto& k) -> Value {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, js::NumberLit>) {
          return k.value;
        } else if constexpr (std::is_same_v<T, js::StringLit>) {
          return k.value;
        } else if constexpr (std::is_same_v<T, js::BooleanLit>) {
          return k.value;
        } else if constexpr (std::is_same_v<T, js::NullLit>) {
          return Null{};
        } else if constexpr (std::is_same_v<T, js::IdentExpr>) {
          Environment* where = nullptr;
          Binding& b = resolve_initialized(k.name, &where);
          if (options_.record_reads && b.kind != BindingKind::Builtin && b.traced)
            emit_event(EventKind::Read, expr.span.line, b, render(b.value), where->id);
          return b.value;
        } else if constexpr (std::is_same_v<T, js::ArrayLit>) {
          std::vector<Value> items;
          items.reserve(k.elements.size());
          for (const auto& e : k.elements) items.push_back(eval(*e));
          return new_array(std::move(items));
        } else if constexpr (std::is_same_v<T, js::ObjectLit>) {
          PlainObject* o = new_object();
          for (const auto& p : k.properties) o->set(p.key.name, eval(*p.value));
          return o;
        } else if constexpr (std::is_same_v<T, js::BinaryExpr>) {
          return eval_binary(k);
        } else if constexpr (std::is_same_v<T, js::UnaryExpr>) {
          Value v = eval(*k.operand);
          if (k.op == js::UnaryOp::Not) return !truthy(v);
          return -to_number(v);
        } else if constexpr (std::is_same_v<T, js::AssignExpr>) {
          return eval_assign(expr, k);
        } else if constexpr (std::is_same_v<T, js::UpdateExpr>) {
          return eval_update(expr, k);
        } else if constexpr (std::is_same_v<T, js::CallExpr>) {
          return eval_call(expr, k);
        } else if constexpr (std::is_same_v<T, js::MemberExpr>) {
          Value object = eval(*k.object);
          Value key = k.computed() ? eval(*k.index) : Value(k.property.name);
          line_ = expr.span.line;
          return get_property(object, key, js::print(*k.object));
        }
      },
      expr.kind);
}

Value Interpreter::apply_arith(js::AssignOp op, const Value& left, const Value& right) {
  if (op == js::AssignOp::Add) {
    Value l = to_primitive(left);
    Value r = to_primitive(right);
    if (std::holds_alternative<std::string>(l) || std::holds_alternative<std::string>(r)) {
      std::string a = to_display_string(l);
      std::string b = to_display_string(r);
      if (a.size() + b.size() > kMaxLength) throw RuntimeError{"RangeError: Invalid string length"};
      charge((a.size() + b.size()) / 256);
      return a + b;
    }
    return to_number(l) + to_number(r);
  }
  double a = to_number(left);
  double b = to_number(right);
  switch (op) {
    case js::AssignOp::Sub: return a - b;
    case js::AssignOp::Mul: return a * b;
    case js::AssignOp::Div: return a / b;
    case js::AssignOp::Mod: return std::fmod(a, b);
    default: return a + b;
  }
}

Value Interpreter::eval_binary(const js::BinaryExpr& b) {
  using Op = js::BinaryOp;
  if (b.op == Op::And) {
    Value l = eval(*b.left);
    return truthy(l) ? eval(*b.right) : l;
  }
  if (b.op == Op::Or) {
    Value l = eval(*b.left);
    return truthy(l) ? l : eval(*b.right);
  }
  Value l = eval(*b.left);
  Value r = eval(*b.right);
  switch (b.op) {
    case Op::Add: return apply_arith(js::AssignOp::Add, l, r);
    case Op::Sub: return apply_arith(js::AssignOp::Sub, l, r);
    case Op::Mul: return apply_arith(js::AssignOp::Mul, l, r);
    case Op::Div: return apply_arith(js::AssignOp::Div, l, r);
    case Op::Mod: return apply_arith(js::AssignOp::Mod, l, r);
    case Op::Eq: return loose_equals(l, r);
    case Op::NotEq: return !loose_equals(l, r);
    case Op::StrictEq: return strict_equals(l, r);
    case Op::StrictNotEq: return !strict_equals(l, r);
    default: break;
  }
  Value pl = to_primitive(l);
  Value pr = to_primitive(r);
  if (std::holds_alternative<std::string>(pl) && std::holds_alternative<std::string>(pr)) {
    const auto& a = std::get<std::string>(pl);
    const auto& c = std::get<std::string>(pr);
    switch (b.op) {
      case Op::Lt: return a < c;
      case Op::LtEq: return a <= c;
      case Op::Gt: return a > c;
      default: return a >= c;
    }
  }
  double x = to_number(pl);
  double y = to_number(pr);
  switch (b.op) {
    case Op::Lt: return x < y;
    case Op::LtEq: return x <= y;
    case Op::Gt: return x > y;
    default: return x >= y;
  }
}

Value Interpreter::eval_assign(const js::Expr& expr, const js::AssignExpr& a) {
  const int line = expr.span.line;
  if (const auto* id = a.target->as<js::IdentExpr>()) {
    Environment* where = nullptr;
    Binding& b = resolve(id->name, &where);
    Value result;
    if (a.op == js::AssignOp::Assign) {
      result = eval(*a.value);
    } else {
      if (!b.initialized) throw RuntimeError{"ReferenceError: Cannot access '" + b.name + "' before initialization"};
      if (options_.record_reads && b.kind != BindingKind::Builtin && b.traced)
        emit_event(EventKind::Read, line, b, render(b.value), where->id);
      Value old = b.value;
      Value rhs = eval(*a.value);
      result = apply_arith(a.op, old, rhs);
    }
    // The right-hand side may have run code that touched other scopes.
    Binding& target = resolve(id->name, &where);
    write_binding(target, result, line, where->id);
    return result;
  }
  const auto& m = std::get<js::MemberExpr>(a.target->kind);
  Value object = eval(*m.object);
  Value key = m.computed() ? eval(*m.index) : Value(m.property.name);
  Value result;
  if (a.op == js::AssignOp::Assign) {
    result = eval(*a.value);
  } else {
    Value old = get_property(object, key, js::print(*m.object));
    Value rhs = eval(*a.value);
    result = apply_arith(a.op, old, rhs);
  }
  line_ = line;
  set_property(object, key, result, js::print(*m.object));
  note_mutation();
  return result;
}

Value Interpreter::eval_update(const js::Expr& expr, const js::UpdateExpr& u) {
  const int line = expr.span.line;
  const double delta = u.increment ? 1 : -1;
  if (const auto* id = u.target->as<js::IdentExpr>()) {
    Environment* where = nullptr;
    Binding& b = resolve_initialized(id->name, &where);
    if (options_.record_reads && b.kind != BindingKind::Builtin && b.traced)
      emit_event(EventKind::Read, line, b, render(b.value), where->id);
    double old = to_number(b.value);
    double now = old + delta;
    write_binding(b, now, line, where->id);
    return u.prefix ? now : old;
  }
  const auto& m = std::get<js::MemberExpr>(u.target->kind);
  Value object = eval(*m.object);
  Value key = m.computed() ? eval(*m.index) : Value(m.property.name);
  double old = to_number(get_property(object, key, js::print(*m.object)));
  double now = old + delta;
  line_ = line;
  set_property(object, key, now, js::print(*m.object));
  note_mutation();
  return u.prefix ? now : old;
}

Value Interpreter::eval_call(const js::Expr& expr, const js::CallExpr& c) {
  Value callee;
  if (const auto* m = c.callee->as<js::MemberExpr>()) {
    Value object = eval(*m->object);
    Value key = m->computed() ? eval(*m->index) : Value(m->property.name);
    callee = get_property(object, key, js::print(*m->object));
  } else {
    callee = eval(*c.callee);
  }
  std::vector<Value> args;
  args.reserve(c.args.size());
  for (const auto& a : c.args) args.push_back(eval(*a));
  line_ = expr.span.line;
  auto* const* fn = std::get_if<FunctionObject*>(&callee);
  if (!fn) throw RuntimeError{"TypeError: " + js::print(*c.callee) + " is not a function"};
  Value result = call_function(*fn, std::move(args));
  line_ = expr.span.line;
  return result;
}

Value Interpreter::call_function(FunctionObject* fn, std::vector<Value> args) {
  if (fn->native) {
    Value result = fn->native(*this, fn->receiver, args);
    if (fn->mutates) note_mutation();
    return result;
  }
  if (depth_ >= kMaxCallDepth) throw RuntimeError{"RangeError: Maximum call stack size exceeded"};
  struct DepthGuard {
    int& d;
    explicit DepthGuard(int& d) : d(d) { ++d; }
    ~DepthGuard() { --d; }
  } guard(depth_);

  const std::uint64_t mutations_before = mutations_;
  Value result = Undefined{};
  {
    Environment* frame = new_env(fn->closure, true);
    EnvScope scope(*this, frame);
    const auto& params = fn->decl->params;
    for (std::size_t i = 0; i < params.size(); ++i) {
      Value v = i < args.size() ? args[i] : Value(Undefined{});
      if (Binding* existing = frame->find_local(params[i].name)) {
        initialize_binding(*existing, std::move(v), params[i].span.line, frame->id);
        continue;
      }
      frame->bindings.push_back(fresh_binding(params[i].name, BindingKind::Param));
      initialize_binding(frame->bindings.back(), std::move(v), params[i].span.line, frame->id);
    }
    hoist(fn->decl->body, frame, true);
    Completion c = exec_body(fn->decl->body);
    if (c.flow == Flow::Return) result = std::move(c.value);
  }
  if (mutations_ != mutations_before) rescan_chain();
  return result;
}

RunOutcome Interpreter::take_outcome(RunStatus status) {
  RunOutcome out;
  std::vector<const Binding*> finals;
  for (const auto& b : global_->bindings)
    if (b.initialized && b.traced) finals.push_back(&b);
  std::stable_sort(finals.begin(), finals.end(),
                   [](const Binding* a, const Binding* b) { return a->declared_at < b->declared_at; });
  for (const Binding* b : finals) out.final_bindings.emplace_back(b->name, render(b->value));
  out.output = std::move(output_);
  out.trace.events = std::move(events_);
  out.trace.variables = std::move(variables_);
  out.status = std::move(status);
  out.steps = std::min(steps_, options_.budget);
  out.loops = std::move(loops_);
  return out;
}

}  // namespace codetales::trace::detail
