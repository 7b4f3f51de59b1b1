#include "codetales/gen/qlc.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "codetales/gen/blanks.hpp"
#include "codetales/gen/errors.hpp"
#include "codetales/gen/rng.hpp"
#include "codetales/js/identifiers.hpp"
#include "codetales/js/lexer.hpp"
#include "codetales/js/number.hpp"
#include "codetales/js/parser.hpp"

namespace codetales::gen {

namespace {

constexpr std::size_t kMaxDistractors = 3;

std::string code(std::string_view name) { return "`" + std::string(name) + "`"; }
std::string line_label(int line) { return "Line " + std::to_string(line); }

struct Declaration {
  std::string name;
  std::string how;  // let, const, var, parameter, function
  int line = 0;
  js::NodeId node = 0;
  std::string owner;  // function name for parameters
};

struct Analysis {
  js::ProgramAst program;
  int line_count = 0;
  std::vector<Declaration> decls;
  std::map<std::string, int> decl_count;
  std::vector<const js::FunctionDecl*> functions;
  std::map<const js::FunctionDecl*, int> function_line;
  std::map<std::string, std::vector<int>> call_lines;  // callee name -> lines
  std::map<std::string, std::vector<int>> assign_lines;
  std::vector<std::pair<const js::Stmt*, int>> loops;
  std::vector<std::string> keywords;
  std::vector<std::string> properties;
  std::vector<std::string> builtins;
  trace::RunOutcome outcome;

  const Declaration* unique_variable(const std::string& name) const {
    if (decl_count.count(name) == 0 || decl_count.at(name) != 1) return nullptr;
    for (const auto& d : decls)
      if (d.name == name && (d.how == "let" || d.how == "const" || d.how == "var")) return &d;
    return nullptr;
  }
  bool is_variable_or_param(const std::string& name) const {
    return std::any_of(decls.begin(), decls.end(), [&](const Declaration& d) { return d.name == name && d.how != "function"; });
  }
  std::vector<const Declaration*> declarations_on(int line) const {
    std::vector<const Declaration*> out;
    for (const auto& d : decls)
      if (d.line == line) out.push_back(&d);
    return out;
  }
};

void add_unique(std::vector<std::string>& list, const std::string& v) {
  if (std::find(list.begin(), list.end(), v) == list.end()) list.push_back(v);
}

void analyse(Analysis& a, std::string_view source, std::uint64_t budget) {
  js::SourceText text{std::string(source), "qlc"};
  auto tokens = js::tokenize(text);
  a.program = js::parse(tokens);
  const js::ProgramAst& program = a.program;
  for (const auto& t : tokens.tokens) {
    a.line_count = std::max(a.line_count, t.span.end_line);
    if (t.kind == js::TokenKind::Keyword) add_unique(a.keywords, t.lexeme);
  }
  for (const auto& occ : js::collect_identifiers(program)) {
    if (occ.role == js::IdentifierRole::MemberProperty) add_unique(a.properties, occ.name);
    else if (occ.role == js::IdentifierRole::Reference && is_builtin_global(occ.name)) add_unique(a.builtins, occ.name);
  }

  js::walk(
      program,
      [&](const js::Stmt& s) {
        if (const auto* d = s.as<js::VarDecl>()) {
          for (const auto& decl : d->declarators)
            a.decls.push_back({decl.name.name, std::string(js::to_string(d->kind)), decl.name.span.line, decl.name.id, ""});
        } else if (const auto* f = s.as<js::FunctionDecl>()) {
          a.functions.push_back(f);
          a.function_line[f] = f->name.span.line;
          a.decls.push_back({f->name.name, "function", f->name.span.line, f->name.id, ""});
          for (const auto& p : f->params) a.decls.push_back({p.name, "parameter", p.span.line, p.id, f->name.name});
        } else if (s.is<js::WhileStmt>() || s.is<js::ForStmt>()) {
          a.loops.emplace_back(&s, s.span.line);
        }
      },
      [&](const js::Expr& e) {
        if (const auto* c = e.as<js::CallExpr>()) {
          if (const auto* id = c->callee->as<js::IdentExpr>()) a.call_lines[id->name].push_back(e.span.line);
        } else if (const auto* as = e.as<js::AssignExpr>()) {
          if (const auto* id = as->target->as<js::IdentExpr>()) a.assign_lines[id->name].push_back(e.span.line);
        } else if (const auto* u = e.as<js::UpdateExpr>()) {
          if (const auto* id = u->target->as<js::IdentExpr>()) a.assign_lines[id->name].push_back(e.span.line);
        }
      });
  for (const auto& d : a.decls) ++a.decl_count[d.name];
  a.outcome = trace::evaluate(program, {budget, false});
}

QlcQuestion finish(QlcQuestion q, SeededRng& rng) {
  rng.shuffle(q.options);
  return q;
}

std::vector<std::string> take(std::vector<std::string> pool, SeededRng& rng, std::size_t n) {
  rng.shuffle(pool);
  if (pool.size() > n) pool.resize(n);
  return pool;
}

std::vector<int> nearby_lines(int correct, int line_count, const std::vector<int>& extra) {
  std::vector<int> out;
  for (int l : extra)
    if (l != correct && l >= 1 && l <= line_count && std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  for (int delta : {-1, 1, -2, 2}) {
    int l = correct + delta;
    if (l >= 1 && l <= line_count && l != correct && std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  }
  return out;
}

std::vector<std::string> nearby_counts(std::uint64_t correct) {
  std::vector<std::string> out;
  for (int delta : {-2, -1, 1, 2}) {
    long long v = static_cast<long long>(correct) + delta;
    if (v >= 0) out.push_back(std::to_string(v));
  }
  return out;
}

// Kind builders. Each returns false when the kind does not apply.

bool declaration_line(const Analysis& a, SeededRng& rng, QlcQuestion& q) {
  std::vector<const Declaration*> subjects;
  for (const auto& d : a.decls)
    if (a.unique_variable(d.name) == &d) subjects.push_back(&d);
  if (subjects.empty()) return false;
  const Declaration& d = *rng.pick(subjects);
  std::vector<int> others;
  for (const auto& o : a.decls) others.push_back(o.line);
  auto lines = nearby_lines(d.line, a.line_count, others);
  if (lines.empty()) return false;
  rng.shuffle(lines);
  if (lines.size() > kMaxDistractors) lines.resize(kMaxDistractors);

  q.kind = QlcKind::DeclarationLine;
  q.subject = d.name;
  q.anchor_node = d.node;
  q.anchor_line = d.line;
  q.prompt = "On which line is the variable " + code(d.name) + " declared?";
  q.options.push_back({line_label(d.line), true,
                       "Correct: " + code(d.name) + " is declared with " + code(d.how) + " on line " +
                           std::to_string(d.line) + "."});
  for (int l : lines) {
    std::string why = "Not quite: line " + std::to_string(l) + " does not declare " + code(d.name) + ".";
    auto there = a.declarations_on(l);
    if (!there.empty()) {
      why = "Not quite: line " + std::to_string(l) + " declares " + code(there.front()->name) + ", not " +
            code(d.name) + ".";
    }
    why += " The declaration is on line " + std::to_string(d.line) + ".";
    q.options.push_back({line_label(l), false, why});
  }
  return true;
}

bool variable_name(const Analysis& a, SeededRng& rng, QlcQuestion& q) {
  std::vector<const Declaration*> subjects;
  for (const auto& d : a.decls)
    if (d.how == "let" || d.how == "const" || d.how == "var") subjects.push_back(&d);
  if (subjects.empty()) return false;

  std::vector<std::pair<std::string, std::string>> pool;  // label, explanation
  std::set<std::string> used;
  auto offer = [&](const std::string& name, const std::string& why) {
    if (a.is_variable_or_param(name) || !used.insert(name).second) return;
    pool.emplace_back(name, why);
  };
  for (const auto* f : a.functions)
    offer(f->name.name, "Not quite: " + code(f->name.name) + " is the name of a function declared on line " +
                            std::to_string(f->name.span.line) + ".");
  for (const auto& k : a.keywords)
    offer(k, "Not quite: " + code(k) + " is a keyword of the language, not a name chosen by the programmer.");
  for (const auto& p : a.properties)
    offer(p, "Not quite: " + code(p) + " is a property reached with a dot or written as an object key, not a variable.");
  for (const auto& b : a.builtins)
    offer(b, "Not quite: " + code(b) + " is a built-in object provided by the environment, not declared in this program.");
  if (pool.empty()) return false;

  const Declaration& d = *rng.pick(subjects);
  rng.shuffle(pool);
  if (pool.size() > kMaxDistractors) pool.resize(kMaxDistractors);
  q.kind = QlcKind::VariableName;
  q.subject = d.name;
  q.anchor_node = d.node;
  q.anchor_line = d.line;
  q.prompt = "Which of these names is a variable in this program?";
  q.options.push_back({d.name, true,
                       "Correct: " + code(d.name) + " is declared with " + code(d.how) + " on line " +
                           std::to_string(d.line) + ", so it names a variable."});
  for (auto& [label, why] : pool) q.options.push_back({label, false, why});
  return true;
}

bool parameter(const Analysis& a, SeededRng& rng, QlcQuestion& q) {
  std::vector<const js::FunctionDecl*> subjects;
  for (const auto* f : a.functions)
    if (!f->params.empty()) subjects.push_back(f);
  if (subjects.empty()) return false;
  const js::FunctionDecl& f = *rng.pick(subjects);
  auto is_param = [&](const std::string& n) {
    return std::any_of(f.params.begin(), f.params.end(), [&](const js::Identifier& p) { return p.name == n; });
  };

  std::vector<std::pair<std::string, std::string>> pool;
  std::set<std::string> used;
  auto offer = [&](const std::string& name, const std::string& why) {
    if (is_param(name) || !used.insert(name).second) return;
    pool.emplace_back(name, why);
  };
  offer(f.name.name, "Not quite: " + code(f.name.name) + " is the name of the function itself.");
  for (const auto& d : a.decls) {
    if (d.how == "parameter" && d.owner != f.name.name) {
      offer(d.name, "Not quite: " + code(d.name) + " is a parameter of " + code(d.owner) + ", not of " +
                        code(f.name.name) + ".");
    } else if (d.how == "function") {
      offer(d.name, "Not quite: " + code(d.name) + " is another function.");
    } else if (d.how != "parameter") {
      offer(d.name, "Not quite: " + code(d.name) + " is a variable declared with " + code(d.how) + " on line " +
                        std::to_string(d.line) + ", not a parameter.");
    }
  }
  if (pool.empty()) return false;
  rng.shuffle(pool);
  if (pool.size() > kMaxDistractors) pool.resize(kMaxDistractors);

  const js::Identifier& p = f.params[static_cast<std::size_t>(rng.below(f.params.size()))];
  q.kind = QlcKind::Parameter;
  q.subject = f.name.name;
  q.anchor_node = f.name.id;
  q.anchor_line = f.name.span.line;
  q.prompt = "Which of these is a parameter of the function " + code(f.name.name) + "?";
  q.options.push_back({p.name, true,
                       "Correct: " + code(p.name) + " is listed between the parentheses of " + code(f.name.name) +
                           " on line " + std::to_string(p.span.line) + "."});
  for (auto& [label, why] : pool) q.options.push_back({label, false, why});
  return true;
}

bool call_line(const Analysis& a, SeededRng& rng, QlcQuestion& q) {
  std::vector<const js::FunctionDecl*> subjects;
  for (const auto* f : a.functions) {
    auto it = a.call_lines.find(f->name.name);
    if (a.decl_count.at(f->name.name) == 1 && it != a.call_lines.end() && it->second.size() == 1) subjects.push_back(f);
  }
  if (subjects.empty()) return false;
  const js::FunctionDecl& f = *rng.pick(subjects);
  const int correct = a.call_lines.at(f.name.name).front();
  const int declared = f.name.span.line;
  std::vector<int> extra;
  if (declared != correct) extra.push_back(declared);
  auto lines = nearby_lines(correct, a.line_count, {});
  rng.shuffle(lines);
  for (int l : lines)
    if (l != declared) extra.push_back(l);
  if (extra.empty()) return false;
  if (extra.size() > kMaxDistractors) extra.resize(kMaxDistractors);

  q.kind = QlcKind::CallLine;
  q.subject = f.name.name;
  q.anchor_node = f.name.id;
  q.anchor_line = correct;
  q.prompt = "On which line is the function " + code(f.name.name) + " called?";
  q.options.push_back({line_label(correct), true,
                       "Correct: line " + std::to_string(correct) + " calls " + code(f.name.name) +
                           " by writing its name followed by parentheses."});
  for (int l : extra) {
    std::string why = l == declared ? "Not quite: line " + std::to_string(l) + " is where " + code(f.name.name) +
                                          " is declared; declaring a function does not run it."
                                    : "Not quite: line " + std::to_string(l) + " does not call " +
                                          code(f.name.name) + ".";
    why += " The call is on line " + std::to_string(correct) + ".";
    q.options.push_back({line_label(l), false, why});
  }
  return true;
}

bool loop_iterations(const Analysis& a, SeededRng& rng, QlcQuestion& q) {
  if (!a.outcome.status.ok()) return false;
  std::vector<std::pair<const js::Stmt*, trace::LoopStats>> subjects;
  for (const auto& [stmt, line] : a.loops) {
    auto it = a.outcome.loops.find(stmt->id);
    if (it != a.outcome.loops.end() && it->second.entries == 1) subjects.emplace_back(stmt, it->second);
  }
  if (subjects.empty()) return false;
  const auto& [stmt, stats] = subjects[static_cast<std::size_t>(rng.below(subjects.size()))];
  const std::string correct = std::to_string(stats.iterations);
  auto wrong = take(nearby_counts(stats.iterations), rng, kMaxDistractors);

  q.kind = QlcKind::LoopIterations;
  q.subject = "loop@" + std::to_string(stmt->span.line);
  q.anchor_node = stmt->id;
  q.anchor_line = stmt->span.line;
  q.prompt = "How many times does the body of the loop on line " + std::to_string(stmt->span.line) + " run?";
  q.options.push_back({correct, true,
                       "Correct: the loop condition is true " + correct +
                           (stats.iterations == 1 ? " time" : " times") +
                           " before it becomes false, and the body runs once for each of those."});
  for (const auto& w : wrong) {
    q.options.push_back({w, false,
                         "Not quite: following the program step by step, the body runs " + correct + " " +
                             (stats.iterations == 1 ? "time" : "times") + ", not " + w + "."});
  }
  return true;
}

bool final_value(const Analysis& a, SeededRng& rng, QlcQuestion& q) {
  if (!a.outcome.status.ok()) return false;
  std::vector<std::pair<std::string, std::string>> subjects;
  for (const auto& [name, value] : a.outcome.final_bindings)
    if (a.unique_variable(name)) subjects.emplace_back(name, value);
  if (subjects.empty()) return false;
  const auto [name, value] = subjects[static_cast<std::size_t>(rng.below(subjects.size()))];

  std::vector<std::pair<std::string, std::string>> pool;
  std::set<std::string> used{value};
  for (const auto& [other, v] : a.outcome.final_bindings) {
    if (other == name || !used.insert(v).second) continue;
    pool.emplace_back(v, "Not quite: " + v + " is the final value of " + code(other) + ", not of " + code(name) +
                             ". " + code(name) + " ends as " + value + ".");
  }
  if (!value.empty() && (std::isdigit(static_cast<unsigned char>(value[0])) || value[0] == '-')) {
    double d = js::string_to_number(value);
    if (std::isfinite(d)) {
      for (double delta : {-1.0, 1.0}) {
        std::string v = js::format_number(d + delta);
        if (used.insert(v).second)
          pool.emplace_back(v, "Not quite: " + v + " is off by one. " + code(name) + " ends as " + value + ".");
      }
    }
  }
  if (used.insert("undefined").second)
    pool.emplace_back("undefined", "Not quite: " + code(name) + " is given a value before the program ends; it ends as " +
                                       value + ".");
  rng.shuffle(pool);
  if (pool.size() > kMaxDistractors) pool.resize(kMaxDistractors);

  const Declaration* d = a.unique_variable(name);
  q.kind = QlcKind::FinalValue;
  q.subject = name;
  q.anchor_node = d->node;
  q.anchor_line = d->line;
  q.prompt = "What is the value of " + code(name) + " when the program has finished?";
  q.options.push_back({value, true, "Correct: after the last change to " + code(name) + ", it holds " + value + "."});
  for (auto& [label, why] : pool) q.options.push_back({label, false, why});
  return true;
}

bool assignment_count(const Analysis& a, SeededRng& rng, QlcQuestion& q) {
  std::vector<const Declaration*> subjects;
  for (const auto& d : a.decls)
    if (a.unique_variable(d.name) == &d) subjects.push_back(&d);
  if (subjects.empty()) return false;
  const Declaration& d = *rng.pick(subjects);
  auto it = a.assign_lines.find(d.name);
  const std::vector<int> lines = it == a.assign_lines.end() ? std::vector<int>{} : it->second;
  const std::string correct = std::to_string(lines.size());
  auto wrong = take(nearby_counts(lines.size()), rng, kMaxDistractors);

  std::string where;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) where += i + 1 == lines.size() ? " and " : ", ";
    where += std::to_string(lines[i]);
  }
  q.kind = QlcKind::AssignmentCount;
  q.subject = d.name;
  q.anchor_node = d.node;
  q.anchor_line = d.line;
  q.prompt = "How many assignments to " + code(d.name) +
             " appear in the code after its declaration (count =, +=, -= and similar, ++ and --)?";
  std::string reason = lines.empty() ? code(d.name) + " is never assigned after its declaration"
                                     : code(d.name) + " is assigned on line" + (lines.size() > 1 ? "s " : " ") + where;
  q.options.push_back({correct, true, "Correct: " + reason + "."});
  for (const auto& w : wrong)
    q.options.push_back({w, false, "Not quite: " + reason + ", which makes " + correct + ", not " + w + "."});
  return true;
}

using Builder = bool (*)(const Analysis&, SeededRng&, QlcQuestion&);
constexpr Builder kBuilders[kQlcKindCount] = {declaration_line, variable_name, parameter,       call_line,
                                              loop_iterations,  final_value,   assignment_count};

}  // namespace

std::string_view to_string(QlcKind kind) {
  switch (kind) {
    case QlcKind::DeclarationLine: return "declaration-line";
    case QlcKind::VariableName: return "variable-name";
    case QlcKind::Parameter: return "parameter";
    case QlcKind::CallLine: return "call-line";
    case QlcKind::LoopIterations: return "loop-iterations";
    case QlcKind::FinalValue: return "final-value";
    case QlcKind::AssignmentCount: return "assignment-count";
  }
  return "declaration-line";
}

int QlcQuestion::correct_index() const {
  for (std::size_t i = 0; i < options.size(); ++i)
    if (options[i].correct) return static_cast<int>(i);
  return -1;
}

std::vector<QlcQuestion> gen_qlc(std::string_view source, int count, std::uint64_t seed, std::uint64_t budget) {
  if (count < kMinQuestions || count > kMaxQuestions)
    throw GenError("bad-parameter", "question count must be between 1 and 3, got " + std::to_string(count));
  Analysis a;
  analyse(a, source, budget);

  // Each kind gets its own stream so adding a kind never changes another's
  // questions.
  std::vector<QlcQuestion> applicable;
  for (int k = 0; k < kQlcKindCount; ++k) {
    SeededRng kind_rng(seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(k + 1));
    QlcQuestion q;
    if (kBuilders[k](a, kind_rng, q)) applicable.push_back(finish(std::move(q), kind_rng));
  }
  if (applicable.empty()) throw GenError("no-applicable-kinds", "no question kind applies to this program");

  SeededRng rng(seed);
  rng.shuffle(applicable);
  if (applicable.size() > static_cast<std::size_t>(count)) applicable.resize(static_cast<std::size_t>(count));
  return applicable;
}

Json to_json(const QlcQuestion& q, bool with_answers) {
  Json options = Json::array();
  for (const auto& o : q.options) {
    Json j{{"label", o.label}};
    if (with_answers) {
      j["correct"] = o.correct;
      j["explanation"] = o.explanation;
    }
    options.push_back(std::move(j));
  }
  Json out{{"kind", to_string(q.kind)}, {"prompt", q.prompt}, {"options", std::move(options)},
           {"anchor", {{"node", q.anchor_node}, {"line", q.anchor_line}}}};
  if (with_answers) out["subject"] = q.subject;
  return out;
}

Json to_json(const std::vector<QlcQuestion>& questions, bool with_answers) {
  Json arr = Json::array();
  for (const auto& q : questions) arr.push_back(to_json(q, with_answers));
  return {{"type", "qlc"}, {"questions", std::move(arr)}};
}

}  // namespace codetales::gen
