#include "codetales/trace/make_tests.hpp"

#include "codetales/js/identifiers.hpp"
#include "codetales/js/parser.hpp"
#include "runtime.hpp"

namespace codetales::trace {

namespace {

bool literal_only(const js::Expr& e) {
  return std::visit(
      [](const auto& k) -> bool {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, js::NumberLit> || std::is_same_v<T, js::StringLit> ||
                      std::is_same_v<T, js::BooleanLit> || std::is_same_v<T, js::NullLit>) {
          return true;
        } else if constexpr (std::is_same_v<T, js::IdentExpr>) {
          return k.name == "undefined" || k.name == "NaN" || k.name == "Infinity";
        } else if constexpr (std::is_same_v<T, js::UnaryExpr>) {
          return k.op == js::UnaryOp::Negate && literal_only(*k.operand);
        } else if constexpr (std::is_same_v<T, js::ArrayLit>) {
          for (const auto& el : k.elements)
            if (!literal_only(*el)) return false;
          return true;
        } else if constexpr (std::is_same_v<T, js::ObjectLit>) {
          for (const auto& p : k.properties)
            if (!literal_only(*p.value)) return false;
          return true;
        } else {
          return false;
        }
      },
      e.kind);
}

struct LiteralValue {
  std::unique_ptr<detail::Interpreter> owner;
  detail::Value value;
};

std::optional<LiteralValue> evaluate_literal(std::string_view text) {
  js::ExprPtr expr;
  try {
    expr = js::parse_expression_text(text);
  } catch (const js::SyntaxError&) {
    return std::nullopt;
  }
  if (!literal_only(*expr)) return std::nullopt;
  LiteralValue out{std::make_unique<detail::Interpreter>(EvalOptions{kDefaultBudget, false}), {}};
  out.value = out.owner->eval_top_level(*expr);
  return out;
}

}  // namespace

bool MakeVerdict::all_passed() const noexcept {
  if (compile_error) return false;
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

std::vector<std::string> MakeVerdict::failing_feedback() const {
  std::vector<std::string> out;
  if (compile_error) out.push_back(diagnostic);
  for (const auto& r : results)
    if (!r.passed) out.push_back(r.feedback);
  return out;
}

std::optional<std::string> canonical_literal(std::string_view text) {
  auto v = evaluate_literal(text);
  if (!v) return std::nullopt;
  return detail::render(v->value);
}

MakeVerdict check_tests(std::string_view student_source, const std::vector<TestSpec>& tests,
                        std::uint64_t budget) {
  js::ProgramAst program;
  try {
    program = js::parse_program(js::SourceText(std::string(student_source), "solution"));
  } catch (const js::SyntaxError& e) {
    MakeVerdict v;
    v.compile_error = true;
    v.diagnostic = e.located();
    return v;
  }
  return check_tests(program, tests, budget);
}

MakeVerdict check_tests(const js::ProgramAst& student, const std::vector<TestSpec>& tests, std::uint64_t budget) {
  MakeVerdict verdict;
  for (const auto& t : tests) {
    TestResult r;
    r.eval = t.eval;
    auto fail = [&](const std::string& why) {
      r.passed = false;
      r.feedback = t.feedback;
      if (!why.empty()) r.feedback += " (" + why + ")";
    };
    auto expected = evaluate_literal(t.expected);
    js::ExprPtr expr;
    try {
      expr = js::parse_expression_text(t.eval, student.next_id);
    } catch (const js::SyntaxError& e) {
      fail("test expression does not parse: " + e.located());
      verdict.results.push_back(std::move(r));
      continue;
    }
    if (!expected) {
      fail("expected value is not a literal: " + t.expected);
      verdict.results.push_back(std::move(r));
      continue;
    }

    detail::Interpreter in(EvalOptions{budget, false});
    try {
      in.run(student);
      detail::Value actual = in.eval_top_level(*expr);
      r.actual = detail::render(actual);
      if (detail::deep_equals(actual, expected->value)) {
        r.passed = true;
      } else {
        fail("");
      }
    } catch (const detail::RuntimeError& e) {
      fail(e.message);
    } catch (const detail::BudgetExhausted&) {
      fail("step budget of " + std::to_string(budget) + " exceeded");
    } catch (const std::exception& e) {
      fail(e.what());
    }
    verdict.results.push_back(std::move(r));
  }
  return verdict;
}

Json to_json(const MakeVerdict& verdict) {
  Json out;
  out["compile_error"] = verdict.compile_error;
  if (verdict.compile_error) out["diagnostic"] = verdict.diagnostic;
  Json results = Json::array();
  for (const auto& r : verdict.results) {
    Json j{{"eval", r.eval}, {"passed", r.passed}};
    j["actual"] = r.actual ? Json(*r.actual) : Json(nullptr);
    if (!r.passed) j["feedback"] = r.feedback;
    results.push_back(std::move(j));
  }
  out["results"] = std::move(results);
  out["all_passed"] = verdict.all_passed();
  return out;
}

}  // namespace codetales::trace
