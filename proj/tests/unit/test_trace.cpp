#include "doctest.h"

#include <chrono>

#include "codetales/js/parser.hpp"
#include "codetales/trace/make_tests.hpp"
#include "codetales/trace/trace.hpp"

using namespace codetales;
using trace::EventKind;
using trace::RunStatusKind;

namespace {

trace::RunOutcome run(std::string text, std::uint64_t budget = trace::kDefaultBudget) {
  return trace::evaluate(js::parse_program(js::SourceText(std::move(text), "test")), {budget, true});
}

std::string binding(const trace::RunOutcome& out, const std::string& name) {
  for (const auto& [n, v] : out.final_bindings)
    if (n == name) return v;
  return "<missing>";
}

}  // namespace

TEST_CASE("empty program") {
  auto out = run("");
  CHECK(out.status.ok());
  CHECK(out.trace.events.empty());
  CHECK(out.output.empty());
  CHECK(trace::project_grid(out.trace).empty());
}

TEST_CASE("capital") {
  auto out = run("let capital = \"Brussels\";");
  REQUIRE(out.trace.events.size() == 1);
  const auto& e = out.trace.events[0];
  CHECK(e.kind == EventKind::Declare);
  CHECK(e.name == "capital");
  CHECK(e.step == 1);
  CHECK(e.line == 1);
  CHECK(e.value == "\"Brussels\"");
  CHECK(out.final_bindings == trace::Bindings{{"capital", "\"Brussels\""}});
}

TEST_CASE("budget exhaustion") {
  auto out = run("let i = 0; while (true) { i = i + 1; }", 1000);
  CHECK(out.status.kind == RunStatusKind::BudgetExceeded);
  std::uint32_t last_write = 0;
  for (const auto& e : out.trace.events)
    if (e.kind == EventKind::Write && e.name == "i") last_write = e.step;
  CHECK(last_write > 0);
  CHECK(last_write <= 1000);
  CHECK(out.steps <= 1000);
}

TEST_CASE("default budget stops an infinite loop quickly") {
  auto start = std::chrono::steady_clock::now();
  auto out = run("while (true) {}");
  auto elapsed = std::chrono::steady_clock::now() - start;
  CHECK(out.status.kind == RunStatusKind::BudgetExceeded);
  CHECK(elapsed < std::chrono::seconds(1));
}

TEST_CASE("grid projection") {
  auto out = run("let a=1; let b=2; a=3;");
  auto grid = trace::project_grid(out.trace);
  REQUIRE(grid.size() == 3);
  CHECK(out.trace.variables == std::vector<std::string>{"a", "b"});
  CHECK(grid[0].cells[0] == "1");
  CHECK_FALSE(grid[0].cells[1].has_value());
  CHECK(grid[2].cells[0] == "3");
  CHECK(grid[2].cells[1] == "2");
}

TEST_CASE("reads never create rows") {
  auto out = run("let a = 1; let b = a + a; console.log(a, b);");
  std::size_t reads = 0;
  for (const auto& e : out.trace.events) reads += e.kind == EventKind::Read;
  CHECK(reads == 4);
  CHECK(trace::project_grid(out.trace).size() == 2);
}

TEST_CASE("compound assignment reads then writes") {
  auto out = run("let x = 1;\nx += 2;");
  REQUIRE(out.trace.events.size() == 3);
  CHECK(out.trace.events[1].kind == EventKind::Read);
  CHECK(out.trace.events[1].value == "1");
  CHECK(out.trace.events[2].kind == EventKind::Write);
  CHECK(out.trace.events[2].value == "3");
  CHECK(out.trace.events[2].line == 2);
}

TEST_CASE("rendering") {
  auto out = run(
      "let a = [1, \"two\", [true, null], {k: 0.5}];\n"
      "let o = {name: \"Ada\", \"full name\": \"Ada L\", n: -0, u: undefined};\n"
      "let f = 1 / 3;\n"
      "let big = 1e21;\n"
      "let small = 0.000001;\n"
      "let tiny = 1e-7;\n"
      "let nan = 0 / 0;\n");
  CHECK(binding(out, "a") == "[1, \"two\", [true, null], {k: 0.5}]");
  CHECK(binding(out, "o") == "{name: \"Ada\", \"full name\": \"Ada L\", n: 0, u: undefined}");
  CHECK(binding(out, "f") == "0.3333333333333333");
  CHECK(binding(out, "big") == "1e+21");
  CHECK(binding(out, "small") == "0.000001");
  CHECK(binding(out, "tiny") == "1e-7");
  CHECK(binding(out, "nan") == "NaN");
}

TEST_CASE("console.log prints strings raw and everything else rendered") {
  auto out = run("console.log(\"hi\", 1, [\"a\"], true);\nconsole.log();");
  CHECK(out.output == std::vector<std::string>{"hi 1 [\"a\"] true", ""});
}

TEST_CASE("runtime errors") {
  auto check = [](std::string src, std::string msg, int line) {
    auto out = run(std::move(src));
    CHECK(out.status.kind == RunStatusKind::RuntimeError);
    CHECK(out.status.message == msg);
    CHECK(out.status.line == line);
  };
  check("let a = 1;\nb = a;", "ReferenceError: b is not defined", 2);
  check("const c = 1;\nc = 2;", "TypeError: Assignment to constant variable.", 2);
  check("let n = 5;\nn();", "TypeError: n is not a function", 2);
  check("let o;\nlet v = o.x;", "TypeError: Cannot read properties of undefined (reading 'x')", 2);
  check("x = 1;\nlet x = 2;", "ReferenceError: Cannot access 'x' before initialization", 1);
  check("function f() { return f(); }\nf();", "RangeError: Maximum call stack size exceeded", 1);
}

TEST_CASE("absent property reads undefined") {
  auto out = run("let o = {a: 1};\nlet m = o.b;\nlet e = [1][5];");
  CHECK(out.status.ok());
  CHECK(binding(out, "m") == "undefined");
  CHECK(binding(out, "e") == "undefined");
}

TEST_CASE("functions, closures over top level and recursion") {
  auto out = run(
      "let calls = 0;\n"
      "function fact(n) {\n"
      "  calls++;\n"
      "  if (n <= 1) { return 1; }\n"
      "  return n * fact(n - 1);\n"
      "}\n"
      "let r = fact(5);\n");
  CHECK(out.status.ok());
  CHECK(binding(out, "r") == "120");
  CHECK(binding(out, "calls") == "5");
  CHECK(out.final_bindings.size() == 2);
}

TEST_CASE("array mutation through a parameter is traced on both names") {
  auto out = run("let xs = [1];\nfunction add(list) { list.push(2); }\nadd(xs);");
  CHECK(binding(out, "xs") == "[1, 2]");
  CHECK(trace::fold_top_level(out.trace) == out.final_bindings);
}

TEST_CASE("fold reproduces final bindings with shadowing") {
  auto out = run(
      "let i = 10;\n"
      "var total = 0;\n"
      "for (let i = 0; i < 3; i++) { total += i; }\n"
      "function f(i) { i = i * 2; return i; }\n"
      "let doubled = f(i);\n");
  CHECK(binding(out, "i") == "10");
  CHECK(binding(out, "total") == "3");
  CHECK(binding(out, "doubled") == "20");
  CHECK(trace::fold_top_level(out.trace) == out.final_bindings);
}

TEST_CASE("steps strictly increase") {
  auto out = run("let s = \"\";\nfor (let k = 0; k < 4; k++) { s = s + k; }");
  for (std::size_t i = 0; i < out.trace.events.size(); ++i) CHECK(out.trace.events[i].step == i + 1);
}

TEST_CASE("loop statistics") {
  auto out = run("let n = 0;\nwhile (n < 4) { n++; }\nfor (let j = 0; j < 2; j++) {}");
  REQUIRE(out.loops.size() == 2);
  auto it = out.loops.begin();
  CHECK(it->second.line == 2);
  CHECK(it->second.entries == 1);
  CHECK(it->second.iterations == 4);
  ++it;
  CHECK(it->second.iterations == 2);
}

TEST_CASE("builtins") {
  auto out = run(
      "let a = Math.max(3, 7, 2);\n"
      "let b = \"Hello\".toUpperCase();\n"
      "let c = [3, 1, 2].join(\"-\");\n"
      "let d = (2.345).toFixed(2);\n"
      "let e = \"a,b,c\".split(\",\");\n"
      "let f = parseInt(\"42px\");\n"
      "let g = [1, 2, 3].indexOf(2);\n"
      "let h = \"abc\".length + [1, 2].length;\n"
      "let i = Math.round(2.5) + Math.round(-2.5);\n"
      "let j = Object.keys({x: 1, y: 2});\n"
      "let k = \"5\" * \"2\";\n"
      "let l = \"5\" + 2;\n"
      "let m = 1 == \"1\";\n"
      "let n = (1.005).toFixed(2);\n");
  CHECK(out.status.ok());
  CHECK(binding(out, "a") == "7");
  CHECK(binding(out, "b") == "\"HELLO\"");
  CHECK(binding(out, "c") == "\"3-1-2\"");
  CHECK(binding(out, "d") == "\"2.35\"");
  CHECK(binding(out, "e") == "[\"a\", \"b\", \"c\"]");
  CHECK(binding(out, "f") == "42");
  CHECK(binding(out, "g") == "1");
  CHECK(binding(out, "h") == "5");
  CHECK(binding(out, "i") == "1");
  CHECK(binding(out, "j") == "[\"x\", \"y\"]");
  CHECK(binding(out, "k") == "10");
  CHECK(binding(out, "l") == "\"52\"");
  CHECK(binding(out, "m") == "true");
  CHECK(binding(out, "n") == "\"1.00\"");
}

TEST_CASE("determinism") {
  const std::string src = "let xs = [];\nfor (let i = 0; i < 5; i++) { xs.push(i * i); }\nconsole.log(xs);";
  auto a = trace::to_json(run(src)).dump();
  auto b = trace::to_json(run(src)).dump();
  CHECK(a == b);
}

TEST_CASE("trace JSON shape") {
  auto j = trace::to_json(run("let a = 1;\nconsole.log(a);"));
  CHECK(j["status"] == "ok");
  CHECK(j["events"][0]["kind"] == "declare");
  CHECK(j["events"][0]["value"] == "1");
  CHECK(j["output"][0] == "1");
  CHECK(j["variables"][0] == "a");
  CHECK(j["final_bindings"]["a"] == "1");
  CHECK_FALSE(j.contains("error"));
}

TEST_CASE("check_tests") {
  std::vector<trace::TestSpec> tests{{"add(2, 3)", "5", "add should return the sum"}};
  auto pass = trace::check_tests("function add(a,b){ return a+b; }", tests);
  CHECK_FALSE(pass.compile_error);
  REQUIRE(pass.results.size() == 1);
  CHECK(pass.results[0].passed);
  CHECK(pass.all_passed());

  auto fail = trace::check_tests("function add(a,b){ return a-b; }", tests);
  REQUIRE(fail.results.size() == 1);
  CHECK_FALSE(fail.results[0].passed);
  CHECK(fail.results[0].feedback == "add should return the sum");
  CHECK(fail.failing_feedback() == std::vector<std::string>{"add should return the sum"});

  auto broken = trace::check_tests("let x = ;", tests);
  CHECK(broken.compile_error);
  CHECK(broken.results.empty());
  CHECK_FALSE(broken.diagnostic.empty());
}

TEST_CASE("check_tests compares structure and appends runtime errors") {
  std::vector<trace::TestSpec> tests{
      {"pair(1)", "[1, {twice: 2}]", "pair builds a list"},
      {"missing(1)", "1", "call missing"},
  };
  auto v = trace::check_tests("function pair(n) { return [n, {twice: n * 2}]; }", tests);
  CHECK(v.results[0].passed);
  CHECK_FALSE(v.results[1].passed);
  CHECK(v.results[1].feedback == "call missing (ReferenceError: missing is not defined)");

  auto slow = trace::check_tests("function f() { while (true) {} }", {{"f()", "1", "f must return"}}, 500);
  CHECK(slow.results[0].feedback.find("budget") != std::string::npos);
}

TEST_CASE("canonical_literal") {
  CHECK(trace::canonical_literal("'hi'") == "\"hi\"");
  CHECK(trace::canonical_literal(" 3.50 ") == "3.5");
  CHECK(trace::canonical_literal("[1,2]") == "[1, 2]");
  CHECK(trace::canonical_literal("-0.5") == "-0.5");
  CHECK(trace::canonical_literal("undefined") == "undefined");
  CHECK_FALSE(trace::canonical_literal("x").has_value());
  CHECK_FALSE(trace::canonical_literal("1 +").has_value());
  CHECK_FALSE(trace::canonical_literal("f()").has_value());
}
