#include "doctest.h"

#include "codetales/js/identifiers.hpp"
#include "codetales/js/parser.hpp"

using namespace codetales::js;

namespace {

ProgramAst parse_text(std::string text) { return parse_program(SourceText(std::move(text), "test")); }

std::string message_for(std::string text) {
  try {
    parse_text(std::move(text));
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("let x = 1;") {
  auto p = parse_text("let x = 1;");
  REQUIRE(p.body.size() == 1);
  const auto* d = p.body[0]->as<VarDecl>();
  REQUIRE(d);
  CHECK(d->kind == DeclKind::Let);
  REQUIRE(d->declarators.size() == 1);
  CHECK(d->declarators[0].name.name == "x");
  const auto* n = d->declarators[0].init->as<NumberLit>();
  REQUIRE(n);
  CHECK(n->value == 1);
  CHECK(dump(p) == "(program (let (x (num 1))))");
}

TEST_CASE("name resolution is not the parser's job") {
  auto p = parse_text("if (x) { }");
  REQUIRE(p.body.size() == 1);
  CHECK(p.body[0]->is<IfStmt>());
}

TEST_CASE("precedence and associativity") {
  CHECK(dump(parse_text("a = b = 1 + 2 * 3 - 4;")) ==
        dump(parse_text("a = (b = ((1 + (2 * 3)) - 4));")));
  CHECK(dump(parse_text("x = !a || b && c === d < e;")) ==
        dump(parse_text("x = (!a) || (b && (c === (d < e)));")));
  CHECK(dump(parse_text("y = -a.b[0](1).c;")) == dump(parse_text("y = -(((a.b)[0])(1)).c;")));
}

TEST_CASE("node ids are unique and stable") {
  const std::string src = "function f(a) { return a * 2; }\nlet r = f(3);\nfor (let i = 0; i < r; i++) { r -= 1; }";
  auto a = parse_text(src);
  auto b = parse_text(src);
  std::vector<NodeId> ids_a, ids_b;
  walk(a, [&](const Stmt& s) { ids_a.push_back(s.id); }, [&](const Expr& e) { ids_a.push_back(e.id); });
  walk(b, [&](const Stmt& s) { ids_b.push_back(s.id); }, [&](const Expr& e) { ids_b.push_back(e.id); });
  CHECK(ids_a == ids_b);
  auto sorted = ids_a;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
  CHECK(sorted.back() < a.next_id);
}

TEST_CASE("spans cover their source") {
  auto p = parse_text("let total = 0;\nwhile (total < 3) {\n  total += 1;\n}");
  const auto& loop = *p.body[1];
  CHECK(loop.span.line == 2);
  CHECK(loop.span.column == 1);
  CHECK(loop.span.end_line == 4);
  CHECK(loop.span.end_column == 2);
}

TEST_CASE("out-of-subset constructs are named") {
  CHECK(message_for("for x in y") .find("for...in") != std::string::npos);
  CHECK(message_for("for (let k in obj) {}").find("for...in") != std::string::npos);
  CHECK(message_for("for (const v of xs) {}").find("for...of") != std::string::npos);
  CHECK(message_for("let f = (a) => a;").find("arrow functions") != std::string::npos);
  CHECK(message_for("let m = a ? b : c;").find("conditional") != std::string::npos);
  CHECK(message_for("while (true) { break; }").find("'break'") != std::string::npos);
  CHECK(message_for("let b = a & 1;").find("bitwise") != std::string::npos);
  CHECK(message_for("class A {}").find("classes") != std::string::npos);
  CHECK(message_for("let f = function () {};").find("function expressions") != std::string::npos);
  CHECK(message_for("let {a} = o;").find("destructuring") != std::string::npos);
  CHECK(message_for("x = new Date();").find("'new'") != std::string::npos);
  CHECK(message_for("let t = typeof x;").find("'typeof'") != std::string::npos);
  CHECK(message_for("return 1;").find("return") != std::string::npos);
}

TEST_CASE("semicolons are required") {
  CHECK_THROWS_AS(parse_text("let x = 1\nlet y = 2;"), ParseError);
  CHECK_THROWS_AS(parse_text("let x = ;"), ParseError);
}

TEST_CASE("parse errors carry a location") {
  try {
    parse_text("let a = 1;\nlet b = (2 + ;");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.span().line == 2);
    CHECK(e.located().rfind("2:", 0) == 0);
  }
}

TEST_CASE("nesting limit") {
  std::string deep = "x = " + std::string(300, '(') + "1" + std::string(300, ')') + ";";
  CHECK_THROWS_AS(parse_text(deep), ParseError);
}

TEST_CASE("collect_identifiers") {
  CHECK(collect_identifiers(parse_text("")).empty());

  auto one = collect_identifiers(parse_text("let x = 1;"));
  REQUIRE(one.size() == 1);
  CHECK(one[0].name == "x");
  CHECK(one[0].role == IdentifierRole::Declaration);

  auto ids = collect_identifiers(parse_text("let x = 1; y = x + x;"));
  REQUIRE(ids.size() == 4);
  std::vector<std::pair<std::string, IdentifierRole>> got;
  for (const auto& o : ids) got.emplace_back(o.name, o.role);
  CHECK(got == std::vector<std::pair<std::string, IdentifierRole>>{{"x", IdentifierRole::Declaration},
                                                                   {"y", IdentifierRole::Reference},
                                                                   {"x", IdentifierRole::Reference},
                                                                   {"x", IdentifierRole::Reference}});
}

TEST_CASE("member properties have their own role") {
  auto ids = collect_identifiers(parse_text("let p = {age: 3};\nconsole.log(p.age);"));
  std::vector<std::string> props;
  for (const auto& o : ids)
    if (o.role == IdentifierRole::MemberProperty) props.push_back(o.name);
  CHECK(props == std::vector<std::string>{"age", "log", "age"});
}

TEST_CASE("function names and parameters are declarations") {
  auto ids = collect_identifiers(parse_text("function add(a, b) {\n  return a + b;\n}"));
  REQUIRE(ids.size() == 5);
  CHECK(ids[0].role == IdentifierRole::Declaration);
  CHECK(ids[1].role == IdentifierRole::Declaration);
  CHECK(ids[2].role == IdentifierRole::Declaration);
  CHECK(ids[3].role == IdentifierRole::Reference);
  CHECK(ids[3].span.line == 2);
}
