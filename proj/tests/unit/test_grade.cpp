#include "doctest.h"

#include "codetales/grade/grade.hpp"

using namespace codetales;
using grade::ExerciseSpec;
using grade::Json;

namespace {

ExerciseSpec predict_spec() {
  grade::PredictPayload p;
  p.code = "let n = 2;\nn = n * 3;\nconsole.log(n);";
  p.options = {{"2", "", "n was changed on line 2."}, {"5", "", ""}, {"6", "", "Yes, 2 * 3."}, {"23", "", ""}};
  p.correct_index = 2;
  return {"p1", "Guess", "What is printed?", {"variables"}, p};
}

ExerciseSpec make_spec() {
  grade::MakePayload m;
  m.starter = "function double(x) {\n}\n";
  m.tests = {{"double(2)", "4", "double(2) should give 4"}, {"double(-1)", "-2", "negative numbers work too"}};
  m.reference = "function double(x) {\n  return x * 2;\n}\n";
  m.mutants = {{"function double(x) {\n  return x + 2;\n}\n", "negative numbers work too", "adds instead"},
               {"function double(x) {\n}\n", "double(2) should give 4", "no return"}};
  return {"m1", "Double", "Write double.", {"functions"}, m};
}

std::string feedback_text(const grade::Verdict& v) {
  std::string all;
  for (const auto& f : v.feedback) all += f + "\n";
  return all;
}

std::string error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const grade::GradeError& e) {
    return e.code();
  }
  return "";
}

}  // namespace

TEST_CASE("phase names") {
  CHECK(grade::to_string(grade::Phase::Investigate) == "investigate");
  CHECK(grade::phase_from_string("make") == grade::Phase::Make);
  CHECK_FALSE(grade::phase_from_string("Make"));
  CHECK(predict_spec().phase() == grade::Phase::Predict);
  CHECK(make_spec().phase() == grade::Phase::Make);
}

TEST_CASE("predict order is seeded and graded by index") {
  auto spec = predict_spec();
  auto a = grade::materialize(spec, 17);
  CHECK(grade::to_json(a, true).dump() == grade::to_json(grade::materialize(spec, 17), true).dump());
  const auto& p = std::get<grade::PredictInstance>(a.body);
  CHECK(p.options[static_cast<std::size_t>(p.correct)].text == "6");

  CHECK(grade::grade(a, {{"choice", p.correct}}).correct);
  int wrong = (p.correct + 1) % 4;
  auto v = grade::grade(a, {{"choice", wrong}});
  CHECK_FALSE(v.correct);
  CHECK_FALSE(v.feedback.empty());

  bool some_order_differs = false;
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto inst = grade::materialize(spec, s);
    some_order_differs |= std::get<grade::PredictInstance>(inst.body).correct != 2;
  }
  CHECK(some_order_differs);
}

TEST_CASE("predict learner view hides the answer") {
  auto j = grade::to_json(grade::materialize(predict_spec(), 3), false);
  CHECK_FALSE(j["body"].contains("correct"));
  CHECK_FALSE(j.contains("seed"));
  for (const auto& o : j["body"]["options"]) CHECK_FALSE(o.contains("explanation"));
}

TEST_CASE("shape mismatch") {
  auto a = grade::materialize(predict_spec(), 1);
  CHECK(error_code([&] { grade::grade(a, Json::object()); }) == "shape-mismatch");
  CHECK(error_code([&] { grade::grade(a, {{"choice", "1"}}); }) == "shape-mismatch");
  CHECK(error_code([&] { grade::grade(a, {{"choice", 9}}); }) == "shape-mismatch");
  CHECK(error_code([&] { grade::grade(a, {{"source", "x"}}); }) == "shape-mismatch");
}

TEST_CASE("modify blanks embeds the generator instance") {
  grade::ModifyPayload m;
  m.source = "let x = 1;\nlet y = x + 1;";
  m.difficulty = 5;
  ExerciseSpec spec{"b1", "Blanks", "Fill in.", {"variables"}, m};
  auto inst = grade::materialize(spec, 4);
  REQUIRE(std::holds_alternative<gen::BlanksInstance>(inst.body));
  CHECK(grade::to_json(inst, false)["body"]["type"] == "blanks");
  CHECK(grade::grade(inst, grade::solution_response(inst)).correct);
  auto v = grade::grade(inst, {{"blanks", {{"b1", "q"}}}});
  CHECK_FALSE(v.correct);
  CHECK(feedback_text(v).find("b1") != std::string::npos);
}

TEST_CASE("modify parsons") {
  grade::ModifyPayload m;
  m.kind = grade::ModifyKind::Parsons;
  m.source = "let i = 0;\nwhile (i < 3) {\n  i++;\n}\n";
  ExerciseSpec spec{"pa", "Order", "Put in order.", {"loops"}, m};
  auto inst = grade::materialize(spec, 2);
  CHECK(grade::grade(inst, grade::solution_response(inst)).correct);
  auto resp = grade::solution_response(inst);
  resp["arrangement"][2]["indent"] = 0;
  auto v = grade::grade(inst, resp);
  CHECK_FALSE(v.correct);
  CHECK(feedback_text(v).find("position 3") != std::string::npos);
}

TEST_CASE("run and investigate") {
  ExerciseSpec run{"r1", "Run", "Fill the table.", {"variables"}, grade::RunPayload{"let a = 1;\na = a + 1;", 1.0}};
  auto r = grade::materialize(run, 5);
  CHECK(grade::grade(r, grade::solution_response(r)).correct);
  auto v = grade::grade(r, {{"cells", {{"m1", "7"}}}});
  CHECK_FALSE(v.correct);
  CHECK(feedback_text(v).find("`a`") != std::string::npos);

  ExerciseSpec inv{"i1", "Look", "Answer.", {"loops"},
                   grade::InvestigatePayload{"let t = 0;\nfor (let i = 0; i < 3; i++) {\n  t += i;\n}\n", 3}};
  auto q = grade::materialize(inv, 5);
  CHECK(grade::grade(q, grade::solution_response(q)).correct);

  const auto& qs = std::get<std::vector<gen::QlcQuestion>>(q.body);
  Json choices = Json::array();
  for (const auto& question : qs) choices.push_back(question.correct_index() == 0 ? 1 : 0);
  auto wrong = grade::grade(q, {{"choices", choices}});
  CHECK_FALSE(wrong.correct);
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const auto& chosen = qs[i].options[static_cast<std::size_t>(choices[i].get<int>())];
    CHECK(feedback_text(wrong).find(chosen.explanation) != std::string::npos);
  }
  CHECK(error_code([&] { grade::grade(q, {{"choices", Json::array({0})}}); }) == "shape-mismatch");
}

TEST_CASE("make grading") {
  auto inst = grade::materialize(make_spec(), 0);
  auto learner = grade::to_json(inst, false);
  CHECK(learner.dump().find("\"expected\"") == std::string::npos);
  CHECK(learner["body"]["starter"] == "function double(x) {\n}\n");

  CHECK(grade::grade(inst, {{"source", std::get<grade::MakePayload>(make_spec().payload).reference}}).correct);

  auto v = grade::grade(inst, {{"source", "function double(x) {\n}\n"}});
  CHECK_FALSE(v.correct);
  CHECK(feedback_text(v).find("double(2) should give 4") != std::string::npos);
  CHECK(feedback_text(v).find("negative numbers work too") != std::string::npos);

  auto broken = grade::grade(inst, {{"source", "function double(x) {"}});
  CHECK_FALSE(broken.correct);
  CHECK(broken.detail["compile_error"] == true);
}

TEST_CASE("make audit") {
  auto spec = make_spec();
  auto audit = grade::audit_make(std::get<grade::MakePayload>(spec.payload));
  CHECK(audit.reference.all_passed());
  REQUIRE(audit.mutants.size() == 2);
  CHECK(audit.mutants[0].failed);
  CHECK(audit.mutants[0].feedback_surfaced);
  CHECK(audit.ok());

  auto bad = std::get<grade::MakePayload>(spec.payload);
  bad.mutants[0].expect_feedback = "something else";
  CHECK_FALSE(grade::audit_make(bad).ok());
}

TEST_CASE("generator failures become content errors") {
  grade::ModifyPayload m;
  m.kind = grade::ModifyKind::Parsons;
  m.source = "let x = 1;";
  ExerciseSpec spec{"x", "x", "", {"variables"}, m};
  CHECK(error_code([&] { grade::materialize(spec, 0); }) == "content-error");
}
