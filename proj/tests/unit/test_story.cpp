#include "doctest.h"

#include "codetales/gen/rng.hpp"
#include "codetales/story/story.hpp"
#include "../support/responders.hpp"

using namespace codetales;
using story::StoryError;

namespace {

struct Fixture {
  curriculum::ConceptGraph graph{{{"variables", "Variables", "basics"}, {"loops", "Loops", "flow"}}, {{"variables", "loops"}}};
  story::ExerciseMap exercises;
  std::vector<story::StoryDoc> stories;

  Fixture() {
    grade::PredictPayload p;
    p.code = "let a = 4;\nconsole.log(a + 1);";
    p.options = {{"4", "", ""}, {"5", "", ""}, {"a + 1", "", ""}};
    p.correct_index = 1;
    exercises["guess"] = {"guess", "Guess", "What is printed?", {"variables"}, p};
    exercises["table"] = {"table", "Table", "Fill in.", {"variables"}, grade::RunPayload{"let a = 1;\na = a + 2;", 0.5}};
    grade::MakePayload m;
    m.starter = "let total = 0;\n";
    m.tests = {{"total", "10", "total should be 10"}};
    m.reference = "let total = 0;\nfor (let i = 1; i <= 4; i++) {\n  total += i;\n}\n";
    exercises["sum"] = {"sum", "Sum", "Add 1 to 4.", {"loops", "variables"}, m};

    story::StoryDoc intro{"intro", "Intro", "First steps", {}, {"variables"}, {}};
    intro.pages.push_back({{{story::Block::Kind::Text, "Hello.", ""}}, ""});
    intro.pages.push_back({{{story::Block::Kind::Text, "Guess.", ""}}, "guess"});
    intro.pages.push_back({{{story::Block::Kind::Image, "a map", "media/map.svg"}}, "table"});
    stories.push_back(intro);

    story::StoryDoc loops{"loops", "Loops", "Again and again", {"variables"}, {"loops"}, {}};
    loops.pages.push_back({{{story::Block::Kind::Text, "Loop.", ""}}, "sum"});
    stories.push_back(loops);
  }
};

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const StoryError& e) {
    return e.code();
  }
  return "";
}

}  // namespace

TEST_CASE("seeds are stable") {
  CHECK(story::instance_seed("l1", "guess") == gen::fnv1a64("l1:guess"));
  CHECK(story::instance_seed("l1", "guess") != story::instance_seed("l2", "guess"));
}

TEST_CASE("navigation and blocking") {
  Fixture f;
  story::StoryEngine engine(f.graph, f.stories, f.exercises, {});
  auto learner = engine.new_profile("l1", "Ana");

  auto list = engine.story_list(learner);
  CHECK(list[0]["status"] == "unlocked");
  CHECK(list[1]["status"] == "locked");
  CHECK(list[1]["missing"] == grade::Json::array({"variables"}));
  CHECK(code_of([&] { engine.view_page(learner, "loops", 1); }) == "story-locked");
  CHECK(code_of([&] { engine.view_page(learner, "nope", 1); }) == "unknown-story");
  CHECK(code_of([&] { engine.view_page(learner, "intro", 4); }) == "page-out-of-range");
  CHECK(code_of([&] { engine.view_page(learner, "intro", 0); }) == "page-out-of-range");

  auto p1 = engine.view_page(learner, "intro", 1);
  CHECK(p1["exercise"].is_null());
  CHECK(p1["can_advance"] == true);
  auto p2 = engine.next_page(learner, "intro");
  CHECK(p2["page"] == 2);
  CHECK(p2["exercise"]["phase"] == "predict");
  CHECK(p2["can_advance"] == false);
  CHECK(code_of([&] { engine.next_page(learner, "intro"); }) == "blocked");
  CHECK(code_of([&] { engine.view_page(learner, "intro", 3); }) == "blocked");

  CHECK(engine.view_page(learner, "intro", 2).dump() == p2.dump());
}

TEST_CASE("attempts, mastery and reveal") {
  Fixture f;
  story::StoryEngine engine(f.graph, f.stories, f.exercises, {});
  auto learner = engine.new_profile("l1", "Ana");

  CHECK(code_of([&] { engine.submit_attempt(learner, "guess", {{"choice", 0}}); }) == "wrong-page");
  engine.view_page(learner, "intro", 2);
  auto inst = engine.instance("l1", "guess");

  auto r = engine.submit_attempt(learner, "guess", grade::solution_response(inst));
  CHECK(r.verdict.correct);
  CHECK(r.mastery_delta == std::vector<std::string>{"variables"});
  CHECK(learner.mastery.count("variables") == 1);

  auto again = engine.submit_attempt(learner, "guess", grade::solution_response(inst));
  CHECK(again.verdict.correct);
  CHECK_FALSE(again.verdict.mastery_eligible);
  CHECK(learner.mastery.count("variables") == 1);

  engine.next_page(learner, "intro");
  auto table = engine.instance("l1", "table");
  const auto wrong = testing::wrong_response(table);
  CHECK(code_of([&] { engine.reveal(learner, "table"); }) == "reveal-unavailable");
  CHECK_FALSE(engine.submit_attempt(learner, "table", wrong).reveal_available);
  CHECK_FALSE(engine.submit_attempt(learner, "table", wrong).reveal_available);
  auto third = engine.submit_attempt(learner, "table", wrong);
  CHECK_FALSE(third.verdict.correct);
  CHECK(third.reveal_available);
  CHECK(third.attempts == 3);

  auto revealed = engine.reveal(learner, "table");
  CHECK(revealed["solution"] == grade::solution_response(table));
  auto after = engine.submit_attempt(learner, "table", revealed["solution"]);
  CHECK(after.verdict.correct);
  CHECK_FALSE(after.verdict.mastery_eligible);
  CHECK(after.mastery_delta.empty());
  CHECK(after.story_completed);
  CHECK(engine.story_list(learner)[0]["status"] == "completed");
}

TEST_CASE("unlock delta and make reveal") {
  Fixture f;
  story::StoryEngine::Config cfg;
  cfg.mastery_threshold = 1;
  story::StoryEngine engine(f.graph, f.stories, f.exercises, cfg);
  auto learner = engine.new_profile("l9", "Bo");
  engine.view_page(learner, "intro", 2);
  auto r = engine.submit_attempt(learner, "guess", grade::solution_response(engine.instance("l9", "guess")));
  CHECK(r.unlocked_delta == std::vector<std::string>{"loops"});

  engine.view_page(learner, "loops", 1);
  auto bad = engine.submit_attempt(learner, "sum", {{"source", "let total = 1;"}});
  CHECK_FALSE(bad.verdict.correct);
  CHECK(bad.verdict.feedback == std::vector<std::string>{"total should be 10"});
  engine.submit_attempt(learner, "sum", {{"source", "("}});
  engine.submit_attempt(learner, "sum", {{"source", "("}});
  auto sol = engine.reveal(learner, "sum");
  CHECK(sol["solution"]["source"] == std::get<grade::MakePayload>(f.exercises["sum"].payload).reference);
  CHECK(learner.stories["loops"].completed);
}

TEST_CASE("always wrong responder finishes every story") {
  Fixture f;
  story::StoryEngine::Config cfg;
  cfg.mastery_threshold = 1;
  story::StoryEngine engine(f.graph, f.stories, f.exercises, cfg);
  auto learner = engine.new_profile("w", "Wrong");
  learner.mastery.counts["variables"] = 1;
  for (const auto& s : f.stories) {
    for (int n = 1; n <= static_cast<int>(s.pages.size()); ++n) {
      auto page = engine.view_page(learner, s.id, n);
      if (page["exercise"].is_null()) continue;
      const std::string ex = page["exercise"]["exercise"];
      story::AttemptResult r;
      do {
        r = engine.submit_attempt(learner, ex, testing::wrong_response(engine.instance("w", ex)));
        CHECK_FALSE(r.verdict.correct);
      } while (!r.reveal_available);
      engine.reveal(learner, ex);
    }
    CHECK(learner.stories[s.id].completed);
  }
}

TEST_CASE("profile round trip") {
  Fixture f;
  story::StoryEngine engine(f.graph, f.stories, f.exercises, {});
  auto learner = engine.new_profile("l1", "Ana \"A\" Li");
  engine.view_page(learner, "intro", 2);
  engine.submit_attempt(learner, "guess", {{"choice", 2}});
  learner.stories["intro"].revealed.insert("guess");
  auto j = story::to_json(learner);
  auto back = story::profile_from_json(j);
  CHECK(story::to_json(back).dump() == j.dump());
  CHECK(back.mastery.threshold == 3);
  CHECK_THROWS_AS(story::profile_from_json(grade::Json::object()), std::runtime_error);
  j["mastery"]["variables"] = -1;
  CHECK_THROWS_AS(story::profile_from_json(j), std::runtime_error);
}

TEST_CASE("primm order") {
  Fixture f;
  CHECK(story::validate_primm_order(f.stories[0], f.exercises).empty());
  story::StoryDoc empty{"e", "E", "", {}, {}, {}};
  CHECK(story::validate_primm_order(empty, f.exercises).empty());

  story::StoryDoc backwards{"b", "B", "", {}, {}, {}};
  for (const char* ex : {"", "sum", "", "", "guess"}) backwards.pages.push_back({{}, ex});
  auto w = story::validate_primm_order(backwards, f.exercises);
  REQUIRE(w.size() == 1);
  CHECK(w[0].find("'sum' on page 2") != std::string::npos);
  CHECK(w[0].find("'guess' on page 5") != std::string::npos);
}
