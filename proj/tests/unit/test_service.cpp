#include "doctest.h"

#include <random>
#include <set>
#include <thread>

#include "codetales/service/service.hpp"
#include "httplib.h"
#include "../support/responders.hpp"

using namespace codetales;
using service::Json;
namespace fs = std::filesystem;

namespace {

const fs::path kSample = fs::path(CODETALES_SOURCE_DIR) / "content" / "sample";

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("codetales-service-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

const content::ContentBundle& sample() {
  static const content::ContentBundle bundle = [] {
    auto r = content::load(kSample);
    REQUIRE(r.ok());
    return *r.bundle;
  }();
  return bundle;
}

struct Client {
  service::Api& api;
  service::Response get(const std::string& path, std::map<std::string, std::string> q = {}) {
    return api.handle("GET", path, q, "");
  }
  service::Response post(const std::string& path, const Json& body) { return api.handle("POST", path, {}, body.dump()); }
  std::string create(const std::string& name) {
    auto r = post("/api/learners", {{"name", name}});
    REQUIRE(r.status == 201);
    return r.body["learner"];
  }
  service::Response page(const std::string& id, const std::string& story, int n) {
    return get("/api/stories/" + story + "/pages/" + std::to_string(n), {{"learner", id}});
  }
  service::Response attempt(const std::string& id, const std::string& ex, const Json& response) {
    return post("/api/attempts", {{"learner", id}, {"exercise", ex}, {"response", response}});
  }
  Json solution(const std::string& id, const std::string& ex) {
    auto r = grade::solution_response(api.engine().instance(id, ex));
    if (r.is_null()) r = {{"source", std::get<grade::MakePayload>(sample().exercises.at(ex).payload).reference}};
    return r;
  }
};

// Keys that would give away an answer if they reached a learner.
void check_answerless(const Json& j, const std::string& where) {
  static const std::set<std::string> forbidden{"correct", "correct_index", "correct_indent", "answer", "answers",
                                               "expected", "explanation", "canonical", "source_span", "subject",
                                               "seed", "reference", "mutants", "solution"};
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      CHECK_MESSAGE(!forbidden.count(k), where << ": key '" << k << "'");
      check_answerless(v, where + "." + k);
    }
    if (j.contains("type") && j["type"] == "blanks") CHECK_FALSE(j.contains("source"));
  } else if (j.is_array()) {
    for (const auto& v : j) check_answerless(v, where);
  }
}

}  // namespace

TEST_CASE("learners") {
  TempDir data;
  service::Api api(sample(), data.path);
  Client c{api};
  auto id = c.create("Amira");
  CHECK(service::ProfileStore::valid_id(id));
  CHECK(c.create("Amira") != id);
  auto p = c.get("/api/learners/" + id);
  CHECK(p.status == 200);
  CHECK(p.body["display_name"] == "Amira");
  CHECK(p.body["content_version"] == "2026.1");
  check_answerless(p.body, "profile");

  CHECK(c.get("/api/learners/0123456789abcdef0123456789abcdef").status == 404);
  CHECK(c.get("/api/learners/..%2F..%2Fetc").status == 404);
  CHECK(c.post("/api/learners", Json::object()).status == 400);
  CHECK(c.post("/api/learners", {{"name", 3}}).status == 400);
  CHECK(c.post("/api/learners", {{"name", "x"}, {"admin", true}}).status == 400);
  CHECK(api.handle("POST", "/api/learners", {}, "{not json").status == 400);
  CHECK(c.get("/api/nope").status == 404);
  CHECK(c.get("/api/graph").body["nodes"].size() == sample().graph.nodes.size());
}

TEST_CASE("story list and locks") {
  TempDir data;
  service::Api api(sample(), data.path);
  Client c{api};
  auto id = c.create("Amira");
  auto r = c.get("/api/stories", {{"learner", id}});
  REQUIRE(r.status == 200);
  const auto& list = r.body["stories"];
  REQUIRE(list.size() == 3);
  CHECK(list[0]["status"] == "unlocked");
  CHECK(list[1]["status"] == "locked");
  CHECK(list[1]["missing"] == Json::array({"variables", "operators", "strings"}));
  check_answerless(r.body, "stories");
  CHECK(c.get("/api/stories", {{"learner", "0123456789abcdef0123456789abcdef"}}).status == 404);
  CHECK(c.get("/api/stories").status == 400);

  auto locked = c.page(id, "market-loops", 1);
  CHECK(locked.status == 403);
  CHECK(locked.body["error"]["missing"] == Json::array({"variables", "operators", "strings"}));
  CHECK(c.page(id, "first-day", 99).status == 404);
  CHECK(c.get("/api/stories/first-day/pages/abc", {{"learner", id}}).status == 404);
  CHECK(c.page(id, "nope", 1).status == 404);
}

TEST_CASE("pages, attempts and reveal") {
  TempDir data;
  service::Api api(sample(), data.path);
  Client c{api};
  auto id = c.create("Amira");

  auto p2 = c.page(id, "first-day", 2);
  REQUIRE(p2.status == 200);
  CHECK(p2.body["exercise"]["body"]["type"] == "predict");
  CHECK(c.page(id, "first-day", 2).body.dump() == p2.body.dump());
  CHECK(c.page(id, "first-day", 3).status == 409);
  CHECK(c.page(id, "first-day", 3).body["error"]["code"] == "blocked");

  CHECK(c.attempt(id, "fd-run-bus", {{"cells", Json::object()}}).status == 409);
  CHECK(c.attempt(id, "fd-predict-greeting", {{"cells", Json::object()}}).status == 400);
  CHECK(c.post("/api/attempts", {{"learner", id}, {"exercise", "fd-predict-greeting"}}).status == 400);
  CHECK(c.attempt(id, "no-such", {{"choice", 0}}).status == 404);

  auto ok = c.attempt(id, "fd-predict-greeting", c.solution(id, "fd-predict-greeting"));
  REQUIRE(ok.status == 200);
  CHECK(ok.body["verdict"]["correct"] == true);
  CHECK(ok.body["mastery_delta"] == Json::array({"strings", "variables"}));

  REQUIRE(c.page(id, "first-day", 3).status == 200);
  const auto inst = api.engine().instance(id, "fd-run-bus");
  Json last;
  for (int i = 0; i < 3; ++i) last = c.attempt(id, "fd-run-bus", testing::wrong_response(inst)).body;
  CHECK(last["verdict"]["correct"] == false);
  CHECK(last["reveal_available"] == true);
  CHECK(c.post("/api/reveal", {{"learner", id}, {"exercise", "fd-predict-greeting"}}).status == 409);
  auto rev = c.post("/api/reveal", {{"learner", id}, {"exercise", "fd-run-bus"}});
  REQUIRE(rev.status == 200);
  CHECK(rev.body["solution"] == grade::solution_response(inst));

  for (int n = 4; n <= 7; ++n) {
    auto page = c.page(id, "first-day", n);
    REQUIRE(page.status == 200);
    const std::string ex = page.body["exercise"]["exercise"];
    if (ex == "fd-make-initials") {
      auto bad = c.attempt(id, ex, {{"source", "let initials = ;"}});
      CHECK(bad.body["verdict"]["detail"]["compile_error"] == true);
      CHECK(bad.body["verdict"]["correct"] == false);
    }
    CHECK(c.attempt(id, ex, c.solution(id, ex)).body["verdict"]["correct"] == true);
  }
  auto prof = c.get("/api/learners/" + id).body;
  CHECK(prof["mastery"]["variables"] == 5);
  CHECK(prof["progress"]["variables"]["mastered"] == true);
}

TEST_CASE("learner endpoints never carry answer keys") {
  TempDir data;
  service::Api api(sample(), data.path);
  Client c{api};
  auto id = c.create("Walker");
  for (const auto& s : sample().stories) {
    for (int n = 1; n <= static_cast<int>(s.pages.size()); ++n) {
      auto page = c.page(id, s.id, n);
      REQUIRE_MESSAGE(page.status == 200, s.id << " " << n << " " << page.body.dump());
      check_answerless(page.body, s.id + "/" + std::to_string(n));
      if (page.body["exercise"].is_null()) continue;
      const std::string ex = page.body["exercise"]["exercise"];
      REQUIRE(c.attempt(id, ex, c.solution(id, ex)).body["verdict"]["correct"] == true);
    }
    check_answerless(c.get("/api/stories", {{"learner", id}}).body, "stories");
    check_answerless(c.get("/api/learners/" + id).body, "profile");
  }
  auto list = c.get("/api/stories", {{"learner", id}}).body["stories"];
  for (const auto& s : list) CHECK(s["status"] == "completed");
}

TEST_CASE("profiles survive a new process") {
  TempDir data;
  std::string id;
  Json before;
  {
    service::Api api(sample(), data.path);
    Client c{api};
    id = c.create("Amira");
    c.page(id, "first-day", 2);
    c.attempt(id, "fd-predict-greeting", c.solution(id, "fd-predict-greeting"));
    before = c.get("/api/learners/" + id).body;
  }
  service::Api again(sample(), data.path);
  Client c{again};
  auto after = c.get("/api/learners/" + id).body;
  CHECK(after == before);
  CHECK(after["mastery"]["strings"] == 1);
  int files = 0;
  for (const auto& e : fs::directory_iterator(data.path)) {
    CHECK(e.path().extension() == ".json");
    ++files;
  }
  CHECK(files == 1);

  std::ofstream(data.path / (id + ".json")) << "{ truncated";
  CHECK(c.get("/api/learners/" + id).status == 500);
}

TEST_CASE("concurrent attempts do not lose updates") {
  TempDir data;
  service::Api api(sample(), data.path);
  Client c{api};
  std::vector<std::string> ids;
  for (int i = 0; i < 4; ++i) {
    ids.push_back(c.create("L" + std::to_string(i)));
    c.page(ids.back(), "first-day", 2);
  }
  const auto wrong = Json{{"choice", 0}};
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      const auto& id = ids[t % ids.size()];
      auto inst = api.engine().instance(id, "fd-predict-greeting");
      auto resp = testing::wrong_response(inst);
      for (int k = 0; k < 10; ++k) api.handle("POST", "/api/attempts", {},
                                              Json{{"learner", id}, {"exercise", "fd-predict-greeting"}, {"response", resp}}.dump());
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& id : ids) {
    auto p = c.get("/api/learners/" + id).body;
    CHECK(p["stories"]["first-day"]["attempts"]["fd-predict-greeting"] == 20);
  }
}

TEST_CASE("http transport") {
  TempDir data, ui;
  std::ofstream(ui.path / "index.html") << "<!doctype html><title>ui</title>";
  service::Api api(sample(), data.path);
  service::Server server(api, {"127.0.0.1", 0, ui.path});
  const int port = server.bind();
  REQUIRE(port > 0);
  std::thread t([&] { server.listen(); });

  httplib::Client http("127.0.0.1", port);
  auto created = http.Post("/api/learners", R"({"name":"Net"})", "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  const std::string id = Json::parse(created->body)["learner"];
  auto list = http.Get("/api/stories?learner=" + id);
  REQUIRE(list);
  CHECK(list->status == 200);
  CHECK(list->get_header_value("Content-Type").find("application/json") == 0);
  auto img = http.Get("/media/bus.svg");
  REQUIRE(img);
  CHECK(img->status == 200);
  CHECK(img->get_header_value("Content-Type") == "image/svg+xml");
  auto index = http.Get("/index.html");
  REQUIRE(index);
  CHECK(index->body.find("ui") != std::string::npos);
  auto missing = http.Get("/api/stories/first-day/pages/1?learner=ffffffffffffffffffffffffffffffff");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  CHECK(Json::parse(missing->body)["error"]["code"] == "unknown-learner");

  server.stop();
  t.join();
}
