#include <iostream>
#include <vector>

#include "codetales/service/service.hpp"

namespace codetales::service {

namespace {

using Query = std::map<std::string, std::string>;

Response error(int status, const std::string& code, const std::string& message) {
  return {status, {{"error", {{"code", code}, {"message", message}}}}};
}

Response unknown_learner(const std::string& id) {
  return error(404, "unknown-learner", "no learner '" + id + "'");
}

int status_of(const std::string& code) {
  if (code == "story-locked") return 403;
  if (code == "blocked" || code == "wrong-page" || code == "reveal-unavailable") return 409;
  return 404;
}

Response story_error(const story::StoryError& e) {
  auto r = error(status_of(e.code()), e.code(), e.what());
  if (e.code() == "story-locked") r.body["error"]["missing"] = e.missing();
  return r;
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : path) {
    if (c == '/') {
      if (!cur.empty()) parts.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(std::move(cur));
  return parts;
}

std::optional<int> page_number(const std::string& s) {
  if (s.empty() || s.size() > 6) return std::nullopt;
  for (char c : s)
    if (c < '0' || c > '9') return std::nullopt;
  return std::stoi(s);
}

struct BodyError {
  std::string message;
};

Json parse_body(const std::string& body) {
  Json j = Json::parse(body, nullptr, false);
  if (j.is_discarded()) throw BodyError{"request body is not valid JSON"};
  if (!j.is_object()) throw BodyError{"request body must be a JSON object"};
  return j;
}

std::string string_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) throw BodyError{std::string("field '") + key + "' must be a string"};
  return j[key].get<std::string>();
}

void only_keys(const Json& j, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) throw BodyError{"unknown field '" + k + "'"};
  }
}

story::StoryEngine::Config engine_config(const content::ContentBundle& b) {
  story::StoryEngine::Config c;
  c.policy.max_attempts_before_reveal = b.manifest.max_attempts_before_reveal;
  c.mastery_threshold = b.manifest.mastery_threshold;
  c.budget = b.manifest.budget;
  return c;
}

}  // namespace

Api::Api(const content::ContentBundle& bundle, std::filesystem::path data_dir)
    : bundle_(bundle),
      engine_(bundle.graph, bundle.stories, bundle.exercises, engine_config(bundle)),
      store_(std::move(data_dir), bundle.manifest.content_version, bundle.manifest.mastery_threshold) {}

std::mutex& Api::learner_mutex(const std::string& id) {
  std::lock_guard<std::mutex> g(table_mutex_);
  auto& m = learner_mutexes_[id];
  if (!m) m = std::make_unique<std::mutex>();
  return *m;
}

Response Api::handle(const std::string& method, const std::string& path, const Query& query,
                     const std::string& body) {
  const auto parts = split_path(path);
  try {
    if (parts.size() < 2 || parts[0] != "api") return error(404, "not-found", "no route for " + path);
    const std::string& head = parts[1];
    if (method == "GET" && parts.size() == 2 && head == "content")
      return {200,
              {{"content_version", bundle_.manifest.content_version},
               {"title", bundle_.manifest.title},
               {"mastery_threshold", bundle_.manifest.mastery_threshold},
               {"max_attempts_before_reveal", bundle_.manifest.max_attempts_before_reveal}}};
    if (method == "GET" && parts.size() == 2 && head == "graph") return {200, curriculum::to_json(bundle_.graph)};
    if (method == "GET" && parts.size() == 2 && head == "stories") return stories(query);
    if (method == "GET" && parts.size() == 5 && head == "stories" && parts[3] == "pages")
      return page(parts[2], parts[4], query);
    if (method == "POST" && parts.size() == 2 && head == "attempts") return attempt(body);
    if (method == "POST" && parts.size() == 2 && head == "reveal") return reveal(body);
    if (method == "POST" && parts.size() == 2 && head == "learners") return create_learner(body);
    if (method == "GET" && parts.size() == 3 && head == "learners") return learner(parts[2]);
    return error(404, "not-found", "no route for " + method + " " + path);
  } catch (const BodyError& e) {
    return error(400, "bad-request", e.message);
  } catch (const story::StoryError& e) {
    return story_error(e);
  } catch (const grade::GradeError& e) {
    if (e.code() == "content-error") return error(500, e.code(), e.what());
    return error(400, e.code(), e.what());
  } catch (const std::exception& e) {
    std::cerr << "error: " << method << " " << path << ": " << e.what() << "\n";
    return error(500, "internal", e.what());
  }
}

Response Api::stories(const Query& query) {
  auto it = query.find("learner");
  if (it == query.end()) return error(400, "bad-request", "query parameter 'learner' is required");
  if (!ProfileStore::valid_id(it->second)) return unknown_learner(it->second);
  std::lock_guard<std::mutex> g(learner_mutex(it->second));
  auto profile = store_.load(it->second);
  if (!profile) return unknown_learner(it->second);
  return {200, {{"stories", engine_.story_list(*profile)}}};
}

Response Api::page(const std::string& story, const std::string& n, const Query& query) {
  auto it = query.find("learner");
  if (it == query.end()) return error(400, "bad-request", "query parameter 'learner' is required");
  auto number = page_number(n);
  if (!number) return error(404, "page-out-of-range", "'" + n + "' is not a page number");
  if (!ProfileStore::valid_id(it->second)) return unknown_learner(it->second);
  std::lock_guard<std::mutex> g(learner_mutex(it->second));
  auto profile = store_.load(it->second);
  if (!profile) return unknown_learner(it->second);
  const int before = profile->stories.count(story) ? profile->stories[story].current_page : 0;
  auto view = engine_.view_page(*profile, story, *number);
  if (profile->stories[story].current_page != before || before == 0) store_.save(*profile);
  return {200, view};
}

Response Api::attempt(const std::string& body) {
  Json j = parse_body(body);
  only_keys(j, {"learner", "exercise", "response"});
  const std::string id = string_field(j, "learner");
  const std::string exercise = string_field(j, "exercise");
  if (!j.contains("response") || !j["response"].is_object()) throw BodyError{"field 'response' must be an object"};
  if (!ProfileStore::valid_id(id)) return unknown_learner(id);
  std::lock_guard<std::mutex> g(learner_mutex(id));
  auto profile = store_.load(id);
  if (!profile) return unknown_learner(id);
  auto result = engine_.submit_attempt(*profile, exercise, j["response"]);
  store_.save(*profile);
  return {200, story::to_json(result)};
}

Response Api::reveal(const std::string& body) {
  Json j = parse_body(body);
  only_keys(j, {"learner", "exercise"});
  const std::string id = string_field(j, "learner");
  const std::string exercise = string_field(j, "exercise");
  if (!ProfileStore::valid_id(id)) return unknown_learner(id);
  std::lock_guard<std::mutex> g(learner_mutex(id));
  auto profile = store_.load(id);
  if (!profile) return unknown_learner(id);
  auto out = engine_.reveal(*profile, exercise);
  store_.save(*profile);
  return {200, out};
}

Response Api::create_learner(const std::string& body) {
  Json j = parse_body(body);
  only_keys(j, {"name"});
  const std::string name = string_field(j, "name");
  if (name.empty() || name.size() > 200) throw BodyError{"field 'name' must have 1 to 200 characters"};
  std::string id;
  do {
    id = ProfileStore::new_id();
  } while (store_.exists(id));
  std::lock_guard<std::mutex> g(learner_mutex(id));
  store_.save(engine_.new_profile(id, name));
  return {201, {{"learner", id}}};
}

Response Api::learner(const std::string& id) {
  if (!ProfileStore::valid_id(id)) return unknown_learner(id);
  std::lock_guard<std::mutex> g(learner_mutex(id));
  auto profile = store_.load(id);
  if (!profile) return unknown_learner(id);
  Json out = story::to_json(*profile);
  out["content_version"] = bundle_.manifest.content_version;
  out["progress"] = curriculum::progress_json(bundle_.graph, profile->mastery);
  return {200, out};
}

}  // namespace codetales::service
