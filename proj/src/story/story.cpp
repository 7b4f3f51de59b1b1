#include "codetales/story/story.hpp"

#include <algorithm>

#include "codetales/gen/rng.hpp"

namespace codetales::story {

namespace {

Json string_set(const std::set<std::string>& s) {
  Json out = Json::array();
  for (const auto& x : s) out.push_back(x);
  return out;
}

}  // namespace

Json to_json(const LearnerProfile& profile) {
  Json mastery = Json::object();
  for (const auto& [c, n] : profile.mastery.counts) mastery[c] = n;
  Json stories = Json::object();
  for (const auto& [id, p] : profile.stories) {
    Json attempts = Json::object();
    for (const auto& [e, n] : p.attempts) attempts[e] = n;
    stories[id] = {{"current_page", p.current_page},
                   {"attempts", std::move(attempts)},
                   {"solved", string_set(p.solved)},
                   {"revealed", string_set(p.revealed)},
                   {"completed", p.completed}};
  }
  return {{"id", profile.id},
          {"display_name", profile.display_name},
          {"mastery", std::move(mastery)},
          {"stories", std::move(stories)}};
}

LearnerProfile profile_from_json(const Json& j, int mastery_threshold) {
  try {
    LearnerProfile p;
    p.id = j.at("id").get<std::string>();
    p.display_name = j.at("display_name").get<std::string>();
    p.mastery.threshold = mastery_threshold;
    for (const auto& [c, n] : j.at("mastery").items()) {
      int count = n.get<int>();
      if (count < 0) throw std::runtime_error("negative mastery count for '" + c + "'");
      p.mastery.counts[c] = count;
    }
    for (const auto& [id, s] : j.at("stories").items()) {
      StoryProgress sp;
      sp.current_page = s.at("current_page").get<int>();
      for (const auto& [e, n] : s.at("attempts").items()) sp.attempts[e] = n.get<int>();
      for (const auto& e : s.at("solved")) sp.solved.insert(e.get<std::string>());
      for (const auto& e : s.at("revealed")) sp.revealed.insert(e.get<std::string>());
      sp.completed = s.at("completed").get<bool>();
      p.stories[id] = std::move(sp);
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed profile: ") + e.what());
  }
}

Json to_json(const AttemptResult& r) {
  return {{"story", r.story},
          {"verdict", grade::to_json(r.verdict)},
          {"attempts", r.attempts},
          {"reveal_available", r.reveal_available},
          {"mastery_delta", r.mastery_delta},
          {"unlocked_delta", r.unlocked_delta},
          {"story_completed", r.story_completed}};
}

std::uint64_t instance_seed(const std::string& learner, const std::string& exercise) {
  return gen::fnv1a64(learner + ":" + exercise);
}

std::vector<std::string> validate_primm_order(const StoryDoc& story, const ExerciseMap& exercises) {
  std::vector<std::string> warnings;
  int latest = -1;
  std::string latest_id;
  int latest_page = 0;
  for (std::size_t i = 0; i < story.pages.size(); ++i) {
    const auto& ex = story.pages[i].exercise;
    if (ex.empty()) continue;
    auto it = exercises.find(ex);
    if (it == exercises.end()) continue;
    int phase = grade::phase_index(it->second.phase());
    const int page = static_cast<int>(i) + 1;
    if (phase < latest) {
      warnings.push_back("story '" + story.id + "': " + std::string(grade::to_string(it->second.phase())) +
                         " exercise '" + ex + "' on page " + std::to_string(page) + " comes after " +
                         std::string(grade::to_string(static_cast<grade::Phase>(latest))) + " exercise '" +
                         latest_id + "' on page " + std::to_string(latest_page));
    } else {
      latest = phase;
      latest_id = ex;
      latest_page = page;
    }
  }
  return warnings;
}

StoryEngine::StoryEngine(const curriculum::ConceptGraph& graph, const std::vector<StoryDoc>& stories,
                         const ExerciseMap& exercises, Config config)
    : graph_(graph), stories_(stories), exercises_(exercises), config_(config) {}

LearnerProfile StoryEngine::new_profile(const std::string& id, const std::string& name) const {
  LearnerProfile p;
  p.id = id;
  p.display_name = name;
  p.mastery.threshold = config_.mastery_threshold;
  return p;
}

const StoryDoc& StoryEngine::story(const std::string& id) const {
  for (const auto& s : stories_)
    if (s.id == id) return s;
  throw StoryError("unknown-story", "no story '" + id + "'");
}

std::map<std::string, curriculum::StoryLock> StoryEngine::locks(const LearnerProfile& profile) const {
  std::vector<curriculum::StoryGate> gates;
  std::set<std::string> completed;
  for (const auto& s : stories_) gates.push_back({s.id, s.required});
  for (const auto& [id, p] : profile.stories)
    if (p.completed) completed.insert(id);
  return curriculum::compute_locks(gates, profile.mastery, completed);
}

std::set<std::string> StoryEngine::unlocked(const LearnerProfile& profile) const {
  std::set<std::string> out;
  for (const auto& [id, lock] : locks(profile))
    if (lock.status != curriculum::LockStatus::Locked) out.insert(id);
  return out;
}

Json StoryEngine::story_list(const LearnerProfile& profile) const {
  auto all = locks(profile);
  Json out = Json::array();
  for (const auto& s : stories_) {
    const auto& lock = all.at(s.id);
    Json j{{"id", s.id},
           {"title", s.title},
           {"summary", s.summary},
           {"status", curriculum::to_string(lock.status)},
           {"required", s.required},
           {"missing", lock.missing},
           {"pages", s.pages.size()}};
    auto it = profile.stories.find(s.id);
    j["current_page"] = it == profile.stories.end() ? 1 : it->second.current_page;
    out.push_back(std::move(j));
  }
  return out;
}

void StoryEngine::require_unlocked(const LearnerProfile& profile, const StoryDoc& story) const {
  const auto all = locks(profile);
  const auto& lock = all.at(story.id);
  if (lock.status == curriculum::LockStatus::Locked) {
    std::string list;
    for (const auto& m : lock.missing) list += (list.empty() ? "" : ", ") + m;
    throw StoryError("story-locked", "story '" + story.id + "' needs: " + list, lock.missing);
  }
}

grade::ExerciseInstance StoryEngine::instance(const std::string& learner, const std::string& exercise) const {
  auto it = exercises_.find(exercise);
  if (it == exercises_.end()) throw StoryError("unknown-exercise", "no exercise '" + exercise + "'");
  return grade::materialize(it->second, instance_seed(learner, exercise), config_.budget);
}

bool StoryEngine::reveal_available(const StoryProgress& progress, const std::string& exercise) const {
  if (progress.satisfied(exercise)) return false;
  auto it = progress.attempts.find(exercise);
  return it != progress.attempts.end() && it->second >= config_.policy.max_attempts_before_reveal;
}

Json StoryEngine::page_json(const LearnerProfile& profile, const StoryDoc& story, int n) const {
  const Page& page = story.pages[static_cast<std::size_t>(n - 1)];
  Json blocks = Json::array();
  for (const auto& b : page.blocks) {
    if (b.kind == Block::Kind::Text) blocks.push_back({{"type", "text"}, {"text", b.text}});
    else blocks.push_back({{"type", "image"}, {"src", b.image}, {"alt", b.text}});
  }
  const StoryProgress empty;
  auto pit = profile.stories.find(story.id);
  const StoryProgress& progress = pit == profile.stories.end() ? empty : pit->second;

  Json out{{"story", story.id},
           {"page", n},
           {"page_count", story.pages.size()},
           {"blocks", std::move(blocks)}};
  if (page.exercise.empty()) {
    out["exercise"] = nullptr;
    out["can_advance"] = n < static_cast<int>(story.pages.size());
  } else {
    const auto& ex = page.exercise;
    auto inst = instance(profile.id, ex);
    auto ait = progress.attempts.find(ex);
    out["exercise"] = grade::to_json(inst, false);
    out["exercise_state"] = {{"attempts", ait == progress.attempts.end() ? 0 : ait->second},
                             {"solved", progress.solved.count(ex) > 0},
                             {"revealed", progress.revealed.count(ex) > 0},
                             {"reveal_available", reveal_available(progress, ex)}};
    out["can_advance"] = progress.satisfied(ex) && n < static_cast<int>(story.pages.size());
  }
  out["completed"] = progress.completed;
  return out;
}

void StoryEngine::update_completion(LearnerProfile& profile, const StoryDoc& story) const {
  auto& progress = profile.stories[story.id];
  if (progress.completed || progress.current_page != static_cast<int>(story.pages.size())) return;
  progress.completed = std::all_of(story.pages.begin(), story.pages.end(),
                                   [&](const Page& p) { return p.exercise.empty() || progress.satisfied(p.exercise); });
}

Json StoryEngine::view_page(LearnerProfile& profile, const std::string& story_id, int n) const {
  const StoryDoc& s = story(story_id);
  require_unlocked(profile, s);
  if (n < 1 || n > static_cast<int>(s.pages.size()))
    throw StoryError("page-out-of-range", "story '" + s.id + "' has " + std::to_string(s.pages.size()) +
                                              " pages, page " + std::to_string(n) + " requested");
  auto& progress = profile.stories[s.id];
  for (int i = 1; i < n; ++i) {
    const auto& ex = s.pages[static_cast<std::size_t>(i - 1)].exercise;
    if (!ex.empty() && !progress.satisfied(ex))
      throw StoryError("blocked", "page " + std::to_string(i) + " of story '" + s.id + "' has an unfinished exercise");
  }
  progress.current_page = n;
  update_completion(profile, s);
  return page_json(profile, s, n);
}

Json StoryEngine::next_page(LearnerProfile& profile, const std::string& story_id) const {
  auto it = profile.stories.find(story_id);
  int current = it == profile.stories.end() ? 1 : it->second.current_page;
  return view_page(profile, story_id, current + 1);
}

std::string StoryEngine::story_on_current_page(const LearnerProfile& profile, const std::string& exercise) const {
  for (const auto& s : stories_) {
    auto it = profile.stories.find(s.id);
    if (it == profile.stories.end()) continue;
    int n = it->second.current_page;
    if (n >= 1 && n <= static_cast<int>(s.pages.size()) && s.pages[static_cast<std::size_t>(n - 1)].exercise == exercise)
      return s.id;
  }
  throw StoryError("wrong-page", "exercise '" + exercise + "' is not on the learner's current page");
}

AttemptResult StoryEngine::submit_attempt(LearnerProfile& profile, const std::string& exercise,
                                          const Json& response) const {
  if (!exercises_.count(exercise)) throw StoryError("unknown-exercise", "no exercise '" + exercise + "'");
  const StoryDoc& s = story(story_on_current_page(profile, exercise));
  require_unlocked(profile, s);
  const auto& spec = exercises_.at(exercise);

  AttemptResult result;
  result.story = s.id;
  result.verdict = grade::grade(instance(profile.id, exercise), response);

  auto before = unlocked(profile);
  auto& progress = profile.stories[s.id];
  const bool credited_before = progress.solved.count(exercise) > 0;
  if (progress.revealed.count(exercise) || credited_before) result.verdict.mastery_eligible = false;
  result.attempts = ++progress.attempts[exercise];

  if (result.verdict.correct) {
    progress.solved.insert(exercise);
    auto next = curriculum::apply_result(profile.mastery, graph_, spec.concepts, true, result.verdict.mastery_eligible);
    for (const auto& [c, n] : next.counts)
      if (n != profile.mastery.count(c)) result.mastery_delta.push_back(c);
    profile.mastery = std::move(next);
  }
  result.reveal_available = reveal_available(progress, exercise);
  update_completion(profile, s);
  result.story_completed = progress.completed;
  for (const auto& id : unlocked(profile))
    if (!before.count(id)) result.unlocked_delta.push_back(id);
  return result;
}

Json StoryEngine::reveal(LearnerProfile& profile, const std::string& exercise) const {
  if (!exercises_.count(exercise)) throw StoryError("unknown-exercise", "no exercise '" + exercise + "'");
  const StoryDoc& s = story(story_on_current_page(profile, exercise));
  auto& progress = profile.stories[s.id];
  if (!progress.revealed.count(exercise)) {
    if (!reveal_available(progress, exercise))
      throw StoryError("reveal-unavailable", "the solution of '" + exercise + "' opens after " +
                                                 std::to_string(config_.policy.max_attempts_before_reveal) +
                                                 " unsuccessful attempts");
    progress.revealed.insert(exercise);
  }
  update_completion(profile, s);

  const auto& spec = exercises_.at(exercise);
  auto inst = instance(profile.id, exercise);
  Json out{{"exercise", exercise}, {"story", s.id}};
  if (const auto* make = std::get_if<grade::MakePayload>(&spec.payload)) {
    out["solution"] = {{"source", make->reference}};
  } else {
    out["solution"] = grade::solution_response(inst);
  }
  out["answers"] = grade::to_json(inst, true)["body"];
  return out;
}

}  // namespace codetales::story
