#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "codetales/curriculum/curriculum.hpp"
#include "codetales/grade/grade.hpp"

namespace codetales::story {

using Json = nlohmann::ordered_json;

struct Block {
  enum class Kind { Text, Image };
  Kind kind = Kind::Text;
  std::string text;   // paragraph, or alt text for images
  std::string image;  // content-relative path
};

struct Page {
  std::vector<Block> blocks;
  std::string exercise;  // empty when the page has none
};

struct StoryDoc {
  std::string id;
  std::string title;
  std::string summary;
  std::vector<std::string> required;
  std::vector<std::string> taught;
  std::vector<Page> pages;
};

using ExerciseMap = std::map<std::string, grade::ExerciseSpec>;

struct StoryProgress {
  int current_page = 1;  // 1-based
  std::map<std::string, int> attempts;
  std::set<std::string> solved;
  std::set<std::string> revealed;
  bool completed = false;

  bool satisfied(const std::string& exercise) const { return solved.count(exercise) || revealed.count(exercise); }
};

struct LearnerProfile {
  std::string id;
  std::string display_name;
  curriculum::MasteryState mastery;
  std::map<std::string, StoryProgress> stories;
};

Json to_json(const LearnerProfile& profile);
/// Throws std::runtime_error on malformed documents. The mastery threshold
/// is deployment configuration and is not stored.
LearnerProfile profile_from_json(const Json& j, int mastery_threshold = curriculum::kDefaultMasteryThreshold);

struct AttemptPolicy {
  int max_attempts_before_reveal = 3;
};

class StoryError : public std::runtime_error {
 public:
  StoryError(std::string code, const std::string& message, std::vector<std::string> missing = {})
      : std::runtime_error(message), code_(std::move(code)), missing_(std::move(missing)) {}
  /// unknown-story, unknown-exercise, story-locked, page-out-of-range,
  /// blocked, wrong-page, reveal-unavailable
  const std::string& code() const noexcept { return code_; }
  const std::vector<std::string>& missing() const noexcept { return missing_; }

 private:
  std::string code_;
  std::vector<std::string> missing_;
};

struct AttemptResult {
  std::string story;
  grade::Verdict verdict;
  int attempts = 0;
  bool reveal_available = false;
  std::vector<std::string> mastery_delta;   // concepts whose count went up
  std::vector<std::string> unlocked_delta;  // stories newly unlocked
  bool story_completed = false;
};

Json to_json(const AttemptResult& result);

/// Seed of a learner's instance of an exercise: FNV-1a of "learner:exercise".
std::uint64_t instance_seed(const std::string& learner, const std::string& exercise);

/// One warning per exercise whose PRIMM phase comes before the latest phase
/// already seen earlier in the story.
std::vector<std::string> validate_primm_order(const StoryDoc& story, const ExerciseMap& exercises);

class StoryEngine {
 public:
  struct Config {
    AttemptPolicy policy;
    int mastery_threshold = curriculum::kDefaultMasteryThreshold;
    std::uint64_t budget = trace::kDefaultBudget;
  };

  /// The engine keeps references; the content must outlive it.
  StoryEngine(const curriculum::ConceptGraph& graph, const std::vector<StoryDoc>& stories,
              const ExerciseMap& exercises, Config config);

  const Config& config() const noexcept { return config_; }
  const std::vector<StoryDoc>& stories() const noexcept { return stories_; }

  LearnerProfile new_profile(const std::string& id, const std::string& name) const;

  std::map<std::string, curriculum::StoryLock> locks(const LearnerProfile& profile) const;
  std::set<std::string> unlocked(const LearnerProfile& profile) const;
  Json story_list(const LearnerProfile& profile) const;

  /// Page `n` (1-based) becomes the learner's current page. Throws
  /// story-locked, page-out-of-range or blocked (an earlier exercise is
  /// neither solved nor revealed).
  Json view_page(LearnerProfile& profile, const std::string& story, int n) const;
  /// Advances from the current page.
  Json next_page(LearnerProfile& profile, const std::string& story) const;

  grade::ExerciseInstance instance(const std::string& learner, const std::string& exercise) const;

  /// Grades a response to the exercise on the learner's current page of a
  /// story. Throws wrong-page when no current page shows it.
  AttemptResult submit_attempt(LearnerProfile& profile, const std::string& exercise, const Json& response) const;

  /// Marks the exercise revealed and returns its solution. Only after
  /// `max_attempts_before_reveal` unsuccessful attempts.
  Json reveal(LearnerProfile& profile, const std::string& exercise) const;

  const StoryDoc& story(const std::string& id) const;

 private:
  std::string story_on_current_page(const LearnerProfile& profile, const std::string& exercise) const;
  void require_unlocked(const LearnerProfile& profile, const StoryDoc& story) const;
  Json page_json(const LearnerProfile& profile, const StoryDoc& story, int n) const;
  void update_completion(LearnerProfile& profile, const StoryDoc& story) const;
  bool reveal_available(const StoryProgress& progress, const std::string& exercise) const;

  const curriculum::ConceptGraph& graph_;
  const std::vector<StoryDoc>& stories_;
  const ExerciseMap& exercises_;
  Config config_;
};

}  // namespace codetales::story
