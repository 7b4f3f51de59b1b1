#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "codetales/gen/blanks.hpp"
#include "codetales/gen/parsons.hpp"
#include "codetales/gen/qlc.hpp"
#include "codetales/gen/trace_fill.hpp"
#include "codetales/trace/make_tests.hpp"

namespace codetales::grade {

using Json = nlohmann::ordered_json;

/// PRIMM phases in teaching order.
enum class Phase { Predict, Run, Investigate, Modify, Make };
std::string_view to_string(Phase phase);
std::optional<Phase> phase_from_string(std::string_view text);
inline int phase_index(Phase p) { return static_cast<int>(p); }

enum class ModifyKind { Blanks, Parsons };
std::string_view to_string(ModifyKind kind);

struct PredictOption {
  std::string text;
  std::string image;  // content-relative path, may be empty
  std::string explanation;
};

struct PredictPayload {
  std::string code;
  std::vector<PredictOption> options;
  int correct_index = 0;
};

struct RunPayload {
  std::string source;
  double mask_fraction = 0.3;
};

struct InvestigatePayload {
  std::string source;
  int count = 3;
};

struct ModifyPayload {
  ModifyKind kind = ModifyKind::Blanks;
  std::string source;
  int difficulty = 3;
  std::vector<std::string> distractors;
  int block_size = 1;
  std::vector<int> groups;
};

struct Mutant {
  std::string source;
  /// Feedback string of the test this mutant is meant to fail.
  std::string expect_feedback;
  std::string note;
};

struct MakePayload {
  std::string starter;
  std::vector<trace::TestSpec> tests;
  std::string reference;
  std::vector<Mutant> mutants;
};

using Payload = std::variant<PredictPayload, RunPayload, InvestigatePayload, ModifyPayload, MakePayload>;

struct ExerciseSpec {
  std::string id;
  std::string title;
  std::string prompt;
  std::vector<std::string> concepts;
  Payload payload;

  Phase phase() const { return static_cast<Phase>(payload.index()); }
};

class GradeError : public std::runtime_error {
 public:
  GradeError(std::string code, const std::string& message) : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

struct PredictInstance {
  std::string code;
  std::vector<PredictOption> options;  // presented order
  int correct = 0;                     // presented index
};

struct MakeInstance {
  std::string starter;
  std::vector<trace::TestSpec> tests;
};

using InstanceBody = std::variant<PredictInstance, gen::TraceFillInstance, std::vector<gen::QlcQuestion>,
                                  gen::BlanksInstance, gen::ParsonsInstance, MakeInstance>;

struct ExerciseInstance {
  std::string exercise_id;
  Phase phase = Phase::Predict;
  std::string title;
  std::string prompt;
  std::uint64_t seed = 0;
  std::uint64_t budget = trace::kDefaultBudget;
  InstanceBody body;
};

struct Verdict {
  bool correct = false;
  Json detail = Json::object();
  std::vector<std::string> feedback;
  bool mastery_eligible = true;
};

}  // namespace codetales::grade
