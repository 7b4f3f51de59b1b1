#pragma once

#include "codetales/grade/exercise.hpp"

namespace codetales::grade {

/// Throws GradeError("content-error") when the generator rejects the spec.
ExerciseInstance materialize(const ExerciseSpec& spec, std::uint64_t seed,
                             std::uint64_t budget = trace::kDefaultBudget);

/// Response shapes by phase:
///   predict      {"choice": n}
///   run          {"cells": {"m1": "3", ...}}
///   investigate  {"choices": [n, ...]}   one presented index per question
///   modify       {"blanks": {"b1": "x", ...}} or {"arrangement": [{"id", "indent"}, ...]}
///   make         {"source": "..."}
/// Throws GradeError("shape-mismatch") for anything else.
Verdict grade(const ExerciseInstance& instance, const Json& response);

/// A response that solves the instance, built from its own answer key.
Json solution_response(const ExerciseInstance& instance);

/// Learner view omits every answer key; the server view keeps them.
Json to_json(const ExerciseInstance& instance, bool with_answers);
Json to_json(const Verdict& verdict);

struct MutantCheck {
  std::size_t index = 0;
  bool failed = false;
  bool feedback_surfaced = false;
  std::vector<std::string> feedback;
};

struct MakeAudit {
  trace::MakeVerdict reference;
  std::vector<MutantCheck> mutants;
  bool ok() const;
};

/// Reference must pass every test; every mutant must fail with its
/// expected feedback string among the surfaced feedback.
MakeAudit audit_make(const MakePayload& make, std::uint64_t budget = trace::kDefaultBudget);

}  // namespace codetales::grade
