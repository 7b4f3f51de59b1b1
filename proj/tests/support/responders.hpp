#pragma once

#include "codetales/grade/grade.hpp"

namespace codetales::testing {

/// A response that every grader rejects.
inline grade::Json wrong_response(const grade::ExerciseInstance& inst) {
  using grade::Json;
  Json right = grade::solution_response(inst);
  switch (inst.phase) {
    case grade::Phase::Predict: {
      const auto& p = std::get<grade::PredictInstance>(inst.body);
      return {{"choice", (p.correct + 1) % static_cast<int>(p.options.size())}};
    }
    case grade::Phase::Run:
      for (auto& [k, v] : right["cells"].items()) v = "wrong!";
      return right;
    case grade::Phase::Investigate:
      for (auto& c : right["choices"]) c = c.get<int>() == 0 ? 1 : 0;
      return right;
    case grade::Phase::Modify:
      if (right.contains("blanks")) {
        for (auto& [k, v] : right["blanks"].items()) v = "wrong!";
      } else {
        right["arrangement"][0]["indent"] = right["arrangement"][0]["indent"].get<int>() + 1;
      }
      return right;
    case grade::Phase::Make:
      return {{"source", "("}};
  }
  return right;
}

}  // namespace codetales::testing
