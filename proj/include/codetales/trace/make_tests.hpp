#pragma once

#include <optional>
#include <string>
#include <vector>

#include "codetales/js/ast.hpp"
#include "codetales/trace/trace.hpp"

namespace codetales::trace {

/// One authored unit test for a make exercise.
struct TestSpec {
  std::string eval;      // subset expression evaluated after the program
  std::string expected;  // literal text, compared structurally
  std::string feedback;  // shown when the test fails
};

struct TestResult {
  std::string eval;
  bool passed = false;
  std::optional<std::string> actual;  // rendered, absent when evaluation failed
  std::string feedback;               // empty when passed
};

struct MakeVerdict {
  bool compile_error = false;
  std::string diagnostic;  // "line:col: message" for compile errors
  std::vector<TestResult> results;

  bool all_passed() const noexcept;
  std::vector<std::string> failing_feedback() const;
};

/// Parses the learner's program and runs every test against a fresh
/// evaluation of it.
MakeVerdict check_tests(std::string_view student_source, const std::vector<TestSpec>& tests,
                        std::uint64_t budget = kDefaultBudget);
MakeVerdict check_tests(const js::ProgramAst& student, const std::vector<TestSpec>& tests,
                        std::uint64_t budget = kDefaultBudget);

/// Canonical rendering of a literal value written in subset syntax
/// (numbers, strings, booleans, null, undefined, NaN, Infinity, arrays and
/// objects of those, unary minus). nullopt when the text is not such a
/// literal.
std::optional<std::string> canonical_literal(std::string_view text);

Json to_json(const MakeVerdict& verdict);

}  // namespace codetales::trace
