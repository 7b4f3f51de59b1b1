#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "codetales/js/ast.hpp"
#include "codetales/trace/trace.hpp"

namespace codetales::gen {

using Json = nlohmann::ordered_json;

enum class QlcKind {
  DeclarationLine = 1,
  VariableName,
  Parameter,
  CallLine,
  LoopIterations,
  FinalValue,
  AssignmentCount,
};
inline constexpr int kQlcKindCount = 7;
std::string_view to_string(QlcKind kind);

struct QlcOption {
  std::string label;
  bool correct = false;
  std::string explanation;
};

struct QlcQuestion {
  QlcKind kind = QlcKind::DeclarationLine;
  std::string prompt;
  std::vector<QlcOption> options;
  std::string subject;  // the variable, function or loop asked about
  js::NodeId anchor_node = 0;
  int anchor_line = 0;

  int correct_index() const;
};

inline constexpr int kMinQuestions = 1;
inline constexpr int kMaxQuestions = 3;

/// min(count, applicable kinds) questions of distinct kinds. Throws
/// GenError("no-applicable-kinds") when none apply and
/// GenError("bad-parameter") when count is outside 1..3.
std::vector<QlcQuestion> gen_qlc(std::string_view source, int count, std::uint64_t seed,
                                 std::uint64_t budget = trace::kDefaultBudget);

Json to_json(const QlcQuestion& q, bool with_answers);
Json to_json(const std::vector<QlcQuestion>& questions, bool with_answers);

}  // namespace codetales::gen
