#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "codetales/trace/trace.hpp"

namespace codetales::gen {

using Json = nlohmann::ordered_json;

struct MaskedCell {
  std::string id;  // "m1", "m2", ... in grid order
  int row = 0;     // 0-based grid row
  int column = 0;  // index into variables
  std::string variable;
  std::string answer;  // RenderedValue
};

struct TraceFillInstance {
  std::string source;
  trace::TraceTable trace;
  std::vector<trace::GridRow> grid;  // full oracle grid
  std::vector<MaskedCell> masked;
  double mask_fraction = 0;
  std::uint64_t seed = 0;
};

/// Masks ceil(mask_fraction * populated cells) grid cells, at least one.
/// Throws GenError("evaluation-failed") if the program does not finish with
/// status ok, GenError("bad-parameter") for a fraction outside [0, 1].
TraceFillInstance gen_trace_fill(std::string_view source, double mask_fraction, std::uint64_t seed,
                                 std::uint64_t budget = trace::kDefaultBudget);

struct TraceFillVerdict {
  std::vector<std::pair<std::string, bool>> per_cell;
  bool all_correct = false;
};

/// Answers are compared after canonical rendering, so `'hi'` matches
/// `"hi"` and `2.50` matches `2.5`. Unknown ids throw
/// GenError("unknown-cell").
TraceFillVerdict grade_trace_fill(const TraceFillInstance& instance, const std::map<std::string, std::string>& answers);

std::map<std::string, std::string> answer_key(const TraceFillInstance& instance);

/// The learner view omits event values and masked cell contents.
Json to_json(const TraceFillInstance& instance, bool with_answers);
Json to_json(const TraceFillVerdict& verdict);

}  // namespace codetales::gen
