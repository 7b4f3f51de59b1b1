#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "codetales/js/ast.hpp"
#include "json.hpp"

namespace codetales::trace {

using Json = nlohmann::ordered_json;

inline constexpr std::uint64_t kDefaultBudget = 100'000;
/// Nested user-function calls allowed before a "Maximum call stack size
/// exceeded" runtime error.
inline constexpr int kMaxCallDepth = 400;

enum class EventKind { Declare, Write, Read };
std::string_view to_string(EventKind kind);

struct TraceEvent {
  std::uint32_t step = 0;  // 1-based position in the event list
  int line = 0;
  EventKind kind = EventKind::Read;
  std::string name;
  std::string value;  // rendered
  int scope = 0;      // 0 is the program's top-level scope
};

struct TraceTable {
  std::vector<TraceEvent> events;
  /// Names in first-declaration order; one grid column each.
  std::vector<std::string> variables;
};

struct GridRow {
  std::uint32_t step = 0;
  int line = 0;
  /// Aligned with TraceTable::variables; empty before the first declaration.
  std::vector<std::optional<std::string>> cells;
};

/// One row per declare/write event; reads never create rows.
std::vector<GridRow> project_grid(const TraceTable& trace);

enum class RunStatusKind { Ok, RuntimeError, BudgetExceeded };
std::string_view to_string(RunStatusKind kind);

struct RunStatus {
  RunStatusKind kind = RunStatusKind::Ok;
  std::string message;
  int line = 0;

  bool ok() const noexcept { return kind == RunStatusKind::Ok; }
};

struct LoopStats {
  int line = 0;
  std::uint64_t entries = 0;
  std::uint64_t iterations = 0;
};

using Bindings = std::vector<std::pair<std::string, std::string>>;

struct RunOutcome {
  /// Top-level variables that have been initialised, in declaration order.
  Bindings final_bindings;
  std::vector<std::string> output;
  TraceTable trace;
  RunStatus status;
  std::uint64_t steps = 0;
  /// Per loop statement node: how often it was entered and its body ran.
  std::map<js::NodeId, LoopStats> loops;
};

struct EvalOptions {
  std::uint64_t budget = kDefaultBudget;
  bool record_reads = true;
};

/// Runs a program with read/write tracing. Never throws for program
/// behaviour; runtime errors and budget exhaustion land in `status`.
RunOutcome evaluate(const js::ProgramAst& program, const EvalOptions& options = {});

/// Replays top-level (scope 0) declare/write events into name -> value.
Bindings fold_top_level(const TraceTable& trace);

/// Trace JSON: {events, variables, output, status, error?, final_bindings, grid}.
Json to_json(const RunOutcome& outcome);
Json to_json(const TraceTable& trace, const std::vector<GridRow>& grid);
Json grid_to_json(const TraceTable& trace, const std::vector<GridRow>& grid);

/// Plain-text table for terminals.
std::string format_grid(const TraceTable& trace, const std::vector<GridRow>& grid);

}  // namespace codetales::trace
