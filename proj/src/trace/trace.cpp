#include "codetales/trace/trace.hpp"

#include <algorithm>
#include <new>
#include <stdexcept>

#include "runtime.hpp"

namespace codetales::trace {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Declare: return "declare";
    case EventKind::Write: return "write";
    case EventKind::Read: return "read";
  }
  return "read";
}

std::string_view to_string(RunStatusKind kind) {
  switch (kind) {
    case RunStatusKind::Ok: return "ok";
    case RunStatusKind::RuntimeError: return "runtime-error";
    case RunStatusKind::BudgetExceeded: return "budget-exceeded";
  }
  return "ok";
}

RunOutcome evaluate(const js::ProgramAst& program, const EvalOptions& options) {
  detail::Interpreter in(options);
  RunStatus status;
  try {
    in.run(program);
  } catch (const detail::RuntimeError& e) {
    status = {RunStatusKind::RuntimeError, e.message, in.current_line()};
  } catch (const detail::BudgetExhausted&) {
    status = {RunStatusKind::BudgetExceeded, "step budget of " + std::to_string(options.budget) + " exceeded",
              in.current_line()};
  } catch (const std::bad_alloc&) {
    status = {RunStatusKind::RuntimeError, "RangeError: out of memory", in.current_line()};
  } catch (const std::length_error&) {
    status = {RunStatusKind::RuntimeError, "RangeError: Invalid length", in.current_line()};
  }
  return in.take_outcome(std::move(status));
}

std::vector<GridRow> project_grid(const TraceTable& trace) {
  std::vector<GridRow> rows;
  std::vector<std::optional<std::string>> current(trace.variables.size());
  for (const auto& e : trace.events) {
    if (e.kind == EventKind::Read) continue;
    auto it = std::find(trace.variables.begin(), trace.variables.end(), e.name);
    if (it == trace.variables.end()) continue;
    current[static_cast<std::size_t>(it - trace.variables.begin())] = e.value;
    rows.push_back({e.step, e.line, current});
  }
  return rows;
}

Bindings fold_top_level(const TraceTable& trace) {
  Bindings out;
  for (const auto& e : trace.events) {
    if (e.kind == EventKind::Read || e.scope != 0) continue;
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == e.name; });
    if (it == out.end()) out.emplace_back(e.name, e.value);
    else it->second = e.value;
  }
  return out;
}

Json grid_to_json(const TraceTable& trace, const std::vector<GridRow>& grid) {
  Json rows = Json::array();
  for (const auto& r : grid) {
    Json cells = Json::array();
    for (const auto& c : r.cells) cells.push_back(c ? Json(*c) : Json(nullptr));
    rows.push_back({{"step", r.step}, {"line", r.line}, {"cells", std::move(cells)}});
  }
  return {{"variables", trace.variables}, {"rows", std::move(rows)}};
}

Json to_json(const TraceTable& trace, const std::vector<GridRow>& grid) {
  Json events = Json::array();
  for (const auto& e : trace.events) {
    events.push_back({{"step", e.step},
                      {"line", e.line},
                      {"kind", to_string(e.kind)},
                      {"name", e.name},
                      {"value", e.value},
                      {"scope", e.scope}});
  }
  return {{"events", std::move(events)}, {"variables", trace.variables}, {"grid", grid_to_json(trace, grid)}};
}

Json to_json(const RunOutcome& outcome) {
  Json out = to_json(outcome.trace, project_grid(outcome.trace));
  out["output"] = outcome.output;
  out["status"] = to_string(outcome.status.kind);
  if (!outcome.status.ok()) out["error"] = {{"message", outcome.status.message}, {"line", outcome.status.line}};
  Json finals = Json::object();
  for (const auto& [name, value] : outcome.final_bindings) finals[name] = value;
  out["final_bindings"] = std::move(finals);
  out["steps"] = outcome.steps;
  return out;
}

std::string format_grid(const TraceTable& trace, const std::vector<GridRow>& grid) {
  std::vector<std::vector<std::string>> table;
  std::vector<std::string> header{"step", "line"};
  header.insert(header.end(), trace.variables.begin(), trace.variables.end());
  table.push_back(std::move(header));
  for (const auto& r : grid) {
    std::vector<std::string> row{std::to_string(r.step), std::to_string(r.line)};
    for (const auto& c : r.cells) row.push_back(c.value_or(""));
    table.push_back(std::move(row));
  }
  std::vector<std::size_t> width(table.front().size(), 0);
  for (const auto& row : table)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  std::string out;
  auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += " | ";
      line += row[i];
      if (i + 1 < row.size()) line.append(width[i] - row[i].size(), ' ');
    }
    out += line + "\n";
  };
  emit(table.front());
  std::string rule;
  for (std::size_t i = 0; i < width.size(); ++i) {
    if (i) rule += "-+-";
    rule.append(width[i], '-');
  }
  out += rule + "\n";
  for (std::size_t i = 1; i < table.size(); ++i) emit(table[i]);
  return out;
}

}  // namespace codetales::trace
