#include "codetales/gen/trace_fill.hpp"

#include <algorithm>
#include <cmath>

#include "codetales/gen/errors.hpp"
#include "codetales/gen/rng.hpp"
#include "codetales/js/parser.hpp"
#include "codetales/trace/make_tests.hpp"

namespace codetales::gen {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

TraceFillInstance gen_trace_fill(std::string_view source, double mask_fraction, std::uint64_t seed,
                                 std::uint64_t budget) {
  if (!(mask_fraction >= 0 && mask_fraction <= 1))
    throw GenError("bad-parameter", "mask fraction must be within [0, 1]");
  js::SourceText text{std::string(source), "trace-fill"};
  auto program = js::parse_program(text);
  auto outcome = trace::evaluate(program, {budget, true});
  if (!outcome.status.ok()) {
    throw GenError("evaluation-failed", std::string(trace::to_string(outcome.status.kind)) + " at line " +
                                            std::to_string(outcome.status.line) + ": " + outcome.status.message);
  }

  TraceFillInstance out;
  out.source = text.text();
  out.grid = trace::project_grid(outcome.trace);
  out.trace = std::move(outcome.trace);
  out.mask_fraction = mask_fraction;
  out.seed = seed;

  std::vector<std::pair<int, int>> populated;
  for (std::size_t r = 0; r < out.grid.size(); ++r)
    for (std::size_t c = 0; c < out.grid[r].cells.size(); ++c)
      if (out.grid[r].cells[c]) populated.emplace_back(static_cast<int>(r), static_cast<int>(c));
  if (populated.empty()) throw GenError("no-candidates", "the program's trace has no cells to mask");

  auto count = static_cast<std::size_t>(std::ceil(mask_fraction * static_cast<double>(populated.size())));
  count = std::clamp<std::size_t>(count, 1, populated.size());

  SeededRng rng(seed);
  rng.shuffle(populated);
  populated.resize(count);
  std::sort(populated.begin(), populated.end());
  for (const auto& [r, c] : populated) {
    MaskedCell m;
    m.id = "m" + std::to_string(out.masked.size() + 1);
    m.row = r;
    m.column = c;
    m.variable = out.trace.variables[static_cast<std::size_t>(c)];
    m.answer = *out.grid[static_cast<std::size_t>(r)].cells[static_cast<std::size_t>(c)];
    out.masked.push_back(std::move(m));
  }
  return out;
}

TraceFillVerdict grade_trace_fill(const TraceFillInstance& instance, const std::map<std::string, std::string>& answers) {
  for (const auto& [id, value] : answers) {
    bool known = std::any_of(instance.masked.begin(), instance.masked.end(), [&](const MaskedCell& m) { return m.id == id; });
    if (!known) throw GenError("unknown-cell", "unknown masked cell id '" + id + "'");
  }
  TraceFillVerdict v;
  v.all_correct = true;
  for (const auto& m : instance.masked) {
    bool ok = false;
    if (auto it = answers.find(m.id); it != answers.end()) {
      std::string given = trim(it->second);
      ok = given == m.answer;
      if (!ok) {
        auto canonical = trace::canonical_literal(given);
        ok = canonical && *canonical == m.answer;
      }
    }
    v.per_cell.emplace_back(m.id, ok);
    v.all_correct = v.all_correct && ok;
  }
  return v;
}

std::map<std::string, std::string> answer_key(const TraceFillInstance& instance) {
  std::map<std::string, std::string> out;
  for (const auto& m : instance.masked) out[m.id] = m.answer;
  return out;
}

Json to_json(const TraceFillInstance& instance, bool with_answers) {
  Json events = Json::array();
  for (const auto& e : instance.trace.events) {
    Json j{{"step", e.step}, {"line", e.line}, {"kind", trace::to_string(e.kind)}, {"name", e.name}};
    if (with_answers) j["value"] = e.value;
    events.push_back(std::move(j));
  }
  Json rows = Json::array();
  for (std::size_t r = 0; r < instance.grid.size(); ++r) {
    Json cells = Json::array();
    for (std::size_t c = 0; c < instance.grid[r].cells.size(); ++c) {
      const auto& cell = instance.grid[r].cells[c];
      bool hidden = std::any_of(instance.masked.begin(), instance.masked.end(), [&](const MaskedCell& m) {
        return m.row == static_cast<int>(r) && m.column == static_cast<int>(c);
      });
      cells.push_back(cell && (with_answers || !hidden) ? Json(*cell) : Json(nullptr));
    }
    rows.push_back({{"step", instance.grid[r].step}, {"line", instance.grid[r].line}, {"cells", std::move(cells)}});
  }
  Json masked = Json::array();
  for (const auto& m : instance.masked) {
    Json j{{"id", m.id}, {"row", m.row}, {"column", m.column}, {"variable", m.variable}};
    if (with_answers) j["answer"] = m.answer;
    masked.push_back(std::move(j));
  }
  Json out{{"type", "trace-fill"},
           {"source", instance.source},
           {"variables", instance.trace.variables},
           {"events", std::move(events)},
           {"rows", std::move(rows)},
           {"masked", std::move(masked)},
           {"mask_fraction", instance.mask_fraction}};
  if (with_answers) out["seed"] = instance.seed;
  return out;
}

Json to_json(const TraceFillVerdict& verdict) {
  Json per = Json::object();
  for (const auto& [id, ok] : verdict.per_cell) per[id] = ok;
  return {{"per_cell", std::move(per)}, {"all_correct", verdict.all_correct}};
}

}  // namespace codetales::gen
