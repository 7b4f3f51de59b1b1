#include "codetales/grade/grade.hpp"

#include <algorithm>
#include <numeric>

#include "codetales/gen/errors.hpp"
#include "codetales/gen/rng.hpp"
#include "codetales/js/source.hpp"

namespace codetales::grade {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::string_view kPhaseNames[] = {"predict", "run", "investigate", "modify", "make"};

[[noreturn]] void shape(const std::string& why) { throw GradeError("shape-mismatch", why); }

const Json& require(const Json& response, const char* key, bool (Json::*check)() const noexcept, const char* what) {
  if (!response.is_object() || !response.contains(key) || !(response[key].*check)())
    shape(std::string("response needs \"") + key + "\" as " + what);
  return response[key];
}

std::map<std::string, std::string> string_map(const Json& j, const char* key) {
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) shape(std::string("every entry of \"") + key + "\" must be a string");
    out[k] = v.get<std::string>();
  }
  return out;
}

Verdict grade_predict(const PredictInstance& p, const Json& response) {
  const Json& c = require(response, "choice", &Json::is_number_integer, "an integer");
  long long choice = c.get<long long>();
  if (choice < 0 || choice >= static_cast<long long>(p.options.size()))
    shape("choice " + std::to_string(choice) + " is not an option");
  Verdict v;
  v.correct = choice == p.correct;
  v.detail = {{"choice", choice}};
  const auto& opt = p.options[static_cast<std::size_t>(choice)];
  if (!v.correct) v.feedback.push_back("That is not what the program does. Read it again line by line.");
  if (!opt.explanation.empty()) v.feedback.push_back(opt.explanation);
  return v;
}

Verdict grade_run(const gen::TraceFillInstance& t, const Json& response) {
  const Json& cells = require(response, "cells", &Json::is_object, "an object");
  gen::TraceFillVerdict tv;
  try {
    tv = gen::grade_trace_fill(t, string_map(cells, "cells"));
  } catch (const gen::GenError& e) {
    shape(e.what());
  }
  Verdict v;
  v.correct = tv.all_correct;
  v.detail = gen::to_json(tv);
  for (std::size_t i = 0; i < tv.per_cell.size(); ++i) {
    if (tv.per_cell[i].second) continue;
    const auto& m = t.masked[i];
    const auto& row = t.grid[static_cast<std::size_t>(m.row)];
    v.feedback.push_back("The value of `" + m.variable + "` at step " + std::to_string(row.step) + " (line " +
                         std::to_string(row.line) + ") is not right.");
  }
  return v;
}

Verdict grade_investigate(const std::vector<gen::QlcQuestion>& qs, const Json& response) {
  const Json& choices = require(response, "choices", &Json::is_array, "an array");
  if (choices.size() != qs.size())
    shape("expected " + std::to_string(qs.size()) + " choices, got " + std::to_string(choices.size()));
  Verdict v;
  v.correct = true;
  Json per = Json::array();
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (!choices[i].is_number_integer()) shape("choices must be integers");
    long long c = choices[i].get<long long>();
    if (c < 0 || c >= static_cast<long long>(qs[i].options.size()))
      shape("choice " + std::to_string(c) + " for question " + std::to_string(i + 1) + " is not an option");
    const auto& opt = qs[i].options[static_cast<std::size_t>(c)];
    per.push_back(opt.correct);
    v.correct = v.correct && opt.correct;
    v.feedback.push_back(opt.explanation);
  }
  v.detail = {{"per_question", std::move(per)}};
  return v;
}

Verdict grade_blanks(const gen::BlanksInstance& b, const Json& response) {
  const Json& filled = require(response, "blanks", &Json::is_object, "an object");
  gen::BlanksVerdict bv;
  try {
    bv = gen::grade_blanks(b, string_map(filled, "blanks"));
  } catch (const gen::GenError& e) {
    shape(e.what());
  }
  Verdict v;
  v.correct = bv.all_correct;
  v.detail = gen::to_json(bv);
  for (const auto& [id, ok] : bv.per_blank) {
    if (ok) continue;
    auto it = std::find_if(b.blanks.begin(), b.blanks.end(), [&](const gen::Blank& x) { return x.id == id; });
    v.feedback.push_back("Blank " + id + " on line " + std::to_string(it->span.line) + " is not right.");
  }
  return v;
}

Verdict grade_parsons(const gen::ParsonsInstance& p, const Json& response) {
  const Json& arr = require(response, "arrangement", &Json::is_array, "an array");
  std::vector<gen::Placement> placements;
  for (const auto& item : arr) {
    if (!item.is_object() || !item.contains("id") || !item["id"].is_string() || !item.contains("indent") ||
        !item["indent"].is_number_integer())
      shape("arrangement entries need a string \"id\" and an integer \"indent\"");
    placements.push_back({item["id"].get<std::string>(), item["indent"].get<int>()});
  }
  gen::ParsonsVerdict pv;
  try {
    pv = gen::grade_parsons(p, placements);
  } catch (const gen::GenError& e) {
    shape(e.what());
  }
  Verdict v;
  v.correct = pv.correct;
  v.detail = gen::to_json(pv);
  if (!pv.correct) {
    const std::string pos = std::to_string(*pv.mismatch_position);
    v.feedback.push_back(pv.mismatch_kind == "indent"
                             ? "The fragment in position " + pos + " is in the right place but indented wrongly."
                             : "The fragment in position " + pos + " does not belong there.");
  }
  return v;
}

Verdict grade_make(const MakeInstance& m, std::uint64_t budget, const Json& response) {
  const Json& src = require(response, "source", &Json::is_string, "a string");
  trace::MakeVerdict mv = trace::check_tests(src.get<std::string>(), m.tests, budget);
  Verdict v;
  v.correct = mv.all_passed();
  v.detail = trace::to_json(mv);
  v.feedback = mv.failing_feedback();
  return v;
}

}  // namespace

std::string_view to_string(Phase phase) { return kPhaseNames[static_cast<int>(phase)]; }

std::optional<Phase> phase_from_string(std::string_view text) {
  for (int i = 0; i < 5; ++i)
    if (kPhaseNames[i] == text) return static_cast<Phase>(i);
  return std::nullopt;
}

std::string_view to_string(ModifyKind kind) { return kind == ModifyKind::Blanks ? "blanks" : "parsons"; }

ExerciseInstance materialize(const ExerciseSpec& spec, std::uint64_t seed, std::uint64_t budget) {
  ExerciseInstance inst;
  inst.exercise_id = spec.id;
  inst.phase = spec.phase();
  inst.title = spec.title;
  inst.prompt = spec.prompt;
  inst.seed = seed;
  inst.budget = budget;
  try {
    inst.body = std::visit(
        overloaded{
            [&](const PredictPayload& p) -> InstanceBody {
              std::vector<int> order(p.options.size());
              std::iota(order.begin(), order.end(), 0);
              gen::SeededRng rng(seed);
              rng.shuffle(order);
              PredictInstance out;
              out.code = p.code;
              for (std::size_t i = 0; i < order.size(); ++i) {
                out.options.push_back(p.options[static_cast<std::size_t>(order[i])]);
                if (order[i] == p.correct_index) out.correct = static_cast<int>(i);
              }
              return out;
            },
            [&](const RunPayload& r) -> InstanceBody {
              return gen::gen_trace_fill(r.source, r.mask_fraction, seed, budget);
            },
            [&](const InvestigatePayload& q) -> InstanceBody { return gen::gen_qlc(q.source, q.count, seed, budget); },
            [&](const ModifyPayload& m) -> InstanceBody {
              if (m.kind == ModifyKind::Blanks) return gen::gen_blanks(m.source, m.difficulty, seed, m.distractors);
              return gen::gen_parsons(m.source, seed, m.block_size, m.groups);
            },
            [&](const MakePayload& m) -> InstanceBody { return MakeInstance{m.starter, m.tests}; },
        },
        spec.payload);
  } catch (const gen::GenError& e) {
    throw GradeError("content-error", spec.id + ": " + e.code() + ": " + e.what());
  } catch (const js::SyntaxError& e) {
    throw GradeError("content-error", spec.id + ": " + e.located());
  }
  return inst;
}

Verdict grade(const ExerciseInstance& instance, const Json& response) {
  Verdict v = std::visit(
      overloaded{
          [&](const PredictInstance& p) { return grade_predict(p, response); },
          [&](const gen::TraceFillInstance& t) { return grade_run(t, response); },
          [&](const std::vector<gen::QlcQuestion>& q) { return grade_investigate(q, response); },
          [&](const gen::BlanksInstance& b) { return grade_blanks(b, response); },
          [&](const gen::ParsonsInstance& p) { return grade_parsons(p, response); },
          [&](const MakeInstance& m) { return grade_make(m, instance.budget, response); },
      },
      instance.body);
  if (!v.correct && v.feedback.empty()) v.feedback.push_back("Not quite. Try again.");
  return v;
}

Json solution_response(const ExerciseInstance& instance) {
  return std::visit(
      overloaded{
          [](const PredictInstance& p) -> Json { return {{"choice", p.correct}}; },
          [](const gen::TraceFillInstance& t) -> Json { return {{"cells", gen::answer_key(t)}}; },
          [](const std::vector<gen::QlcQuestion>& qs) -> Json {
            Json choices = Json::array();
            for (const auto& q : qs) choices.push_back(q.correct_index());
            return {{"choices", std::move(choices)}};
          },
          [](const gen::BlanksInstance& b) -> Json { return {{"blanks", gen::answer_key(b)}}; },
          [](const gen::ParsonsInstance& p) -> Json {
            Json arr = Json::array();
            for (const auto& pl : gen::solution_arrangement(p)) arr.push_back({{"id", pl.id}, {"indent", pl.indent}});
            return {{"arrangement", std::move(arr)}};
          },
          [](const MakeInstance&) -> Json { return nullptr; },
      },
      instance.body);
}

Json to_json(const ExerciseInstance& instance, bool with_answers) {
  Json body = std::visit(
      overloaded{
          [&](const PredictInstance& p) -> Json {
            Json options = Json::array();
            for (const auto& o : p.options) {
              Json j{{"text", o.text}};
              if (!o.image.empty()) j["image"] = o.image;
              if (with_answers && !o.explanation.empty()) j["explanation"] = o.explanation;
              options.push_back(std::move(j));
            }
            Json out{{"type", "predict"}, {"code", p.code}, {"options", std::move(options)}};
            if (with_answers) out["correct"] = p.correct;
            return out;
          },
          [&](const gen::TraceFillInstance& t) -> Json { return gen::to_json(t, with_answers); },
          [&](const std::vector<gen::QlcQuestion>& q) -> Json { return gen::to_json(q, with_answers); },
          [&](const gen::BlanksInstance& b) -> Json { return gen::to_json(b, with_answers); },
          [&](const gen::ParsonsInstance& p) -> Json { return gen::to_json(p, with_answers); },
          [&](const MakeInstance& m) -> Json {
            Json checks = Json::array();
            for (const auto& t : m.tests) {
              Json j{{"eval", t.eval}};
              if (with_answers) {
                j["expected"] = t.expected;
                j["feedback"] = t.feedback;
              }
              checks.push_back(std::move(j));
            }
            return {{"type", "make"}, {"starter", m.starter}, {"checks", std::move(checks)}};
          },
      },
      instance.body);
  Json out{{"exercise", instance.exercise_id},
           {"phase", to_string(instance.phase)},
           {"title", instance.title},
           {"prompt", instance.prompt}};
  if (with_answers) out["seed"] = instance.seed;
  out["body"] = std::move(body);
  return out;
}

Json to_json(const Verdict& verdict) {
  return {{"correct", verdict.correct},
          {"feedback", verdict.feedback},
          {"mastery_eligible", verdict.mastery_eligible},
          {"detail", verdict.detail}};
}

bool MakeAudit::ok() const {
  if (!reference.all_passed()) return false;
  return std::all_of(mutants.begin(), mutants.end(),
                     [](const MutantCheck& m) { return m.failed && m.feedback_surfaced; });
}

MakeAudit audit_make(const MakePayload& make, std::uint64_t budget) {
  MakeAudit audit;
  audit.reference = trace::check_tests(make.reference, make.tests, budget);
  for (std::size_t i = 0; i < make.mutants.size(); ++i) {
    const auto& m = make.mutants[i];
    auto verdict = trace::check_tests(m.source, make.tests, budget);
    MutantCheck check;
    check.index = i;
    check.failed = !verdict.all_passed();
    check.feedback = verdict.failing_feedback();
    check.feedback_surfaced = std::any_of(check.feedback.begin(), check.feedback.end(), [&](const std::string& f) {
      return f.find(m.expect_feedback) != std::string::npos;
    });
    audit.mutants.push_back(std::move(check));
  }
  return audit;
}

}  // namespace codetales::grade
