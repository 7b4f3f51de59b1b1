#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "codetales/content/content.hpp"
#include "codetales/gen/blanks.hpp"
#include "codetales/gen/errors.hpp"
#include "codetales/gen/parsons.hpp"
#include "codetales/gen/qlc.hpp"
#include "codetales/gen/trace_fill.hpp"
#include "codetales/js/parser.hpp"
#include "codetales/service/service.hpp"
#include "codetales/trace/make_tests.hpp"

using namespace codetales;
using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kFailed = 1, kRuntime = 2 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json diagnostic_json(const content::Diagnostic& d) {
  return {{"severity", d.severity == content::Diagnostic::Severity::Error ? "error" : "warning"},
          {"file", d.file},
          {"line", d.line},
          {"column", d.column},
          {"message", d.message}};
}

int cmd_validate(const std::string& dir, bool json) {
  auto r = content::load(dir);
  for (const auto& d : r.diagnostics) std::cerr << d.format() << "\n";
  const std::size_t errors = r.error_count();
  if (json) {
    Json diags = Json::array();
    for (const auto& d : r.diagnostics) diags.push_back(diagnostic_json(d));
    Json out{{"ok", r.ok()},
             {"errors", errors},
             {"warnings", r.diagnostics.size() - errors},
             {"diagnostics", std::move(diags)}};
    if (r.ok())
      out["summary"] = {{"content_version", r.bundle->manifest.content_version},
                        {"stories", r.bundle->stories.size()},
                        {"exercises", r.bundle->exercises.size()},
                        {"concepts", r.bundle->graph.nodes.size()},
                        {"media", r.bundle->media.size()}};
    print_json(out);
  } else if (r.ok()) {
    std::cerr << dir << ": ok (" << r.bundle->stories.size() << " stories, " << r.bundle->exercises.size()
              << " exercises)\n";
  } else {
    std::cerr << dir << ": " << errors << " error(s)\n";
  }
  return r.ok() ? kOk : kFailed;
}

int cmd_trace(const std::string& file, bool json, std::uint64_t budget) {
  js::SourceText src(read_file(file), file);
  auto program = js::parse_program(src);
  auto outcome = trace::evaluate(program, {budget, true});
  if (json) {
    print_json(trace::to_json(outcome));
  } else {
    std::cout << trace::format_grid(outcome.trace, trace::project_grid(outcome.trace));
    for (const auto& line : outcome.output) std::cout << "> " << line << "\n";
    if (!outcome.status.ok())
      std::cerr << file << ":" << outcome.status.line << ": " << trace::to_string(outcome.status.kind) << ": "
                << outcome.status.message << "\n";
  }
  return outcome.status.ok() ? kOk : kRuntime;
}

struct GenArgs {
  std::string kind;
  std::string file;
  std::uint64_t seed = 0;
  int difficulty = 3;
  int count = 3;
  double mask = 0.3;
  int block_size = 1;
  std::vector<std::string> distractors;
  bool learner_view = false;
};

int cmd_gen(const GenArgs& a, std::uint64_t budget) {
  const std::string source = read_file(a.file);
  const bool answers = !a.learner_view;
  Json out;
  if (a.kind == "blanks") {
    out = gen::to_json(gen::gen_blanks(source, a.difficulty, a.seed, a.distractors), answers);
  } else if (a.kind == "parsons") {
    out = gen::to_json(gen::gen_parsons(source, a.seed, a.block_size), answers);
  } else if (a.kind == "qlc") {
    out = gen::to_json(gen::gen_qlc(source, a.count, a.seed, budget), answers);
  } else {
    out = gen::to_json(gen::gen_trace_fill(source, a.mask, a.seed, budget), answers);
  }
  print_json(out);
  return kOk;
}

int cmd_grade_make(const std::string& exercise_file, const std::string& solution_file, bool json,
                   std::uint64_t budget) {
  std::vector<content::Diagnostic> diags;
  auto spec = content::parse_exercise(read_file(exercise_file), exercise_file, diags);
  for (const auto& d : diags) std::cerr << d.format() << "\n";
  if (!spec) return kFailed;
  const auto* make = std::get_if<grade::MakePayload>(&spec->payload);
  if (!make) {
    std::cerr << exercise_file << ": exercise '" << spec->id << "' is not a make exercise\n";
    return kFailed;
  }
  auto verdict = trace::check_tests(read_file(solution_file), make->tests, budget);
  if (json) {
    print_json(trace::to_json(verdict));
  } else if (verdict.compile_error) {
    std::cout << "compile-error: " << verdict.diagnostic << "\n";
  } else {
    for (const auto& r : verdict.results) {
      if (r.passed)
        std::cout << "PASS " << r.eval << "\n";
      else
        std::cout << "FAIL " << r.eval << ": " << r.feedback << (r.actual ? " (got " + *r.actual + ")" : std::string()) << "\n";
    }
  }
  return verdict.all_passed() ? kOk : kFailed;
}

service::Server* running = nullptr;

void on_signal(int) {
  if (running) running->stop();
}

int cmd_serve(const std::string& content_dir, const std::string& data_dir, const std::string& host, int port,
              const std::string& ui, std::optional<std::uint64_t> budget, std::optional<int> threshold) {
  auto r = content::load(content_dir);
  for (const auto& d : r.diagnostics) std::cerr << d.format() << "\n";
  if (!r.ok()) {
    std::cerr << content_dir << ": refusing to serve content with " << r.error_count() << " error(s)\n";
    return kFailed;
  }
  auto bundle = std::move(*r.bundle);
  if (budget) bundle.manifest.budget = *budget;
  if (threshold) bundle.manifest.mastery_threshold = *threshold;
  service::Api api(bundle, data_dir);
  service::Server server(api, {host, port, ui});
  const int bound = server.bind();
  if (bound < 0) {
    std::cerr << "cannot listen on " << host << ":" << port << "\n";
    return kRuntime;
  }
  running = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cout << "listening on http://" << host << ":" << bound << std::endl;
  server.listen();
  running = nullptr;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Story-driven programming exercises: authoring, inspection and serving"};
  app.require_subcommand(1);

  std::uint64_t budget = trace::kDefaultBudget;
  bool json = false;

  auto* validate = app.add_subcommand("validate", "Check a content directory");
  std::string content_dir;
  validate->add_option("dir", content_dir, "Content directory")->required();
  validate->add_flag("--json", json, "Print a JSON report to standard output");

  auto* tr = app.add_subcommand("trace", "Run a program and print its trace table");
  std::string trace_file;
  tr->add_option("file", trace_file, "Program file")->required();
  tr->add_flag("--json", json, "Print trace JSON");
  tr->add_option("--budget", budget, "Step budget")->envname("CODETALES_BUDGET");

  auto* gen_cmd = app.add_subcommand("gen", "Generate an exercise instance as JSON");
  GenArgs ga;
  gen_cmd->add_option("kind", ga.kind, "blanks, parsons, qlc or tracefill")
      ->required()
      ->check(CLI::IsMember({"blanks", "parsons", "qlc", "tracefill"}));
  gen_cmd->add_option("file", ga.file, "Program file")->required();
  gen_cmd->add_option("--seed", ga.seed, "Random seed");
  gen_cmd->add_option("--difficulty", ga.difficulty, "Blanks difficulty 1..5");
  gen_cmd->add_option("--count", ga.count, "Number of questions 1..3");
  gen_cmd->add_option("--mask", ga.mask, "Fraction of trace cells to hide");
  gen_cmd->add_option("--block-size", ga.block_size, "Lines per Parsons fragment");
  gen_cmd->add_option("--distractor", ga.distractors, "Extra blanks option (repeatable)");
  gen_cmd->add_flag("--learner-view", ga.learner_view, "Leave out answer keys");
  gen_cmd->add_option("--budget", budget, "Step budget")->envname("CODETALES_BUDGET");

  auto* grade_cmd = app.add_subcommand("grade", "Grade a solution");
  grade_cmd->require_subcommand(1);
  auto* make = grade_cmd->add_subcommand("make", "Run the tests of a make exercise against a solution");
  std::string exercise_file, solution_file;
  make->add_option("--exercise", exercise_file, "Exercise YAML")->required();
  make->add_option("--solution", solution_file, "Solution program")->required();
  make->add_flag("--json", json, "Print the verdict as JSON");
  make->add_option("--budget", budget, "Step budget")->envname("CODETALES_BUDGET");

  auto* serve = app.add_subcommand("serve", "Serve the learner API");
  std::string serve_content, data_dir, host = "127.0.0.1", ui;
  int port = 8080;
  std::optional<std::uint64_t> serve_budget;
  std::optional<int> threshold;
  serve->add_option("--content", serve_content, "Content directory")->required();
  serve->add_option("--data", data_dir, "Learner profile directory")->required();
  serve->add_option("--port", port, "Port, 0 for any free port")->envname("CODETALES_PORT");
  serve->add_option("--host", host, "Address to bind");
  serve->add_option("--ui", ui, "Directory with the built web UI");
  serve->add_option("--budget", serve_budget, "Step budget, overrides the manifest")->envname("CODETALES_BUDGET");
  serve->add_option("--mastery-threshold", threshold, "Correct answers per concept, overrides the manifest")
      ->envname("CODETALES_MASTERY_THRESHOLD")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kRuntime;
  }

  try {
    if (*validate) return cmd_validate(content_dir, json);
    if (*tr) return cmd_trace(trace_file, json, budget);
    if (*gen_cmd) return cmd_gen(ga, budget);
    if (*make) return cmd_grade_make(exercise_file, solution_file, json, budget);
    if (*serve) return cmd_serve(serve_content, data_dir, host, port, ui, serve_budget, threshold);
  } catch (const js::SyntaxError& e) {
    std::cerr << "syntax error: " << e.located() << "\n";
    return kFailed;
  } catch (const gen::GenError& e) {
    std::cerr << e.code() << ": " << e.what() << "\n";
    return e.code() == "evaluation-failed" ? kRuntime : kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kRuntime;
}
