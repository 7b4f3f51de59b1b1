#include "codetales/content/content.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "codetales/js/parser.hpp"

namespace codetales::content {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kCheckSeeds = 5;

// One YAML document plus the diagnostics sink. Every accessor reports
// problems at the closest node and returns an empty optional.
class Doc {
 public:
  Doc(std::string file, std::string text, std::vector<Diagnostic>& out)
      : file_(std::move(file)), text_(std::move(text)), out_(out) {}

  const std::string& file() const { return file_; }

  std::optional<YAML::Node> parse() {
    try {
      YAML::Node root = YAML::Load(text_);
      if (!root.IsMap()) {
        report(Diagnostic::Severity::Error, root.Mark(), "top level must be a mapping");
        return std::nullopt;
      }
      return root;
    } catch (const YAML::ParserException& e) {
      report(Diagnostic::Severity::Error, e.mark, e.msg);
      return std::nullopt;
    }
  }

  void error(const YAML::Node& at, const std::string& msg) { report(Diagnostic::Severity::Error, at.Mark(), msg); }
  void warn(const YAML::Node& at, const std::string& msg) { report(Diagnostic::Severity::Warning, at.Mark(), msg); }

  void error_at_line(int line, int column, const std::string& msg) {
    out_.push_back({Diagnostic::Severity::Error, file_, line, column, msg});
  }

  std::optional<YAML::Node> child(const YAML::Node& map, const char* key, bool required) {
    YAML::Node n = map[key];
    if (!n.IsDefined() || n.IsNull()) {
      if (required) error(map, std::string("missing required field '") + key + "'");
      return std::nullopt;
    }
    return n;
  }

  std::optional<std::string> str(const YAML::Node& map, const char* key, bool required = true) {
    auto n = child(map, key, required);
    if (!n) return std::nullopt;
    if (!n->IsScalar()) {
      error(*n, std::string("'") + key + "' must be text");
      return std::nullopt;
    }
    return n->Scalar();
  }

  std::optional<long long> integer(const YAML::Node& map, const char* key, bool required = true) {
    auto n = child(map, key, required);
    if (!n) return std::nullopt;
    long long v = 0;
    if (!n->IsScalar() || !YAML::convert<long long>::decode(*n, v)) {
      error(*n, std::string("'") + key + "' must be an integer");
      return std::nullopt;
    }
    return v;
  }

  std::optional<double> number(const YAML::Node& map, const char* key, bool required = true) {
    auto n = child(map, key, required);
    if (!n) return std::nullopt;
    double v = 0;
    if (!n->IsScalar() || !YAML::convert<double>::decode(*n, v)) {
      error(*n, std::string("'") + key + "' must be a number");
      return std::nullopt;
    }
    return v;
  }

  std::optional<bool> boolean(const YAML::Node& map, const char* key) {
    auto n = child(map, key, false);
    if (!n) return std::nullopt;
    bool v = false;
    if (!n->IsScalar() || !YAML::convert<bool>::decode(*n, v)) {
      error(*n, std::string("'") + key + "' must be true or false");
      return std::nullopt;
    }
    return v;
  }

  std::vector<std::string> str_list(const YAML::Node& map, const char* key, bool required = true) {
    std::vector<std::string> out;
    auto n = child(map, key, required);
    if (!n) return out;
    if (!n->IsSequence()) {
      error(*n, std::string("'") + key + "' must be a list");
      return out;
    }
    for (const auto& item : *n) {
      if (!item.IsScalar()) error(item, std::string("entries of '") + key + "' must be text");
      else out.push_back(item.Scalar());
    }
    return out;
  }

  std::optional<YAML::Node> seq(const YAML::Node& map, const char* key, bool required = true) {
    auto n = child(map, key, required);
    if (!n) return std::nullopt;
    if (!n->IsSequence()) {
      error(*n, std::string("'") + key + "' must be a list");
      return std::nullopt;
    }
    return n;
  }

  void check_keys(const YAML::Node& map, std::initializer_list<const char*> allowed) {
    for (const auto& kv : map) {
      const std::string key = kv.first.Scalar();
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
        warn(kv.first, "unknown field '" + key + "' is ignored");
    }
  }

  // Maps a js-lang location inside a scalar back to the file.
  void source_error(const YAML::Node& scalar, const std::string& field, const js::SyntaxError& e) {
    const auto mark = scalar.Mark();
    int line = mark.line + 1;
    int column = mark.column + 1;
    if (mark.pos >= 0 && static_cast<std::size_t>(mark.pos) < text_.size() &&
        (text_[static_cast<std::size_t>(mark.pos)] == '|' || text_[static_cast<std::size_t>(mark.pos)] == '>')) {
      std::size_t next = text_.find('\n', static_cast<std::size_t>(mark.pos));
      int indent = 0;
      if (next != std::string::npos) {
        std::size_t p = next + 1;
        while (p < text_.size() && text_[p] == ' ') ++p, ++indent;
      }
      line = mark.line + 1 + e.span().line;
      column = indent + e.span().column;
    }
    error_at_line(line, column, field + ": " + e.what());
  }

 private:
  void report(Diagnostic::Severity sev, const YAML::Mark& mark, const std::string& msg) {
    out_.push_back({sev, file_, mark.line >= 0 ? mark.line + 1 : 0, mark.column >= 0 ? mark.column + 1 : 0, msg});
  }

  std::string file_;
  std::string text_;
  std::vector<Diagnostic>& out_;
};

std::optional<std::string> read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parses `field` of `map` as a program and reports syntax errors.
std::optional<std::string> program_field(Doc& doc, const YAML::Node& map, const char* field, bool required = true) {
  auto text = doc.str(map, field, required);
  if (!text) return std::nullopt;
  try {
    js::parse_program(js::SourceText(*text, field));
  } catch (const js::SyntaxError& e) {
    doc.source_error(map[field], field, e);
    return std::nullopt;
  }
  return text;
}

bool safe_media_path(const std::string& p) {
  return p.rfind("media/", 0) == 0 && p.find("..") == std::string::npos && p.find('\\') == std::string::npos;
}

void check_image(Doc& doc, const YAML::Node& at, const std::string& path, const std::set<std::string>* media) {
  if (!safe_media_path(path)) doc.error(at, "image '" + path + "' must be a path under media/");
  else if (media && !media->count(path)) doc.error(at, "image '" + path + "' does not exist");
}

std::optional<grade::ExerciseSpec> parse_exercise_doc(Doc& doc, const YAML::Node& root,
                                                      const curriculum::ConceptGraph* graph,
                                                      const std::set<std::string>* media) {
  bool ok = true;
  auto fail = [&](const YAML::Node& at, const std::string& msg) {
    doc.error(at, msg);
    ok = false;
  };

  grade::ExerciseSpec spec;
  auto id = doc.str(root, "id");
  auto title = doc.str(root, "title", false);
  auto phase_text = doc.str(root, "phase");
  auto prompt = doc.str(root, "prompt", false);
  spec.concepts = doc.str_list(root, "concepts");
  if (!id || !phase_text) return std::nullopt;
  spec.id = *id;
  spec.title = title.value_or(*id);
  spec.prompt = prompt.value_or("");
  if (spec.concepts.empty()) fail(root, "exercise '" + spec.id + "' must list at least one concept");
  if (graph) {
    for (const auto& c : spec.concepts)
      if (!graph->has(c)) fail(root["concepts"], "exercise '" + spec.id + "' uses unknown concept '" + c + "'");
  }

  auto phase = grade::phase_from_string(*phase_text);
  if (!phase) {
    fail(root["phase"], "unknown phase '" + *phase_text + "' (predict, run, investigate, modify or make)");
    return std::nullopt;
  }

  switch (*phase) {
    case grade::Phase::Predict: {
      doc.check_keys(root, {"id", "title", "phase", "concepts", "prompt", "code", "options"});
      grade::PredictPayload p;
      auto code = program_field(doc, root, "code");
      ok = ok && code;
      p.code = code.value_or("");
      int correct = 0;
      if (auto options = doc.seq(root, "options")) {
        for (const auto& o : *options) {
          grade::PredictOption opt;
          if (o.IsScalar()) {
            opt.text = o.Scalar();
          } else if (o.IsMap()) {
            doc.check_keys(o, {"text", "image", "explanation", "correct"});
            opt.text = doc.str(o, "text", false).value_or("");
            opt.image = doc.str(o, "image", false).value_or("");
            opt.explanation = doc.str(o, "explanation", false).value_or("");
            if (!opt.image.empty()) check_image(doc, o["image"], opt.image, media);
            if (opt.text.empty() && opt.image.empty()) fail(o, "an option needs text or an image");
            if (doc.boolean(o, "correct").value_or(false)) {
              p.correct_index = static_cast<int>(p.options.size());
              ++correct;
            }
          } else {
            fail(o, "an option is text or a mapping");
          }
          p.options.push_back(std::move(opt));
        }
        if (p.options.size() < 2) fail(*options, "a predict exercise needs at least two options");
        if (correct != 1) fail(*options, "exactly one option must be marked 'correct: true'");
      } else {
        ok = false;
      }
      spec.payload = std::move(p);
      break;
    }
    case grade::Phase::Run: {
      doc.check_keys(root, {"id", "title", "phase", "concepts", "prompt", "source", "mask"});
      grade::RunPayload r;
      auto src = program_field(doc, root, "source");
      ok = ok && src;
      r.source = src.value_or("");
      r.mask_fraction = doc.number(root, "mask", false).value_or(r.mask_fraction);
      if (r.mask_fraction < 0 || r.mask_fraction > 1) fail(root["mask"], "'mask' must be between 0 and 1");
      spec.payload = std::move(r);
      break;
    }
    case grade::Phase::Investigate: {
      doc.check_keys(root, {"id", "title", "phase", "concepts", "prompt", "source", "questions"});
      grade::InvestigatePayload q;
      auto src = program_field(doc, root, "source");
      ok = ok && src;
      q.source = src.value_or("");
      q.count = static_cast<int>(doc.integer(root, "questions", false).value_or(q.count));
      if (q.count < gen::kMinQuestions || q.count > gen::kMaxQuestions)
        fail(root["questions"], "'questions' must be between 1 and 3");
      spec.payload = std::move(q);
      break;
    }
    case grade::Phase::Modify: {
      doc.check_keys(root, {"id", "title", "phase", "concepts", "prompt", "kind", "source", "difficulty",
                            "distractors", "block_size", "groups"});
      grade::ModifyPayload m;
      auto kind = doc.str(root, "kind");
      if (kind == "blanks") m.kind = grade::ModifyKind::Blanks;
      else if (kind == "parsons") m.kind = grade::ModifyKind::Parsons;
      else if (kind) fail(root["kind"], "unknown modify kind '" + *kind + "' (blanks or parsons)");
      else ok = false;
      auto src = program_field(doc, root, "source");
      ok = ok && src;
      m.source = src.value_or("");
      m.difficulty = static_cast<int>(doc.integer(root, "difficulty", false).value_or(m.difficulty));
      if (m.difficulty < gen::kMinDifficulty || m.difficulty > gen::kMaxDifficulty)
        fail(root["difficulty"], "'difficulty' must be between 1 and 5");
      m.distractors = doc.str_list(root, "distractors", false);
      m.block_size = static_cast<int>(doc.integer(root, "block_size", false).value_or(m.block_size));
      for (const auto& g : doc.str_list(root, "groups", false)) {
        try {
          m.groups.push_back(std::stoi(g));
        } catch (const std::exception&) {
          fail(root["groups"], "'groups' must be a list of line counts");
        }
      }
      spec.payload = std::move(m);
      break;
    }
    case grade::Phase::Make: {
      doc.check_keys(root, {"id", "title", "phase", "concepts", "prompt", "starter", "tests", "reference", "mutants"});
      grade::MakePayload m;
      auto starter = doc.str(root, "starter", false);
      m.starter = starter.value_or("");
      auto ref = program_field(doc, root, "reference");
      ok = ok && ref;
      m.reference = ref.value_or("");
      if (auto tests = doc.seq(root, "tests")) {
        for (const auto& t : *tests) {
          if (!t.IsMap()) {
            fail(t, "a test is a mapping with eval, expected and feedback");
            continue;
          }
          doc.check_keys(t, {"eval", "expected", "feedback"});
          auto eval = doc.str(t, "eval");
          auto feedback = doc.str(t, "feedback");
          auto expected = doc.child(t, "expected", true);
          if (expected && !expected->IsScalar()) {
            fail(*expected, "'expected' must be a literal written as text (quote lists and objects)");
            expected.reset();
          }
          if (!eval || !feedback || !expected) {
            ok = false;
            continue;
          }
          try {
            js::parse_expression_text(*eval);
          } catch (const js::SyntaxError& e) {
            fail(t["eval"], "'eval' does not parse: " + e.located());
          }
          if (!trace::canonical_literal(expected->Scalar()))
            fail(*expected, "'expected' must be a literal value, got '" + expected->Scalar() + "'");
          if (feedback->empty()) fail(t["feedback"], "'feedback' must not be empty");
          m.tests.push_back({*eval, expected->Scalar(), *feedback});
        }
        if (m.tests.empty()) fail(*tests, "a make exercise needs at least one test");
      } else {
        ok = false;
      }
      if (auto mutants = doc.seq(root, "mutants", false)) {
        for (const auto& mu : *mutants) {
          if (!mu.IsMap()) {
            fail(mu, "a mutant is a mapping with source and feedback");
            continue;
          }
          doc.check_keys(mu, {"source", "feedback", "note"});
          auto src = doc.str(mu, "source");
          auto fb = doc.str(mu, "feedback");
          if (!src || !fb) {
            ok = false;
            continue;
          }
          m.mutants.push_back({*src, *fb, doc.str(mu, "note", false).value_or("")});
        }
      }
      if (m.mutants.empty()) doc.warn(root, "make exercise '" + spec.id + "' documents no mutants");
      spec.payload = std::move(m);
      break;
    }
  }
  if (!ok) return std::nullopt;
  return spec;
}

// Checks that need a whole spec: generators accept it and sample programs run.
void check_spec(Doc& doc, const YAML::Node& root, const grade::ExerciseSpec& spec, std::uint64_t budget) {
  for (std::uint64_t seed = 0; seed < kCheckSeeds; ++seed) {
    try {
      auto inst = grade::materialize(spec, seed, budget);
      if (spec.phase() != grade::Phase::Make && !grade::grade(inst, grade::solution_response(inst)).correct)
        doc.error(root, "exercise '" + spec.id + "': the generated answer key does not grade as correct");
    } catch (const grade::GradeError& e) {
      doc.error(root, e.what());
      return;
    }
  }
  auto run_ok = [&](const std::string& src, const char* field) {
    auto out = trace::evaluate(js::parse_program(js::SourceText(src, field)), {budget, false});
    if (!out.status.ok()) doc.error(root[field], std::string(field) + " does not run cleanly: " + out.status.message);
  };
  if (const auto* r = std::get_if<grade::RunPayload>(&spec.payload)) run_ok(r->source, "source");
  if (const auto* m = std::get_if<grade::MakePayload>(&spec.payload)) {
    run_ok(m->reference, "reference");
    auto audit = grade::audit_make(*m, budget);
    for (const auto& r : audit.reference.results)
      if (!r.passed)
        doc.error(root["reference"], "reference solution fails test '" + r.eval + "': " + r.feedback +
                                         (r.actual ? " (got " + *r.actual + ")" : ""));
    for (const auto& mc : audit.mutants) {
      const YAML::Node at = root["mutants"][mc.index];
      if (!mc.failed) doc.error(at, "mutant " + std::to_string(mc.index + 1) + " passes every test");
      else if (!mc.feedback_surfaced)
        doc.error(at, "mutant " + std::to_string(mc.index + 1) + " fails without the feedback '" +
                          m->mutants[mc.index].expect_feedback + "'");
    }
  }
}

std::optional<story::StoryDoc> parse_story_doc(Doc& doc, const YAML::Node& root, const ContentBundle& b,
                                               const std::set<std::string>& media) {
  doc.check_keys(root, {"id", "title", "summary", "requires", "teaches", "pages"});
  story::StoryDoc s;
  auto id = doc.str(root, "id");
  auto title = doc.str(root, "title");
  if (!id || !title) return std::nullopt;
  s.id = *id;
  s.title = *title;
  s.summary = doc.str(root, "summary", false).value_or("");
  s.required = doc.str_list(root, "requires", false);
  s.taught = doc.str_list(root, "teaches", false);
  for (const auto& c : s.required)
    if (!b.graph.has(c)) doc.error(root["requires"], "story '" + s.id + "' requires unknown concept '" + c + "'");
  for (const auto& c : s.taught)
    if (!b.graph.has(c)) doc.error(root["teaches"], "story '" + s.id + "' teaches unknown concept '" + c + "'");

  std::set<std::string> exercised;
  auto pages = doc.seq(root, "pages");
  if (!pages) return std::nullopt;
  if (pages->size() == 0) doc.error(*pages, "story '" + s.id + "' has no pages");
  int n = 0;
  for (const auto& p : *pages) {
    ++n;
    story::Page page;
    if (!p.IsMap()) {
      doc.error(p, "page " + std::to_string(n) + " must be a mapping");
      continue;
    }
    doc.check_keys(p, {"blocks", "exercise"});
    if (auto blocks = doc.seq(p, "blocks", false)) {
      for (const auto& bl : *blocks) {
        if (bl.IsMap() && bl["image"]) {
          doc.check_keys(bl, {"image", "alt"});
          auto src = doc.str(bl, "image");
          auto alt = doc.str(bl, "alt", false);
          if (src) {
            check_image(doc, bl["image"], *src, &media);
            page.blocks.push_back({story::Block::Kind::Image, alt.value_or(""), *src});
          }
        } else if (bl.IsMap() && bl["text"]) {
          doc.check_keys(bl, {"text"});
          if (auto text = doc.str(bl, "text")) page.blocks.push_back({story::Block::Kind::Text, *text, ""});
        } else {
          doc.error(bl, "a block is {text: ...} or {image: ..., alt: ...}");
        }
      }
    }
    if (auto ex = doc.str(p, "exercise", false)) {
      auto it = b.exercises.find(*ex);
      if (it == b.exercises.end()) {
        doc.error(p["exercise"], "story '" + s.id + "' page " + std::to_string(n) + " refers to missing exercise '" +
                                     *ex + "'");
      } else {
        exercised.insert(it->second.concepts.begin(), it->second.concepts.end());
      }
      page.exercise = *ex;
    }
    if (page.blocks.empty() && page.exercise.empty())
      doc.error(p, "page " + std::to_string(n) + " of story '" + s.id + "' is empty");
    s.pages.push_back(std::move(page));
  }
  for (const auto& c : s.taught)
    if (b.graph.has(c) && !exercised.count(c))
      doc.error(root["teaches"], "story '" + s.id + "' teaches '" + c + "' but none of its exercises covers it");
  for (const auto& w : story::validate_primm_order(s, b.exercises)) doc.warn(*pages, w);
  return s;
}

std::vector<fs::path> yaml_files(const fs::path& dir) {
  std::vector<fs::path> out;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return out;
  for (const auto& e : fs::directory_iterator(dir, ec)) {
    auto ext = e.path().extension().string();
    if (e.is_regular_file() && (ext == ".yaml" || ext == ".yml")) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string Diagnostic::format() const {
  std::string out = file;
  if (line > 0) out += ":" + std::to_string(line) + ":" + std::to_string(column);
  out += severity == Severity::Error ? ": error: " : ": warning: ";
  return out + message;
}

std::size_t LoadResult::error_count() const {
  return static_cast<std::size_t>(std::count_if(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) {
    return d.severity == Diagnostic::Severity::Error;
  }));
}

std::optional<grade::ExerciseSpec> parse_exercise(const std::string& text, const std::string& file,
                                                  std::vector<Diagnostic>& diagnostics) {
  Doc doc(file, text, diagnostics);
  auto root = doc.parse();
  if (!root) return std::nullopt;
  return parse_exercise_doc(doc, *root, nullptr, nullptr);
}

LoadResult load(const fs::path& dir) {
  LoadResult result;
  auto& diags = result.diagnostics;
  ContentBundle b;
  b.root = dir;

  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    diags.push_back({Diagnostic::Severity::Error, dir.string(), 0, 0, "not a directory"});
    return result;
  }

  auto open = [&](const fs::path& path, bool required) -> std::optional<std::pair<Doc, YAML::Node>> {
    const std::string rel = fs::relative(path, dir, ec).generic_string();
    auto text = read_text(path);
    if (!text) {
      if (required) diags.push_back({Diagnostic::Severity::Error, rel, 0, 0, "cannot read file"});
      return std::nullopt;
    }
    Doc doc(rel, *text, diags);
    auto root = doc.parse();
    if (!root) return std::nullopt;
    return std::make_pair(std::move(doc), *root);
  };

  std::set<std::string> media;
  if (fs::is_directory(dir / "media", ec)) {
    for (const auto& e : fs::recursive_directory_iterator(dir / "media", ec))
      if (e.is_regular_file()) media.insert(fs::relative(e.path(), dir, ec).generic_string());
  }
  b.media.assign(media.begin(), media.end());

  std::optional<YAML::Node> manifest_stories;
  std::optional<Doc> manifest_doc;
  if (auto m = open(dir / "manifest.yaml", true)) {
    auto& [doc, root] = *m;
    doc.check_keys(root, {"content_version", "title", "mastery_threshold", "max_attempts_before_reveal", "budget",
                          "stories"});
    b.manifest.content_version = doc.str(root, "content_version").value_or("");
    b.manifest.title = doc.str(root, "title", false).value_or("");
    b.manifest.mastery_threshold =
        static_cast<int>(doc.integer(root, "mastery_threshold", false).value_or(b.manifest.mastery_threshold));
    if (b.manifest.mastery_threshold < 1) doc.error(root["mastery_threshold"], "'mastery_threshold' must be at least 1");
    b.manifest.max_attempts_before_reveal = static_cast<int>(
        doc.integer(root, "max_attempts_before_reveal", false).value_or(b.manifest.max_attempts_before_reveal));
    if (b.manifest.max_attempts_before_reveal < 1)
      doc.error(root["max_attempts_before_reveal"], "'max_attempts_before_reveal' must be at least 1");
    auto budget = doc.integer(root, "budget", false);
    if (budget && *budget < 1) doc.error(root["budget"], "'budget' must be positive");
    else if (budget) b.manifest.budget = static_cast<std::uint64_t>(*budget);
    b.manifest.stories = doc.str_list(root, "stories", false);
    if (root["stories"]) manifest_stories = root["stories"];
    manifest_doc.emplace(std::move(doc));
  }

  if (auto g = open(dir / "graph.yaml", true)) {
    auto& [doc, root] = *g;
    doc.check_keys(root, {"concepts", "prerequisites"});
    if (auto concepts = doc.seq(root, "concepts")) {
      for (const auto& c : *concepts) {
        if (!c.IsMap()) {
          doc.error(c, "a concept is a mapping with id, label and module");
          continue;
        }
        doc.check_keys(c, {"id", "label", "module"});
        auto id = doc.str(c, "id");
        if (!id) continue;
        b.graph.nodes.push_back({*id, doc.str(c, "label", false).value_or(*id), doc.str(c, "module", false).value_or("")});
      }
    }
    if (auto edges = doc.seq(root, "prerequisites", false)) {
      for (const auto& e : *edges) {
        if (!e.IsMap()) {
          doc.error(e, "a prerequisite is a mapping with from and to");
          continue;
        }
        auto from = doc.str(e, "from");
        auto to = doc.str(e, "to");
        if (from && to) b.graph.edges.emplace_back(*from, *to);
      }
    }
    for (const auto& d : curriculum::validate_graph(b.graph)) doc.error(root, d.message);
  }

  for (const auto& path : yaml_files(dir / "exercises")) {
    auto e = open(path, true);
    if (!e) continue;
    auto& [doc, root] = *e;
    auto spec = parse_exercise_doc(doc, root, &b.graph, &media);
    if (!spec) continue;
    if (spec->id != path.stem().string())
      doc.warn(root["id"], "exercise id '" + spec->id + "' differs from the file name");
    if (b.exercises.count(spec->id)) {
      doc.error(root["id"], "exercise id '" + spec->id + "' is already used");
      continue;
    }
    check_spec(doc, root, *spec, b.manifest.budget);
    b.exercises.emplace(spec->id, std::move(*spec));
  }

  std::map<std::string, story::StoryDoc> by_id;
  std::vector<std::string> file_order;
  for (const auto& path : yaml_files(dir / "stories")) {
    auto s = open(path, true);
    if (!s) continue;
    auto& [doc, root] = *s;
    auto story = parse_story_doc(doc, root, b, media);
    if (!story) continue;
    if (by_id.count(story->id)) {
      doc.error(root["id"], "story id '" + story->id + "' is already used");
      continue;
    }
    file_order.push_back(story->id);
    by_id.emplace(story->id, std::move(*story));
  }
  std::set<std::string> placed;
  for (std::size_t i = 0; i < b.manifest.stories.size(); ++i) {
    const auto& id = b.manifest.stories[i];
    if (!by_id.count(id)) {
      if (manifest_doc) manifest_doc->error((*manifest_stories)[i], "manifest lists missing story '" + id + "'");
      continue;
    }
    if (placed.insert(id).second) b.stories.push_back(by_id.at(id));
  }
  for (const auto& id : file_order) {
    if (placed.count(id)) continue;
    if (manifest_doc && manifest_stories)
      diags.push_back({Diagnostic::Severity::Warning, "manifest.yaml", 0, 0, "story '" + id + "' is not listed; shelved last"});
    b.stories.push_back(by_id.at(id));
  }

  if (result.error_count() == 0) result.bundle = std::move(b);
  return result;
}

}  // namespace codetales::content
