#include "codetales/gen/blanks.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "codetales/gen/errors.hpp"
#include "codetales/gen/rng.hpp"
#include "codetales/js/identifiers.hpp"
#include "codetales/js/lexer.hpp"
#include "codetales/js/parser.hpp"

namespace codetales::gen {

namespace {

constexpr std::array<std::string_view, 12> kBuiltinGlobals = {
    "console", "Math", "Object", "Array", "String", "Number",
    "parseInt", "parseFloat", "isNaN", "undefined", "NaN", "Infinity",
};

bool literal_token(const js::Token& t) {
  return t.kind == js::TokenKind::Number || t.kind == js::TokenKind::String || t.kind == js::TokenKind::Boolean ||
         t.is_keyword("null");
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Advances a 1-based (line, column) cursor over text.
void move_cursor(js::SourceSpan& at, std::string_view text) {
  for (char c : text) {
    if (c == '\n') {
      ++at.line;
      at.column = 1;
    } else {
      ++at.column;
    }
  }
}

Json span_json(const js::SourceSpan& s) {
  return {{"line", s.line}, {"column", s.column}, {"end_line", s.end_line}, {"end_column", s.end_column}};
}

}  // namespace

bool is_builtin_global(std::string_view name) {
  return std::find(kBuiltinGlobals.begin(), kBuiltinGlobals.end(), name) != kBuiltinGlobals.end();
}

BlanksInstance gen_blanks(std::string_view source, int difficulty, std::uint64_t seed,
                          const std::vector<std::string>& distractors) {
  if (difficulty < kMinDifficulty || difficulty > kMaxDifficulty)
    throw GenError("bad-parameter", "difficulty must be between 1 and 5, got " + std::to_string(difficulty));
  js::SourceText text{std::string(source), "blanks"};
  js::TokenList tokens = js::tokenize(text);
  js::ProgramAst ast = js::parse(tokens);

  std::set<std::pair<int, int>> identifier_starts;
  for (const auto& occ : js::collect_identifiers(ast)) {
    if (occ.role == js::IdentifierRole::MemberProperty || is_builtin_global(occ.name)) continue;
    identifier_starts.insert({occ.span.line, occ.span.column});
  }

  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& t = tokens[i];
    if (t.kind == js::TokenKind::Identifier && identifier_starts.count({t.span.line, t.span.column})) {
      candidates.push_back(i);
    } else if (difficulty >= 4 && literal_token(t)) {
      candidates.push_back(i);
    }
  }
  if (candidates.empty()) throw GenError("no-candidates", "the program has no identifiers or literals to blank");

  SeededRng rng(seed);
  std::vector<bool> blanked(tokens.size(), false);
  bool any = false;
  for (std::size_t idx : candidates) {
    if (rng.chance(static_cast<std::uint64_t>(difficulty), kMaxDifficulty)) {
      blanked[idx] = true;
      any = true;
    }
  }
  if (!any) blanked[rng.pick(candidates)] = true;

  BlanksInstance out;
  out.source = text.text();
  out.difficulty = difficulty;
  out.seed = seed;
  js::SourceSpan cursor{1, 1, 1, 1};
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& t = tokens[i];
    out.masked_source += t.leading_trivia;
    move_cursor(cursor, t.leading_trivia);
    if (!blanked[i]) {
      out.masked_source += t.lexeme;
      move_cursor(cursor, t.lexeme);
      continue;
    }
    Blank b;
    b.id = "b" + std::to_string(out.blanks.size() + 1);
    b.span = {cursor.line, cursor.column, cursor.line, cursor.column + static_cast<int>(kBlankMarker.size())};
    b.source_span = t.span;
    b.answer = t.lexeme;
    out.blanks.push_back(std::move(b));
    out.masked_source += kBlankMarker;
    move_cursor(cursor, kBlankMarker);
  }
  out.masked_source += tokens.trailing_trivia;

  for (const auto& b : out.blanks) out.options.push_back(b.answer);
  for (const auto& d : distractors) {
    std::string t = trim(d);
    if (!t.empty()) out.options.push_back(std::move(t));
  }
  rng.shuffle(out.options);
  return out;
}

BlanksVerdict grade_blanks(const BlanksInstance& instance, const std::map<std::string, std::string>& filled) {
  for (const auto& [id, token] : filled) {
    bool known = std::any_of(instance.blanks.begin(), instance.blanks.end(), [&](const Blank& b) { return b.id == id; });
    if (!known) throw GenError("unknown-blank", "unknown blank id '" + id + "'");
  }
  BlanksVerdict v;
  v.all_correct = true;
  for (const auto& b : instance.blanks) {
    auto it = filled.find(b.id);
    bool ok = it != filled.end() && trim(it->second) == b.answer;
    v.per_blank.emplace_back(b.id, ok);
    v.all_correct = v.all_correct && ok;
  }
  return v;
}

std::string fill_blanks(const BlanksInstance& instance, const std::map<std::string, std::string>& filled) {
  // Blanks are recorded in order, so splice from the back to keep earlier
  // offsets valid.
  std::vector<std::size_t> line_starts{0};
  for (std::size_t i = 0; i < instance.masked_source.size(); ++i)
    if (instance.masked_source[i] == '\n') line_starts.push_back(i + 1);
  std::string out = instance.masked_source;
  for (auto it = instance.blanks.rbegin(); it != instance.blanks.rend(); ++it) {
    std::size_t offset = line_starts[static_cast<std::size_t>(it->span.line - 1)] + static_cast<std::size_t>(it->span.column - 1);
    auto f = filled.find(it->id);
    out.replace(offset, kBlankMarker.size(), f == filled.end() ? std::string(kBlankMarker) : trim(f->second));
  }
  return out;
}

std::map<std::string, std::string> answer_key(const BlanksInstance& instance) {
  std::map<std::string, std::string> out;
  for (const auto& b : instance.blanks) out[b.id] = b.answer;
  return out;
}

Json to_json(const BlanksInstance& instance, bool with_answers) {
  Json blanks = Json::array();
  for (const auto& b : instance.blanks) {
    Json j{{"id", b.id}, {"span", span_json(b.span)}};
    if (with_answers) {
      j["source_span"] = span_json(b.source_span);
      j["answer"] = b.answer;
    }
    blanks.push_back(std::move(j));
  }
  Json out{{"type", "blanks"},
           {"masked_source", instance.masked_source},
           {"blanks", std::move(blanks)},
           {"options", instance.options},
           {"difficulty", instance.difficulty}};
  if (with_answers) {
    out["source"] = instance.source;
    out["seed"] = instance.seed;
  }
  return out;
}

Json to_json(const BlanksVerdict& verdict) {
  Json per = Json::object();
  for (const auto& [id, ok] : verdict.per_blank) per[id] = ok;
  return {{"per_blank", std::move(per)}, {"all_correct", verdict.all_correct}};
}

}  // namespace codetales::gen
