#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "codetales/js/source.hpp"
#include "json.hpp"

namespace codetales::gen {

using Json = nlohmann::ordered_json;

/// Names that resolve to built-in globals; never blanked.
bool is_builtin_global(std::string_view name);

struct Blank {
  std::string id;             // "b1", "b2", ... in source order
  js::SourceSpan span;        // position of "__" in the masked source
  js::SourceSpan source_span; // position of the token in the original
  std::string answer;
};

struct BlanksInstance {
  std::string source;  // normalised original text
  std::string masked_source;
  std::vector<Blank> blanks;
  std::vector<std::string> options;
  int difficulty = 1;
  std::uint64_t seed = 0;
};

inline constexpr int kMinDifficulty = 1;
inline constexpr int kMaxDifficulty = 5;
inline constexpr std::string_view kBlankMarker = "__";

/// Throws GenError("no-candidates") when nothing can be blanked, and
/// GenError("bad-parameter") for a difficulty outside 1..5. Syntax errors
/// propagate as js::SyntaxError.
BlanksInstance gen_blanks(std::string_view source, int difficulty, std::uint64_t seed,
                          const std::vector<std::string>& distractors = {});

struct BlanksVerdict {
  std::vector<std::pair<std::string, bool>> per_blank;  // blank order
  bool all_correct = false;
};

/// Missing blanks count as wrong; an unknown blank id throws
/// GenError("unknown-blank").
BlanksVerdict grade_blanks(const BlanksInstance& instance, const std::map<std::string, std::string>& filled);

/// Masked source with each blank replaced by the given token.
std::string fill_blanks(const BlanksInstance& instance, const std::map<std::string, std::string>& filled);

/// Answer key as a blank-id -> token map.
std::map<std::string, std::string> answer_key(const BlanksInstance& instance);

Json to_json(const BlanksInstance& instance, bool with_answers);
Json to_json(const BlanksVerdict& verdict);

}  // namespace codetales::gen
