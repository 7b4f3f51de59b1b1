#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace codetales::gen {

using Json = nlohmann::ordered_json;

struct Fragment {
  std::string id;        // opaque; assigned in presented order
  std::string text;      // dedented; inner lines keep relative indentation
  int correct_index = 0; // 0-based position in the solution
  int correct_indent = 0;
};

struct ParsonsInstance {
  /// Fragments in the order shown to the learner.
  std::vector<Fragment> fragments;
  /// Canonical printing of the source; the solution.
  std::string canonical;
  std::uint64_t seed = 0;
  bool two_dimensional = true;
};

struct Placement {
  std::string id;
  int indent = 0;
};

/// Splits the canonical printing into fragments of `block_size` lines, or
/// into the explicit `groups` (line counts summing to the program length)
/// when given. Throws GenError("too-few-fragments") for fewer than two
/// fragments and GenError("bad-parameter") for inconsistent sizes.
ParsonsInstance gen_parsons(std::string_view source, std::uint64_t seed, int block_size = 1,
                            const std::vector<int>& groups = {});

struct ParsonsVerdict {
  bool correct = false;
  /// 1-based position of the first wrong slot.
  std::optional<int> mismatch_position;
  std::string mismatch_kind;  // "order" or "indent"
};

/// Throws GenError("bad-arrangement") when the arrangement is not a
/// permutation of the fragment ids. Fragments with identical text are
/// interchangeable.
ParsonsVerdict grade_parsons(const ParsonsInstance& instance, const std::vector<Placement>& arrangement);

/// The arrangement that solves the puzzle.
std::vector<Placement> solution_arrangement(const ParsonsInstance& instance);

/// Source text produced by an arrangement (indent unit of two spaces).
std::string assemble(const ParsonsInstance& instance, const std::vector<Placement>& arrangement);

Json to_json(const ParsonsInstance& instance, bool with_answers);
Json to_json(const ParsonsVerdict& verdict);

}  // namespace codetales::gen
