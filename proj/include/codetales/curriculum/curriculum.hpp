#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace codetales::curriculum {

using Json = nlohmann::ordered_json;

struct ConceptNode {
  std::string id;
  std::string label;
  std::string module;  // colour group
};

struct ConceptGraph {
  std::vector<ConceptNode> nodes;
  /// Prerequisite pairs (from, to): `from` is taught before `to`.
  std::vector<std::pair<std::string, std::string>> edges;

  bool has(const std::string& id) const;
};

struct GraphDiagnostic {
  std::string kind;  // "cycle", "dangling" or "duplicate"
  std::string message;
  std::vector<std::string> path;  // cycle path, first node repeated at the end
};

/// Empty result means the graph is valid.
std::vector<GraphDiagnostic> validate_graph(const ConceptGraph& graph);

inline constexpr int kDefaultMasteryThreshold = 3;

struct MasteryState {
  int threshold = kDefaultMasteryThreshold;
  std::map<std::string, int> counts;

  int count(const std::string& id) const;
  bool mastered(const std::string& id) const { return count(id) >= threshold; }
  std::set<std::string> mastered_set() const;
};

class CurriculumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adds one to each id when the verdict is correct and mastery
/// eligible; otherwise returns the state unchanged. Unknown concepts throw
/// CurriculumError.
MasteryState apply_result(const MasteryState& state, const ConceptGraph& graph,
                          const std::vector<std::string>& concepts, bool correct, bool mastery_eligible);

enum class LockStatus { Locked, Unlocked, Completed };
std::string_view to_string(LockStatus status);

struct StoryGate {
  std::string id;
  std::vector<std::string> required;
};

struct StoryLock {
  LockStatus status = LockStatus::Locked;
  std::vector<std::string> missing;  // required concepts not yet mastered
};

/// A story is unlocked iff all its required concepts are mastered;
/// `completed` upgrades an unlocked story.
std::map<std::string, StoryLock> compute_locks(const std::vector<StoryGate>& stories,
                                               const MasteryState& mastery,
                                               const std::set<std::string>& completed = {});

Json to_json(const ConceptGraph& graph);
/// {id: {count, mastered}} for every id in the graph.
Json progress_json(const ConceptGraph& graph, const MasteryState& mastery);

}  // namespace codetales::curriculum
