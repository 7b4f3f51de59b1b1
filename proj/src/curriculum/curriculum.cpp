#include "codetales/curriculum/curriculum.hpp"

#include <algorithm>
#include <functional>

namespace codetales::curriculum {

bool ConceptGraph::has(const std::string& id) const {
  return std::any_of(nodes.begin(), nodes.end(), [&](const ConceptNode& n) { return n.id == id; });
}

std::vector<GraphDiagnostic> validate_graph(const ConceptGraph& graph) {
  std::vector<GraphDiagnostic> out;
  std::set<std::string> ids;
  for (const auto& n : graph.nodes)
    if (!ids.insert(n.id).second) out.push_back({"duplicate", "id '" + n.id + "' is defined more than once", {}});

  std::map<std::string, std::vector<std::string>> next;
  for (const auto& [from, to] : graph.edges) {
    bool ok = true;
    for (const auto* end : {&from, &to}) {
      if (!ids.count(*end)) {
        out.push_back({"dangling", "edge " + from + " -> " + to + " refers to unknown id '" + *end + "'", {}});
        ok = false;
      }
    }
    if (ok) next[from].push_back(to);
  }

  // Depth-first search in node order; one diagnostic per back edge found.
  enum { White, Grey, Black };
  std::map<std::string, int> colour;
  std::vector<std::string> stack;
  std::function<void(const std::string&)> visit = [&](const std::string& n) {
    colour[n] = Grey;
    stack.push_back(n);
    for (const auto& m : next[n]) {
      if (colour[m] == Grey) {
        auto start = std::find(stack.begin(), stack.end(), m);
        std::vector<std::string> path(start, stack.end());
        path.push_back(m);
        std::string text;
        for (const auto& p : path) text += (text.empty() ? "" : " -> ") + p;
        out.push_back({"cycle", "prerequisite cycle: " + text, path});
      } else if (colour[m] == White) {
        visit(m);
      }
    }
    stack.pop_back();
    colour[n] = Black;
  };
  for (const auto& n : graph.nodes)
    if (colour[n.id] == White) visit(n.id);
  return out;
}

int MasteryState::count(const std::string& id) const {
  auto it = counts.find(id);
  return it == counts.end() ? 0 : it->second;
}

std::set<std::string> MasteryState::mastered_set() const {
  std::set<std::string> out;
  for (const auto& [c, n] : counts)
    if (n >= threshold) out.insert(c);
  return out;
}

MasteryState apply_result(const MasteryState& state, const ConceptGraph& graph,
                          const std::vector<std::string>& concepts, bool correct, bool mastery_eligible) {
  for (const auto& c : concepts)
    if (!graph.has(c)) throw CurriculumError("unknown id '" + c + "'");
  MasteryState next = state;
  if (!correct || !mastery_eligible) return next;
  std::set<std::string> seen;
  for (const auto& c : concepts)
    if (seen.insert(c).second) ++next.counts[c];
  return next;
}

std::string_view to_string(LockStatus status) {
  switch (status) {
    case LockStatus::Locked: return "locked";
    case LockStatus::Unlocked: return "unlocked";
    case LockStatus::Completed: return "completed";
  }
  return "locked";
}

std::map<std::string, StoryLock> compute_locks(const std::vector<StoryGate>& stories,
                                               const MasteryState& mastery, const std::set<std::string>& completed) {
  std::map<std::string, StoryLock> out;
  for (const auto& s : stories) {
    StoryLock lock;
    for (const auto& c : s.required)
      if (!mastery.mastered(c)) lock.missing.push_back(c);
    if (!lock.missing.empty()) lock.status = LockStatus::Locked;
    else lock.status = completed.count(s.id) ? LockStatus::Completed : LockStatus::Unlocked;
    out[s.id] = std::move(lock);
  }
  return out;
}

Json to_json(const ConceptGraph& graph) {
  Json nodes = Json::array();
  for (const auto& n : graph.nodes) nodes.push_back({{"id", n.id}, {"label", n.label}, {"module", n.module}});
  Json edges = Json::array();
  for (const auto& [from, to] : graph.edges) edges.push_back({{"from", from}, {"to", to}});
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

Json progress_json(const ConceptGraph& graph, const MasteryState& mastery) {
  Json out = Json::object();
  for (const auto& n : graph.nodes) out[n.id] = {{"count", mastery.count(n.id)}, {"mastered", mastery.mastered(n.id)}};
  return out;
}

}  // namespace codetales::curriculum
