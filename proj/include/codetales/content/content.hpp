#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "codetales/story/story.hpp"

namespace codetales::content {

using Json = nlohmann::ordered_json;

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  std::string file;  // relative to the content directory
  int line = 0;      // 1-based; 0 when unknown
  int column = 0;
  std::string message;

  /// "file:line:col: error: message"
  std::string format() const;
};

struct Manifest {
  std::string content_version;
  std::string title;
  int mastery_threshold = curriculum::kDefaultMasteryThreshold;
  int max_attempts_before_reveal = 3;
  std::uint64_t budget = trace::kDefaultBudget;
  std::vector<std::string> stories;  // shelf order
};

struct ContentBundle {
  std::filesystem::path root;
  Manifest manifest;
  curriculum::ConceptGraph graph;
  std::vector<story::StoryDoc> stories;
  story::ExerciseMap exercises;
  std::vector<std::string> media;  // relative paths, sorted
};

struct LoadResult {
  std::optional<ContentBundle> bundle;  // present iff there are no errors
  std::vector<Diagnostic> diagnostics;  // errors and warnings, in discovery order

  bool ok() const { return bundle.has_value(); }
  std::size_t error_count() const;
};

/// Reads manifest.yaml, graph.yaml, stories/*.yaml, exercises/*.yaml and
/// media/ under `dir`. Never stops at the first problem.
LoadResult load(const std::filesystem::path& dir);

/// Parses one exercise document (YAML text). Used by `grade make`.
std::optional<grade::ExerciseSpec> parse_exercise(const std::string& text, const std::string& file,
                                                  std::vector<Diagnostic>& diagnostics);

}  // namespace codetales::content
