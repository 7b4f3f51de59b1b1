#include "codetales/gen/parsons.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "codetales/gen/errors.hpp"
#include "codetales/gen/rng.hpp"
#include "codetales/js/parser.hpp"
#include "codetales/js/printer.hpp"

namespace codetales::gen {

namespace {

constexpr int kShuffleAttempts = 64;

std::string indent_text(int level) { return std::string(static_cast<std::size_t>(level * js::kIndentWidth), ' '); }

const Fragment& by_id(const ParsonsInstance& instance, const std::string& id) {
  for (const auto& f : instance.fragments)
    if (f.id == id) return f;
  throw GenError("bad-arrangement", "unknown fragment id '" + id + "'");
}

}  // namespace

ParsonsInstance gen_parsons(std::string_view source, std::uint64_t seed, int block_size,
                            const std::vector<int>& groups) {
  auto program = js::parse_program(js::SourceText(std::string(source), "parsons"));
  auto lines = js::print_lines(program);

  std::vector<int> sizes = groups;
  if (sizes.empty()) {
    if (block_size < 1) throw GenError("bad-parameter", "block size must be at least 1");
    for (std::size_t done = 0; done < lines.size(); done += static_cast<std::size_t>(block_size))
      sizes.push_back(static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(block_size), lines.size() - done)));
  } else {
    const int total = std::accumulate(sizes.begin(), sizes.end(), 0);
    if (std::any_of(sizes.begin(), sizes.end(), [](int s) { return s < 1; }) ||
        total != static_cast<int>(lines.size()))
      throw GenError("bad-parameter", "fragment groups must be positive and cover all " +
                                          std::to_string(lines.size()) + " printed lines");
  }
  if (sizes.size() < 2)
    throw GenError("too-few-fragments", "a Parsons puzzle needs at least two fragments, got " +
                                            std::to_string(sizes.size()));

  std::vector<Fragment> solution;
  std::size_t at = 0;
  for (int size : sizes) {
    Fragment f;
    f.correct_index = static_cast<int>(solution.size());
    f.correct_indent = lines[at].indent;
    for (int k = 1; k < size; ++k) f.correct_indent = std::min(f.correct_indent, lines[at + static_cast<std::size_t>(k)].indent);
    for (int k = 0; k < size; ++k, ++at) {
      if (k) f.text += '\n';
      f.text += indent_text(lines[at].indent - f.correct_indent) + lines[at].text;
    }
    solution.push_back(std::move(f));
  }

  ParsonsInstance out;
  out.seed = seed;
  out.canonical = js::print(program);

  std::vector<std::size_t> order(solution.size());
  std::iota(order.begin(), order.end(), 0);
  auto identity = [&](const std::vector<std::size_t>& o) {
    for (std::size_t i = 0; i < o.size(); ++i)
      if (o[i] != i) return false;
    return true;
  };
  auto same_text = [&](const std::vector<std::size_t>& o) {
    for (std::size_t i = 0; i < o.size(); ++i)
      if (solution[o[i]].text != solution[i].text) return false;
    return true;
  };
  std::set<std::string> distinct;
  for (const auto& f : solution) distinct.insert(f.text);
  const bool text_can_differ = distinct.size() > 1;

  SeededRng rng(seed);
  bool found = false;
  for (int attempt = 0; attempt < kShuffleAttempts && !found; ++attempt) {
    rng.shuffle(order);
    found = !identity(order) && (!text_can_differ || !same_text(order));
  }
  if (!found) {
    // A rotation by one changes the text sequence unless all texts match.
    std::iota(order.begin(), order.end(), 0);
    std::rotate(order.begin(), order.begin() + 1, order.end());
  }

  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    Fragment f = solution[order[pos]];
    f.id = "f" + std::to_string(pos + 1);
    out.fragments.push_back(std::move(f));
  }
  return out;
}

ParsonsVerdict grade_parsons(const ParsonsInstance& instance, const std::vector<Placement>& arrangement) {
  std::set<std::string> seen;
  for (const auto& p : arrangement) {
    by_id(instance, p.id);
    if (!seen.insert(p.id).second) throw GenError("bad-arrangement", "fragment '" + p.id + "' placed twice");
  }
  if (seen.size() != instance.fragments.size()) {
    for (const auto& f : instance.fragments)
      if (!seen.count(f.id)) throw GenError("bad-arrangement", "fragment '" + f.id + "' is missing");
  }

  std::vector<const Fragment*> expected(instance.fragments.size());
  for (const auto& f : instance.fragments) expected[static_cast<std::size_t>(f.correct_index)] = &f;

  ParsonsVerdict v;
  for (std::size_t pos = 0; pos < arrangement.size(); ++pos) {
    const Fragment& placed = by_id(instance, arrangement[pos].id);
    if (placed.text != expected[pos]->text) {
      v.mismatch_position = static_cast<int>(pos + 1);
      v.mismatch_kind = "order";
      return v;
    }
    if (arrangement[pos].indent != expected[pos]->correct_indent) {
      v.mismatch_position = static_cast<int>(pos + 1);
      v.mismatch_kind = "indent";
      return v;
    }
  }
  v.correct = true;
  return v;
}

std::vector<Placement> solution_arrangement(const ParsonsInstance& instance) {
  std::vector<Placement> out(instance.fragments.size());
  for (const auto& f : instance.fragments)
    out[static_cast<std::size_t>(f.correct_index)] = {f.id, f.correct_indent};
  return out;
}

std::string assemble(const ParsonsInstance& instance, const std::vector<Placement>& arrangement) {
  std::string out;
  for (const auto& p : arrangement) {
    const Fragment& f = by_id(instance, p.id);
    std::size_t start = 0;
    while (start <= f.text.size()) {
      auto end = f.text.find('\n', start);
      if (end == std::string::npos) end = f.text.size();
      if (!out.empty()) out += '\n';
      out += indent_text(p.indent) + f.text.substr(start, end - start);
      start = end + 1;
    }
  }
  return out;
}

Json to_json(const ParsonsInstance& instance, bool with_answers) {
  Json fragments = Json::array();
  for (const auto& f : instance.fragments) {
    Json j{{"id", f.id}, {"text", f.text}};
    if (with_answers) {
      j["correct_index"] = f.correct_index;
      j["correct_indent"] = f.correct_indent;
    }
    fragments.push_back(std::move(j));
  }
  Json out{{"type", "parsons"},
           {"fragments", std::move(fragments)},
           {"two_dimensional", instance.two_dimensional},
           {"indent_width", js::kIndentWidth}};
  if (with_answers) {
    out["canonical"] = instance.canonical;
    out["seed"] = instance.seed;
  }
  return out;
}

Json to_json(const ParsonsVerdict& verdict) {
  Json out{{"correct", verdict.correct}};
  if (verdict.mismatch_position) {
    out["mismatch_position"] = *verdict.mismatch_position;
    out["mismatch_kind"] = verdict.mismatch_kind;
  }
  return out;
}

}  // namespace codetales::gen
