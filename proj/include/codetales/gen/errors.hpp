#pragma once

#include <stdexcept>
#include <string>

namespace codetales::gen {

/// Generator or grader failure. `code` is a stable machine-readable tag such
/// as "no-candidates" or "too-few-fragments".
class GenError : public std::runtime_error {
 public:
  GenError(std::string code, const std::string& message) : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace codetales::gen
