#include "codetales/js/source.hpp"

namespace codetales::js {

SourceText::SourceText(std::string_view text, std::string name) : name_(std::move(name)) {
  text_.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\t') {
      text_ += "  ";
    } else if (c == '\r') {
      if (i + 1 < text.size() && text[i + 1] == '\n') continue;
      text_ += '\n';
    } else {
      text_ += c;
    }
  }
}

std::string SyntaxError::located() const {
  return std::to_string(span_.line) + ":" + std::to_string(span_.column) + ": " + what();
}

}  // namespace codetales::js
