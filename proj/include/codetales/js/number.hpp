#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace codetales::js {

/// Number-to-string as the subject language does it: shortest round-trip
/// digits, no trailing ".0", exponent form outside [1e-7, 1e21).
std::string format_number(double value);

/// Value of a numeric literal token (decimal or 0x hex).
double parse_number_literal(std::string_view lexeme);

/// String-to-number coercion: surrounding whitespace ignored, empty string
/// is 0, anything malformed is NaN.
double string_to_number(std::string_view text);

}  // namespace codetales::js
