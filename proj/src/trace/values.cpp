#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "codetales/js/number.hpp"
#include "codetales/js/printer.hpp"
#include "runtime.hpp"

namespace codetales::trace::detail {

namespace {

/// Canonical array index: "0" or a digit string without leading zero below 2^32-1.
std::optional<std::uint32_t> array_index(std::string_view key) {
  if (key.empty() || key.size() > 10) return std::nullopt;
  if (key.size() > 1 && key[0] == '0') return std::nullopt;
  std::uint64_t n = 0;
  for (char c : key) {
    if (c < '0' || c > '9') return std::nullopt;
    n = n * 10 + static_cast<std::uint64_t>(c - '0');
  }
  if (n >= 0xFFFFFFFFull) return std::nullopt;
  return static_cast<std::uint32_t>(n);
}

bool bare_key(std::string_view key) {
  if (key.empty()) return false;
  auto start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$'; };
  if (!start(key[0])) return false;
  return std::all_of(key.begin(), key.end(),
                     [&](char c) { return start(c) || std::isdigit(static_cast<unsigned char>(c)); });
}

void render_into(const Value& v, std::string& out, std::vector<const void*>& stack);

template <typename Each>
void render_list(std::size_t count, char open, char close, std::string& out, Each each) {
  out += open;
  const std::size_t shown = std::min(count, kRenderLimit);
  for (std::size_t i = 0; i < shown; ++i) {
    if (i) out += ", ";
    each(i);
  }
  if (count > shown) out += ", ... " + std::to_string(count - shown) + " more items";
  out += close;
}

void render_into(const Value& v, std::string& out, std::vector<const void*>& stack) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Undefined>) {
          out += "undefined";
        } else if constexpr (std::is_same_v<T, Null>) {
          out += "null";
        } else if constexpr (std::is_same_v<T, bool>) {
          out += x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          out += js::format_number(x);
        } else if constexpr (std::is_same_v<T, std::string>) {
          out += js::quote_string(x);
        } else if constexpr (std::is_same_v<T, FunctionObject*>) {
          out += "[Function " + x->name + "]";
        } else {
          if (std::find(stack.begin(), stack.end(), x) != stack.end()) {
            out += "[Circular]";
            return;
          }
          stack.push_back(x);
          if constexpr (std::is_same_v<T, ArrayObject*>) {
            render_list(x->items.size(), '[', ']', out, [&](std::size_t i) { render_into(x->items[i], out, stack); });
          } else {
            auto keys = x->keys();
            render_list(keys.size(), '{', '}', out, [&](std::size_t i) {
              out += bare_key(keys[i]) ? keys[i] : js::quote_string(keys[i]);
              out += ": ";
              render_into(*x->find(keys[i]), out, stack);
            });
          }
          stack.pop_back();
        }
      },
      v);
}

std::string join_for_string(const ArrayObject& a, std::vector<const void*>& stack);

std::string display(const Value& v, std::vector<const void*>& stack) {
  if (const auto* a = std::get_if<ArrayObject*>(&v)) return join_for_string(**a, stack);
  return to_display_string(v);
}

std::string join_for_string(const ArrayObject& a, std::vector<const void*>& stack) {
  if (std::find(stack.begin(), stack.end(), &a) != stack.end()) return "";
  stack.push_back(&a);
  std::string out;
  for (std::size_t i = 0; i < a.items.size(); ++i) {
    if (i) out += ',';
    const Value& item = a.items[i];
    if (std::holds_alternative<Undefined>(item) || std::holds_alternative<Null>(item)) continue;
    out += display(item, stack);
  }
  stack.pop_back();
  return out;
}

bool deep_equals_impl(const Value& a, const Value& b, std::set<std::pair<const void*, const void*>>& seen) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<double>(&a)) {
    double y = std::get<double>(b);
    return *x == y || (std::isnan(*x) && std::isnan(y));
  }
  if (const auto* x = std::get_if<ArrayObject*>(&a)) {
    ArrayObject* y = std::get<ArrayObject*>(b);
    if (*x == y) return true;
    if (!seen.insert({*x, y}).second) return true;
    if ((*x)->items.size() != y->items.size()) return false;
    for (std::size_t i = 0; i < y->items.size(); ++i)
      if (!deep_equals_impl((*x)->items[i], y->items[i], seen)) return false;
    return true;
  }
  if (const auto* x = std::get_if<PlainObject*>(&a)) {
    PlainObject* y = std::get<PlainObject*>(b);
    if (*x == y) return true;
    if (!seen.insert({*x, y}).second) return true;
    if ((*x)->props.size() != y->props.size()) return false;
    for (const auto& [key, value] : (*x)->props) {
      const Value* other = y->find(key);
      if (!other || !deep_equals_impl(value, *other, seen)) return false;
    }
    return true;
  }
  return a == b;
}

}  // namespace

const Value* PlainObject::find(std::string_view key) const {
  for (const auto& [k, v] : props)
    if (k == key) return &v;
  return nullptr;
}

void PlainObject::set(std::string key, Value value) {
  for (auto& [k, v] : props) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  props.emplace_back(std::move(key), std::move(value));
}

std::vector<std::string> PlainObject::keys() const {
  std::vector<std::pair<std::uint32_t, std::string>> indexed;
  std::vector<std::string> named;
  for (const auto& [k, v] : props) {
    if (auto idx = array_index(k)) indexed.emplace_back(*idx, k);
    else named.push_back(k);
  }
  std::sort(indexed.begin(), indexed.end());
  std::vector<std::string> out;
  out.reserve(props.size());
  for (auto& [i, k] : indexed) out.push_back(std::move(k));
  for (auto& k : named) out.push_back(std::move(k));
  return out;
}

Binding* Environment::find_local(std::string_view name) {
  for (auto& b : bindings)
    if (b.name == name) return &b;
  return nullptr;
}

bool is_container(const Value& v) {
  return std::holds_alternative<ArrayObject*>(v) || std::holds_alternative<PlainObject*>(v);
}

bool truthy(const Value& v) {
  return std::visit(
      [](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Undefined> || std::is_same_v<T, Null>) return false;
        else if constexpr (std::is_same_v<T, bool>) return x;
        else if constexpr (std::is_same_v<T, double>) return !(x == 0 || std::isnan(x));
        else if constexpr (std::is_same_v<T, std::string>) return !x.empty();
        else return true;
      },
      v);
}

Value to_primitive(const Value& v) {
  if (std::holds_alternative<ArrayObject*>(v) || std::holds_alternative<PlainObject*>(v) ||
      std::holds_alternative<FunctionObject*>(v))
    return to_display_string(v);
  return v;
}

double to_number(const Value& v) {
  return std::visit(
      [&](const auto& x) -> double {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Undefined>) return std::numeric_limits<double>::quiet_NaN();
        else if constexpr (std::is_same_v<T, Null>) return 0;
        else if constexpr (std::is_same_v<T, bool>) return x ? 1 : 0;
        else if constexpr (std::is_same_v<T, double>) return x;
        else if constexpr (std::is_same_v<T, std::string>) return js::string_to_number(x);
        else return js::string_to_number(to_display_string(v));
      },
      v);
}

std::string to_display_string(const Value& v) {
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Undefined>) return "undefined";
        else if constexpr (std::is_same_v<T, Null>) return "null";
        else if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
        else if constexpr (std::is_same_v<T, double>) return js::format_number(x);
        else if constexpr (std::is_same_v<T, std::string>) return x;
        else if constexpr (std::is_same_v<T, ArrayObject*>) {
          std::vector<const void*> stack;
          return join_for_string(*x, stack);
        } else if constexpr (std::is_same_v<T, PlainObject*>) return "[object Object]";
        else return "function " + x->name + "() { [code] }";
      },
      v);
}

bool strict_equals(const Value& a, const Value& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<double>(&a)) return *x == std::get<double>(b);
  return a == b;
}

bool loose_equals(const Value& a, const Value& b) {
  if (a.index() == b.index()) return strict_equals(a, b);
  auto nullish = [](const Value& v) { return std::holds_alternative<Undefined>(v) || std::holds_alternative<Null>(v); };
  if (nullish(a) || nullish(b)) return nullish(a) && nullish(b);
  if (std::holds_alternative<bool>(a)) return loose_equals(to_number(a), b);
  if (std::holds_alternative<bool>(b)) return loose_equals(a, to_number(b));
  const bool a_obj = is_container(a) || std::holds_alternative<FunctionObject*>(a);
  const bool b_obj = is_container(b) || std::holds_alternative<FunctionObject*>(b);
  if (a_obj && !b_obj) return loose_equals(to_primitive(a), b);
  if (b_obj && !a_obj) return loose_equals(a, to_primitive(b));
  if (a_obj && b_obj) return false;
  // number vs string
  return to_number(a) == to_number(b);
}

bool deep_equals(const Value& a, const Value& b) {
  std::set<std::pair<const void*, const void*>> seen;
  return deep_equals_impl(a, b, seen);
}

std::string_view type_name(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string_view {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Undefined>) return "undefined";
        else if constexpr (std::is_same_v<T, Null>) return "null";
        else if constexpr (std::is_same_v<T, bool>) return "boolean";
        else if constexpr (std::is_same_v<T, double>) return "number";
        else if constexpr (std::is_same_v<T, std::string>) return "string";
        else if constexpr (std::is_same_v<T, FunctionObject*>) return "function";
        else return "object";
      },
      v);
}

std::string render(const Value& v) {
  std::string out;
  std::vector<const void*> stack;
  render_into(v, out, stack);
  return out;
}

std::string render_log_argument(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  return render(v);
}

std::string to_fixed(double value, int digits) {
  if (std::isnan(value)) return "NaN";
  if (std::abs(value) >= 1e21) return js::format_number(value);
  // printf rounds exact ties to even; the subject language rounds them away
  // from zero. Inspect the exact binary expansion to spot a tie.
  std::vector<char> exact(1200);
  std::snprintf(exact.data(), exact.size(), "%.1100f", std::abs(value));
  std::string text(exact.data());
  const auto dot = text.find('.');
  const std::size_t cut = dot + 1 + static_cast<std::size_t>(digits);
  bool tie = cut < text.size() && text[cut] == '5' &&
             std::all_of(text.begin() + static_cast<std::ptrdiff_t>(cut) + 1, text.end(), [](char c) { return c == '0'; });
  double magnitude = std::abs(value);
  if (tie) magnitude = std::nextafter(magnitude, std::numeric_limits<double>::infinity());
  std::vector<char> buf(400);
  std::snprintf(buf.data(), buf.size(), "%.*f", digits, magnitude);
  std::string out(buf.data());
  if (value < 0) out = "-" + out;
  return out;
}

}  // namespace codetales::trace::detail
