// Global objects and methods available to programs: console.log, Math,
// String/Number conversions, Object.keys/values, Array.isArray and the
// common array, string and number methods.

#include <algorithm>
#include <cmath>
#include <limits>

#include "codetales/js/number.hpp"
#include "runtime.hpp"

namespace codetales::trace::detail {

namespace {

using Args = std::span<const Value>;

const Value& arg(Args args, std::size_t i) {
  static const Value kUndefined = Undefined{};
  return i < args.size() ? args[i] : kUndefined;
}

double integer_arg(Args args, std::size_t i, double fallback) {
  if (i >= args.size() || std::holds_alternative<Undefined>(args[i])) return fallback;
  double d = to_number(args[i]);
  if (std::isnan(d)) return 0;
  return std::trunc(d);
}

/// Resolves a relative start/end index the way slice() does.
std::size_t relative_index(double rel, std::size_t len) {
  if (rel < 0) return static_cast<std::size_t>(std::max(0.0, static_cast<double>(len) + rel));
  return static_cast<std::size_t>(std::min(rel, static_cast<double>(len)));
}

ArrayObject& self_array(const Value& self) { return *std::get<ArrayObject*>(self); }
const std::string& self_string(const Value& self) { return std::get<std::string>(self); }

void check_length(std::size_t n, std::string_view what) {
  if (n > kMaxLength) throw RuntimeError{"RangeError: " + std::string(what) + " is too long"};
}

// console ----------------------------------------------------------------------

Value console_log(Interpreter& in, const Value&, Args args) {
  std::string line;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) line += ' ';
    line += render_log_argument(args[i]);
  }
  in.charge(line.size() / 64);
  in.print_line(std::move(line));
  return Undefined{};
}

// Math -------------------------------------------------------------------------

template <double (*F)(double)>
Value math_unary(Interpreter&, const Value&, Args args) {
  return F(to_number(arg(args, 0)));
}

double js_round(double x) {
  if (std::isnan(x) || std::isinf(x)) return x;
  double f = std::floor(x);
  return (x - f >= 0.5) ? f + 1 : f;
}
double js_sign(double x) {
  if (std::isnan(x) || x == 0) return x;
  return x > 0 ? 1 : -1;
}
double js_abs(double x) { return std::fabs(x); }
double js_floor(double x) { return std::floor(x); }
double js_ceil(double x) { return std::ceil(x); }
double js_sqrt(double x) { return std::sqrt(x); }
double js_trunc(double x) { return std::trunc(x); }

Value math_max(Interpreter&, const Value&, Args args) {
  double out = -std::numeric_limits<double>::infinity();
  for (const auto& a : args) {
    double d = to_number(a);
    if (std::isnan(d)) return std::numeric_limits<double>::quiet_NaN();
    if (d > out || (d == 0 && out == 0 && !std::signbit(d))) out = d;
  }
  return out;
}

Value math_min(Interpreter&, const Value&, Args args) {
  double out = std::numeric_limits<double>::infinity();
  for (const auto& a : args) {
    double d = to_number(a);
    if (std::isnan(d)) return std::numeric_limits<double>::quiet_NaN();
    if (d < out || (d == 0 && out == 0 && std::signbit(d))) out = d;
  }
  return out;
}

Value math_pow(Interpreter&, const Value&, Args args) {
  double base = to_number(arg(args, 0));
  double exp = to_number(arg(args, 1));
  if (std::isnan(exp)) return std::numeric_limits<double>::quiet_NaN();
  if ((base == 1 || base == -1) && std::isinf(exp)) return std::numeric_limits<double>::quiet_NaN();
  return std::pow(base, exp);
}

// Conversions ------------------------------------------------------------------

Value global_string(Interpreter&, const Value&, Args args) {
  return args.empty() ? std::string() : to_display_string(args[0]);
}

Value global_number(Interpreter&, const Value&, Args args) { return args.empty() ? 0.0 : to_number(args[0]); }

Value global_is_nan(Interpreter&, const Value&, Args args) { return std::isnan(to_number(arg(args, 0))); }

Value global_parse_int(Interpreter&, const Value&, Args args) {
  std::string s = to_display_string(arg(args, 0));
  double radix = integer_arg(args, 1, 0);
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  double sign = 1;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    if (s[i] == '-') sign = -1;
    ++i;
  }
  int base = static_cast<int>(radix);
  if (base == 0) base = 10;
  if ((radix == 0 || radix == 16) && i + 1 < s.size() && s[i] == '0' && (s[i + 1] == 'x' || s[i + 1] == 'X')) {
    base = 16;
    i += 2;
  }
  if (base < 2 || base > 36) return std::numeric_limits<double>::quiet_NaN();
  double out = 0;
  bool any = false;
  for (; i < s.size(); ++i) {
    int d;
    char c = static_cast<char>(std::tolower(static_cast<unsigned char>(s[i])));
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'z') d = c - 'a' + 10;
    else break;
    if (d >= base) break;
    out = out * base + d;
    any = true;
  }
  if (!any) return std::numeric_limits<double>::quiet_NaN();
  return sign * out;
}

Value global_parse_float(Interpreter&, const Value&, Args args) {
  std::string s = to_display_string(arg(args, 0));
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  // Longest prefix that is a valid decimal literal (with optional sign).
  double best = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t end = s.size(); end > i; --end) {
    std::string_view candidate(s.data() + i, end - i);
    if (std::isspace(static_cast<unsigned char>(candidate.back()))) continue;
    double d = js::string_to_number(candidate);
    bool hexish = candidate.find_first_of("xX") != std::string_view::npos;
    if (!std::isnan(d) && !hexish) {
      best = d;
      break;
    }
  }
  return best;
}

// Object / Array statics ---------------------------------------------------------

Value object_keys(Interpreter& in, const Value&, Args args) {
  const Value& target = arg(args, 0);
  std::vector<Value> keys;
  if (const auto* o = std::get_if<PlainObject*>(&target)) {
    for (auto& k : (*o)->keys()) keys.emplace_back(std::move(k));
  } else if (const auto* a = std::get_if<ArrayObject*>(&target)) {
    for (std::size_t i = 0; i < (*a)->items.size(); ++i) keys.emplace_back(std::to_string(i));
  } else if (std::holds_alternative<Undefined>(target) || std::holds_alternative<Null>(target)) {
    throw RuntimeError{"TypeError: Cannot convert undefined or null to object"};
  }
  in.charge(keys.size() / 16);
  return in.new_array(std::move(keys));
}

Value object_values(Interpreter& in, const Value&, Args args) {
  const Value& target = arg(args, 0);
  std::vector<Value> values;
  if (const auto* o = std::get_if<PlainObject*>(&target)) {
    for (const auto& k : (*o)->keys()) values.push_back(*(*o)->find(k));
  } else if (const auto* a = std::get_if<ArrayObject*>(&target)) {
    values = (*a)->items;
  } else if (std::holds_alternative<Undefined>(target) || std::holds_alternative<Null>(target)) {
    throw RuntimeError{"TypeError: Cannot convert undefined or null to object"};
  }
  in.charge(values.size() / 16);
  return in.new_array(std::move(values));
}

Value array_is_array(Interpreter&, const Value&, Args args) {
  return std::holds_alternative<ArrayObject*>(arg(args, 0));
}

// Array methods ------------------------------------------------------------------

Value array_push(Interpreter&, const Value& self, Args args) {
  auto& items = self_array(self).items;
  check_length(items.size() + args.size(), "array");
  items.insert(items.end(), args.begin(), args.end());
  return static_cast<double>(items.size());
}

Value array_pop(Interpreter&, const Value& self, Args) {
  auto& items = self_array(self).items;
  if (items.empty()) return Undefined{};
  Value out = std::move(items.back());
  items.pop_back();
  return out;
}

Value array_shift(Interpreter& in, const Value& self, Args) {
  auto& items = self_array(self).items;
  if (items.empty()) return Undefined{};
  in.charge(items.size() / 64);
  Value out = std::move(items.front());
  items.erase(items.begin());
  return out;
}

Value array_unshift(Interpreter& in, const Value& self, Args args) {
  auto& items = self_array(self).items;
  check_length(items.size() + args.size(), "array");
  in.charge(items.size() / 64);
  items.insert(items.begin(), args.begin(), args.end());
  return static_cast<double>(items.size());
}

Value array_index_of(Interpreter& in, const Value& self, Args args) {
  const auto& items = self_array(self).items;
  double from = integer_arg(args, 1, 0);
  std::size_t start = relative_index(from, items.size());
  in.charge(items.size() / 64);
  for (std::size_t i = start; i < items.size(); ++i)
    if (strict_equals(items[i], arg(args, 0))) return static_cast<double>(i);
  return -1.0;
}

Value array_includes(Interpreter& in, const Value& self, Args args) {
  const auto& items = self_array(self).items;
  const Value& needle = arg(args, 0);
  in.charge(items.size() / 64);
  const auto* n = std::get_if<double>(&needle);
  for (const auto& item : items) {
    if (strict_equals(item, needle)) return true;
    if (n && std::isnan(*n)) {
      const auto* d = std::get_if<double>(&item);
      if (d && std::isnan(*d)) return true;
    }
  }
  return false;
}

Value array_join(Interpreter& in, const Value& self, Args args) {
  const auto& items = self_array(self).items;
  std::string sep = std::holds_alternative<Undefined>(arg(args, 0)) ? "," : to_display_string(args[0]);
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    if (!std::holds_alternative<Undefined>(items[i]) && !std::holds_alternative<Null>(items[i]))
      out += to_display_string(items[i]);
    check_length(out.size(), "string");
  }
  in.charge(out.size() / 64);
  return out;
}

Value array_slice(Interpreter& in, const Value& self, Args args) {
  const auto& items = self_array(self).items;
  std::size_t start = relative_index(integer_arg(args, 0, 0), items.size());
  std::size_t end = relative_index(integer_arg(args, 1, static_cast<double>(items.size())), items.size());
  std::vector<Value> out;
  if (start < end) out.assign(items.begin() + static_cast<std::ptrdiff_t>(start), items.begin() + static_cast<std::ptrdiff_t>(end));
  in.charge(out.size() / 64);
  return in.new_array(std::move(out));
}

Value array_reverse(Interpreter& in, const Value& self, Args) {
  auto& items = self_array(self).items;
  in.charge(items.size() / 64);
  std::reverse(items.begin(), items.end());
  return self;
}

Value array_concat(Interpreter& in, const Value& self, Args args) {
  std::vector<Value> out = self_array(self).items;
  for (const auto& a : args) {
    if (const auto* arr = std::get_if<ArrayObject*>(&a)) {
      out.insert(out.end(), (*arr)->items.begin(), (*arr)->items.end());
    } else {
      out.push_back(a);
    }
    check_length(out.size(), "array");
  }
  in.charge(out.size() / 64);
  return in.new_array(std::move(out));
}

// String methods -----------------------------------------------------------------

Value string_upper(Interpreter&, const Value& self, Args) {
  std::string s = self_string(self);
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

Value string_lower(Interpreter&, const Value& self, Args) {
  std::string s = self_string(self);
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

Value string_char_at(Interpreter&, const Value& self, Args args) {
  const auto& s = self_string(self);
  double i = integer_arg(args, 0, 0);
  if (i < 0 || i >= static_cast<double>(s.size())) return std::string();
  return std::string(1, s[static_cast<std::size_t>(i)]);
}

Value string_index_of(Interpreter&, const Value& self, Args args) {
  const auto& s = self_string(self);
  std::string needle = to_display_string(arg(args, 0));
  double from = std::clamp(integer_arg(args, 1, 0), 0.0, static_cast<double>(s.size()));
  auto pos = s.find(needle, static_cast<std::size_t>(from));
  return pos == std::string::npos ? -1.0 : static_cast<double>(pos);
}

Value string_includes(Interpreter&, const Value& self, Args args) {
  return self_string(self).find(to_display_string(arg(args, 0))) != std::string::npos;
}

Value string_starts_with(Interpreter&, const Value& self, Args args) {
  return self_string(self).starts_with(to_display_string(arg(args, 0)));
}

Value string_ends_with(Interpreter&, const Value& self, Args args) {
  return self_string(self).ends_with(to_display_string(arg(args, 0)));
}

Value string_slice(Interpreter&, const Value& self, Args args) {
  const auto& s = self_string(self);
  std::size_t start = relative_index(integer_arg(args, 0, 0), s.size());
  std::size_t end = relative_index(integer_arg(args, 1, static_cast<double>(s.size())), s.size());
  return start < end ? s.substr(start, end - start) : std::string();
}

Value string_substring(Interpreter&, const Value& self, Args args) {
  const auto& s = self_string(self);
  const double len = static_cast<double>(s.size());
  double a = std::clamp(integer_arg(args, 0, 0), 0.0, len);
  double b = std::clamp(integer_arg(args, 1, len), 0.0, len);
  if (a > b) std::swap(a, b);
  return s.substr(static_cast<std::size_t>(a), static_cast<std::size_t>(b - a));
}

Value string_split(Interpreter& in, const Value& self, Args args) {
  const auto& s = self_string(self);
  std::vector<Value> parts;
  if (std::holds_alternative<Undefined>(arg(args, 0))) {
    parts.emplace_back(s);
  } else {
    std::string sep = to_display_string(args[0]);
    if (sep.empty()) {
      for (char c : s) parts.emplace_back(std::string(1, c));
    } else {
      std::size_t pos = 0;
      while (true) {
        auto next = s.find(sep, pos);
        if (next == std::string::npos) {
          parts.emplace_back(s.substr(pos));
          break;
        }
        parts.emplace_back(s.substr(pos, next - pos));
        pos = next + sep.size();
      }
    }
  }
  in.charge(parts.size() / 16);
  return in.new_array(std::move(parts));
}

Value string_trim(Interpreter&, const Value& self, Args) {
  const auto& s = self_string(self);
  auto b = s.find_first_not_of(" \t\n\r\f\v");
  if (b == std::string::npos) return std::string();
  auto e = s.find_last_not_of(" \t\n\r\f\v");
  return s.substr(b, e - b + 1);
}

Value string_repeat(Interpreter& in, const Value& self, Args args) {
  const auto& s = self_string(self);
  double n = to_number(arg(args, 0));
  if (std::isnan(n)) n = 0;
  n = std::trunc(n);
  if (n < 0 || std::isinf(n)) throw RuntimeError{"RangeError: Invalid count value: " + js::format_number(n)};
  check_length(static_cast<std::size_t>(std::min(n, 1e12)) * s.size(), "string");
  std::string out;
  for (double i = 0; i < n; ++i) out += s;
  in.charge(out.size() / 64);
  return out;
}

// Number methods -----------------------------------------------------------------

Value number_to_fixed(Interpreter&, const Value& self, Args args) {
  double digits = integer_arg(args, 0, 0);
  if (digits < 0 || digits > 100) throw RuntimeError{"RangeError: toFixed() digits argument must be between 0 and 100"};
  return to_fixed(std::get<double>(self), static_cast<int>(digits));
}

Value number_to_string(Interpreter&, const Value& self, Args args) {
  if (!std::holds_alternative<Undefined>(arg(args, 0)) && to_number(args[0]) != 10)
    throw RuntimeError{"toString with a radix other than 10 is not supported"};
  return to_display_string(self);
}

Value any_to_string(Interpreter&, const Value& self, Args) { return to_display_string(self); }

struct MethodEntry {
  std::string_view name;
  NativeFn fn;
  bool mutates;
};

constexpr MethodEntry kArrayMethods[] = {
    {"push", array_push, true},       {"pop", array_pop, true},         {"shift", array_shift, true},
    {"unshift", array_unshift, true}, {"indexOf", array_index_of, false}, {"includes", array_includes, false},
    {"join", array_join, false},      {"slice", array_slice, false},    {"reverse", array_reverse, true},
    {"concat", array_concat, false},  {"toString", any_to_string, false},
};

constexpr MethodEntry kStringMethods[] = {
    {"toUpperCase", string_upper, false},   {"toLowerCase", string_lower, false},
    {"charAt", string_char_at, false},      {"indexOf", string_index_of, false},
    {"includes", string_includes, false},   {"startsWith", string_starts_with, false},
    {"endsWith", string_ends_with, false},  {"slice", string_slice, false},
    {"substring", string_substring, false}, {"split", string_split, false},
    {"trim", string_trim, false},           {"repeat", string_repeat, false},
    {"toString", any_to_string, false},
};

constexpr MethodEntry kNumberMethods[] = {
    {"toFixed", number_to_fixed, false},
    {"toString", number_to_string, false},
};

template <std::size_t N>
const MethodEntry* find_method(const MethodEntry (&table)[N], std::string_view name) {
  for (const auto& m : table)
    if (m.name == name) return &m;
  return nullptr;
}

std::optional<std::size_t> index_key(const Value& key) {
  if (const auto* d = std::get_if<double>(&key)) {
    if (*d >= 0 && *d == std::floor(*d) && *d < 4294967295.0) return static_cast<std::size_t>(*d);
    return std::nullopt;
  }
  if (const auto* s = std::get_if<std::string>(&key)) {
    if (s->empty() || s->size() > 10 || (s->size() > 1 && (*s)[0] == '0')) return std::nullopt;
    std::size_t n = 0;
    for (char c : *s) {
      if (c < '0' || c > '9') return std::nullopt;
      n = n * 10 + static_cast<std::size_t>(c - '0');
    }
    return n;
  }
  return std::nullopt;
}

}  // namespace

Value Interpreter::get_property(const Value& object, const Value& key, std::string_view shown) {
  if (std::holds_alternative<Undefined>(object) || std::holds_alternative<Null>(object)) {
    throw RuntimeError{"TypeError: Cannot read properties of " + to_display_string(object) + " (reading '" +
                       to_display_string(key) + "')"};
  }
  (void)shown;
  if (const auto* arr = std::get_if<ArrayObject*>(&object)) {
    if (auto idx = index_key(key)) {
      const auto& items = (*arr)->items;
      return *idx < items.size() ? items[*idx] : Value(Undefined{});
    }
    std::string name = to_display_string(key);
    if (name == "length") return static_cast<double>((*arr)->items.size());
    if (const auto* m = find_method(kArrayMethods, name)) return new_native(name, m->fn, object, m->mutates);
    return Undefined{};
  }
  if (const auto* s = std::get_if<std::string>(&object)) {
    if (auto idx = index_key(key)) {
      return *idx < s->size() ? Value(std::string(1, (*s)[*idx])) : Value(Undefined{});
    }
    std::string name = to_display_string(key);
    if (name == "length") return static_cast<double>(s->size());
    if (const auto* m = find_method(kStringMethods, name)) return new_native(name, m->fn, object);
    return Undefined{};
  }
  if (std::holds_alternative<double>(object)) {
    std::string name = to_display_string(key);
    if (const auto* m = find_method(kNumberMethods, name)) return new_native(name, m->fn, object);
    return Undefined{};
  }
  if (const auto* o = std::get_if<PlainObject*>(&object)) {
    const Value* v = (*o)->find(to_display_string(key));
    return v ? *v : Value(Undefined{});
  }
  if (const auto* f = std::get_if<FunctionObject*>(&object)) {
    std::string name = to_display_string(key);
    if (name == "name") return (*f)->name;
    if (name == "length") return static_cast<double>((*f)->decl ? (*f)->decl->params.size() : 0);
    return Undefined{};
  }
  if (std::holds_alternative<bool>(object)) {
    if (to_display_string(key) == "toString") return new_native("toString", any_to_string, object);
  }
  return Undefined{};
}

void Interpreter::set_property(const Value& object, const Value& key, Value value, std::string_view shown) {
  (void)shown;
  const std::string name = to_display_string(key);
  if (std::holds_alternative<Undefined>(object) || std::holds_alternative<Null>(object)) {
    throw RuntimeError{"TypeError: Cannot set properties of " + to_display_string(object) + " (setting '" + name +
                       "')"};
  }
  if (const auto* arr = std::get_if<ArrayObject*>(&object)) {
    auto& items = (*arr)->items;
    if (auto idx = index_key(key)) {
      if (*idx < items.size()) {
        items[*idx] = std::move(value);
      } else if (*idx == items.size()) {
        check_length(items.size() + 1, "array");
        items.push_back(std::move(value));
      } else {
        throw RuntimeError{"RangeError: index " + std::to_string(*idx) + " is past the end of the array (length " +
                           std::to_string(items.size()) + ")"};
      }
      return;
    }
    if (name == "length") throw RuntimeError{"changing an array's length directly is not supported"};
    throw RuntimeError{"TypeError: cannot add property '" + name + "' to an array"};
  }
  if (const auto* o = std::get_if<PlainObject*>(&object)) {
    (*o)->set(name, std::move(value));
    return;
  }
  throw RuntimeError{"TypeError: Cannot create property '" + name + "' on " + std::string(type_name(object)) + " " +
                     render(object)};
}

void Interpreter::install_builtins() {
  auto add = [&](std::string name, Value v) {
    Binding b;
    b.name = std::move(name);
    b.value = std::move(v);
    b.kind = BindingKind::Builtin;
    b.initialized = true;
    builtins_->bindings.push_back(std::move(b));
  };

  PlainObject* console = new_object();
  console->set("log", new_native("log", console_log));
  add("console", console);

  PlainObject* math = new_object();
  math->set("PI", 3.141592653589793);
  math->set("E", 2.718281828459045);
  math->set("floor", new_native("floor", math_unary<js_floor>));
  math->set("ceil", new_native("ceil", math_unary<js_ceil>));
  math->set("round", new_native("round", math_unary<js_round>));
  math->set("abs", new_native("abs", math_unary<js_abs>));
  math->set("sqrt", new_native("sqrt", math_unary<js_sqrt>));
  math->set("trunc", new_native("trunc", math_unary<js_trunc>));
  math->set("sign", new_native("sign", math_unary<js_sign>));
  math->set("max", new_native("max", math_max));
  math->set("min", new_native("min", math_min));
  math->set("pow", new_native("pow", math_pow));
  add("Math", math);

  PlainObject* object = new_object();
  object->set("keys", new_native("keys", object_keys));
  object->set("values", new_native("values", object_values));
  add("Object", object);

  PlainObject* array = new_object();
  array->set("isArray", new_native("isArray", array_is_array));
  add("Array", array);

  add("String", new_native("String", global_string));
  add("Number", new_native("Number", global_number));
  add("parseInt", new_native("parseInt", global_parse_int));
  add("parseFloat", new_native("parseFloat", global_parse_float));
  add("isNaN", new_native("isNaN", global_is_nan));
  add("undefined", Undefined{});
  add("NaN", std::numeric_limits<double>::quiet_NaN());
  add("Infinity", std::numeric_limits<double>::infinity());
}

}  // namespace codetales::trace::detail
