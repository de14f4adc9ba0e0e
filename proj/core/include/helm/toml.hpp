#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace helm::toml {

// Minimal TOML subset used by the scenario and vessel files:
// [section] / [section.sub] headers, `key = value` pairs, # comments.
// Values are numbers, strings, booleans, or arrays of numbers.
// Keys are flattened to dotted paths ("guidance.Delta").

struct Value {
  enum class Type { number, string, boolean, number_array };

  Type type = Type::number;
  double num = 0.0;
  bool is_integer = false;  // literal had integer form
  std::string str;
  bool boolean = false;
  std::vector<double> array;
  int line = 0;
  int column = 0;
};

class Table {
public:
  void set(std::string key, Value v);
  const Value* find(std::string_view key) const;
  bool contains(std::string_view key) const { return find(key) != nullptr; }

  // Typed access; throws ConfigError naming the key on type mismatch or absence.
  double number(std::string_view key) const;
  double number_or(std::string_view key, double fallback) const;
  long integer(std::string_view key) const;
  long integer_or(std::string_view key, long fallback) const;
  std::string string(std::string_view key) const;
  std::string string_or(std::string_view key, std::string fallback) const;
  bool boolean(std::string_view key) const;
  bool boolean_or(std::string_view key, bool fallback) const;
  std::vector<double> number_array(std::string_view key) const;

  const std::vector<std::pair<std::string, Value>>& entries() const { return entries_; }

private:
  const Value& get(std::string_view key, Value::Type want, const char* want_name) const;
  std::vector<std::pair<std::string, Value>> entries_;
};

Table parse(std::string_view text);
Table parse_file(const std::string& path);

}  // namespace helm::toml
