#include "helm/toml.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "helm/errors.hpp"

namespace helm::toml {

namespace {

struct Cursor {
  std::string_view text;
  size_t pos = 0;
  int line = 1;
  int col = 1;

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  char take() {
    char c = text[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
  void skip_blank_and_comment() {
    while (!eof()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r') {
        take();
      } else if (c == '#') {
        while (!eof() && peek() != '\n') take();
      } else {
        break;
      }
    }
  }
};

[[noreturn]] void fail(const Cursor& c, const std::string& msg) {
  throw ConfigError(msg, c.line, c.col);
}

bool is_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

std::string parse_key(Cursor& c) {
  std::string key;
  while (!c.eof() && (is_key_char(c.peek()) || c.peek() == '.')) key.push_back(c.take());
  if (key.empty()) fail(c, "expected a key");
  return key;
}

double parse_number_token(Cursor& c, bool& integral) {
  std::string tok;
  while (!c.eof()) {
    char ch = c.peek();
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '+' || ch == '-' || ch == '.' ||
        ch == 'e' || ch == 'E' || ch == '_') {
      if (ch != '_') tok.push_back(ch);
      c.take();
    } else {
      break;
    }
  }
  if (tok.empty()) fail(c, "expected a number");
  integral = tok.find_first_of(".eE") == std::string::npos;
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end == nullptr || *end != '\0') fail(c, "malformed number '" + tok + "'");
  return v;
}

Value parse_value(Cursor& c) {
  Value v;
  v.line = c.line;
  v.column = c.col;
  c.skip_blank_and_comment();
  if (c.eof()) fail(c, "expected a value");
  char ch = c.peek();
  if (ch == '"') {
    c.take();
    v.type = Value::Type::string;
    while (!c.eof() && c.peek() != '"') {
      char x = c.take();
      if (x == '\\' && !c.eof()) {
        char esc = c.take();
        switch (esc) {
          case 'n': x = '\n'; break;
          case 't': x = '\t'; break;
          case '"': x = '"'; break;
          case '\\': x = '\\'; break;
          default: fail(c, std::string("unsupported escape '\\") + esc + "'");
        }
      }
      v.str.push_back(x);
    }
    if (c.eof()) fail(c, "unterminated string");
    c.take();
    return v;
  }
  if (ch == '[') {
    c.take();
    v.type = Value::Type::number_array;
    c.skip_blank_and_comment();
    while (!c.eof() && c.peek() != ']') {
      bool integral = false;
      v.array.push_back(parse_number_token(c, integral));
      c.skip_blank_and_comment();
      if (!c.eof() && c.peek() == ',') {
        c.take();
        c.skip_blank_and_comment();
      }
    }
    if (c.eof()) fail(c, "unterminated array");
    c.take();
    return v;
  }
  if (std::isalpha(static_cast<unsigned char>(ch))) {
    std::string word;
    while (!c.eof() && std::isalpha(static_cast<unsigned char>(c.peek()))) word.push_back(c.take());
    if (word == "true" || word == "false") {
      v.type = Value::Type::boolean;
      v.boolean = (word == "true");
      return v;
    }
    if (word == "inf" || word == "nan") fail(c, "non-finite literals are not accepted");
    fail(c, "unrecognized value '" + word + "'");
  }
  v.type = Value::Type::number;
  v.num = parse_number_token(c, v.is_integer);
  return v;
}

}  // namespace

void Table::set(std::string key, Value v) {
  for (auto& e : entries_) {
    if (e.first == key) {
      e.second = std::move(v);
      return;
    }
  }
  entries_.emplace_back(std::move(key), std::move(v));
}

const Value* Table::find(std::string_view key) const {
  for (const auto& e : entries_)
    if (e.first == key) return &e.second;
  return nullptr;
}

const Value& Table::get(std::string_view key, Value::Type want, const char* want_name) const {
  const Value* v = find(key);
  if (v == nullptr) throw ConfigError("missing required key '" + std::string(key) + "'");
  if (v->type != want)
    throw ConfigError("key '" + std::string(key) + "' must be a " + want_name, v->line, v->column);
  return *v;
}

double Table::number(std::string_view key) const {
  return get(key, Value::Type::number, "number").num;
}

double Table::number_or(std::string_view key, double fallback) const {
  return contains(key) ? number(key) : fallback;
}

long Table::integer(std::string_view key) const {
  const Value& v = get(key, Value::Type::number, "number");
  if (!v.is_integer)
    throw ConfigError("key '" + std::string(key) + "' must be an integer", v.line, v.column);
  return static_cast<long>(v.num);
}

long Table::integer_or(std::string_view key, long fallback) const {
  return contains(key) ? integer(key) : fallback;
}

std::string Table::string(std::string_view key) const {
  return get(key, Value::Type::string, "string").str;
}

std::string Table::string_or(std::string_view key, std::string fallback) const {
  return contains(key) ? string(key) : std::move(fallback);
}

bool Table::boolean(std::string_view key) const {
  return get(key, Value::Type::boolean, "boolean").boolean;
}

bool Table::boolean_or(std::string_view key, bool fallback) const {
  return contains(key) ? boolean(key) : fallback;
}

std::vector<double> Table::number_array(std::string_view key) const {
  return get(key, Value::Type::number_array, "array of numbers").array;
}

Table parse(std::string_view text) {
  Table table;
  Cursor c{text};
  std::string section;
  while (true) {
    c.skip_blank_and_comment();
    if (c.eof()) break;
    char ch = c.peek();
    if (ch == '\n') {
      c.take();
      continue;
    }
    if (ch == '[') {
      c.take();
      section = parse_key(c);
      c.skip_blank_and_comment();
      if (c.eof() || c.peek() != ']') fail(c, "expected ']' after table name");
      c.take();
      continue;
    }
    int key_line = c.line, key_col = c.col;
    std::string key = parse_key(c);
    c.skip_blank_and_comment();
    if (c.eof() || c.peek() != '=') fail(c, "expected '=' after key '" + key + "'");
    c.take();
    Value v = parse_value(c);
    v.line = key_line;
    v.column = key_col;
    std::string full = section.empty() ? key : section + "." + key;
    if (table.contains(full)) throw ConfigError("duplicate key '" + full + "'", key_line, key_col);
    table.set(std::move(full), std::move(v));
    c.skip_blank_and_comment();
    if (!c.eof() && c.peek() != '\n') fail(c, "unexpected trailing content after value");
  }
  return table;
}

Table parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace helm::toml
