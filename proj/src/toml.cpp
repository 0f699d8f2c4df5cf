#include "pgeom/toml.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace pgeom::toml {

bool Value::has(const std::string& key) const { return find(key) != nullptr; }

const Value* Value::find(const std::string& key) const {
  for (const auto& [k, v] : table)
    if (k == key) return &v;
  return nullptr;
}

const Value& Value::at(const std::string& key) const {
  const Value* v = find(key);
  if (!v) throw TomlError(0, "missing key '" + key + "'");
  return *v;
}

const std::string& Value::as_string() const {
  if (kind != Kind::String) throw TomlError(0, "expected a string value");
  return str;
}

const std::vector<Value>& Value::as_array() const {
  if (kind != Kind::Array) throw TomlError(0, "expected an array value");
  return array;
}

Value& Value::insert(const std::string& key) {
  table.emplace_back(key, Value{});
  return table.back().second;
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Value parse_document() {
    Value root;
    Value* current = &root;
    for (;;) {
      skip_filler(true);
      if (eof()) break;
      if (peek() == '[') {
        current = parse_header(root);
      } else {
        auto [key, value] = parse_key_value();
        if (current->find(key)) err("duplicate key '" + key + "'");
        current->insert(key) = std::move(value);
        expect_line_end();
      }
    }
    return root;
  }

 private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char get() {
    char c = text_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }
  [[noreturn]] void err(const std::string& what) const { throw TomlError(line_, what); }

  // Skips spaces, comments and (optionally) newlines.
  void skip_filler(bool newlines) {
    while (!eof()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r') {
        get();
      } else if (c == '#') {
        while (!eof() && peek() != '\n') get();
      } else if (c == '\n' && newlines) {
        get();
      } else {
        break;
      }
    }
  }

  void expect_line_end() {
    skip_filler(false);
    if (eof()) return;
    if (peek() != '\n') err("expected end of line");
    get();
  }

  static bool bare_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  }

  std::string parse_bare() {
    std::string s;
    while (!eof() && bare_char(peek())) s.push_back(get());
    if (s.empty()) err("expected a key");
    return s;
  }

  std::vector<std::string> parse_path() {
    std::vector<std::string> path{parse_bare()};
    while (!eof() && peek() == '.') {
      get();
      path.push_back(parse_bare());
    }
    return path;
  }

  Value* descend(Value& root, const std::vector<std::string>& path, bool array_entry) {
    Value* node = &root;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      Value* next = const_cast<Value*>(node->find(path[i]));
      if (!next) {
        next = &node->insert(path[i]);
      }
      // A path may traverse through an array of tables: descend into the
      // last entry, as TOML does.
      if (next->kind == Value::Kind::Array && !next->array.empty())
        next = &next->array.back();
      if (next->kind != Value::Kind::Table) err("'" + path[i] + "' is not a table");
      node = next;
    }
    const std::string& leaf = path.back();
    Value* existing = const_cast<Value*>(node->find(leaf));
    if (array_entry) {
      if (!existing) {
        existing = &node->insert(leaf);
        existing->kind = Value::Kind::Array;
      }
      if (existing->kind != Value::Kind::Array)
        err("'" + leaf + "' is not an array of tables");
      existing->array.emplace_back();
      return &existing->array.back();
    }
    if (existing) err("duplicate table '" + leaf + "'");
    return &node->insert(leaf);
  }

  Value* parse_header(Value& root) {
    get();  // '['
    bool array_entry = !eof() && peek() == '[';
    if (array_entry) get();
    skip_filler(false);
    std::vector<std::string> path = parse_path();
    skip_filler(false);
    if (eof() || get() != ']') err("expected ']'");
    if (array_entry && (eof() || get() != ']')) err("expected ']]'");
    expect_line_end();
    return descend(root, path, array_entry);
  }

  std::pair<std::string, Value> parse_key_value() {
    std::string key = parse_bare();
    skip_filler(false);
    if (eof() || get() != '=') err("expected '=' after key '" + key + "'");
    skip_filler(false);
    return {key, parse_value()};
  }

  Value parse_value() {
    if (eof()) err("expected a value");
    char c = peek();
    if (c == '"') return parse_string();
    if (c == '[') return parse_array();
    if (c == '{') return parse_inline_table();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+')
      return parse_number();
    std::string word = parse_bare();
    Value v;
    if (word == "true" || word == "false") {
      v.kind = Value::Kind::Bool;
      v.boolean = (word == "true");
      return v;
    }
    err("unrecognized value '" + word + "'");
  }

  Value parse_string() {
    get();  // '"'
    Value v;
    v.kind = Value::Kind::String;
    while (!eof() && peek() != '"') {
      char c = get();
      if (c == '\n') err("unterminated string");
      if (c == '\\') {
        if (eof()) err("unterminated escape");
        char e = get();
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: err(std::string("unsupported escape '\\") + e + "'");
        }
      }
      v.str.push_back(c);
    }
    if (eof()) err("unterminated string");
    get();
    return v;
  }

  Value parse_number() {
    Value v;
    v.kind = Value::Kind::Number;
    while (!eof() && (std::isdigit(static_cast<unsigned char>(peek())) ||
                      peek() == '-' || peek() == '+' || peek() == '.' ||
                      peek() == 'e' || peek() == 'E'))
      v.raw.push_back(get());
    try {
      std::size_t used = 0;
      v.num = std::stod(v.raw, &used);
      if (used != v.raw.size()) throw std::invalid_argument(v.raw);
    } catch (const std::exception&) {
      err("malformed number '" + v.raw + "'");
    }
    return v;
  }

  Value parse_array() {
    get();  // '['
    Value v;
    v.kind = Value::Kind::Array;
    for (;;) {
      skip_filler(true);
      if (eof()) err("unterminated array");
      if (peek() == ']') {
        get();
        break;
      }
      v.array.push_back(parse_value());
      skip_filler(true);
      if (!eof() && peek() == ',') {
        get();
      } else if (!eof() && peek() == ']') {
        get();
        break;
      } else {
        err("expected ',' or ']' in array");
      }
    }
    return v;
  }

  Value parse_inline_table() {
    get();  // '{'
    Value v;
    v.kind = Value::Kind::Table;
    skip_filler(false);
    if (!eof() && peek() == '}') {
      get();
      return v;
    }
    for (;;) {
      skip_filler(false);
      auto [key, value] = parse_key_value();
      if (v.find(key)) err("duplicate key '" + key + "'");
      v.insert(key) = std::move(value);
      skip_filler(false);
      if (eof()) err("unterminated inline table");
      char c = get();
      if (c == '}') break;
      if (c != ',') err("expected ',' or '}' in inline table");
    }
    return v;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

}  // namespace

Value parse(const std::string& text) { return Parser(text).parse_document(); }

Value parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TomlError(0, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace pgeom::toml
