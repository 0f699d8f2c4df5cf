#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace pgeom::toml {

struct TomlError : std::runtime_error {
  TomlError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

// Subset of TOML sufficient for manifests: table headers, arrays of tables,
// bare keys, strings, numbers, booleans, arrays, and inline tables. Tables
// preserve declaration order.
class Value {
 public:
  enum class Kind { String, Number, Bool, Array, Table };

  Kind kind = Kind::Table;
  std::string str;     // String
  double num = 0.0;    // Number
  std::string raw;     // Number: original spelling
  bool boolean = false;
  std::vector<Value> array;
  std::vector<std::pair<std::string, Value>> table;

  bool has(const std::string& key) const;
  const Value* find(const std::string& key) const;
  // Throws TomlError(0) naming the key when missing or mistyped.
  const Value& at(const std::string& key) const;
  const std::string& as_string() const;
  const std::vector<Value>& as_array() const;

  Value& insert(const std::string& key);  // appends, no duplicate check
};

Value parse(const std::string& text);
Value parse_file(const std::string& path);

}  // namespace pgeom::toml
