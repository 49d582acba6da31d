#ifndef HAMMERSTEIN_CONFIG_HPP_
#define HAMMERSTEIN_CONFIG_HPP_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hammerstein/core.hpp"

namespace hammer {

class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  // `what` already carries the line prefix
  ConfigError(const std::string& what, int line, const std::string& source)
      : Error(source + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Value tree of a TOML-like config: strings, numbers, booleans, arrays,
// tables, [section], [[array of sections]] and inline { k = v } tables.
struct ConfigValue {
  enum class Type { String, Number, Bool, Array, Table };
  Type type = Type::Table;
  std::string str;
  double num = 0.0;
  bool flag = false;
  std::vector<ConfigValue> items;
  std::vector<std::pair<std::string, ConfigValue>> members;
  int line = 0;

  bool is_table() const { return type == Type::Table; }
  bool is_array() const { return type == Type::Array; }
  bool is_string() const { return type == Type::String; }
  bool is_number() const { return type == Type::Number; }
  bool is_bool() const { return type == Type::Bool; }

  const ConfigValue* find(std::string_view key) const;
  ConfigValue* find(std::string_view key);
  const ConfigValue& at(std::string_view key) const;  // ConfigError if absent
  bool has(std::string_view key) const { return find(key) != nullptr; }
  const char* type_name() const;
};

ConfigValue parse_config(std::string_view text);
ConfigValue load_config_file(const std::string& path);

}  // namespace hammer

#endif  // HAMMERSTEIN_CONFIG_HPP_
