#include "hammerstein/config.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace hammer {

const ConfigValue* ConfigValue::find(std::string_view key) const {
  for (const auto& [k, v] : members)
    if (k == key) return &v;
  return nullptr;
}

ConfigValue* ConfigValue::find(std::string_view key) {
  for (auto& [k, v] : members)
    if (k == key) return &v;
  return nullptr;
}

const ConfigValue& ConfigValue::at(std::string_view key) const {
  if (const auto* v = find(key)) return *v;
  throw ConfigError("missing key '" + std::string(key) + "'", line);
}

const char* ConfigValue::type_name() const {
  switch (type) {
    case Type::String: return "string";
    case Type::Number: return "number";
    case Type::Bool: return "boolean";
    case Type::Array: return "array";
    case Type::Table: return "table";
  }
  return "value";
}

namespace {

class Reader {
 public:
  explicit Reader(std::string_view s) : s_(s) {}

  ConfigValue parse() {
    ConfigValue root;
    root.line = 1;
    ConfigValue* current = &root;
    for (;;) {
      skip_blank_lines();
      if (eof()) break;
      const int ln = line_;
      if (peek() == '[') {
        const bool array = s_.substr(pos_, 2) == "[[";
        pos_ += array ? 2 : 1;
        skip_space();
        auto path = key_path();
        skip_space();
        if (array ? s_.substr(pos_, 2) != "]]" : peek() != ']')
          throw ConfigError("unterminated section header", ln);
        pos_ += array ? 2 : 1;
        end_of_line();
        current = open_section(root, path, array, ln);
        continue;
      }
      auto path = key_path();
      skip_space();
      if (peek() != '=') throw ConfigError("expected '=' after key", line_);
      ++pos_;
      skip_space();
      ConfigValue v = value();
      end_of_line();
      assign(*current, path, std::move(v), ln);
    }
    return root;
  }

 private:
  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return eof() ? '\0' : s_[pos_]; }

  void skip_space() {
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r'))
      ++pos_;
  }
  void skip_comment() {
    if (peek() == '#')
      while (!eof() && peek() != '\n') ++pos_;
  }
  // Whitespace, comments and newlines, as inside arrays.
  void skip_all() {
    for (;;) {
      skip_space();
      skip_comment();
      if (peek() == '\n') {
        ++pos_;
        ++line_;
        continue;
      }
      break;
    }
  }
  void skip_blank_lines() { skip_all(); }
  void end_of_line() {
    skip_space();
    skip_comment();
    if (eof()) return;
    if (peek() != '\n')
      throw ConfigError(std::string("unexpected '") + peek() + "'", line_);
    ++pos_;
    ++line_;
  }

  std::string bare_key() {
    const std::size_t start = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                      peek() == '_' || peek() == '-'))
      ++pos_;
    if (pos_ == start) throw ConfigError("expected a key", line_);
    return std::string(s_.substr(start, pos_ - start));
  }
  std::string key() {
    if (peek() == '"') return quoted();
    return bare_key();
  }
  std::vector<std::string> key_path() {
    std::vector<std::string> p{key()};
    for (;;) {
      skip_space();
      if (peek() != '.') break;
      ++pos_;
      skip_space();
      p.push_back(key());
    }
    return p;
  }

  std::string quoted() {
    const char q = peek();
    const int ln = line_;
    ++pos_;
    std::string out;
    for (;;) {
      if (eof() || peek() == '\n') throw ConfigError("unterminated string", ln);
      char c = s_[pos_++];
      if (c == q) break;
      if (c == '\\' && q == '"') {
        if (eof()) throw ConfigError("unterminated string", ln);
        const char e = s_[pos_++];
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '\\': out += '\\'; break;
          case '"': out += '"'; break;
          default: throw ConfigError(std::string("unknown escape \\") + e, ln);
        }
        continue;
      }
      out += c;
    }
    return out;
  }

  ConfigValue value() {
    ConfigValue v;
    v.line = line_;
    const char c = peek();
    if (c == '"' || c == '\'') {
      v.type = ConfigValue::Type::String;
      v.str = quoted();
      return v;
    }
    if (c == '[') {
      ++pos_;
      v.type = ConfigValue::Type::Array;
      skip_all();
      while (peek() != ']') {
        if (eof()) throw ConfigError("unterminated array", v.line);
        v.items.push_back(value());
        skip_all();
        if (peek() == ',') {
          ++pos_;
          skip_all();
        } else if (peek() != ']') {
          throw ConfigError("expected ',' or ']' in array", line_);
        }
      }
      ++pos_;
      return v;
    }
    if (c == '{') {
      ++pos_;
      v.type = ConfigValue::Type::Table;
      skip_all();
      while (peek() != '}') {
        if (eof()) throw ConfigError("unterminated inline table", v.line);
        const int ln = line_;
        auto path = key_path();
        skip_space();
        if (peek() != '=') throw ConfigError("expected '=' after key", line_);
        ++pos_;
        skip_all();
        assign(v, path, value(), ln);
        skip_all();
        if (peek() == ',') {
          ++pos_;
          skip_all();
        } else if (peek() != '}') {
          throw ConfigError("expected ',' or '}' in inline table", line_);
        }
      }
      ++pos_;
      return v;
    }
    const std::size_t start = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                      peek() == '.' || peek() == '+' || peek() == '-' ||
                      peek() == '_'))
      ++pos_;
    std::string word(s_.substr(start, pos_ - start));
    if (word == "true" || word == "false") {
      v.type = ConfigValue::Type::Bool;
      v.flag = word == "true";
      return v;
    }
    std::string digits;
    for (char ch : word)
      if (ch != '_') digits += ch;
    std::size_t used = 0;
    try {
      v.num = std::stod(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (digits.empty() || used != digits.size())
      throw ConfigError("malformed value '" + word +
                            "' (quote expressions as strings)",
                        v.line);
    v.type = ConfigValue::Type::Number;
    return v;
  }

  static ConfigValue* child_table(ConfigValue& t, const std::string& k,
                                  int ln) {
    if (auto* c = t.find(k)) {
      if (c->is_table()) return c;
      if (c->is_array() && !c->items.empty() && c->items.back().is_table())
        return &c->items.back();
      throw ConfigError("key '" + k + "' is not a table", ln);
    }
    ConfigValue n;
    n.line = ln;
    t.members.emplace_back(k, std::move(n));
    return &t.members.back().second;
  }

  ConfigValue* open_section(ConfigValue& root,
                            const std::vector<std::string>& path, bool array,
                            int ln) {
    ConfigValue* t = &root;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      t = child_table(*t, path[i], ln);
    const std::string& last = path.back();
    if (array) {
      ConfigValue* a = t->find(last);
      if (!a) {
        ConfigValue n;
        n.type = ConfigValue::Type::Array;
        n.line = ln;
        t->members.emplace_back(last, std::move(n));
        a = &t->members.back().second;
      } else if (!a->is_array()) {
        throw ConfigError("key '" + last + "' is not an array of tables", ln);
      }
      ConfigValue n;
      n.line = ln;
      a->items.push_back(std::move(n));
      return &a->items.back();
    }
    std::string full;
    for (const auto& k : path) full += "." + k;
    if (!opened_.insert(full).second)
      throw ConfigError("section '" + full.substr(1) + "' defined twice", ln);
    return child_table(*t, last, ln);
  }

  static void assign(ConfigValue& table, const std::vector<std::string>& path,
                     ConfigValue v, int ln) {
    ConfigValue* t = &table;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      t = child_table(*t, path[i], ln);
    if (t->find(path.back()))
      throw ConfigError("duplicate key '" + path.back() + "'", ln);
    v.line = ln;
    t->members.emplace_back(path.back(), std::move(v));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::set<std::string> opened_;
};

}  // namespace

ConfigValue parse_config(std::string_view text) { return Reader(text).parse(); }

ConfigValue load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(e.what(), e.line(), path);
  }
}

}  // namespace hammer
