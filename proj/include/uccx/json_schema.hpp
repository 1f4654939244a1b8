// Validator for the subset of JSON Schema (draft 2020-12 vocabulary) used by
// the shipped schema files: type, enum, const, required, properties,
// additionalProperties, items, minItems, minLength, minimum,
// exclusiveMinimum, pattern and local "$ref": "#/$defs/...".

#pragma once

#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

#include "uccx/io.hpp"

namespace uccx {

struct SchemaViolation {
  std::string pointer;  // JSON pointer into the instance, "" for the root
  std::string message;
};

class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string what, std::vector<SchemaViolation> violations)
      : std::runtime_error(std::move(what)), violations_(std::move(violations)) {}
  const std::vector<SchemaViolation>& violations() const { return violations_; }

 private:
  std::vector<SchemaViolation> violations_;
};

class JsonSchema {
 public:
  explicit JsonSchema(json schema) : root_(std::move(schema)) {}

  static JsonSchema load(const fs::path& path) { return JsonSchema(io::read_json(path)); }

  /// Named schema from the schema directory, e.g. "corpus".
  static JsonSchema bundled(std::string_view name) {
    return load(io::schema_dir() / (std::string(name) + ".schema.json"));
  }

  std::vector<SchemaViolation> validate(const json& instance) const {
    std::vector<SchemaViolation> out;
    check(root_, instance, "", out);
    return out;
  }

 private:
  const json& resolve(const json& schema) const {
    auto it = schema.find("$ref");
    if (it == schema.end()) return schema;
    auto ref = it->get<std::string>();
    if (ref.rfind("#/", 0) != 0) throw std::invalid_argument("unsupported $ref " + ref);
    return resolve(root_.at(json::json_pointer(ref.substr(1))));
  }

  static bool type_matches(const std::string& type, const json& v) {
    if (type == "object") return v.is_object();
    if (type == "array") return v.is_array();
    if (type == "string") return v.is_string();
    if (type == "integer") return v.is_number_integer();
    if (type == "number") return v.is_number();
    if (type == "boolean") return v.is_boolean();
    if (type == "null") return v.is_null();
    return false;
  }

  static std::string escape(const std::string& key) {
    std::string out;
    for (char c : key) {
      if (c == '~') out += "~0";
      else if (c == '/') out += "~1";
      else out += c;
    }
    return out;
  }

  void check(const json& raw, const json& v, const std::string& ptr,
             std::vector<SchemaViolation>& out) const {
    const json& s = resolve(raw);
    if (auto t = s.find("type"); t != s.end()) {
      bool ok = false;
      if (t->is_string()) {
        ok = type_matches(t->get<std::string>(), v);
      } else {
        for (const auto& alt : *t) ok = ok || type_matches(alt.get<std::string>(), v);
      }
      if (!ok) {
        out.push_back({ptr, "expected type " + t->dump()});
        return;
      }
    }
    if (auto e = s.find("enum"); e != s.end()) {
      bool found = false;
      for (const auto& alt : *e) found = found || alt == v;
      if (!found) out.push_back({ptr, "value " + v.dump() + " not one of " + e->dump()});
    }
    if (auto c = s.find("const"); c != s.end() && *c != v) {
      out.push_back({ptr, "expected " + c->dump()});
    }
    if (v.is_string()) {
      auto str = v.get<std::string>();
      if (auto m = s.find("minLength"); m != s.end() && text_length(str) < m->get<size_t>()) {
        out.push_back({ptr, "shorter than " + m->dump() + " characters"});
      }
      if (auto p = s.find("pattern"); p != s.end()) {
        std::regex re(p->get<std::string>(), std::regex::ECMAScript);
        if (!std::regex_search(str, re)) out.push_back({ptr, "does not match " + p->dump()});
      }
    }
    if (v.is_number()) {
      double x = v.get<double>();
      if (auto m = s.find("minimum"); m != s.end() && x < m->get<double>()) {
        out.push_back({ptr, "below minimum " + m->dump()});
      }
      if (auto m = s.find("exclusiveMinimum"); m != s.end() && x <= m->get<double>()) {
        out.push_back({ptr, "not above " + m->dump()});
      }
    }
    if (v.is_object()) {
      if (auto r = s.find("required"); r != s.end()) {
        for (const auto& key : *r) {
          if (!v.contains(key.get<std::string>())) {
            out.push_back({ptr + "/" + escape(key.get<std::string>()), "missing required field"});
          }
        }
      }
      auto props = s.find("properties");
      auto extra = s.find("additionalProperties");
      for (const auto& [key, child] : v.items()) {
        auto child_ptr = ptr + "/" + escape(key);
        if (props != s.end() && props->contains(key)) {
          check((*props)[key], child, child_ptr, out);
        } else if (extra != s.end()) {
          if (extra->is_boolean()) {
            if (!extra->get<bool>()) out.push_back({child_ptr, "unknown field"});
          } else {
            check(*extra, child, child_ptr, out);
          }
        }
      }
    }
    if (v.is_array()) {
      if (auto m = s.find("minItems"); m != s.end() && v.size() < m->get<size_t>()) {
        out.push_back({ptr, "fewer than " + m->dump() + " items"});
      }
      if (auto items = s.find("items"); items != s.end()) {
        for (size_t i = 0; i < v.size(); ++i) {
          check(*items, v[i], ptr + "/" + std::to_string(i), out);
        }
      }
    }
  }

  static size_t text_length(const std::string& s) {
    size_t n = 0;
    for (unsigned char c : s) n += (c & 0xC0) != 0x80;
    return n;
  }

  json root_;
};

}  // namespace uccx
