// The seven use-case component slots and their record type.

#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace uccx {

enum class ComponentKind {
  kName,
  kGoal,
  kUser,
  kSystem,
  kExternalEntities,
  kDataPractices,
  kSteps,
};

inline constexpr std::array<ComponentKind, 7> kAllComponents = {
    ComponentKind::kName,          ComponentKind::kGoal,
    ComponentKind::kUser,          ComponentKind::kSystem,
    ComponentKind::kExternalEntities, ComponentKind::kDataPractices,
    ComponentKind::kSteps,
};

/// snake_case identifier used in every file format and HTTP body.
inline std::string_view component_key(ComponentKind k) {
  switch (k) {
    case ComponentKind::kName: return "name";
    case ComponentKind::kGoal: return "goal";
    case ComponentKind::kUser: return "user";
    case ComponentKind::kSystem: return "system";
    case ComponentKind::kExternalEntities: return "external_entities";
    case ComponentKind::kDataPractices: return "data_practices";
    case ComponentKind::kSteps: return "steps";
  }
  return "";
}

/// Short heading label, as it appears in prompts and responses ("UC-ET").
inline std::string_view component_label(ComponentKind k) {
  switch (k) {
    case ComponentKind::kName: return "UC-Name";
    case ComponentKind::kGoal: return "UC-Goal";
    case ComponentKind::kUser: return "UC-User";
    case ComponentKind::kSystem: return "UC-System";
    case ComponentKind::kExternalEntities: return "UC-ET";
    case ComponentKind::kDataPractices: return "UC-DPs";
    case ComponentKind::kSteps: return "UC-Steps";
  }
  return "";
}

/// Name, User, System and ET hold short noun phrases; the rest hold clauses.
inline bool is_short_component(ComponentKind k) {
  return k == ComponentKind::kName || k == ComponentKind::kUser ||
         k == ComponentKind::kSystem || k == ComponentKind::kExternalEntities;
}

/// Accepts the snake_case key or the heading label ("goal", "UC-Goal").
inline std::optional<ComponentKind> parse_component(std::string_view s) {
  for (auto k : kAllComponents) {
    if (s == component_key(k) || s == component_label(k)) return k;
  }
  if (s == "UC-ExternalEntities" || s == "et") return ComponentKind::kExternalEntities;
  if (s == "UC-DataPractices" || s == "dps") return ComponentKind::kDataPractices;
  return std::nullopt;
}

struct UCComponents {
  std::vector<std::string> name;
  std::vector<std::string> goal;
  std::vector<std::string> user;
  std::vector<std::string> system;
  std::vector<std::string> external_entities;
  std::vector<std::string> data_practices;
  std::vector<std::string> steps;

  std::vector<std::string>& operator[](ComponentKind k) {
    switch (k) {
      case ComponentKind::kName: return name;
      case ComponentKind::kGoal: return goal;
      case ComponentKind::kUser: return user;
      case ComponentKind::kSystem: return system;
      case ComponentKind::kExternalEntities: return external_entities;
      case ComponentKind::kDataPractices: return data_practices;
      case ComponentKind::kSteps: return steps;
    }
    throw std::logic_error("bad component kind");
  }
  const std::vector<std::string>& operator[](ComponentKind k) const {
    return const_cast<UCComponents&>(*this)[k];
  }

  bool empty() const {
    for (auto k : kAllComponents) {
      if (!(*this)[k].empty()) return false;
    }
    return true;
  }

  bool operator==(const UCComponents&) const = default;
};

inline void to_json(nlohmann::json& j, const UCComponents& c) {
  j = nlohmann::json::object();
  for (auto k : kAllComponents) j[std::string(component_key(k))] = c[k];
}

/// Missing slots read as empty; unknown keys are rejected.
inline void from_json(const nlohmann::json& j, UCComponents& c) {
  if (!j.is_object()) throw std::invalid_argument("components must be an object");
  c = {};
  for (const auto& [key, value] : j.items()) {
    auto kind = parse_component(key);
    if (!kind) throw std::invalid_argument("unknown component '" + key + "'");
    c[*kind] = value.get<std::vector<std::string>>();
  }
}

}  // namespace uccx
