#include "hallmed/set_system.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hallmed/error.hpp"

namespace hallmed {

namespace {

constexpr std::string_view kForbidden = "(),:;";

void validate_name(std::string_view name) {
  if (!is_valid_element_name(name)) {
    throw Error(ErrorCode::MalformedToken, "invalid element name '" + std::string(name) + "'");
  }
}

void normalize_family(const std::vector<ElementId>& ground, std::vector<ElementSet>& sets,
                      const std::vector<std::string>& universe) {
  std::set<ElementSet> seen;
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw Error(ErrorCode::MalformedDocument, "set lists an element twice");
    }
    if (s.size() < 3) {
      throw Error(ErrorCode::SetTooSmall, "set of size " + std::to_string(s.size()));
    }
    for (ElementId e : s) {
      if (!std::binary_search(ground.begin(), ground.end(), e)) {
        throw Error(ErrorCode::UnknownElement, "element '" + universe[e] + "' outside ground set");
      }
    }
    if (!seen.insert(s).second) {
      std::string text;
      for (ElementId e : s) text += (text.empty() ? "" : " ") + universe[e];
      throw Error(ErrorCode::DuplicateSet, "{" + text + "}");
    }
  }
}

}  // namespace

bool is_valid_element_name(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c)) || kForbidden.find(c) != std::string_view::npos) {
      return false;
    }
  }
  return true;
}

SetSystem::SetSystem() : universe_(std::make_shared<const std::vector<std::string>>()) {}

SetSystem::SetSystem(std::shared_ptr<const std::vector<std::string>> universe,
                     std::vector<ElementId> ground, std::vector<ElementId> display_order,
                     std::vector<ElementSet> sets)
    : universe_(std::move(universe)),
      ground_(std::move(ground)),
      display_order_(std::move(display_order)),
      sets_(std::move(sets)) {}

SetSystem SetSystem::from_names(std::optional<std::vector<std::string>> ground,
                                const std::vector<std::vector<std::string>>& sets) {
  std::vector<std::string> declared;
  if (ground) {
    declared = *ground;
    std::set<std::string> seen;
    for (const auto& name : declared) {
      validate_name(name);
      if (!seen.insert(name).second) {
        throw Error(ErrorCode::MalformedDocument, "element '" + name + "' declared twice");
      }
    }
  } else {
    std::set<std::string> all;
    for (const auto& s : sets) {
      for (const auto& name : s) {
        validate_name(name);
        all.insert(name);
      }
    }
    declared.assign(all.begin(), all.end());
  }

  auto universe = std::make_shared<std::vector<std::string>>(declared);
  std::sort(universe->begin(), universe->end());
  std::map<std::string, ElementId, std::less<>> index;
  for (ElementId i = 0; i < universe->size(); ++i) index.emplace((*universe)[i], i);

  std::vector<ElementId> display;
  display.reserve(declared.size());
  for (const auto& name : declared) display.push_back(index.at(name));

  std::vector<ElementSet> family;
  family.reserve(sets.size());
  for (const auto& s : sets) {
    ElementSet ids;
    for (const auto& name : s) {
      validate_name(name);
      auto it = index.find(name);
      if (it == index.end()) {
        throw Error(ErrorCode::UnknownElement, "element '" + name + "' outside declared ground set");
      }
      ids.push_back(it->second);
    }
    family.push_back(std::move(ids));
  }

  std::vector<ElementId> sorted_ground(universe->size());
  for (ElementId i = 0; i < sorted_ground.size(); ++i) sorted_ground[i] = i;
  normalize_family(sorted_ground, family, *universe);
  return SetSystem(std::move(universe), std::move(sorted_ground), std::move(display), std::move(family));
}

SetSystem SetSystem::with(std::vector<ElementId> ground, std::vector<ElementSet> sets) const {
  std::sort(ground.begin(), ground.end());
  ground.erase(std::unique(ground.begin(), ground.end()), ground.end());
  for (ElementId e : ground) {
    if (e >= universe_->size()) throw Error(ErrorCode::UnknownElement, "element id out of range");
  }
  normalize_family(ground, sets, *universe_);
  std::vector<ElementId> display;
  display.reserve(ground.size());
  for (ElementId e : display_order_) {
    if (std::binary_search(ground.begin(), ground.end(), e)) display.push_back(e);
  }
  if (display.size() != ground.size()) display = ground;
  return SetSystem(universe_, std::move(ground), std::move(display), std::move(sets));
}

std::optional<ElementId> SetSystem::find(std::string_view name) const {
  auto it = std::lower_bound(universe_->begin(), universe_->end(), name);
  if (it == universe_->end() || *it != name) return std::nullopt;
  return static_cast<ElementId>(it - universe_->begin());
}

bool SetSystem::is_triple_system() const {
  return std::all_of(sets_.begin(), sets_.end(), [](const ElementSet& s) { return s.size() == 3; });
}

bool SetSystem::contains_element(ElementId id) const {
  return std::binary_search(ground_.begin(), ground_.end(), id);
}

bool SetSystem::contains_set(const ElementSet& s) const {
  return std::find(sets_.begin(), sets_.end(), s) != sets_.end();
}

std::size_t SetSystem::coverage(ElementId id) const {
  return static_cast<std::size_t>(std::count_if(sets_.begin(), sets_.end(), [id](const ElementSet& s) {
    return std::binary_search(s.begin(), s.end(), id);
  }));
}

ElementSet SetSystem::union_of(std::span<const std::size_t> indices) const {
  ElementSet out;
  for (std::size_t i : indices) out.insert(out.end(), sets_[i].begin(), sets_[i].end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ElementSet SetSystem::union_all() const {
  ElementSet out;
  for (const auto& s : sets_) out.insert(out.end(), s.begin(), s.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> SetSystem::names_of(const ElementSet& s) const {
  std::vector<std::string> out;
  out.reserve(s.size());
  for (ElementId e : s) out.emplace_back(name(e));
  return out;
}

std::string SetSystem::format_set(const ElementSet& s) const {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += name(s[i]);
  }
  return out + "}";
}

std::vector<ElementSet> sorted_sets(std::span<const ElementSet> sets) {
  std::vector<ElementSet> out(sets.begin(), sets.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

SetSystem parse_json(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedDocument, e.what());
  }
  if (!doc.is_object() || !doc.contains("sets") || !doc["sets"].is_array()) {
    throw Error(ErrorCode::MalformedDocument, "expected an object with a \"sets\" array");
  }
  auto read_strings = [](const nlohmann::json& arr) {
    if (!arr.is_array()) throw Error(ErrorCode::MalformedDocument, "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& v : arr) {
      if (!v.is_string()) throw Error(ErrorCode::MalformedToken, "element names must be strings");
      out.push_back(v.get<std::string>());
    }
    return out;
  };
  std::optional<std::vector<std::string>> ground;
  if (doc.contains("elements")) ground = read_strings(doc["elements"]);
  std::vector<std::vector<std::string>> sets;
  for (const auto& s : doc["sets"]) sets.push_back(read_strings(s));
  return SetSystem::from_names(std::move(ground), sets);
}

std::vector<std::string> split_tokens(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string token;
  while (in >> token) out.push_back(token);
  return out;
}

SetSystem parse_text(std::string_view document) {
  std::optional<std::vector<std::string>> ground;
  std::vector<std::vector<std::string>> sets;
  std::istringstream in{std::string(document)};
  std::string line;
  bool seen_content = false;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    std::string_view view(line);
    view.remove_prefix(first);
    if (view.starts_with("#X:")) {
      if (seen_content) {
        throw Error(ErrorCode::MalformedDocument, "ground declaration must precede the sets");
      }
      ground = split_tokens(view.substr(3));
      seen_content = true;
      continue;
    }
    if (view.front() == '#') continue;
    seen_content = true;
    sets.push_back(split_tokens(view));
  }
  return SetSystem::from_names(std::move(ground), sets);
}

}  // namespace

SetSystem parse_set_system(std::string_view document) {
  auto first = document.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && document[first] == '{') return parse_json(document);
  return parse_text(document);
}

std::string format_set_system(const SetSystem& system) {
  std::string out = "#X:";
  for (ElementId e : system.display_order()) {
    out += ' ';
    out += system.name(e);
  }
  out += '\n';
  for (const auto& s : system.sets()) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out += ' ';
      out += system.name(s[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace hallmed
