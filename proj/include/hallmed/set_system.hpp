#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hallmed {

// Elements are referred to by their rank in the lexicographically sorted
// universe, so comparing ids is the same as comparing names byte-wise.
using ElementId = std::uint32_t;

// Sorted ascending, duplicate-free.
using ElementSet = std::vector<ElementId>;

bool is_valid_element_name(std::string_view name);

// A ground set X together with a duplicate-free family C of subsets of X.
//
// Reduced systems produced during tree construction share the universe of
// names with the system they came from, which keeps element ids stable across
// the whole induction.
class SetSystem {
 public:
  SetSystem();

  // Validates and builds a system from names. `ground` is the declared ground
  // set in display order; pass std::nullopt to use the union of all sets.
  static SetSystem from_names(std::optional<std::vector<std::string>> ground,
                              const std::vector<std::vector<std::string>>& sets);

  // A system over the same universe with a new ground and family. Sets are
  // normalized (sorted); duplicates, undersized sets and out-of-ground
  // elements are rejected.
  SetSystem with(std::vector<ElementId> ground, std::vector<ElementSet> sets) const;

  const std::vector<std::string>& universe() const { return *universe_; }
  std::size_t universe_size() const { return universe_->size(); }
  std::string_view name(ElementId id) const { return (*universe_)[id]; }
  std::optional<ElementId> find(std::string_view name) const;

  std::span<const ElementId> ground() const { return ground_; }
  std::span<const ElementSet> sets() const { return sets_; }
  std::size_t size() const { return sets_.size(); }
  bool empty() const { return sets_.empty(); }

  // Ground in declaration order (defaults to sorted order).
  const std::vector<ElementId>& display_order() const { return display_order_; }

  bool is_triple_system() const;
  bool contains_element(ElementId id) const;
  bool contains_set(const ElementSet& s) const;
  std::size_t coverage(ElementId id) const;
  ElementSet union_of(std::span<const std::size_t> indices) const;
  ElementSet union_all() const;

  // Sets converted back to names, for documents and messages.
  std::vector<std::string> names_of(const ElementSet& s) const;
  std::string format_set(const ElementSet& s) const;

 private:
  SetSystem(std::shared_ptr<const std::vector<std::string>> universe, std::vector<ElementId> ground,
            std::vector<ElementId> display_order, std::vector<ElementSet> sets);

  std::shared_ptr<const std::vector<std::string>> universe_;
  std::vector<ElementId> ground_;
  std::vector<ElementId> display_order_;
  std::vector<ElementSet> sets_;
};

// Instance file forms: plain text ("#X:" header, one set per line) or a JSON
// document with "elements" (optional) and "sets".
SetSystem parse_set_system(std::string_view document);
std::string format_set_system(const SetSystem& system);

// Lexicographic order on sorted id vectors; the canonical order for sets.
inline bool set_less(const ElementSet& a, const ElementSet& b) { return a < b; }

std::vector<ElementSet> sorted_sets(std::span<const ElementSet> sets);

}  // namespace hallmed
