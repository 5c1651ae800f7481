#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hallmed/set_system.hpp"

namespace hallmed {

// Limits on the exponential routes. Defaults follow the documented guards.
struct CheckerConfig {
  std::size_t brute_force_max_sets = 24;
  std::size_t tight_sets_max_sets = 20;
};

enum class Status { Satisfied, Violated };

enum class WitnessKind {
  None,
  Subfamily,    // a subfamily covering too few elements
  DeletedPair,  // a pair {a,b} whose deletion breaks Hall's condition
};

// Outcome of deciding |U C'| >= |C'| + 2 for every non-empty subfamily C'.
struct CheckOutcome {
  Status status = Status::Satisfied;
  WitnessKind kind = WitnessKind::None;
  // Violating subfamily in canonical order. For DeletedPair this is the Hall
  // violator of the deleted system, listed by its original sets.
  std::vector<ElementSet> subfamily;
  std::optional<std::pair<ElementId, ElementId>> pair;
  std::size_t union_size = 0;

  bool satisfied() const { return status == Status::Satisfied; }
};

// Exhaustive: minimum-cardinality violator with lexicographic tie-break.
CheckOutcome check_bruteforce(const SetSystem& c, const CheckerConfig& config = {});

// Pair deletion: the condition holds iff deleting any two ground elements
// leaves a system with a system of distinct representatives. The pair sweep
// runs in parallel; the reported pair is the lexicographically smallest
// failing one regardless of schedule.
CheckOutcome check_poly(const SetSystem& c);

namespace serial {
// Reference for check_poly: every pair solved from scratch, in order.
CheckOutcome check_poly(const SetSystem& c);
}  // namespace serial

// Given that `c` satisfies the condition, whether adding `extra` keeps it.
// Decided with one matching in which `extra` appears three times.
bool extends_condition(const SetSystem& c, const ElementSet& extra);

// Direct re-check of a witness: |U subfamily| <= |subfamily| + 1.
bool violates_condition(std::span<const ElementSet> subfamily);

struct TightSubfamily {
  std::vector<std::size_t> members;  // indices into SetSystem::sets()
  std::uint64_t mask = 0;            // bit i set iff set i is a member
  ElementSet union_;
};

// All non-empty subfamilies with |U C'| = |C'| + 2.
struct TightFamily {
  std::vector<TightSubfamily> members;
};

TightFamily tight_sets(const SetSystem& c, const CheckerConfig& config = {});

// {y1,y2,y3}, {y1,y2,y4}, ..., {y1,y2,ym} for the given ordering of Y.
std::vector<ElementSet> fan_expansion_ordered(std::span<const ElementId> ordered_y);
// Same with the canonical ordering (y1, y2 the two smallest elements).
std::vector<ElementSet> fan_expansion(const ElementSet& y);

enum class PartitionMode { Poly, Brute };

enum class PartitionWitnessKind {
  None,
  Subfamily,     // violates |U C'| - 2 >= sum(|Y| - 2)
  Intersection,  // two members sharing three or more elements
  Deficit,       // inequality holds but |X| - 2 != sum(|Y| - 2)
};

struct PartitionCheckOutcome {
  Status inequality = Status::Satisfied;
  Status equality = Status::Satisfied;
  PartitionWitnessKind kind = PartitionWitnessKind::None;
  std::vector<ElementSet> subfamily;
  std::optional<std::pair<ElementSet, ElementSet>> pair;
  std::size_t union_size = 0;       // for a subfamily witness
  std::size_t weight = 0;           // sum(|Y| - 2) over the subfamily
  std::int64_t deficit = 0;         // (|X| - 2) - sum over all of C

  bool satisfied() const { return inequality == Status::Satisfied && equality == Status::Satisfied; }
};

PartitionCheckOutcome check_partition_condition(const SetSystem& c, PartitionMode mode,
                                                const CheckerConfig& config = {});

}  // namespace hallmed
