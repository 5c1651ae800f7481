#pragma once

#include <variant>
#include <vector>

#include "hallmed/checker.hpp"
#include "hallmed/error.hpp"
#include "hallmed/set_system.hpp"
#include "hallmed/tree.hpp"

namespace hallmed {

// x lies in exactly one triple {a, b, x}.
struct Degree1Step {
  ElementId x, a, b;
};

// x lies in exactly {a, b, x} and {a, b', x}; the triple {a, b, b'} replaces
// both. b < b'.
struct CaseIStep {
  ElementId x, a, b, b_prime;
};

enum class Branch { UseC1, UseC2 };

// x lies in exactly {a, b, x} and {a', b', x} with {a, b} and {a', b'}
// disjoint; {a, b, x} is the lexicographically smaller triple. UseC1 adds
// {a, a', b}, UseC2 adds {a, a', b'}.
struct CaseIIStep {
  ElementId x, a, b, a_prime, b_prime;
  Branch branch;
};

// Ground elements no set covers; they are removed before reducing and hung
// back on the tree afterwards.
struct UncoveredStep {
  std::vector<ElementId> elements;
};

struct ReductionStep {
  std::variant<Degree1Step, CaseIStep, CaseIIStep, UncoveredStep> kind;
  SetSystem reduced;
};

// Picks the smallest x with coverage 1, else the smallest x with coverage 2,
// and reduces there. Expects a non-empty triple system that satisfies the
// condition, on at least 4 elements.
ReductionStep find_reduction(const SetSystem& c);

// Reduction at a chosen element of coverage 1 or 2.
ReductionStep reduce_at(const SetSystem& c, ElementId x);

struct BuildResult {
  Tree tree;
  std::vector<ReductionStep> trace;
};

// Thrown when the input fails the condition a construction needs. Carries
// the checker's witness.
class ConditionViolatedError : public Error {
 public:
  explicit ConditionViolatedError(CheckOutcome outcome);
  explicit ConditionViolatedError(PartitionCheckOutcome outcome);

  const std::variant<CheckOutcome, PartitionCheckOutcome>& outcome() const { return outcome_; }

 private:
  std::variant<CheckOutcome, PartitionCheckOutcome> outcome_;
};

// Binary tree with leaf set X on which the triples of `c` have pairwise
// distinct medians.
BuildResult build_tree(const SetSystem& c);

// Binary tree with leaf set X on which the median blocks of the members of
// `c` partition the interior vertices.
BuildResult build_partition_tree(const SetSystem& c);

}  // namespace hallmed
