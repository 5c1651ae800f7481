#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "hallmed/set_system.hpp"
#include "hallmed/tree.hpp"

namespace hallmed {

// Median of three vertices by explicit path intersection: mark the x-y path,
// then walk from z until the path is hit.
VertexId median_vertex(const Tree& t, VertexId x, VertexId y, VertexId z);

// Median of three distinct labels.
VertexId median(const Tree& t, std::string_view x, std::string_view y, std::string_view z);

// Constant-time-ish median queries after O(n log n) preprocessing: root the
// tree, the median is the deepest of the three pairwise LCAs.
class MedianIndex {
 public:
  explicit MedianIndex(const Tree& t);

  VertexId lca(VertexId a, VertexId b) const;
  VertexId median(VertexId x, VertexId y, VertexId z) const;
  std::size_t depth(VertexId v) const { return depth_[v]; }

 private:
  std::vector<std::size_t> depth_;
  std::vector<std::vector<VertexId>> up_;  // up_[k][v] = 2^k-th ancestor
};

// Sizes above this use the fan shortcut when its precondition holds.
inline constexpr std::size_t kMedianSetEnumerationLimit = 12;

// {median(S) : S a 3-subset of Y}, sorted by vertex id.
std::vector<VertexId> median_set(const Tree& t, const std::vector<std::string>& y);
std::vector<VertexId> median_set(const Tree& t, const MedianIndex& index, std::span<const VertexId> y);
// Full enumeration of all 3-subsets, regardless of size.
std::vector<VertexId> median_set_enumerated(const MedianIndex& index, std::span<const VertexId> y);

enum class Verdict { Pass, Fail };

struct MedianAssignment {
  // Parallel to the checked family's sets: one vertex (triples) or a vertex
  // block (general sets) per member.
  std::vector<std::vector<VertexId>> vertices;
};

struct Collision {
  ElementSet first;
  ElementSet second;
  VertexId vertex;
};

struct VerificationReport {
  Verdict verdict = Verdict::Pass;
  MedianAssignment assignment;
  std::vector<Collision> collisions;  // two sets sharing a median vertex
  std::vector<VertexId> uncovered;    // interior vertices in no block
  bool passed() const { return verdict == Verdict::Pass; }
};

// Leaf vertex for every ground element; throws GroundMismatch otherwise.
std::vector<VertexId> leaf_vertices(const Tree& t, const SetSystem& c);

// Medians of every member triple, computed in parallel with the LCA index.
std::vector<VertexId> triple_medians(const Tree& t, const SetSystem& c);

VerificationReport verify_injective(const Tree& t, const SetSystem& c);
VerificationReport verify_partition(const Tree& t, const SetSystem& c);

namespace serial {
// Reference kernel: one path-intersection query per triple, no threads.
std::vector<VertexId> triple_medians(const Tree& t, const SetSystem& c);
}  // namespace serial

}  // namespace hallmed
