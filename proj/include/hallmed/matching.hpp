#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace hallmed {

// Left vertices are sets, right vertices are elements.
struct BipartiteGraph {
  std::size_t left_count = 0;
  std::size_t right_count = 0;
  std::vector<std::vector<std::size_t>> adjacency;  // left -> right
};

inline constexpr std::size_t kUnmatched = static_cast<std::size_t>(-1);

struct MatchingResult {
  std::vector<std::size_t> left_mate;   // kUnmatched when free
  std::vector<std::size_t> right_mate;  // kUnmatched when free
  std::size_t size = 0;
  // Non-empty iff the left side is not saturated: the left vertices reachable
  // by alternating paths from the smallest free left vertex. Their
  // neighborhood is one element smaller than the violator itself.
  std::vector<std::size_t> hall_violator;

  bool saturates_left() const { return hall_violator.empty(); }
};

// Hopcroft-Karp. Deterministic: adjacency order fixes the matching.
MatchingResult max_bipartite_matching(const BipartiteGraph& g);

// Left vertices reachable from `start` along alternating paths (free edge to
// the right, matched edge back), sorted.
std::vector<std::size_t> alternating_reach(const BipartiteGraph& g, const MatchingResult& m, std::size_t start);

}  // namespace hallmed
