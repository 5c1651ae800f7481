#include "hallmed/matching.hpp"

#include <algorithm>
#include <limits>

namespace hallmed {

namespace {

class HopcroftKarp {
 public:
  explicit HopcroftKarp(const BipartiteGraph& g)
      : g_(g), left_mate_(g.left_count, kUnmatched), right_mate_(g.right_count, kUnmatched),
        dist_(g.left_count), next_edge_(g.left_count) {}

  std::size_t run() {
    std::size_t matched = 0;
    while (layer()) {
      std::fill(next_edge_.begin(), next_edge_.end(), 0);
      for (std::size_t u = 0; u < g_.left_count; ++u) {
        if (left_mate_[u] == kUnmatched && augment(u)) ++matched;
      }
    }
    return matched;
  }

  std::vector<std::size_t> take_left() { return std::move(left_mate_); }
  std::vector<std::size_t> take_right() { return std::move(right_mate_); }

 private:
  static constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

  // BFS layering from all free left vertices; true if a free right vertex is
  // reachable.
  bool layer() {
    std::vector<std::size_t> queue;
    for (std::size_t u = 0; u < g_.left_count; ++u) {
      if (left_mate_[u] == kUnmatched) {
        dist_[u] = 0;
        queue.push_back(u);
      } else {
        dist_[u] = kInf;
      }
    }
    bool found = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t u = queue[head];
      for (std::size_t r : g_.adjacency[u]) {
        const std::size_t w = right_mate_[r];
        if (w == kUnmatched) {
          found = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return found;
  }

  bool augment(std::size_t u) {
    const auto& adj = g_.adjacency[u];
    for (std::size_t& i = next_edge_[u]; i < adj.size(); ++i) {
      const std::size_t r = adj[i];
      const std::size_t w = right_mate_[r];
      if (w == kUnmatched || (dist_[w] == dist_[u] + 1 && augment(w))) {
        left_mate_[u] = r;
        right_mate_[r] = u;
        ++i;
        return true;
      }
    }
    dist_[u] = kInf;
    return false;
  }

  const BipartiteGraph& g_;
  std::vector<std::size_t> left_mate_;
  std::vector<std::size_t> right_mate_;
  std::vector<std::size_t> dist_;
  std::vector<std::size_t> next_edge_;
};

}  // namespace

std::vector<std::size_t> alternating_reach(const BipartiteGraph& g, const MatchingResult& m, std::size_t start) {
  std::vector<bool> left_seen(g.left_count, false);
  std::vector<bool> right_seen(g.right_count, false);
  std::vector<std::size_t> queue{start};
  left_seen[start] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (std::size_t r : g.adjacency[queue[head]]) {
      if (right_seen[r]) continue;
      right_seen[r] = true;
      const std::size_t w = m.right_mate[r];
      if (w != kUnmatched && !left_seen[w]) {
        left_seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

MatchingResult max_bipartite_matching(const BipartiteGraph& g) {
  HopcroftKarp hk(g);
  MatchingResult result;
  result.size = hk.run();
  result.left_mate = hk.take_left();
  result.right_mate = hk.take_right();
  if (result.size < g.left_count) {
    const auto free_left = std::find(result.left_mate.begin(), result.left_mate.end(), kUnmatched);
    result.hall_violator = alternating_reach(g, result, static_cast<std::size_t>(free_left - result.left_mate.begin()));
  }
  return result;
}

}  // namespace hallmed
