#pragma once

// Reference computations used to check the library. None of them call the
// code under test beyond reading the data structures.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <set>
#include <string>
#include <vector>

#include "hallmed/set_system.hpp"
#include "hallmed/tree.hpp"

namespace oracle {

using hallmed::ElementSet;
using hallmed::SetSystem;
using hallmed::Tree;
using hallmed::VertexId;

inline std::vector<std::size_t> distances_from(const Tree& t, VertexId s) {
  std::vector<std::size_t> d(t.vertex_count(), SIZE_MAX);
  std::deque<VertexId> queue{s};
  d[s] = 0;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (VertexId w : t.neighbors(v)) {
      if (d[w] == SIZE_MAX) {
        d[w] = d[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return d;
}

// The vertex lying on all three pairwise geodesics.
inline VertexId median(const Tree& t, VertexId x, VertexId y, VertexId z) {
  const auto dx = distances_from(t, x), dy = distances_from(t, y), dz = distances_from(t, z);
  for (VertexId v = 0; v < t.vertex_count(); ++v) {
    if (dx[v] + dy[v] == dx[y] && dx[v] + dz[v] == dx[z] && dy[v] + dz[v] == dy[z]) return v;
  }
  return static_cast<VertexId>(-1);
}

inline VertexId median(const Tree& t, const std::string& x, const std::string& y, const std::string& z) {
  return median(t, *t.find(x), *t.find(y), *t.find(z));
}

// Every set as a bitmask over ground positions.
inline std::vector<std::uint64_t> set_masks(const SetSystem& c) {
  std::vector<std::uint64_t> out;
  for (const auto& s : c.sets()) {
    std::uint64_t m = 0;
    for (auto e : s) m |= std::uint64_t{1} << e;
    out.push_back(m);
  }
  return out;
}

// |U C'| >= |C'| + 2 for all non-empty C', by enumerating every subfamily.
inline bool strengthened_hall(const SetSystem& c) {
  const auto masks = set_masks(c);
  const std::size_t m = masks.size();
  for (std::uint64_t sub = 1; sub < (std::uint64_t{1} << m); ++sub) {
    std::uint64_t u = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (sub >> i & 1) u |= masks[i];
    }
    if (std::popcount(u) < std::popcount(sub) + 2) return false;
  }
  return true;
}

// Partition condition: |U C'| - 2 >= sum(|Y| - 2) for every C', with
// equality at C' = C and U C = X.
inline bool partition_condition(const SetSystem& c) {
  const auto masks = set_masks(c);
  const std::size_t m = masks.size();
  for (std::uint64_t sub = 1; sub < (std::uint64_t{1} << m); ++sub) {
    std::uint64_t u = 0;
    long weight = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (sub >> i & 1) {
        u |= masks[i];
        weight += std::popcount(masks[i]) - 2;
      }
    }
    if (std::popcount(u) - 2 < weight) return false;
  }
  long total = 0;
  for (auto mask : masks) total += std::popcount(mask) - 2;
  return static_cast<long>(c.ground().size()) - 2 == total;
}

// Kuhn's augmenting path algorithm.
inline std::size_t matching_size(std::size_t left, std::size_t right,
                                 const std::vector<std::vector<std::size_t>>& adj) {
  std::vector<std::size_t> mate(right, SIZE_MAX);
  std::size_t size = 0;
  for (std::size_t l = 0; l < left; ++l) {
    std::vector<bool> seen(right, false);
    auto augment = [&](auto&& self, std::size_t u) -> bool {
      for (std::size_t r : adj[u]) {
        if (seen[r]) continue;
        seen[r] = true;
        if (mate[r] == SIZE_MAX || self(self, mate[r])) {
          mate[r] = u;
          return true;
        }
      }
      return false;
    };
    if (augment(augment, l)) ++size;
  }
  return size;
}

// Each edge of a leaf-labeled tree as the leaf set on the side away from the
// smallest label. Two trees with no degree-2 unlabeled vertices are
// isomorphic as labeled trees iff these sets agree.
inline std::set<std::vector<std::string>> splits(const Tree& t) {
  const auto labels = t.leaf_labels();
  std::set<std::vector<std::string>> out;
  if (labels.empty()) return out;
  const VertexId anchor = *t.find(labels.front());
  const auto da = distances_from(t, anchor);
  for (const auto& e : t.edges()) {
    const VertexId far = da[e.u] > da[e.v] ? e.u : e.v;
    const VertexId near = far == e.u ? e.v : e.u;
    std::vector<std::string> side;
    std::vector<std::pair<VertexId, VertexId>> stack{{far, near}};
    while (!stack.empty()) {
      auto [v, prev] = stack.back();
      stack.pop_back();
      if (t.is_labeled(v)) side.push_back(t.label(v));
      for (VertexId w : t.neighbors(v)) {
        if (w != prev) stack.emplace_back(w, v);
      }
    }
    std::sort(side.begin(), side.end());
    out.insert(side);
  }
  return out;
}

inline bool same_labeled_tree(const Tree& a, const Tree& b) {
  return a.leaf_labels() == b.leaf_labels() && a.vertex_count() == b.vertex_count() && splits(a) == splits(b);
}

// All 3-subsets of {0..n-1} in lexicographic order.
inline std::vector<ElementSet> all_triples(std::uint32_t n) {
  std::vector<ElementSet> out;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b)
      for (std::uint32_t c = b + 1; c < n; ++c) out.push_back({a, b, c});
  return out;
}

inline std::vector<std::string> names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

// System on ground {a, b, ...} of size n; index i is the i-th letter, so
// library ids coincide with the indices used here.
inline SetSystem system_of(std::size_t n, const std::vector<ElementSet>& sets) {
  const auto x = names(n);
  std::vector<std::vector<std::string>> named;
  for (const auto& s : sets) {
    std::vector<std::string> ns;
    for (auto e : s) ns.push_back(x[e]);
    named.push_back(ns);
  }
  return SetSystem::from_names(x, named);
}

}  // namespace oracle
