#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hallmed {

using VertexId = std::uint32_t;

struct Edge {
  VertexId u;
  VertexId v;
};

// Unrooted tree with optionally labeled vertices. Labels are unique. Vertex
// ids are dense and stable: operations that grow a tree only append.
//
// The general form allows labels on interior vertices (needed as input to
// canonicalize_to_binary); is_binary_x_tree() checks the strict form where
// the labeled vertices are exactly the leaves and every other vertex has
// degree 3.
class Tree {
 public:
  Tree() = default;

  // Validates connectivity, acyclicity and label uniqueness. `labels` is
  // indexed by vertex; an empty string means unlabeled.
  Tree(std::size_t vertex_count, const std::vector<Edge>& edges, std::vector<std::string> labels);

  static Tree single_vertex(std::string label);
  static Tree star(const std::vector<std::string>& leaves);
  // Interior path u1..u_{n-2}; u1 holds leaves[0], leaves[1], the last
  // interior holds the final two leaves.
  static Tree caterpillar(const std::vector<std::string>& leaves);

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return vertex_count() == 0 ? 0 : vertex_count() - 1; }
  const std::vector<VertexId>& neighbors(VertexId v) const { return adjacency_[v]; }
  std::size_t degree(VertexId v) const { return adjacency_[v].size(); }
  bool has_edge(VertexId u, VertexId v) const;
  std::vector<Edge> edges() const;

  const std::string& label(VertexId v) const { return labels_[v]; }
  bool is_labeled(VertexId v) const { return !labels_[v].empty(); }
  std::optional<VertexId> find(std::string_view label) const;
  VertexId vertex_of(std::string_view label) const;  // throws LabelNotInTree
  const std::map<std::string, VertexId, std::less<>>& labeled() const { return by_label_; }

  std::vector<VertexId> leaves() const;    // degree <= 1
  std::vector<VertexId> interior() const;  // degree >= 2
  std::vector<std::string> leaf_labels() const;  // sorted

  bool is_leaf_labeled() const;  // every degree-1 vertex carries a label
  bool is_binary_x_tree() const;

  // The edge joining a leaf to its only neighbor.
  Edge pendant_edge(std::string_view leaf_label) const;

  // Vertices on the path from `from` to `to`, both ends included.
  std::vector<VertexId> path(VertexId from, VertexId to) const;

  // Splits `e` with a new midpoint and hangs a new leaf labeled `label` off
  // it. The midpoint gets id vertex_count(), the leaf vertex_count() + 1.
  Tree subdivide_and_attach(Edge e, const std::string& label) const;

 private:
  std::vector<std::vector<VertexId>> adjacency_;
  std::vector<std::string> labels_;
  std::map<std::string, VertexId, std::less<>> by_label_;
};

Tree subdivide_and_attach(const Tree& t, Edge e, const std::string& label);

// Minimal subtree spanning X, pendant leaves for labeled interior vertices,
// suppression of degree-2 vertices and caterpillar resolution of high-degree
// vertices. The result is a binary X-tree.
Tree canonicalize_to_binary(const Tree& t, const std::vector<std::string>& x);

}  // namespace hallmed
