#include "hallmed/tree.hpp"

#include <algorithm>

#include "hallmed/error.hpp"

namespace hallmed {

Tree::Tree(std::size_t vertex_count, const std::vector<Edge>& edges, std::vector<std::string> labels)
    : adjacency_(vertex_count), labels_(std::move(labels)) {
  if (labels_.size() != vertex_count) {
    throw Error(ErrorCode::InvalidTree, "label table does not match vertex count");
  }
  if (vertex_count == 0) return;
  if (edges.size() != vertex_count - 1) {
    throw Error(ErrorCode::InvalidTree, "a tree on n vertices has n-1 edges");
  }
  for (const auto& e : edges) {
    if (e.u >= vertex_count || e.v >= vertex_count || e.u == e.v) {
      throw Error(ErrorCode::InvalidTree, "edge endpoint out of range or loop");
    }
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  // n-1 edges plus connectivity implies acyclic.
  std::vector<bool> seen(vertex_count, false);
  std::vector<VertexId> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (VertexId w : adjacency_[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != vertex_count) throw Error(ErrorCode::InvalidTree, "graph is not connected");
  for (VertexId v = 0; v < vertex_count; ++v) {
    if (labels_[v].empty()) continue;
    if (!by_label_.emplace(labels_[v], v).second) {
      throw Error(ErrorCode::DuplicateLabel, labels_[v]);
    }
  }
}

Tree Tree::single_vertex(std::string label) {
  return Tree(1, {}, {std::move(label)});
}

Tree Tree::star(const std::vector<std::string>& leaves) {
  std::vector<Edge> edges;
  std::vector<std::string> labels{""};
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    edges.push_back({0, static_cast<VertexId>(i + 1)});
    labels.push_back(leaves[i]);
  }
  const std::size_t count = labels.size();
  return Tree(count, edges, std::move(labels));
}

Tree Tree::caterpillar(const std::vector<std::string>& leaves) {
  const std::size_t n = leaves.size();
  if (n < 3) {
    if (n == 2) return Tree(2, {{0, 1}}, {leaves[0], leaves[1]});
    if (n == 1) return single_vertex(leaves[0]);
    throw Error(ErrorCode::TooFewElements, "caterpillar needs at least one leaf");
  }
  const std::size_t inner = n - 2;
  std::vector<std::string> labels(inner);
  labels.insert(labels.end(), leaves.begin(), leaves.end());
  std::vector<Edge> edges;
  auto leaf = [inner](std::size_t i) { return static_cast<VertexId>(inner + i); };
  for (std::size_t i = 0; i + 1 < inner; ++i) {
    edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(i + 1)});
  }
  edges.push_back({0, leaf(0)});
  edges.push_back({0, leaf(1)});
  for (std::size_t i = 1; i + 1 < inner; ++i) edges.push_back({static_cast<VertexId>(i), leaf(i + 1)});
  const auto last = static_cast<VertexId>(inner - 1);
  if (inner > 1) edges.push_back({last, leaf(n - 2)});
  edges.push_back({last, leaf(n - 1)});
  const std::size_t count = labels.size();
  return Tree(count, edges, std::move(labels));
}

bool Tree::has_edge(VertexId u, VertexId v) const {
  if (u >= vertex_count() || v >= vertex_count()) return false;
  const auto& n = adjacency_[u];
  return std::find(n.begin(), n.end(), v) != n.end();
}

std::vector<Edge> Tree::edges() const {
  std::vector<Edge> out;
  for (VertexId u = 0; u < vertex_count(); ++u) {
    for (VertexId v : adjacency_[u]) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

std::optional<VertexId> Tree::find(std::string_view label) const {
  auto it = by_label_.find(label);
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

VertexId Tree::vertex_of(std::string_view label) const {
  auto v = find(label);
  if (!v) throw Error(ErrorCode::LabelNotInTree, std::string(label));
  return *v;
}

std::vector<VertexId> Tree::leaves() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < vertex_count(); ++v) {
    if (degree(v) <= 1) out.push_back(v);
  }
  return out;
}

std::vector<VertexId> Tree::interior() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < vertex_count(); ++v) {
    if (degree(v) >= 2) out.push_back(v);
  }
  return out;
}

std::vector<std::string> Tree::leaf_labels() const {
  std::vector<std::string> out;
  for (VertexId v : leaves()) {
    if (is_labeled(v)) out.push_back(labels_[v]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Tree::is_leaf_labeled() const {
  for (VertexId v = 0; v < vertex_count(); ++v) {
    if (degree(v) <= 1 && !is_labeled(v)) return false;
  }
  return true;
}

bool Tree::is_binary_x_tree() const {
  for (VertexId v = 0; v < vertex_count(); ++v) {
    const std::size_t d = degree(v);
    if (d <= 1) {
      if (!is_labeled(v)) return false;
    } else if (d != 3 || is_labeled(v)) {
      return false;
    }
  }
  return true;
}

Edge Tree::pendant_edge(std::string_view leaf_label) const {
  VertexId v = vertex_of(leaf_label);
  if (degree(v) != 1) throw Error(ErrorCode::EdgeNotInTree, std::string(leaf_label) + " is not a leaf");
  return {v, adjacency_[v].front()};
}

std::vector<VertexId> Tree::path(VertexId from, VertexId to) const {
  constexpr VertexId kNone = static_cast<VertexId>(-1);
  std::vector<VertexId> parent(vertex_count(), kNone);
  std::vector<VertexId> stack{to};
  parent[to] = to;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    if (v == from) break;
    for (VertexId w : adjacency_[v]) {
      if (parent[w] == kNone) {
        parent[w] = v;
        stack.push_back(w);
      }
    }
  }
  std::vector<VertexId> out{from};
  for (VertexId v = from; v != to; v = parent[v]) out.push_back(parent[v]);
  return out;
}

Tree Tree::subdivide_and_attach(Edge e, const std::string& label) const {
  if (!has_edge(e.u, e.v)) throw Error(ErrorCode::EdgeNotInTree, "cannot subdivide a non-edge");
  if (by_label_.contains(label)) throw Error(ErrorCode::DuplicateLabel, label);
  if (label.empty()) throw Error(ErrorCode::MalformedToken, "empty label");

  Tree out = *this;
  const auto mid = static_cast<VertexId>(vertex_count());
  const auto leaf = static_cast<VertexId>(mid + 1);
  std::replace(out.adjacency_[e.u].begin(), out.adjacency_[e.u].end(), e.v, mid);
  std::replace(out.adjacency_[e.v].begin(), out.adjacency_[e.v].end(), e.u, mid);
  out.adjacency_.push_back({e.u, e.v, leaf});
  out.adjacency_.push_back({mid});
  out.labels_.emplace_back();
  out.labels_.push_back(label);
  out.by_label_.emplace(label, leaf);
  return out;
}

Tree subdivide_and_attach(const Tree& t, Edge e, const std::string& label) {
  return t.subdivide_and_attach(e, label);
}

}  // namespace hallmed
