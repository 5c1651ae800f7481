#include <algorithm>
#include <deque>
#include <set>

#include "hallmed/error.hpp"
#include "hallmed/tree.hpp"

namespace hallmed {

namespace {

// Mutable working copy for the four rewriting passes.
struct Workspace {
  std::vector<std::vector<VertexId>> adj;
  std::vector<std::string> labels;
  std::vector<bool> alive;

  VertexId add_vertex(std::string label) {
    adj.emplace_back();
    labels.push_back(std::move(label));
    alive.push_back(true);
    return static_cast<VertexId>(adj.size() - 1);
  }
  void link(VertexId a, VertexId b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  void unlink(VertexId a, VertexId b) {
    std::erase(adj[a], b);
    std::erase(adj[b], a);
  }

  // Smallest leaf label reachable from `start` without passing `blocked`.
  std::string smallest_label_beyond(VertexId start, VertexId blocked) const {
    std::string best;
    std::vector<std::pair<VertexId, VertexId>> stack{{start, blocked}};
    while (!stack.empty()) {
      auto [v, from] = stack.back();
      stack.pop_back();
      if (!labels[v].empty() && (best.empty() || labels[v] < best)) best = labels[v];
      for (VertexId w : adj[v]) {
        if (w != from) stack.emplace_back(w, v);
      }
    }
    return best;
  }
};

}  // namespace

Tree canonicalize_to_binary(const Tree& t, const std::vector<std::string>& x) {
  std::set<std::string> wanted(x.begin(), x.end());
  if (wanted.size() < 3) throw Error(ErrorCode::TooFewElements, "no binary X-tree exists for |X| < 3");

  Workspace ws;
  ws.adj.resize(t.vertex_count());
  ws.labels.resize(t.vertex_count());
  ws.alive.assign(t.vertex_count(), true);
  for (VertexId v = 0; v < t.vertex_count(); ++v) ws.adj[v] = t.neighbors(v);
  for (const auto& name : wanted) ws.labels[t.vertex_of(name)] = name;

  // (a) keep only the minimal subtree spanning X.
  std::deque<VertexId> queue;
  for (VertexId v = 0; v < t.vertex_count(); ++v) {
    if (ws.adj[v].size() <= 1 && ws.labels[v].empty()) queue.push_back(v);
  }
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    if (!ws.alive[v]) continue;
    ws.alive[v] = false;
    for (VertexId w : std::vector<VertexId>(ws.adj[v])) {
      ws.unlink(v, w);
      if (ws.adj[w].size() <= 1 && ws.labels[w].empty()) queue.push_back(w);
    }
  }

  // (b) labeled interior vertices hand their label to a new pendant leaf.
  const std::size_t original = ws.adj.size();
  for (VertexId v = 0; v < original; ++v) {
    if (!ws.alive[v] || ws.labels[v].empty() || ws.adj[v].size() < 2) continue;
    VertexId leaf = ws.add_vertex(std::move(ws.labels[v]));
    ws.labels[v].clear();
    ws.link(v, leaf);
  }

  // (c) suppress degree-2 vertices.
  for (VertexId v = 0; v < ws.adj.size(); ++v) {
    if (!ws.alive[v] || ws.adj[v].size() != 2 || !ws.labels[v].empty()) continue;
    const VertexId a = ws.adj[v][0];
    const VertexId b = ws.adj[v][1];
    ws.unlink(v, a);
    ws.unlink(v, b);
    ws.link(a, b);
    ws.alive[v] = false;
  }

  // (d) resolve each vertex of degree d > 3 into a caterpillar of d-2 vertices.
  const std::size_t before_resolution = ws.adj.size();
  for (VertexId v = 0; v < before_resolution; ++v) {
    if (!ws.alive[v] || ws.adj[v].size() <= 3) continue;
    std::vector<std::pair<std::string, VertexId>> keyed;
    for (VertexId w : ws.adj[v]) keyed.emplace_back(ws.smallest_label_beyond(w, v), w);
    std::sort(keyed.begin(), keyed.end());
    const std::size_t d = keyed.size();
    for (const auto& [key, w] : keyed) ws.unlink(v, w);

    std::vector<VertexId> spine{v};
    for (std::size_t i = 1; i < d - 2; ++i) {
      spine.push_back(ws.add_vertex(""));
      ws.link(spine[i - 1], spine[i]);
    }
    ws.link(spine.front(), keyed[0].second);
    ws.link(spine.front(), keyed[1].second);
    for (std::size_t i = 1; i + 1 < spine.size(); ++i) ws.link(spine[i], keyed[i + 1].second);
    ws.link(spine.back(), keyed[d - 2].second);
    ws.link(spine.back(), keyed[d - 1].second);
  }

  std::vector<VertexId> remap(ws.adj.size(), 0);
  std::vector<std::string> labels;
  for (VertexId v = 0; v < ws.adj.size(); ++v) {
    if (!ws.alive[v]) continue;
    remap[v] = static_cast<VertexId>(labels.size());
    labels.push_back(ws.labels[v]);
  }
  std::vector<Edge> edges;
  for (VertexId v = 0; v < ws.adj.size(); ++v) {
    if (!ws.alive[v]) continue;
    for (VertexId w : ws.adj[v]) {
      if (v < w) edges.push_back({remap[v], remap[w]});
    }
  }
  const std::size_t count = labels.size();
  Tree out(count, edges, std::move(labels));
  if (!out.is_binary_x_tree()) throw Error(ErrorCode::Internal, "canonicalization produced a non-binary tree");
  return out;
}

}  // namespace hallmed
