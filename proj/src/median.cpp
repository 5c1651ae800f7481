#include "hallmed/median.hpp"

#include <algorithm>
#include <map>

#include "hallmed/error.hpp"

namespace hallmed {

VertexId median_vertex(const Tree& t, VertexId x, VertexId y, VertexId z) {
  const std::size_t n = t.vertex_count();
  std::vector<bool> on_path(n, false);
  for (VertexId v : t.path(x, y)) on_path[v] = true;
  if (on_path[z]) return z;
  // Walk from z: the first vertex met on the x-y path is the median.
  constexpr VertexId kNone = static_cast<VertexId>(-1);
  std::vector<VertexId> parent(n, kNone);
  std::vector<VertexId> frontier{z};
  parent[z] = z;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const VertexId v = frontier[head];
    for (VertexId w : t.neighbors(v)) {
      if (parent[w] != kNone) continue;
      if (on_path[w]) return w;
      parent[w] = v;
      frontier.push_back(w);
    }
  }
  throw Error(ErrorCode::Internal, "median walk left the tree");
}

VertexId median(const Tree& t, std::string_view x, std::string_view y, std::string_view z) {
  if (x == y || x == z || y == z) throw Error(ErrorCode::NonDistinctArguments, "median needs three distinct labels");
  return median_vertex(t, t.vertex_of(x), t.vertex_of(y), t.vertex_of(z));
}

MedianIndex::MedianIndex(const Tree& t) {
  const std::size_t n = t.vertex_count();
  depth_.assign(n, 0);
  std::size_t levels = 1;
  while ((std::size_t{1} << levels) < n) ++levels;
  up_.assign(levels, std::vector<VertexId>(n, 0));
  if (n == 0) return;
  std::vector<bool> seen(n, false);
  std::vector<VertexId> order{0};
  seen[0] = true;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const VertexId v = order[head];
    for (VertexId w : t.neighbors(v)) {
      if (seen[w]) continue;
      seen[w] = true;
      depth_[w] = depth_[v] + 1;
      up_[0][w] = v;
      order.push_back(w);
    }
  }
  for (std::size_t k = 1; k < levels; ++k) {
    for (VertexId v = 0; v < n; ++v) up_[k][v] = up_[k - 1][up_[k - 1][v]];
  }
}

VertexId MedianIndex::lca(VertexId a, VertexId b) const {
  if (depth_[a] < depth_[b]) std::swap(a, b);
  std::size_t diff = depth_[a] - depth_[b];
  for (std::size_t k = 0; diff; ++k, diff >>= 1) {
    if (diff & 1) a = up_[k][a];
  }
  if (a == b) return a;
  for (std::size_t k = up_.size(); k-- > 0;) {
    if (up_[k][a] != up_[k][b]) {
      a = up_[k][a];
      b = up_[k][b];
    }
  }
  return up_[0][a];
}

VertexId MedianIndex::median(VertexId x, VertexId y, VertexId z) const {
  const VertexId xy = lca(x, y);
  const VertexId xz = lca(x, z);
  const VertexId yz = lca(y, z);
  VertexId best = xy;
  if (depth_[xz] > depth_[best]) best = xz;
  if (depth_[yz] > depth_[best]) best = yz;
  return best;
}

std::vector<VertexId> median_set_enumerated(const MedianIndex& index, std::span<const VertexId> y) {
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (std::size_t j = i + 1; j < y.size(); ++j) {
      for (std::size_t k = j + 1; k < y.size(); ++k) out.push_back(index.median(y[i], y[j], y[k]));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<VertexId> median_set(const Tree& t, const MedianIndex& index, std::span<const VertexId> y) {
  if (y.size() < 3) throw Error(ErrorCode::TooFewElements, "median set needs |Y| >= 3");
  if (y.size() <= kMedianSetEnumerationLimit) return median_set_enumerated(index, y);

  // Fan shortcut: with y1, y2 the two smallest labels, distinct medians of
  // the triples {y1, y2, y} mean T|Y is a path from y1 to y2 with every other
  // element one edge off it, so those medians are all the medians of Y.
  std::vector<VertexId> sorted(y.begin(), y.end());
  std::sort(sorted.begin(), sorted.end(), [&](VertexId a, VertexId b) { return t.label(a) < t.label(b); });
  std::vector<VertexId> fan;
  fan.reserve(sorted.size() - 2);
  for (std::size_t j = 2; j < sorted.size(); ++j) fan.push_back(index.median(sorted[0], sorted[1], sorted[j]));
  std::sort(fan.begin(), fan.end());
  if (std::adjacent_find(fan.begin(), fan.end()) == fan.end()) return fan;
  return median_set_enumerated(index, y);
}

std::vector<VertexId> median_set(const Tree& t, const std::vector<std::string>& y) {
  std::vector<VertexId> vertices;
  for (const auto& label : y) {
    VertexId v = t.vertex_of(label);
    if (t.degree(v) > 1) throw Error(ErrorCode::GroundMismatch, label + " does not label a leaf");
    vertices.push_back(v);
  }
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
    throw Error(ErrorCode::NonDistinctArguments, "repeated label in median set");
  }
  return median_set(t, MedianIndex(t), vertices);
}

std::vector<VertexId> leaf_vertices(const Tree& t, const SetSystem& c) {
  std::vector<VertexId> out(c.universe_size(), static_cast<VertexId>(-1));
  for (ElementId e : c.ground()) {
    auto v = t.find(c.name(e));
    if (!v || t.degree(*v) > 1) {
      throw Error(ErrorCode::GroundMismatch, "element " + std::string(c.name(e)) + " is not a leaf of the tree");
    }
    out[e] = *v;
  }
  return out;
}

namespace {

void require_binary(const Tree& t) {
  if (!t.is_binary_x_tree()) throw Error(ErrorCode::InvalidTree, "expected a binary phylogenetic tree");
}

void finish(VerificationReport& report) {
  std::sort(report.collisions.begin(), report.collisions.end(), [](const Collision& a, const Collision& b) {
    return std::tie(a.first, a.second, a.vertex) < std::tie(b.first, b.second, b.vertex);
  });
  std::sort(report.uncovered.begin(), report.uncovered.end());
  report.verdict = report.collisions.empty() && report.uncovered.empty() ? Verdict::Pass : Verdict::Fail;
}

// Every pair of sets that claims the same vertex.
void collect_collisions(const SetSystem& c, const MedianAssignment& assignment, VerificationReport& report) {
  std::map<VertexId, std::vector<std::size_t>> owners;
  for (std::size_t i = 0; i < assignment.vertices.size(); ++i) {
    for (VertexId v : assignment.vertices[i]) owners[v].push_back(i);
  }
  for (const auto& [v, sets] : owners) {
    for (std::size_t i = 0; i < sets.size(); ++i) {
      for (std::size_t j = i + 1; j < sets.size(); ++j) {
        ElementSet a = c.sets()[sets[i]];
        ElementSet b = c.sets()[sets[j]];
        if (b < a) std::swap(a, b);
        report.collisions.push_back({std::move(a), std::move(b), v});
      }
    }
  }
}

}  // namespace

std::vector<VertexId> triple_medians(const Tree& t, const SetSystem& c) {
  if (!c.is_triple_system()) throw Error(ErrorCode::NotTripleSystem, "every set must have exactly 3 elements");
  const auto leaf = leaf_vertices(t, c);
  const MedianIndex index(t);
  const auto sets = c.sets();
  std::vector<VertexId> out(sets.size());
  const auto count = static_cast<std::ptrdiff_t>(sets.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto& s = sets[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = index.median(leaf[s[0]], leaf[s[1]], leaf[s[2]]);
  }
  return out;
}

namespace serial {

std::vector<VertexId> triple_medians(const Tree& t, const SetSystem& c) {
  if (!c.is_triple_system()) throw Error(ErrorCode::NotTripleSystem, "every set must have exactly 3 elements");
  const auto leaf = leaf_vertices(t, c);
  std::vector<VertexId> out;
  out.reserve(c.size());
  for (const auto& s : c.sets()) out.push_back(median_vertex(t, leaf[s[0]], leaf[s[1]], leaf[s[2]]));
  return out;
}

}  // namespace serial

VerificationReport verify_injective(const Tree& t, const SetSystem& c) {
  require_binary(t);
  VerificationReport report;
  for (VertexId v : triple_medians(t, c)) report.assignment.vertices.push_back({v});
  collect_collisions(c, report.assignment, report);
  finish(report);
  return report;
}

VerificationReport verify_partition(const Tree& t, const SetSystem& c) {
  require_binary(t);
  const auto leaf = leaf_vertices(t, c);
  const MedianIndex index(t);
  const auto sets = c.sets();
  VerificationReport report;
  report.assignment.vertices.resize(sets.size());
  const auto count = static_cast<std::ptrdiff_t>(sets.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto& s = sets[static_cast<std::size_t>(i)];
    std::vector<VertexId> ys;
    ys.reserve(s.size());
    for (ElementId e : s) ys.push_back(leaf[e]);
    report.assignment.vertices[static_cast<std::size_t>(i)] = median_set(t, index, ys);
  }
  collect_collisions(c, report.assignment, report);
  std::vector<bool> covered(t.vertex_count(), false);
  for (const auto& block : report.assignment.vertices) {
    for (VertexId v : block) covered[v] = true;
  }
  for (VertexId v : t.interior()) {
    if (!covered[v]) report.uncovered.push_back(v);
  }
  finish(report);
  return report;
}

}  // namespace hallmed
