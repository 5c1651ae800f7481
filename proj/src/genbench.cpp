#include "hallmed/genbench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <random>

#include "hallmed/error.hpp"

namespace hallmed {

namespace {

constexpr std::uint64_t kSeedStride = 0x9E3779B97F4A7C15ULL;

std::size_t uniform_below(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// Leaves reachable from `start` without crossing `blocked`.
template <class Blocked>
std::vector<VertexId> leaves_beyond(const Tree& t, VertexId start, VertexId from, Blocked&& blocked) {
  std::vector<VertexId> out;
  std::vector<std::pair<VertexId, VertexId>> stack{{start, from}};
  while (!stack.empty()) {
    auto [v, prev] = stack.back();
    stack.pop_back();
    if (t.degree(v) == 1) out.push_back(v);
    for (VertexId w : t.neighbors(v)) {
      if (w != prev && !blocked(w)) stack.emplace_back(w, v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Numbers sort by value, everything else after them lexicographically.
bool natural_less(const std::string& a, const std::string& b) {
  auto numeric = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  const bool na = numeric(a), nb = numeric(b);
  if (na != nb) return na;
  if (na && a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::vector<std::string> display_leaves(const Tree& t) {
  auto labels = t.leaf_labels();
  std::sort(labels.begin(), labels.end(), natural_less);
  return labels;
}

SetSystem system_from_vertex_sets(const Tree& t, const std::vector<std::vector<VertexId>>& picks) {
  std::vector<std::vector<std::string>> sets;
  for (const auto& pick : picks) {
    std::vector<std::string> names;
    for (VertexId v : pick) names.push_back(t.label(v));
    std::sort(names.begin(), names.end());
    sets.push_back(std::move(names));
  }
  std::sort(sets.begin(), sets.end());
  return SetSystem::from_names(display_leaves(t), sets);
}

}  // namespace

void validate(const GenSpec& spec) {
  if (spec.leaf_count < 3) throw Error(ErrorCode::InvalidSpec, "leaf count must be at least 3");
  const std::size_t interior = spec.leaf_count - 2;
  if (spec.partition_mode) {
    if (spec.set_count < 1 || spec.set_count > interior) {
      throw Error(ErrorCode::InvalidSpec, "partition mode needs 1 <= sets <= leaves - 2");
    }
  } else if (!spec.violating && spec.set_count > interior) {
    throw Error(ErrorCode::InvalidSpec, "a satisfying triple system has at most leaves - 2 sets");
  }
}

std::vector<std::string> numbered_elements(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.push_back(std::to_string(i));
  return out;
}

Tree random_binary_tree(const std::vector<std::string>& x, std::uint64_t seed) {
  if (x.size() < 3) throw Error(ErrorCode::TooFewElements, "a binary X-tree needs |X| >= 3");
  std::mt19937_64 rng(seed);
  // Vertex 0 is the star center; leaves are 1..3.
  std::vector<std::string> labels{"", x[0], x[1], x[2]};
  std::vector<Edge> edges{{0, 1}, {0, 2}, {0, 3}};
  for (std::size_t k = 3; k < x.size(); ++k) {
    const std::size_t pick = uniform_below(rng, edges.size());
    const Edge e = edges[pick];
    const auto mid = static_cast<VertexId>(labels.size());
    const auto leaf = static_cast<VertexId>(mid + 1);
    labels.emplace_back();
    labels.push_back(x[k]);
    edges[pick] = {e.u, mid};
    edges.push_back({mid, e.v});
    edges.push_back({mid, leaf});
  }
  const std::size_t count = labels.size();
  return Tree(count, edges, std::move(labels));
}

SetSystem sample_realizable_system(const Tree& t, std::size_t m, std::uint64_t seed) {
  auto interior = t.interior();
  if (m > interior.size()) {
    throw Error(ErrorCode::InvalidSpec, "cannot pick " + std::to_string(m) + " of " +
                                            std::to_string(interior.size()) + " interior vertices");
  }
  std::mt19937_64 rng(seed);
  std::shuffle(interior.begin(), interior.end(), rng);
  std::vector<std::vector<VertexId>> picks;
  for (std::size_t i = 0; i < m; ++i) {
    const VertexId v = interior[i];
    std::vector<VertexId> pick;
    for (VertexId w : t.neighbors(v)) {
      const auto side = leaves_beyond(t, w, v, [](VertexId) { return false; });
      pick.push_back(side[uniform_below(rng, side.size())]);
    }
    picks.push_back(std::move(pick));
  }
  // Distinct medians make the triples distinct, so from_names never sees a
  // duplicate here.
  return system_from_vertex_sets(t, picks);
}

SetSystem sample_partition_system(const Tree& t, std::size_t blocks, std::uint64_t seed) {
  const auto interior = t.interior();
  if (blocks < 1 || blocks > interior.size()) throw Error(ErrorCode::InvalidSpec, "block count out of range");
  std::mt19937_64 rng(seed);

  std::vector<Edge> inner_edges;
  for (const Edge& e : t.edges()) {
    if (t.degree(e.u) > 1 && t.degree(e.v) > 1) inner_edges.push_back(e);
  }
  std::shuffle(inner_edges.begin(), inner_edges.end(), rng);

  // Keep all but blocks - 1 interior edges and label the components.
  std::vector<std::vector<VertexId>> kept(t.vertex_count());
  for (std::size_t i = blocks - 1; i < inner_edges.size(); ++i) {
    kept[inner_edges[i].u].push_back(inner_edges[i].v);
    kept[inner_edges[i].v].push_back(inner_edges[i].u);
  }
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> block_of(t.vertex_count(), kNone);
  std::vector<std::vector<VertexId>> members;
  for (VertexId root : interior) {
    if (block_of[root] != kNone) continue;
    members.emplace_back();
    std::vector<VertexId> stack{root};
    block_of[root] = members.size() - 1;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      members.back().push_back(v);
      for (VertexId w : kept[v]) {
        if (block_of[w] == kNone) {
          block_of[w] = members.size() - 1;
          stack.push_back(w);
        }
      }
    }
  }

  std::vector<std::vector<VertexId>> picks;
  for (std::size_t b = 0; b < members.size(); ++b) {
    auto in_block = [&](VertexId w) { return block_of[w] == b; };
    std::vector<VertexId> pick;
    for (VertexId v : members[b]) {
      for (VertexId w : t.neighbors(v)) {
        if (in_block(w)) continue;
        const auto side = leaves_beyond(t, w, v, in_block);
        pick.push_back(side[uniform_below(rng, side.size())]);
      }
    }
    picks.push_back(std::move(pick));
  }
  return system_from_vertex_sets(t, picks);
}

SetSystem perturb_to_violation(const SetSystem& c, std::uint64_t seed) {
  if (c.empty()) throw Error(ErrorCode::CannotViolate, "nothing to perturb in an empty family");
  if (!c.is_triple_system()) throw Error(ErrorCode::NotTripleSystem, "perturbation works on triple systems");
  if (!check_poly(c).satisfied()) return c;

  std::mt19937_64 rng(seed);
  const auto sets = sorted_sets(c.sets());
  std::vector<std::size_t> order(sets.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t idx : order) {
    const ElementSet& s = sets[idx];
    std::vector<ElementId> outside;
    for (ElementId e : c.ground()) {
      if (!std::binary_search(s.begin(), s.end(), e)) outside.push_back(e);
    }
    if (outside.empty()) continue;
    const ElementId d = outside[uniform_below(rng, outside.size())];
    // Any two of these together with s cover only four elements.
    std::vector<ElementSet> window{{s[0], s[1], d}, {s[0], s[2], d}, {s[1], s[2], d}};
    for (auto& t : window) std::sort(t.begin(), t.end());
    std::shuffle(window.begin(), window.end(), rng);

    std::vector<ElementSet> grown(c.sets().begin(), c.sets().end());
    for (const auto& t : window) {
      if (std::find(grown.begin(), grown.end(), t) != grown.end()) continue;
      grown.push_back(t);
      SetSystem candidate = c.with({c.ground().begin(), c.ground().end()}, grown);
      if (!check_poly(candidate).satisfied()) return candidate;
    }
  }
  throw Error(ErrorCode::CannotViolate, "ground set too small to add a distinct triple");
}

GeneratedInstance generate(const GenSpec& spec) {
  validate(spec);
  const auto names = numbered_elements(spec.leaf_count);
  Tree tree = random_binary_tree(names, spec.seed);
  const std::uint64_t sample_seed = spec.seed + kSeedStride;
  const std::uint64_t perturb_seed = spec.seed + 2 * kSeedStride;

  if (spec.partition_mode) {
    SetSystem system = sample_partition_system(tree, spec.set_count, sample_seed);
    if (!spec.violating) return {std::move(system), std::move(tree)};
    // An extra triple always breaks |X| - 2 = sum(|Y| - 2).
    std::mt19937_64 rng(perturb_seed);
    const auto ground = system.ground();
    for (;;) {
      ElementSet t;
      while (t.size() < 3) {
        const ElementId e = ground[uniform_below(rng, ground.size())];
        if (std::find(t.begin(), t.end(), e) == t.end()) t.push_back(e);
      }
      std::sort(t.begin(), t.end());
      if (system.contains_set(t)) continue;
      std::vector<ElementSet> sets(system.sets().begin(), system.sets().end());
      sets.push_back(std::move(t));
      return {system.with({ground.begin(), ground.end()}, std::move(sets)), std::nullopt};
    }
  }

  if (!spec.violating) {
    return {sample_realizable_system(tree, spec.set_count, sample_seed), std::move(tree)};
  }
  const std::size_t planted = std::min(std::max<std::size_t>(spec.set_count, 1), spec.leaf_count - 2);
  SetSystem base = sample_realizable_system(tree, planted, sample_seed);
  return {perturb_to_violation(base, perturb_seed), std::nullopt};
}

std::string to_string(BenchMode mode) {
  switch (mode) {
    case BenchMode::Poly: return "poly";
    case BenchMode::PolySerial: return "serial";
    case BenchMode::Brute: return "brute";
  }
  return "unknown";
}

std::optional<BenchMode> parse_bench_mode(std::string_view text) {
  if (text == "poly") return BenchMode::Poly;
  if (text == "serial") return BenchMode::PolySerial;
  if (text == "brute") return BenchMode::Brute;
  return std::nullopt;
}

std::vector<BenchRow> bench_checkers(const BenchGrid& grid) {
  auto cell_sets = [&](std::size_t n) {
    const std::size_t cap = n >= 2 ? n - 2 : 0;
    return std::min(grid.set_count.value_or(cap), cap);
  };
  for (std::size_t n : grid.leaf_counts) {
    if (n < 3) throw Error(ErrorCode::InvalidSpec, "grid leaf counts must be at least 3");
    for (BenchMode mode : grid.modes) {
      if (mode == BenchMode::Brute && cell_sets(n) > grid.config.brute_force_max_sets) {
        throw Error(ErrorCode::SizeGuardExceeded, "brute mode requested for " + std::to_string(cell_sets(n)) +
                                                      " sets, above its guard");
      }
    }
  }

  std::vector<BenchRow> rows;
  const std::size_t reps = std::max<std::size_t>(grid.repetitions, 1);
  for (std::size_t n : grid.leaf_counts) {
    const std::size_t m = cell_sets(n);
    for (std::uint64_t seed : grid.seeds) {
      const GeneratedInstance instance = generate({n, m, seed, false, false});
      for (BenchMode mode : grid.modes) {
        std::vector<double> times;
        Status status = Status::Satisfied;
        for (std::size_t r = 0; r < reps; ++r) {
          const auto start = std::chrono::steady_clock::now();
          CheckOutcome outcome;
          switch (mode) {
            case BenchMode::Poly: outcome = check_poly(instance.system); break;
            case BenchMode::PolySerial: outcome = serial::check_poly(instance.system); break;
            case BenchMode::Brute: outcome = check_bruteforce(instance.system, grid.config); break;
          }
          const auto stop = std::chrono::steady_clock::now();
          times.push_back(std::chrono::duration<double, std::micro>(stop - start).count());
          status = outcome.status;
        }
        std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
        rows.push_back({n, m, mode, seed, times[times.size() / 2], status});
      }
    }
  }
  return rows;
}

std::string format_bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "n,set_count,mode,seed,micros,status\n";
  char buffer[64];
  for (const auto& row : rows) {
    std::snprintf(buffer, sizeof buffer, "%.1f", row.micros);
    out += std::to_string(row.n) + ',' + std::to_string(row.set_count) + ',' + to_string(row.mode) + ',' +
           std::to_string(row.seed) + ',' + buffer + ',' +
           (row.status == Status::Satisfied ? "satisfied" : "violated") + '\n';
  }
  return out;
}

}  // namespace hallmed
