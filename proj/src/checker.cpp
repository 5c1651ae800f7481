#include "hallmed/checker.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>

#include "hallmed/error.hpp"
#include "hallmed/matching.hpp"

namespace hallmed {

namespace {

// Depth-first walk over all non-empty subfamilies of `sets`, visiting index
// tuples in lexicographic preorder. The visitor sees the chosen indices, the
// size of their union and the summed weight (|Y| - 2 per member), and decides
// whether to descend.
class SubfamilyWalk {
 public:
  explicit SubfamilyWalk(std::span<const ElementSet> sets) : count_(sets.size()) {
    ElementSet elements;
    for (const auto& s : sets) elements.insert(elements.end(), s.begin(), s.end());
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    words_ = std::max<std::size_t>(1, (elements.size() + 63) / 64);
    masks_.assign(count_ * words_, 0);
    weights_.resize(count_);
    for (std::size_t i = 0; i < count_; ++i) {
      for (ElementId e : sets[i]) {
        const auto bit = static_cast<std::size_t>(std::lower_bound(elements.begin(), elements.end(), e) - elements.begin());
        masks_[i * words_ + bit / 64] |= std::uint64_t{1} << (bit % 64);
      }
      weights_[i] = sets[i].size() - 2;
    }
    unions_.assign((count_ + 1) * words_, 0);
    chosen_.resize(count_);
  }

  template <class Visit>
  void run(Visit&& visit) {
    descend(0, 0, 0, visit);
  }

 private:
  template <class Visit>
  void descend(std::size_t start, std::size_t depth, std::size_t weight, Visit& visit) {
    const std::uint64_t* parent = &unions_[depth * words_];
    std::uint64_t* current = &unions_[(depth + 1) * words_];
    for (std::size_t i = start; i < count_; ++i) {
      std::size_t covered = 0;
      for (std::size_t w = 0; w < words_; ++w) {
        current[w] = parent[w] | masks_[i * words_ + w];
        covered += static_cast<std::size_t>(std::popcount(current[w]));
      }
      chosen_[depth] = i;
      const std::size_t total = weight + weights_[i];
      if (visit(std::span<const std::size_t>(chosen_.data(), depth + 1), covered, total)) {
        descend(i + 1, depth + 1, total, visit);
      }
    }
  }

  std::size_t count_;
  std::size_t words_ = 1;
  std::vector<std::uint64_t> masks_;
  std::vector<std::size_t> weights_;
  std::vector<std::uint64_t> unions_;
  std::vector<std::size_t> chosen_;
};

struct MinimumViolator {
  std::vector<std::size_t> indices;
  std::size_t union_size = 0;
  std::size_t weight = 0;
};

// Smallest subfamily with |U C'| < weight(C') + 2, ties broken by the
// lexicographic order of the index tuples (and hence of the sorted sets).
std::optional<MinimumViolator> minimum_violator(std::span<const ElementSet> sorted) {
  std::optional<MinimumViolator> best;
  SubfamilyWalk walk(sorted);
  walk.run([&](std::span<const std::size_t> chosen, std::size_t covered, std::size_t weight) {
    const std::size_t size = chosen.size();
    if (covered < weight + 2) {
      if (!best || size < best->indices.size()) {
        best = MinimumViolator{{chosen.begin(), chosen.end()}, covered, weight};
      }
      return false;
    }
    return !best || size + 1 < best->indices.size();
  });
  return best;
}

void require_triples(const SetSystem& c) {
  if (!c.is_triple_system()) throw Error(ErrorCode::NotTripleSystem, "every set must have exactly 3 elements");
}

void guard(std::size_t sets, std::size_t limit, const char* what) {
  if (sets > limit) {
    throw Error(ErrorCode::SizeGuardExceeded, std::string(what) + " limited to " + std::to_string(limit) +
                                                  " sets, got " + std::to_string(sets));
  }
}

std::size_t union_size(std::span<const ElementSet> family) {
  ElementSet all;
  for (const auto& s : family) all.insert(all.end(), s.begin(), s.end());
  std::sort(all.begin(), all.end());
  return static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
}

// Sets on the left, ground positions on the right, optionally without two
// deleted ground positions.
struct Incidence {
  std::vector<ElementSet> sets;  // canonical order
  std::vector<ElementId> ground;
  BipartiteGraph graph;

  explicit Incidence(const SetSystem& c) : sets(sorted_sets(c.sets())), ground(c.ground().begin(), c.ground().end()) {
    graph.left_count = sets.size();
    graph.right_count = ground.size();
    graph.adjacency.resize(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) {
      for (ElementId e : sets[i]) {
        graph.adjacency[i].push_back(
            static_cast<std::size_t>(std::lower_bound(ground.begin(), ground.end(), e) - ground.begin()));
      }
    }
  }

  BipartiteGraph without(std::size_t a, std::size_t b) const {
    BipartiteGraph g = graph;
    for (auto& adj : g.adjacency) std::erase_if(adj, [a, b](std::size_t r) { return r == a || r == b; });
    return g;
  }

  CheckOutcome pair_witness(std::size_t a, std::size_t b) const {
    const MatchingResult m = max_bipartite_matching(without(a, b));
    if (m.saturates_left()) throw Error(ErrorCode::Internal, "pair reported as failing has a matching");
    CheckOutcome out;
    out.status = Status::Violated;
    out.kind = WitnessKind::DeletedPair;
    out.pair = std::make_pair(ground[a], ground[b]);
    for (std::size_t i : m.hall_violator) out.subfamily.push_back(sets[i]);
    out.union_size = union_size(out.subfamily);
    return out;
  }
};

// Repairs the base matching after two ground positions are deleted: at most
// two sets lose their partner and each needs one augmenting path.
class PairSolver {
 public:
  PairSolver(const BipartiteGraph& g, const MatchingResult& base)
      : g_(g), base_(base), visited_(g.right_count, 0) {}

  bool fails(std::size_t a, std::size_t b) {
    left_ = base_.left_mate;
    right_ = base_.right_mate;
    a_ = a;
    b_ = b;
    std::size_t freed[2];
    std::size_t count = 0;
    for (std::size_t r : {a, b}) {
      if (right_[r] != kUnmatched) {
        freed[count++] = right_[r];
        left_[right_[r]] = kUnmatched;
        right_[r] = kUnmatched;
      }
    }
    for (std::size_t k = 0; k < count; ++k) {
      if (++stamp_ == 0) {
        std::fill(visited_.begin(), visited_.end(), 0);
        stamp_ = 1;
      }
      if (!augment(freed[k])) return true;
    }
    return false;
  }

 private:
  bool augment(std::size_t u) {
    for (std::size_t r : g_.adjacency[u]) {
      if (r == a_ || r == b_ || visited_[r] == stamp_) continue;
      visited_[r] = stamp_;
      if (right_[r] == kUnmatched || augment(right_[r])) {
        left_[u] = r;
        right_[r] = u;
        return true;
      }
    }
    return false;
  }

  const BipartiteGraph& g_;
  const MatchingResult& base_;
  std::vector<std::size_t> left_;
  std::vector<std::size_t> right_;
  std::vector<std::uint32_t> visited_;
  std::uint32_t stamp_ = 0;
  std::size_t a_ = 0;
  std::size_t b_ = 0;
};

}  // namespace

CheckOutcome check_bruteforce(const SetSystem& c, const CheckerConfig& config) {
  require_triples(c);
  guard(c.size(), config.brute_force_max_sets, "brute-force check");
  const auto sorted = sorted_sets(c.sets());
  CheckOutcome out;
  if (auto v = minimum_violator(sorted)) {
    out.status = Status::Violated;
    out.kind = WitnessKind::Subfamily;
    for (std::size_t i : v->indices) out.subfamily.push_back(sorted[i]);
    out.union_size = v->union_size;
  }
  return out;
}

CheckOutcome check_poly(const SetSystem& c) {
  require_triples(c);
  if (c.empty()) return {};
  const Incidence inc(c);
  const std::size_t n = inc.ground.size();
  const MatchingResult base = max_bipartite_matching(inc.graph);
  if (!base.saturates_left()) return inc.pair_witness(0, 1);

  // Pairs are keyed by i * n + j so the minimum key is the smallest pair.
  constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> best{kNone};
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel
  {
    PairSolver solver(inc.graph, base);
#pragma omp for schedule(dynamic, 1)
    for (std::ptrdiff_t row = 0; row < rows; ++row) {
      const auto i = static_cast<std::size_t>(row);
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::uint64_t key = std::uint64_t{i} * n + j;
        std::uint64_t seen = best.load(std::memory_order_relaxed);
        if (key >= seen) break;
        if (solver.fails(i, j)) {
          while (key < seen && !best.compare_exchange_weak(seen, key, std::memory_order_relaxed)) {
          }
          break;
        }
      }
    }
  }
  const std::uint64_t found = best.load();
  if (found == kNone) return {};
  return inc.pair_witness(static_cast<std::size_t>(found / n), static_cast<std::size_t>(found % n));
}

namespace serial {

CheckOutcome check_poly(const SetSystem& c) {
  require_triples(c);
  if (c.empty()) return {};
  const Incidence inc(c);
  const std::size_t n = inc.ground.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!max_bipartite_matching(inc.without(i, j)).saturates_left()) return inc.pair_witness(i, j);
    }
  }
  return {};
}

}  // namespace serial

bool extends_condition(const SetSystem& c, const ElementSet& extra) {
  ElementSet t = extra;
  std::sort(t.begin(), t.end());
  if (c.contains_set(t)) return false;
  for (ElementId e : t) {
    if (!c.contains_element(e)) return false;
  }
  const Incidence inc(c);
  BipartiteGraph g = inc.graph;
  std::vector<std::size_t> adj;
  for (ElementId e : t) {
    adj.push_back(static_cast<std::size_t>(std::lower_bound(inc.ground.begin(), inc.ground.end(), e) -
                                           inc.ground.begin()));
  }
  for (int copy = 0; copy < 3; ++copy) g.adjacency.push_back(adj);
  g.left_count += 3;
  return max_bipartite_matching(g).saturates_left();
}

bool violates_condition(std::span<const ElementSet> subfamily) {
  return !subfamily.empty() && union_size(subfamily) <= subfamily.size() + 1;
}

TightFamily tight_sets(const SetSystem& c, const CheckerConfig& config) {
  require_triples(c);
  guard(c.size(), std::min<std::size_t>(config.tight_sets_max_sets, 63), "tight-set enumeration");
  TightFamily out;
  bool violated = false;
  const auto sets = c.sets();
  SubfamilyWalk walk(sets);
  walk.run([&](std::span<const std::size_t> chosen, std::size_t covered, std::size_t weight) {
    if (covered < weight + 2) {
      violated = true;
      return false;
    }
    if (covered == weight + 2) {
      TightSubfamily t;
      t.members.assign(chosen.begin(), chosen.end());
      for (std::size_t i : chosen) t.mask |= std::uint64_t{1} << i;
      std::vector<std::size_t> idx(chosen.begin(), chosen.end());
      t.union_ = c.union_of(idx);
      out.members.push_back(std::move(t));
    }
    return true;
  });
  if (violated) throw Error(ErrorCode::ConditionViolated, "tight sets are only defined when the condition holds");
  return out;
}

std::vector<ElementSet> fan_expansion_ordered(std::span<const ElementId> ordered_y) {
  if (ordered_y.size() < 3) throw Error(ErrorCode::TooFewElements, "fan expansion needs |Y| >= 3");
  std::vector<ElementSet> out;
  out.reserve(ordered_y.size() - 2);
  for (std::size_t j = 2; j < ordered_y.size(); ++j) {
    ElementSet t{ordered_y[0], ordered_y[1], ordered_y[j]};
    std::sort(t.begin(), t.end());
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<ElementSet> fan_expansion(const ElementSet& y) {
  ElementSet ordered = y;
  std::sort(ordered.begin(), ordered.end());
  return fan_expansion_ordered(ordered);
}

PartitionCheckOutcome check_partition_condition(const SetSystem& c, PartitionMode mode, const CheckerConfig& config) {
  if (c.empty()) throw Error(ErrorCode::TooFewElements, "partition condition needs a non-empty family");
  const ElementSet covered = c.union_all();
  if (!std::equal(covered.begin(), covered.end(), c.ground().begin(), c.ground().end())) {
    throw Error(ErrorCode::GroundMismatch, "the sets must cover the ground set exactly");
  }

  PartitionCheckOutcome out;
  std::int64_t total = 0;
  for (const auto& s : c.sets()) total += static_cast<std::int64_t>(s.size()) - 2;
  out.deficit = static_cast<std::int64_t>(c.ground().size()) - 2 - total;
  out.equality = out.deficit == 0 ? Status::Satisfied : Status::Violated;

  const auto sorted = sorted_sets(c.sets());
  if (mode == PartitionMode::Brute) {
    guard(c.size(), config.brute_force_max_sets, "brute-force partition check");
    if (auto v = minimum_violator(sorted)) {
      out.inequality = Status::Violated;
      out.kind = PartitionWitnessKind::Subfamily;
      for (std::size_t i : v->indices) out.subfamily.push_back(sorted[i]);
      out.union_size = v->union_size;
      out.weight = v->weight;
    }
  } else {
    // Two members sharing three elements already break the inequality.
    for (std::size_t i = 0; i < sorted.size() && out.inequality == Status::Satisfied; ++i) {
      for (std::size_t j = i + 1; j < sorted.size(); ++j) {
        ElementSet common;
        std::set_intersection(sorted[i].begin(), sorted[i].end(), sorted[j].begin(), sorted[j].end(),
                              std::back_inserter(common));
        if (common.size() >= 3) {
          out.inequality = Status::Violated;
          out.kind = PartitionWitnessKind::Intersection;
          out.pair = std::make_pair(sorted[i], sorted[j]);
          break;
        }
      }
    }
    if (out.inequality == Status::Satisfied) {
      // With pairwise intersections of at most two, fan triples of different
      // members never coincide, and the fan union satisfies the triple
      // condition exactly when the family satisfies the inequality.
      std::vector<ElementSet> triples;
      std::vector<std::size_t> owner;
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (auto& t : fan_expansion(sorted[i])) {
          triples.push_back(std::move(t));
          owner.push_back(i);
        }
      }
      const SetSystem expanded = c.with({c.ground().begin(), c.ground().end()}, triples);
      const CheckOutcome inner = check_poly(expanded);
      if (!inner.satisfied()) {
        std::vector<std::size_t> members;
        for (const auto& t : inner.subfamily) {
          const auto it = std::find(triples.begin(), triples.end(), t);
          members.push_back(owner[static_cast<std::size_t>(it - triples.begin())]);
        }
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        out.inequality = Status::Violated;
        out.kind = PartitionWitnessKind::Subfamily;
        for (std::size_t i : members) {
          out.subfamily.push_back(sorted[i]);
          out.weight += sorted[i].size() - 2;
        }
        out.union_size = union_size(out.subfamily);
        if (out.union_size >= out.weight + 2) {
          throw Error(ErrorCode::Internal, "fan violator did not lift to a violating subfamily");
        }
      }
    }
  }
  if (out.inequality == Status::Satisfied && out.equality == Status::Violated) {
    out.kind = PartitionWitnessKind::Deficit;
  }
  return out;
}

}  // namespace hallmed
