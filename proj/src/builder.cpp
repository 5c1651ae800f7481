#include "hallmed/builder.hpp"

#include <algorithm>

namespace hallmed {

namespace {

ElementSet triple(ElementId p, ElementId q, ElementId r) {
  ElementSet t{p, q, r};
  std::sort(t.begin(), t.end());
  return t;
}

bool contains(const ElementSet& s, ElementId e) { return std::binary_search(s.begin(), s.end(), e); }

// The two elements of `t` other than x, in order.
std::pair<ElementId, ElementId> others(const ElementSet& t, ElementId x) {
  ElementId rest[2];
  std::size_t k = 0;
  for (ElementId e : t) {
    if (e != x) rest[k++] = e;
  }
  return {rest[0], rest[1]};
}

std::vector<ElementId> ground_without(const SetSystem& c, ElementId x) {
  std::vector<ElementId> g;
  for (ElementId e : c.ground()) {
    if (e != x) g.push_back(e);
  }
  return g;
}

}  // namespace

ConditionViolatedError::ConditionViolatedError(CheckOutcome outcome)
    : Error(ErrorCode::ConditionViolated, "the strengthened Hall condition fails"), outcome_(std::move(outcome)) {}

ConditionViolatedError::ConditionViolatedError(PartitionCheckOutcome outcome)
    : Error(ErrorCode::ConditionViolated, "the partition condition fails"), outcome_(std::move(outcome)) {}

ReductionStep reduce_at(const SetSystem& c, ElementId x) {
  std::vector<ElementSet> with_x;
  std::vector<ElementSet> rest;
  for (const auto& s : c.sets()) (contains(s, x) ? with_x : rest).push_back(s);
  std::sort(with_x.begin(), with_x.end());
  auto reduced_ground = ground_without(c, x);

  if (with_x.size() == 1) {
    const auto [a, b] = others(with_x[0], x);
    return {Degree1Step{x, a, b}, c.with(std::move(reduced_ground), std::move(rest))};
  }
  if (with_x.size() != 2) {
    throw Error(ErrorCode::NoReduction, "element " + std::string(c.name(x)) + " has coverage " +
                                            std::to_string(with_x.size()));
  }

  const auto [p, q] = others(with_x[0], x);
  const auto [r, s] = others(with_x[1], x);
  const SetSystem base = c.with(reduced_ground, rest);

  // Shared element means case (i).
  std::optional<ElementId> shared;
  if (p == r || p == s) shared = p;
  if (q == r || q == s) shared = q;
  if (shared) {
    const ElementId a = *shared;
    ElementId b = (p == a) ? q : p;
    ElementId b_prime = (r == a) ? s : r;
    if (b_prime < b) std::swap(b, b_prime);
    const ElementSet merged = triple(a, b, b_prime);
    if (base.contains_set(merged)) {
      throw Error(ErrorCode::Internal, "case (i) merge triple already present; the input violates the condition");
    }
    rest.push_back(merged);
    return {CaseIStep{x, a, b, b_prime}, c.with(std::move(reduced_ground), std::move(rest))};
  }

  const ElementId a = p, b = q, a_prime = r, b_prime = s;
  const ElementSet first = triple(a, a_prime, b);
  const ElementSet second = triple(a, a_prime, b_prime);
  if (base.contains_set(first) && base.contains_set(second)) {
    throw Error(ErrorCode::Internal, "both case (ii) merge triples already present");
  }
  Branch branch;
  if (!base.contains_set(first) && extends_condition(base, first)) {
    branch = Branch::UseC1;
    rest.push_back(first);
  } else if (!base.contains_set(second) && extends_condition(base, second)) {
    branch = Branch::UseC2;
    rest.push_back(second);
  } else {
    throw Error(ErrorCode::ConditionViolated, "neither case (ii) merge keeps the condition");
  }
  return {CaseIIStep{x, a, b, a_prime, b_prime, branch}, c.with(std::move(reduced_ground), std::move(rest))};
}

ReductionStep find_reduction(const SetSystem& c) {
  if (c.empty()) throw Error(ErrorCode::NoReduction, "empty family");
  if (c.ground().size() < 4) throw Error(ErrorCode::TooFewElements, "reduction needs |X| >= 4");
  std::vector<std::size_t> coverage(c.universe_size(), 0);
  for (const auto& s : c.sets()) {
    for (ElementId e : s) ++coverage[e];
  }
  for (std::size_t wanted : {std::size_t{1}, std::size_t{2}}) {
    for (ElementId e : c.ground()) {
      if (coverage[e] == wanted) return reduce_at(c, e);
    }
  }
  throw Error(ErrorCode::NoReduction, "every element lies in three or more sets");
}

BuildResult build_tree(const SetSystem& c) {
  if (!c.is_triple_system()) throw Error(ErrorCode::NotTripleSystem, "every set must have exactly 3 elements");
  if (c.ground().size() < 3) throw Error(ErrorCode::TooFewElements, "a binary X-tree needs |X| >= 3");
  if (CheckOutcome outcome = check_poly(c); !outcome.satisfied()) throw ConditionViolatedError(std::move(outcome));

  auto names_of = [&c](std::span<const ElementId> ids) {
    std::vector<std::string> out;
    for (ElementId e : ids) out.emplace_back(c.name(e));
    return out;
  };

  BuildResult result;
  SetSystem current = c;
  Tree tree;
  for (;;) {
    if (current.empty()) {
      tree = Tree::caterpillar(names_of(current.ground()));
      break;
    }
    const ElementSet covered = current.union_all();
    if (covered.size() != current.ground().size()) {
      UncoveredStep step;
      std::set_difference(current.ground().begin(), current.ground().end(), covered.begin(), covered.end(),
                          std::back_inserter(step.elements));
      SetSystem reduced = current.with(covered, {current.sets().begin(), current.sets().end()});
      result.trace.push_back({std::move(step), reduced});
      current = std::move(reduced);
      continue;
    }
    if (current.ground().size() == 3) {
      tree = Tree::star(names_of(current.ground()));
      break;
    }
    ReductionStep step = find_reduction(current);
    current = step.reduced;
    result.trace.push_back(std::move(step));
  }

  // Undo the reductions: each step hangs its removed element(s) back on a
  // pendant edge, which never moves an existing median.
  for (auto it = result.trace.rbegin(); it != result.trace.rend(); ++it) {
    std::visit(
        [&](const auto& step) {
          using T = std::decay_t<decltype(step)>;
          if constexpr (std::is_same_v<T, UncoveredStep>) {
            for (ElementId e : step.elements) {
              const std::string smallest = tree.leaf_labels().front();
              tree = tree.subdivide_and_attach(tree.pendant_edge(smallest), std::string(c.name(e)));
            }
          } else {
            ElementId anchor = step.a;
            if constexpr (std::is_same_v<T, CaseIStep>) anchor = step.b_prime;
            if constexpr (std::is_same_v<T, CaseIIStep>) {
              if (step.branch == Branch::UseC1) anchor = step.a_prime;
            }
            tree = tree.subdivide_and_attach(tree.pendant_edge(c.name(anchor)), std::string(c.name(step.x)));
          }
        },
        it->kind);
  }
  result.tree = std::move(tree);
  return result;
}

BuildResult build_partition_tree(const SetSystem& c) {
  PartitionCheckOutcome outcome = check_partition_condition(c, PartitionMode::Poly);
  if (!outcome.satisfied()) throw ConditionViolatedError(std::move(outcome));
  std::vector<ElementSet> triples;
  for (const auto& y : c.sets()) {
    for (auto& t : fan_expansion(y)) triples.push_back(std::move(t));
  }
  return build_tree(c.with({c.ground().begin(), c.ground().end()}, std::move(triples)));
}

}  // namespace hallmed
