#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "hallmed/checker.hpp"
#include "hallmed/error.hpp"
#include "hallmed/genbench.hpp"
#include "hallmed/median.hpp"
#include "hallmed/newick.hpp"
#include "oracles.hpp"

using namespace hallmed;

namespace {

// u1(1,2) - u2(3) - u3(4,5)
const Tree& e1_tree() {
  static const Tree t = Tree::caterpillar({"1", "2", "3", "4", "5"});
  return t;
}

VertexId interior_next_to(const Tree& t, const char* leaf) { return t.neighbors(t.vertex_of(leaf)).front(); }

std::vector<VertexId> enumerate_medians(const Tree& t, const std::vector<std::string>& y) {
  std::set<VertexId> out;
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = i + 1; j < y.size(); ++j)
      for (std::size_t k = j + 1; k < y.size(); ++k) out.insert(oracle::median(t, y[i], y[j], y[k]));
  return {out.begin(), out.end()};
}

}  // namespace

TEST_CASE("median of three labels") {
  const Tree star = Tree::star({"1", "2", "3"});
  CHECK(median(star, "1", "2", "3") == 0);

  const Tree& cat = e1_tree();
  CHECK(median(cat, "1", "3", "4") == interior_next_to(cat, "3"));

  const Tree quartet = parse_newick("((1,2),(3,4));");
  CHECK(median(quartet, "1", "2", "3") == interior_next_to(quartet, "1"));

  CHECK_THROWS_AS(median(cat, "1", "1", "3"), Error);
  CHECK_THROWS_AS(median(cat, "1", "9", "3"), Error);
}

TEST_CASE("median agrees with the distance oracle and is symmetric") {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Tree t = random_binary_tree(numbered_elements(3 + seed % 30), seed);
    const MedianIndex index(t);
    for (int q = 0; q < 60; ++q) {
      const auto x = static_cast<VertexId>(rng() % t.vertex_count());
      const auto y = static_cast<VertexId>(rng() % t.vertex_count());
      const auto z = static_cast<VertexId>(rng() % t.vertex_count());
      const VertexId expect = oracle::median(t, x, y, z);
      CHECK(median_vertex(t, x, y, z) == expect);
      CHECK(median_vertex(t, z, x, y) == expect);
      CHECK(median_vertex(t, y, z, x) == expect);
      CHECK(index.median(x, y, z) == expect);
      CHECK(index.median(y, x, z) == expect);
    }
  }
}

TEST_CASE("median of three leaves of a binary tree is interior") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Tree t = random_binary_tree(numbered_elements(10), seed);
    const auto leaves = t.leaves();
    for (std::size_t i = 0; i < leaves.size(); ++i)
      for (std::size_t j = i + 1; j < leaves.size(); ++j)
        for (std::size_t k = j + 1; k < leaves.size(); ++k)
          CHECK(t.degree(median_vertex(t, leaves[i], leaves[j], leaves[k])) == 3);
  }
}

TEST_CASE("median sets") {
  const Tree& cat = e1_tree();
  CHECK(median_set(cat, {"1", "2", "3"}) == std::vector<VertexId>{median(cat, "1", "2", "3")});
  auto all = cat.interior();
  std::sort(all.begin(), all.end());
  CHECK(median_set(cat, {"1", "2", "3", "4", "5"}) == all);

  const Tree quartet = parse_newick("((1,2),(3,4));");
  auto qi = quartet.interior();
  std::sort(qi.begin(), qi.end());
  CHECK(median_set(quartet, {"1", "2", "3", "4"}) == qi);

  CHECK_THROWS_AS(median_set(cat, {"1", "2"}), Error);
  CHECK_THROWS_AS(median_set(cat, {"1", "2", "7"}), Error);
}

TEST_CASE("median sets match enumeration, including above the shortcut limit") {
  std::mt19937_64 rng(17);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Tree t = random_binary_tree(numbered_elements(30), seed);
    auto labels = t.leaf_labels();
    std::shuffle(labels.begin(), labels.end(), rng);
    const std::size_t size = 3 + rng() % 20;
    const std::vector<std::string> y(labels.begin(), labels.begin() + static_cast<long>(size));
    CHECK(median_set(t, y) == enumerate_medians(t, y));
  }
}

TEST_CASE("fan medians equal the median set when they are distinct") {
  std::mt19937_64 rng(23);
  int exercised = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Tree t = random_binary_tree(numbered_elements(12), seed);
    auto labels = t.leaf_labels();
    std::shuffle(labels.begin(), labels.end(), rng);
    const std::size_t size = 3 + rng() % 6;
    std::vector<std::string> y(labels.begin(), labels.begin() + static_cast<long>(size));
    std::sort(y.begin(), y.end());
    std::set<VertexId> fan;
    for (std::size_t j = 2; j < y.size(); ++j) fan.insert(oracle::median(t, y[0], y[1], y[j]));
    if (fan.size() != y.size() - 2) continue;
    ++exercised;
    CHECK(enumerate_medians(t, y) == std::vector<VertexId>(fan.begin(), fan.end()));
  }
  CHECK(exercised > 20);
}

TEST_CASE("verify injective") {
  const Tree& cat = e1_tree();
  const SetSystem e1 = parse_set_system("1 2 3\n1 3 4\n3 4 5");
  const auto report = verify_injective(cat, e1);
  CHECK(report.passed());
  CHECK(report.collisions.empty());
  std::set<VertexId> used;
  for (const auto& v : report.assignment.vertices) used.insert(v.front());
  auto interior = cat.interior();
  CHECK(used == std::set<VertexId>(interior.begin(), interior.end()));

  const SetSystem more = parse_set_system("1 2 3\n1 3 4\n3 4 5\n2 3 4");
  const auto bad = verify_injective(cat, more);
  CHECK(!bad.passed());
  REQUIRE(bad.collisions.size() == 1);
  CHECK(more.format_set(bad.collisions[0].first) == "{1,3,4}");
  CHECK(more.format_set(bad.collisions[0].second) == "{2,3,4}");
  CHECK(bad.collisions[0].vertex == interior_next_to(cat, "3"));

  const auto empty = verify_injective(cat, parse_set_system("#X: 1 2 3\n"));
  CHECK(empty.passed());
  CHECK(empty.assignment.vertices.empty());

  CHECK_THROWS_AS(verify_injective(Tree::star({"1", "2", "3"}), e1), Error);
}

TEST_CASE("verify partition") {
  const Tree& cat = e1_tree();
  const auto gap = verify_partition(cat, parse_set_system("1 2 3\n3 4 5"));
  CHECK(!gap.passed());
  CHECK(gap.uncovered == std::vector<VertexId>{interior_next_to(cat, "3")});

  const auto whole = verify_partition(cat, parse_set_system("1 2 3 4 5"));
  CHECK(whole.passed());
  CHECK(whole.assignment.vertices.front().size() == 3);

  const auto overlap = verify_partition(cat, parse_set_system("1 2 3 4\n2 3 4 5"));
  CHECK(!overlap.passed());
  CHECK(!overlap.collisions.empty());
}

TEST_CASE("parallel and serial triple medians agree") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Tree t = random_binary_tree(numbered_elements(20 + seed), seed);
    const SetSystem c = sample_realizable_system(t, 18, seed + 1);
    CHECK(triple_medians(t, c) == serial::triple_medians(t, c));
  }
}
