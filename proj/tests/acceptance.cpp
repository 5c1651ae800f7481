// Acceptance run: one PASS/FAIL line per criterion. Exit status is non-zero
// if any criterion fails.

#include <omp.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "hallmed/builder.hpp"
#include "hallmed/checker.hpp"
#include "hallmed/documents.hpp"
#include "hallmed/genbench.hpp"
#include "hallmed/median.hpp"
#include "hallmed/newick.hpp"
#include "oracles.hpp"

using namespace hallmed;

namespace {

// Pinned sizes and limits.
constexpr std::size_t kRandomSystems = 10000;
constexpr std::uint32_t kRandomMaxElements = 9;
constexpr std::size_t kRoundTripInstances = 1000;
constexpr std::size_t kRoundTripMaxElements = 200;
constexpr std::size_t kPatchworkInstances = 500;
constexpr std::size_t kPatchworkMaxSets = 12;
constexpr std::size_t kMinCoverageTwoElements = 6;
constexpr std::size_t kAbundanceMinInstances = 100;
constexpr std::size_t kPartitionInstances = 200;
constexpr std::size_t kPartitionMaxElements = 100;
constexpr std::uint32_t kPartitionExhaustiveMaxElements = 7;
constexpr std::size_t kPartitionExhaustiveMaxSets = 4;
constexpr std::size_t kDeterminismSeeds = 40;
constexpr std::size_t kPerfElements = 500;
constexpr double kPerfLimitSeconds = 10.0;

struct Result {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int number, const char* title, const std::function<Result()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Result r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!r.pass) ++failures;
  std::printf("%s  %2d  %-44s %s (%.1f s)\n", r.pass ? "PASS" : "FAIL", number, title, r.detail.c_str(), seconds);
  std::fflush(stdout);
}

std::string count_text(std::size_t bad, std::size_t total, const char* what) {
  return std::to_string(bad) + "/" + std::to_string(total) + " " + what;
}

bool min_coverage_two(const SetSystem& c) {
  if (c.empty()) return false;
  for (auto e : c.ground())
    if (c.coverage(e) < 2) return false;
  return true;
}

bool abundance_holds(const SetSystem& c) {
  std::size_t two = 0;
  for (auto e : c.ground()) two += c.coverage(e) == 2;
  return two >= kMinCoverageTwoElements;
}

// Shared corpus for criteria 3, 4, 6 and 9.
struct RoundTrip {
  std::size_t instances = 0, built = 0, verified = 0, poly_passed = 0, structural = 0;
  std::size_t abundance_cases = 0, abundance_failures = 0;
};

RoundTrip run_round_trips() {
  RoundTrip out;
  std::mt19937_64 rng(20240601);
  auto count_abundance = [&](const SetSystem& c) {
    if (!min_coverage_two(c)) return;
    ++out.abundance_cases;
    if (!abundance_holds(c)) ++out.abundance_failures;
  };
  for (std::size_t i = 0; i < kRoundTripInstances; ++i) {
    const std::size_t n = 4 + rng() % (kRoundTripMaxElements - 3);
    // Mostly full families, which are the hardest to realize.
    const std::size_t m = rng() % 3 == 0 ? rng() % (n - 1) : n - 2;
    const GeneratedInstance g = generate({n, m, 1000 + i, false, false});
    ++out.instances;
    if (check_poly(g.system).satisfied()) ++out.poly_passed;
    count_abundance(g.system);
    const BuildResult r = build_tree(g.system);
    ++out.built;
    if (verify_injective(r.tree, g.system).passed()) ++out.verified;
    bool ok = r.tree.is_binary_x_tree() && r.tree.leaves().size() == n && r.tree.interior().size() == n - 2;
    for (VertexId v : r.tree.interior()) ok = ok && r.tree.degree(v) == 3;
    if (ok) ++out.structural;
    for (const auto& step : r.trace) {
      if (!std::holds_alternative<UncoveredStep>(step.kind)) count_abundance(step.reduced);
    }
  }
  // Small full families reach min coverage two far more often.
  for (std::uint64_t seed = 0; seed < 4000; ++seed) {
    const std::size_t n = 6 + seed % 7;
    count_abundance(generate({n, n - 2, 50000 + seed, false, false}).system);
  }
  return out;
}

const RoundTrip& round_trips() {
  static const RoundTrip r = run_round_trips();
  return r;
}

Result exhaustive_five() {
  const auto triples = oracle::all_triples(5);
  std::size_t bad = 0;
  for (std::uint32_t mask = 0; mask < 1024; ++mask) {
    std::vector<ElementSet> sets;
    for (std::size_t i = 0; i < triples.size(); ++i)
      if (mask >> i & 1) sets.push_back(triples[i]);
    const SetSystem c = oracle::system_of(5, sets);
    if (check_poly(c).status != check_bruteforce(c).status) ++bad;
  }
  return {bad == 0, count_text(bad, 1024, "disagreements")};
}

Result randomized_small() {
  std::mt19937_64 rng(77);
  std::size_t bad = 0, positive = 0;
  for (std::size_t i = 0; i < kRandomSystems; ++i) {
    const std::size_t n = 5 + rng() % (kRandomMaxElements - 4);
    SetSystem c;
    switch (i % 3) {
      case 0: c = generate({n, rng() % (n - 1), i, false, false}).system; break;
      case 1: c = generate({n, 1 + rng() % (n - 2), i, true, false}).system; break;
      default: {
        auto triples = oracle::all_triples(static_cast<std::uint32_t>(n));
        std::shuffle(triples.begin(), triples.end(), rng);
        triples.resize(1 + rng() % n);
        c = oracle::system_of(n, triples);
      }
    }
    const auto poly = check_poly(c);
    if (poly.status != check_bruteforce(c).status) ++bad;
    positive += poly.satisfied();
  }
  return {bad == 0, count_text(bad, kRandomSystems, "disagreements") + ", " + std::to_string(positive) +
                        " satisfied / " + std::to_string(kRandomSystems - positive) + " violated"};
}

Result realization() {
  const auto& r = round_trips();
  const bool pass = r.instances >= kRoundTripInstances && r.verified == r.instances;
  return {pass, std::to_string(r.verified) + "/" + std::to_string(r.instances) + " built and verified"};
}

Result converse() {
  const auto& r = round_trips();
  return {r.poly_passed == r.instances, std::to_string(r.poly_passed) + "/" + std::to_string(r.instances) +
                                            " sampled systems satisfy the condition"};
}

Result patchwork() {
  std::size_t instances = 0, counterexamples = 0, pairs = 0;
  for (std::uint64_t seed = 0; instances < kPatchworkInstances; ++seed) {
    const std::size_t n = 5 + seed % (kPatchworkMaxSets - 1);
    const std::size_t m = std::min(kPatchworkMaxSets, 1 + seed % (n - 2));
    const SetSystem c = generate({n, m, 7000 + seed, false, false}).system;
    ++instances;
    const TightFamily tight = tight_sets(c);
    std::set<std::uint64_t> masks;
    for (const auto& t : tight.members) masks.insert(t.mask);
    for (auto a : masks)
      for (auto b : masks) {
        if (a >= b || (a & b) == 0) continue;
        ++pairs;
        if (!masks.count(a & b) || !masks.count(a | b)) ++counterexamples;
      }
  }
  return {counterexamples == 0, count_text(counterexamples, pairs, "intersecting pairs not closed") + " over " +
                                    std::to_string(instances) + " instances"};
}

Result abundance() {
  const auto& r = round_trips();
  const bool pass = r.abundance_failures == 0 && r.abundance_cases >= kAbundanceMinInstances;
  return {pass, count_text(r.abundance_failures, r.abundance_cases, "min-coverage-2 systems with < 6 such elements")};
}

Result partition_round_trip() {
  std::mt19937_64 rng(31);
  std::size_t ok = 0, block_bad = 0, blocks = 0;
  for (std::size_t i = 0; i < kPartitionInstances; ++i) {
    const std::size_t n = 5 + rng() % (kPartitionMaxElements - 4);
    const std::size_t m = 1 + rng() % (n - 2);
    const SetSystem c = generate({n, m, 300 + i, false, true}).system;
    if (!check_partition_condition(c, PartitionMode::Poly).satisfied()) continue;
    const BuildResult r = build_partition_tree(c);
    if (!verify_partition(r.tree, c).passed()) continue;
    ++ok;
    const MedianIndex index(r.tree);
    for (const auto& y : c.sets()) {
      std::vector<VertexId> leaves;
      for (auto e : y) leaves.push_back(r.tree.vertex_of(c.name(e)));
      ++blocks;
      if (median_set(r.tree, index, leaves).size() != y.size() - 2) ++block_bad;
    }
  }
  const bool pass = ok == kPartitionInstances && block_bad == 0;
  return {pass, std::to_string(ok) + "/" + std::to_string(kPartitionInstances) + " verified, " +
                    count_text(block_bad, blocks, "blocks with |median set| != |Y| - 2")};
}

Result partition_exhaustive() {
  std::size_t families = 0, bad = 0;
  for (std::uint32_t n = 3; n <= kPartitionExhaustiveMaxElements; ++n) {
    std::vector<std::uint32_t> subsets;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
      const int k = std::popcount(s);
      if (k >= 3 && k <= 5) subsets.push_back(s);
    }
    const std::uint32_t full = (1u << n) - 1;
    const SetSystem base = oracle::system_of(n, {});
    const std::vector<ElementId> ground(base.ground().begin(), base.ground().end());
    auto to_set = [](std::uint32_t s) {
      ElementSet out;
      for (ElementId e = 0; s; ++e, s >>= 1)
        if (s & 1) out.push_back(e);
      return out;
    };
    const auto count = static_cast<long>(subsets.size());
#pragma omp parallel for schedule(dynamic) reduction(+ : families, bad)
    for (long i = 0; i < count; ++i) {
      // Families as increasing index tuples starting at i.
      std::vector<std::size_t> pick{static_cast<std::size_t>(i)};
      auto visit = [&](auto&& self, std::uint32_t covered) -> void {
        if (covered == full) {
          std::vector<ElementSet> sets;
          for (auto p : pick) sets.push_back(to_set(subsets[p]));
          const SetSystem c = base.with(ground, sets);
          const bool poly = check_partition_condition(c, PartitionMode::Poly).satisfied();
          const bool brute = check_partition_condition(c, PartitionMode::Brute).satisfied();
          ++families;
          if (poly != brute || poly != oracle::partition_condition(c)) ++bad;
        }
        if (pick.size() == kPartitionExhaustiveMaxSets) return;
        for (std::size_t j = pick.back() + 1; j < subsets.size(); ++j) {
          pick.push_back(j);
          self(self, covered | subsets[j]);
          pick.pop_back();
        }
      };
      visit(visit, subsets[static_cast<std::size_t>(i)]);
    }
  }
  return {bad == 0, count_text(bad, families, "families with disagreement")};
}

Result structural() {
  const auto& r = round_trips();
  return {r.structural == r.built, std::to_string(r.structural) + "/" + std::to_string(r.built) +
                                       " trees binary with n - 2 interior vertices"};
}

// Everything the CLI would write for one seed.
std::string pipeline_bytes(std::uint64_t seed) {
  const std::size_t n = 6 + seed % 40;
  std::string out;
  const GeneratedInstance g = generate({n, n - 2, seed, false, false});
  out += format_set_system(g.system) + serialize_newick(*g.planted);
  out += to_json(g.system, check_poly(g.system)).dump();
  const BuildResult r = build_tree(g.system);
  out += serialize_newick(r.tree) + trace_to_json(g.system, r.trace).dump();
  out += to_json(r.tree, g.system, verify_injective(r.tree, g.system), false).dump();
  const GeneratedInstance bad = generate({n, n / 2, seed, true, false});
  out += format_set_system(bad.system) + to_json(bad.system, check_poly(bad.system)).dump();
  const GeneratedInstance part = generate({n, 1 + seed % (n - 2), seed, false, true});
  const BuildResult pr = build_partition_tree(part.system);
  out += format_set_system(part.system) + serialize_newick(pr.tree);
  out += to_json(part.system, check_partition_condition(part.system, PartitionMode::Poly)).dump();
  return out;
}

Result determinism() {
  const int threads = omp_get_max_threads();
  std::size_t differing = 0;
  for (std::uint64_t seed = 1; seed <= kDeterminismSeeds; ++seed) {
    const std::string first = pipeline_bytes(seed);
    omp_set_num_threads(1);
    const std::string single = pipeline_bytes(seed);
    omp_set_num_threads(threads);
    const std::string again = pipeline_bytes(seed);
    if (first != single || first != again) ++differing;
  }
  return {differing == 0, count_text(differing, kDeterminismSeeds, "seeds with differing output")};
}

Result performance() {
  BenchGrid grid;
  grid.leaf_counts = {kPerfElements};
  grid.repetitions = 1;
  const auto rows = bench_checkers(grid);
  const double seconds = rows.front().micros / 1e6;
  const std::string csv = format_bench_csv(rows);
  std::FILE* f = std::fopen("acceptance_bench.csv", "w");
  if (f) {
    std::fputs(csv.c_str(), f);
    std::fclose(f);
  }
  char text[160];
  std::snprintf(text, sizeof text, "check_poly n=%zu sets=%zu: %.3f s (limit %.0f s), row: %s", rows.front().n,
                rows.front().set_count, seconds, kPerfLimitSeconds,
                csv.substr(csv.find('\n') + 1, csv.size() - csv.find('\n') - 2).c_str());
  return {seconds < kPerfLimitSeconds && rows.front().status == Status::Satisfied, text};
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  report(1, "checker equivalence, all families on 5", exhaustive_five);
  report(2, "checker equivalence, random |X| <= 9", randomized_small);
  report(3, "round-trip realization, |X| <= 200", realization);
  report(4, "sampled systems satisfy the condition", converse);
  report(5, "tight subfamilies form a patchwork", patchwork);
  report(6, "coverage-two abundance", abundance);
  report(7, "partition round trip, |X| <= 100", partition_round_trip);
  report(8, "partition checker modes, exhaustive |X| <= 7", partition_exhaustive);
  report(9, "built trees are binary", structural);
  report(10, "byte-identical repeated runs", determinism);
  report(11, "check_poly on 500 elements", performance);
  std::printf("%d/11 criteria passed\n", 11 - failures);
  return failures == 0 ? 0 : 1;
}
