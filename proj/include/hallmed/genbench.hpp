#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hallmed/checker.hpp"
#include "hallmed/set_system.hpp"
#include "hallmed/tree.hpp"

namespace hallmed {

struct GenSpec {
  std::size_t leaf_count = 6;
  std::size_t set_count = 4;
  std::uint64_t seed = 1;
  bool violating = false;
  bool partition_mode = false;
};

// Throws InvalidSpec for specs no instance can meet.
void validate(const GenSpec& spec);

// "1", "2", ..., "n".
std::vector<std::string> numbered_elements(std::size_t n);

// Sequential leaf attachment on a uniformly chosen edge, starting from the
// star on the first three elements.
Tree random_binary_tree(const std::vector<std::string>& x, std::uint64_t seed);

// m distinct interior vertices; for each, one uniform leaf from each of the
// three components left after removing it. The triple's median is that
// vertex, so the medians are distinct and the condition holds.
SetSystem sample_realizable_system(const Tree& t, std::size_t m, std::uint64_t seed);

// Cuts the interior subtree into `blocks` connected pieces; each piece B
// yields the |B| + 2 leaves picked one per component of T - B. The blocks'
// medians tile the interior vertices.
SetSystem sample_partition_system(const Tree& t, std::size_t blocks, std::uint64_t seed);

// Adds triples inside a four-element window around an existing triple until
// the condition fails.
SetSystem perturb_to_violation(const SetSystem& c, std::uint64_t seed);

struct GeneratedInstance {
  SetSystem system;
  std::optional<Tree> planted;  // only for realizable instances
};

GeneratedInstance generate(const GenSpec& spec);

enum class BenchMode { Poly, PolySerial, Brute };

std::string to_string(BenchMode mode);
std::optional<BenchMode> parse_bench_mode(std::string_view text);

struct BenchGrid {
  std::vector<std::size_t> leaf_counts;
  std::optional<std::size_t> set_count;  // default: n - 2
  std::vector<std::uint64_t> seeds{1};
  std::vector<BenchMode> modes{BenchMode::Poly};
  std::size_t repetitions = 5;
  CheckerConfig config;
};

struct BenchRow {
  std::size_t n = 0;
  std::size_t set_count = 0;
  BenchMode mode = BenchMode::Poly;
  std::uint64_t seed = 0;
  double micros = 0;  // median over repetitions
  Status status = Status::Satisfied;
};

// Cells run one after another; only the checker itself may use threads.
std::vector<BenchRow> bench_checkers(const BenchGrid& grid);

std::string format_bench_csv(const std::vector<BenchRow>& rows);

}  // namespace hallmed
