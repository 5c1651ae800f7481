// hallmed: check, build, verify, gen and bench over set systems and
// median-injective phylogenetic trees.
//
// Exit codes: 0 success / satisfied / verified, 1 violated or verification
// failed (a witness is printed on stdout), 2 usage, input or internal error.

#include <omp.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hallmed/builder.hpp"
#include "hallmed/checker.hpp"
#include "hallmed/documents.hpp"
#include "hallmed/genbench.hpp"
#include "hallmed/median.hpp"
#include "hallmed/newick.hpp"

namespace {

using namespace hallmed;

constexpr int kOk = 0;
constexpr int kViolated = 1;
constexpr int kFailure = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
  if (!out) throw UsageError("failed writing " + path);
}

// Writes to `path`, or stdout when the path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

void print_json(const nlohmann::json& doc) { std::cout << doc.dump(2) << '\n'; }

SetSystem load_triples(const std::string& path) {
  SetSystem c = parse_set_system(read_file(path));
  if (!c.is_triple_system()) {
    throw UsageError("every set must be a triple (use --partition for larger sets)");
  }
  return c;
}

struct CheckArgs {
  std::string input;
  std::string mode = "poly";
  bool partition = false;
  bool json = false;
  std::size_t brute_limit = CheckerConfig{}.brute_force_max_sets;
};

int run_check(const CheckArgs& args) {
  CheckerConfig config;
  config.brute_force_max_sets = args.brute_limit;
  if (args.partition) {
    const SetSystem c = parse_set_system(read_file(args.input));
    PartitionCheckOutcome outcome;
    if (args.mode == "both") {
      outcome = check_partition_condition(c, PartitionMode::Poly, config);
      const auto brute = check_partition_condition(c, PartitionMode::Brute, config);
      if (brute.inequality != outcome.inequality || brute.equality != outcome.equality) {
        std::cerr << "internal error: poly and brute partition checks disagree\n";
        return kFailure;
      }
    } else {
      outcome = check_partition_condition(c, args.mode == "brute" ? PartitionMode::Brute : PartitionMode::Poly,
                                          config);
    }
    if (args.json) {
      print_json(to_json(c, outcome));
    } else {
      std::cout << describe(c, outcome) << '\n';
    }
    return outcome.satisfied() ? kOk : kViolated;
  }

  const SetSystem c = load_triples(args.input);
  CheckOutcome outcome;
  if (args.mode == "brute") {
    outcome = check_bruteforce(c, config);
  } else {
    outcome = check_poly(c);
    if (args.mode == "both" && check_bruteforce(c, config).status != outcome.status) {
      std::cerr << "internal error: poly and brute checks disagree\n";
      return kFailure;
    }
  }
  if (args.json) {
    print_json(to_json(c, outcome));
  } else {
    std::cout << describe(c, outcome) << '\n';
  }
  return outcome.satisfied() ? kOk : kViolated;
}

struct BuildArgs {
  std::string input;
  std::string out;
  std::string trace;
  std::string report;
  bool partition = false;
};

int run_build(const BuildArgs& args) {
  const SetSystem c = args.partition ? parse_set_system(read_file(args.input)) : load_triples(args.input);
  BuildResult result;
  try {
    result = args.partition ? build_partition_tree(c) : build_tree(c);
  } catch (const ConditionViolatedError& e) {
    std::visit([&](const auto& outcome) { print_json(to_json(c, outcome)); }, e.outcome());
    return kViolated;
  }
  const VerificationReport report = args.partition ? verify_partition(result.tree, c) : verify_injective(result.tree, c);
  if (!report.passed()) {
    std::cerr << "internal error: constructed tree failed verification\n";
    print_json(to_json(result.tree, c, report, args.partition));
    return kFailure;
  }
  emit(args.out, serialize_newick(result.tree) + "\n");
  if (!args.trace.empty()) write_file(args.trace, trace_to_json(c, result.trace).dump(2) + "\n");
  if (!args.report.empty()) {
    write_file(args.report, to_json(result.tree, c, report, args.partition).dump(2) + "\n");
  } else if (args.partition) {
    print_json(to_json(result.tree, c, report, true));
  }
  return kOk;
}

struct VerifyArgs {
  std::string tree;
  std::string input;
  bool partition = false;
};

int run_verify(const VerifyArgs& args) {
  const Tree t = parse_newick(read_file(args.tree));
  const SetSystem c = args.partition ? parse_set_system(read_file(args.input)) : load_triples(args.input);
  const VerificationReport report = args.partition ? verify_partition(t, c) : verify_injective(t, c);
  print_json(to_json(t, c, report, args.partition));
  return report.passed() ? kOk : kViolated;
}

struct GenArgs {
  GenSpec spec;
  std::string out;
  std::string emit_tree;
  std::string format = "text";
};

int run_gen(const GenArgs& args) {
  const GeneratedInstance instance = generate(args.spec);
  std::string text;
  if (args.format == "json") {
    nlohmann::json doc;
    std::vector<std::string> elements;
    for (ElementId e : instance.system.display_order()) elements.emplace_back(instance.system.name(e));
    doc["elements"] = elements;
    doc["sets"] = nlohmann::json::array();
    for (const auto& s : instance.system.sets()) doc["sets"].push_back(instance.system.names_of(s));
    text = doc.dump(2) + "\n";
  } else {
    text = format_set_system(instance.system);
  }
  emit(args.out, text);
  if (!args.emit_tree.empty()) {
    if (!instance.planted) throw UsageError("--emit-tree is only available for non-violating instances");
    write_file(args.emit_tree, serialize_newick(*instance.planted) + "\n");
  }
  return kOk;
}

template <class T, class Parse>
std::vector<T> split_list(const std::string& text, Parse parse) {
  std::vector<T> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    out.push_back(parse(item));
  }
  return out;
}

struct BenchArgs {
  std::string grid;
  std::string seeds = "1";
  std::string modes = "poly";
  std::optional<std::size_t> sets;
  std::size_t reps = 5;
  std::size_t brute_limit = CheckerConfig{}.brute_force_max_sets;
  std::string csv;
};

int run_bench(const BenchArgs& args) {
  BenchGrid grid;
  auto to_size = [](const std::string& s) {
    std::size_t pos = 0;
    const auto v = std::stoull(s, &pos);
    if (pos != s.size()) throw UsageError("not a number: " + s);
    return static_cast<std::size_t>(v);
  };
  try {
    grid.leaf_counts = split_list<std::size_t>(args.grid, to_size);
    grid.seeds = split_list<std::uint64_t>(args.seeds, to_size);
  } catch (const std::logic_error&) {
    throw UsageError("malformed --grid or --seeds list");
  }
  grid.modes = split_list<BenchMode>(args.modes, [](const std::string& s) {
    auto m = parse_bench_mode(s);
    if (!m) throw UsageError("unknown bench mode " + s);
    return *m;
  });
  grid.set_count = args.sets;
  grid.repetitions = args.reps;
  grid.config.brute_force_max_sets = args.brute_limit;
  emit(args.csv, format_bench_csv(bench_checkers(grid)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strengthened Hall condition checker and median-injective tree builder"};
  app.require_subcommand(1);
  std::optional<int> threads;
  app.add_option("--threads", threads, "Cap on worker threads (default: all cores)")->check(CLI::PositiveNumber);

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Decide the condition for an instance file");
  check_cmd->add_option("input", check.input, "Instance file")->required();
  check_cmd->add_option("--mode", check.mode, "poly, brute or both")->check(CLI::IsMember({"poly", "brute", "both"}));
  check_cmd->add_flag("--partition", check.partition, "Check the partition condition for sets of size >= 3");
  check_cmd->add_flag("--json", check.json, "Print a JSON outcome document");
  check_cmd->add_option("--brute-limit", check.brute_limit, "Largest family the brute-force route accepts");

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "Construct a tree realizing an instance");
  build_cmd->add_option("input", build.input, "Instance file")->required();
  build_cmd->add_option("--out", build.out, "Newick output path (default: stdout)");
  build_cmd->add_option("--trace", build.trace, "Write the reduction trace as JSON");
  build_cmd->add_option("--report", build.report, "Write the verification report as JSON");
  build_cmd->add_flag("--partition", build.partition, "Build a partition tree for sets of size >= 3");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Verify a tree against an instance");
  verify_cmd->add_option("--tree", verify.tree, "Newick tree file")->required();
  verify_cmd->add_option("--input", verify.input, "Instance file")->required();
  verify_cmd->add_flag("--partition", verify.partition, "Verify the partition property");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance from a random planted tree");
  gen_cmd->add_option("--leaves", gen.spec.leaf_count, "Number of elements")->required();
  gen_cmd->add_option("--sets", gen.spec.set_count, "Number of sets (blocks in partition mode)")->required();
  gen_cmd->add_option("--seed", gen.spec.seed, "Random seed");
  gen_cmd->add_flag("--violating", gen.spec.violating, "Perturb the instance until the condition fails");
  gen_cmd->add_flag("--partition", gen.spec.partition_mode, "Emit a family of larger sets tiling the tree");
  gen_cmd->add_option("--out", gen.out, "Instance output path (default: stdout)");
  gen_cmd->add_option("--emit-tree", gen.emit_tree, "Write the planted tree as Newick");
  gen_cmd->add_option("--format", gen.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time the checkers over a grid of sizes");
  bench_cmd->add_option("--grid", bench.grid, "Comma-separated element counts")->required();
  bench_cmd->add_option("--seeds", bench.seeds, "Comma-separated seeds");
  bench_cmd->add_option("--modes", bench.modes, "Comma-separated: poly, serial, brute");
  bench_cmd->add_option("--sets", bench.sets, "Sets per instance (default: n - 2)");
  bench_cmd->add_option("--reps", bench.reps, "Repetitions per cell; the median is reported");
  bench_cmd->add_option("--brute-limit", bench.brute_limit, "Largest family the brute-force route accepts");
  bench_cmd->add_option("--csv", bench.csv, "CSV output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kFailure;
  }
  if (threads) omp_set_num_threads(*threads);

  try {
    if (*check_cmd) return run_check(check);
    if (*build_cmd) return run_build(build);
    if (*verify_cmd) return run_verify(verify);
    if (*gen_cmd) return run_gen(gen);
    if (*bench_cmd) return run_bench(bench);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kFailure;
}
