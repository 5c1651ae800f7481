// Times the threaded kernels against their serial references on planted
// instances and checks that both return the same answer.
//
// usage: bench_kernels [max_n] [reps]

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#include "hallmed/checker.hpp"
#include "hallmed/genbench.hpp"
#include "hallmed/median.hpp"

namespace {

using namespace hallmed;

double median_micros(std::size_t reps, const std::function<void()>& body) {
  std::vector<double> samples;
  for (std::size_t r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    body();
    samples.push_back(std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count());
  }
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t max_n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 200;
  const std::size_t reps = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 5;
  std::printf("threads=%d\n", omp_get_max_threads());
  std::printf("%-14s %6s %12s %12s %8s %s\n", "kernel", "n", "parallel_us", "serial_us", "speedup", "agree");

  bool all_agree = true;
  for (std::size_t n = 25; n <= max_n; n *= 2) {
    const Tree t = random_binary_tree(numbered_elements(n), n);
    const SetSystem c = sample_realizable_system(t, n - 2, n + 1);

    CheckOutcome par, ser;
    const double par_check = median_micros(reps, [&] { par = check_poly(c); });
    const double ser_check = median_micros(reps, [&] { ser = serial::check_poly(c); });
    const bool check_agree = par.status == ser.status;
    std::printf("%-14s %6zu %12.1f %12.1f %8.2f %s\n", "check_poly", n, par_check, ser_check, ser_check / par_check,
                check_agree ? "yes" : "NO");

    std::vector<VertexId> par_med, ser_med;
    const double par_time = median_micros(reps, [&] { par_med = triple_medians(t, c); });
    const double ser_time = median_micros(reps, [&] { ser_med = serial::triple_medians(t, c); });
    const bool med_agree = par_med == ser_med;
    std::printf("%-14s %6zu %12.1f %12.1f %8.2f %s\n", "triple_medians", n, par_time, ser_time, ser_time / par_time,
                med_agree ? "yes" : "NO");
    all_agree = all_agree && check_agree && med_agree;
  }
  return all_agree ? 0 : 1;
}
