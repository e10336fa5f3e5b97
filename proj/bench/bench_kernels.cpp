// Benchmark comparing the OpenMP kernels against their serial references:
// flip-rank tables, credit tables, entropy, and the experiment runner.

#include <chrono>
#include <cstdio>
#include <functional>

#include "rotor/analysis.hpp"
#include "rotor/experiment.hpp"
#include "rotor/rng.hpp"
#include "rotor/verify.hpp"
#include "rotor/workloads.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using rotor::Rng;

double time_of(const std::function<void()>& fn, int repeats) {
  double best = 1e100;
  for (int i = 0; i < repeats; ++i) {
    auto start = std::chrono::steady_clock::now();
    fn();
    auto stop = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(stop - start).count());
  }
  return best;
}

void report(const char* kernel, double serial, double parallel) {
  std::printf("%-24s %12.6f s %12.6f s %8.2fx\n", kernel, serial, parallel,
              serial / parallel);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif
  std::printf("%-24s %14s %14s %9s\n", "kernel", "serial", "parallel", "speedup");

  Rng rng(7);
  {
    rotor::RotorState rotor(17);
    for (std::uint32_t pos = 0; pos < rotor.pointer_count(); ++pos)
      rotor.set_pointer(rotor::NodeId::from_bfs(pos),
                        rng.next_bits(1) ? rotor::Pointer::Right : rotor::Pointer::Left);
    volatile std::uint32_t sink = 0;
    double serial = time_of(
        [&] { sink = rotor::flip_rank_table_serial(rotor).back(); }, 5);
    double parallel = time_of([&] { sink = rotor::flip_rank_table(rotor).back(); }, 5);
    (void)sink;
    report("flip-rank-table d=17", serial, parallel);
  }

  {
    rotor::TreeState tree = rotor::build_tree(16, rotor::Layout::UniformRandom, 1);
    rotor::TreeState reference = rotor::build_tree(16, rotor::Layout::UniformRandom, 2);
    rotor::RotorState rotor(16);
    std::vector<std::uint32_t> frnk = rotor::flip_rank_table(rotor);
    volatile double sink = 0;
    double serial = time_of(
        [&] {
          sink = rotor::credit_table_serial(tree, &frnk, reference,
                                            rotor::CreditFlavor::Rotor)
                     .back();
        },
        5);
    double parallel = time_of(
        [&] {
          sink = rotor::credit_table(tree, &frnk, reference, rotor::CreditFlavor::Rotor)
                     .back();
        },
        5);
    (void)sink;
    report("credit-table d=16", serial, parallel);
  }

  {
    rotor::RequestSequence seq = rotor::gen_zipf(65535, 4000000, 1.3, 11);
    volatile double sink = 0;
    double serial = time_of([&] { sink = rotor::empirical_entropy_serial(seq); }, 3);
    double parallel = time_of([&] { sink = rotor::empirical_entropy(seq); }, 3);
    (void)sink;
    report("entropy m=4e6", serial, parallel);
  }

  {
    rotor::ExperimentConfig config;
    config.depths = {9};
    config.algorithms = {"rotor-push", "random-push"};
    config.workload = "temporal";
    config.p_values = {0.5};
    config.requests = 100000;
    config.repetitions = 8;
    double parallel = time_of([&] { rotor::run_experiment(config); }, 2);
    std::printf("%-24s %14s %12.6f s\n", "experiment 8 jobs", "-", parallel);
  }

  return 0;
}
