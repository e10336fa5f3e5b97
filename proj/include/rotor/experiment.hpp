#ifndef ROTOR_EXPERIMENT_HPP
#define ROTOR_EXPERIMENT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rotor/workloads.hpp"

namespace rotor {

struct BadConfig : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One experiment run: the scenario presets cover the standard evaluation
// setups at full scale or at a desk-scale "quick" variant with the same
// structure.
struct ExperimentConfig {
  std::string scenario = "custom";  // q1|q2|q3|q4|q5|custom
  std::vector<std::uint32_t> depths = {7};
  std::vector<std::string> algorithms;  // empty = all six
  std::string workload = "uniform";     // uniform|temporal|zipf|combined
  std::vector<double> p_values = {0.0};
  std::vector<double> a_values = {1.0};
  std::uint64_t requests = 100000;
  std::uint32_t repetitions = 10;
  std::uint64_t base_seed = 1;
  std::vector<std::string> corpus_paths;  // q5 only
  std::string out_path;

  void validate() const;  // throws BadConfig naming the offending field
};

ExperimentConfig preset(std::string_view scenario, bool quick);

struct ResultRow {
  std::string scenario;
  std::uint32_t depth = 0;
  std::string algorithm;
  std::string workload;
  double p = 0.0;
  double a = 0.0;
  std::uint64_t requests = 0;
  std::int32_t rep = -1;  // -1 marks the per-cell aggregate row
  std::uint64_t seed = 0;
  double access_cost = 0.0;
  double swap_cost = 0.0;
  double total_cost = 0.0;
  double entropy = 0.0;
};

// Runs every (cell, repetition) job; all algorithms of a cell see the same
// sequence and the same uniformly random initial tree. Output order is
// deterministic regardless of scheduling.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

std::string to_csv(const std::vector<ResultRow>& rows);

struct HistogramResult {
  std::map<std::int64_t, std::uint64_t> bins;  // per-request cost difference
  double mean = 0.0;
  std::uint64_t samples = 0;
};

// Per-request cost difference (rotor minus random) on shared uniform
// sequences.
HistogramResult run_histogram(std::uint32_t depth, std::uint64_t requests,
                              std::uint32_t reps, std::uint64_t base_seed);

std::string histogram_csv(const HistogramResult& histogram);

}  // namespace rotor

#endif
