#include "rotor/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "rotor/algorithms.hpp"
#include "rotor/rng.hpp"

namespace rotor {

namespace {

const std::vector<std::string> kAllAlgorithms = {
    "rotor-push", "random-push", "move-half",
    "max-push",   "static-opt",  "static-oblivious"};

bool known_algorithm(const std::string& name) {
  return std::find(kAllAlgorithms.begin(), kAllAlgorithms.end(), name) !=
         kAllAlgorithms.end();
}

std::string basename_of(const std::string& path) {
  auto slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

struct CellPlan {
  std::uint32_t depth = 0;
  std::string workload;
  double p = 0.0;
  double a = 0.0;
  std::uint64_t requests = 0;
  std::optional<RequestSequence> fixed_sequence;  // corpus cells
};

std::vector<CellPlan> expand_cells(const ExperimentConfig& config) {
  std::vector<CellPlan> cells;
  auto push = [&](std::uint32_t depth, const std::string& workload, double p,
                  double a) {
    cells.push_back({depth, workload, p, a, config.requests, std::nullopt});
  };

  if (config.scenario == "q1") {
    for (std::uint32_t depth : config.depths) {
      for (double p : config.p_values) push(depth, "temporal", p, 0.0);
      for (double a : config.a_values) push(depth, "zipf", 0.0, a);
    }
    return cells;
  }
  if (config.scenario == "q5") {
    for (const std::string& path : config.corpus_paths) {
      std::ifstream in(path, std::ios::binary);
      if (!in) throw BadConfig("corpus path not readable: " + path);
      std::ostringstream text;
      text << in.rdbuf();
      CorpusIngest ingest = ingest_corpus(text.str());
      CellPlan cell{ingest.tree_depth, "corpus:" + basename_of(path), 0.0, 0.0,
                    ingest.sequence.size(), std::move(ingest.sequence)};
      cells.push_back(std::move(cell));
    }
    return cells;
  }

  for (std::uint32_t depth : config.depths) {
    if (config.workload == "uniform") {
      push(depth, "uniform", 0.0, 0.0);
    } else if (config.workload == "temporal") {
      for (double p : config.p_values) push(depth, "temporal", p, 0.0);
    } else if (config.workload == "zipf") {
      for (double a : config.a_values) push(depth, "zipf", 0.0, a);
    } else {
      for (double a : config.a_values)
        for (double p : config.p_values) push(depth, "combined", p, a);
    }
  }
  return cells;
}

std::uint64_t cell_seed(const ExperimentConfig& config, const CellPlan& cell,
                        std::uint32_t rep, std::string_view role) {
  return SeedHash(config.base_seed)
      .add(role)
      .add(cell.depth)
      .add(cell.workload)
      .add(cell.p)
      .add(cell.a)
      .add(cell.requests)
      .add(rep)
      .value();
}

RequestSequence make_sequence(const CellPlan& cell, std::uint64_t seed) {
  std::uint32_t n = (1u << (cell.depth + 1)) - 1;
  if (cell.workload == "uniform") return gen_uniform(n, cell.requests, seed);
  if (cell.workload == "temporal") return gen_temporal(n, cell.requests, cell.p, seed);
  if (cell.workload == "zipf") return gen_zipf(n, cell.requests, cell.a, seed);
  return gen_combined(n, cell.requests, cell.a, cell.p, seed);
}

std::string format_number(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6) << v;
  return out.str();
}

std::string format_short(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace

void ExperimentConfig::validate() const {
  static const std::vector<std::string> scenarios = {"q1", "q2", "q3",
                                                     "q4", "q5", "custom"};
  if (std::find(scenarios.begin(), scenarios.end(), scenario) == scenarios.end())
    throw BadConfig("scenario: " + scenario);
  if (repetitions < 1) throw BadConfig("repetitions: must be at least 1");
  if (depths.empty()) throw BadConfig("depths: empty");
  for (std::uint32_t d : depths)
    if (d > 24) throw BadConfig("depths: " + std::to_string(d) + " too deep");
  for (const std::string& name : algorithms)
    if (!known_algorithm(name)) throw BadConfig("algorithms: " + name);
  static const std::vector<std::string> workloads = {"uniform", "temporal", "zipf",
                                                     "combined"};
  if (scenario != "q5" &&
      std::find(workloads.begin(), workloads.end(), workload) == workloads.end())
    throw BadConfig("workload: " + workload);
  for (double p : p_values)
    if (p < 0.0 || p > 1.0) throw BadConfig("p: " + format_short(p));
  for (double a : a_values)
    if (a <= 0.0) throw BadConfig("a: " + format_short(a));
  if (scenario == "q5" && corpus_paths.empty())
    throw BadConfig("corpus_paths: q5 needs at least one text file");
}

ExperimentConfig preset(std::string_view scenario, bool quick) {
  ExperimentConfig config;
  config.scenario = std::string(scenario);
  config.algorithms = kAllAlgorithms;
  config.requests = quick ? 100000 : 1000000;
  std::uint32_t deep = quick ? 11 : 15;

  if (scenario == "q1") {
    config.depths = {7, 9, 11, 13, 15};
    config.p_values = {0.9};
    config.a_values = {2.2};
    config.algorithms = {"rotor-push", "random-push", "move-half", "max-push",
                         "static-oblivious"};
  } else if (scenario == "q2") {
    config.depths = {deep};
    config.workload = "temporal";
    config.p_values = {0.0, 0.15, 0.3, 0.45, 0.6, 0.75, 0.9};
  } else if (scenario == "q3") {
    config.depths = {deep};
    config.workload = "zipf";
    config.a_values = {1.001, 1.3, 1.6, 1.9, 2.2};
  } else if (scenario == "q4") {
    config.depths = {deep};
    config.workload = "combined";
    config.a_values = {1.001, 1.3, 1.6, 1.9, 2.2};
    config.p_values = {0.0, 0.25, 0.5, 0.75, 0.9};
    config.algorithms = {"rotor-push", "random-push", "static-oblivious"};
  } else if (scenario == "q5") {
    config.repetitions = 1;
  } else {
    throw BadConfig("unknown preset: " + std::string(scenario));
  }
  return config;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const std::vector<std::string>& algorithms =
      config.algorithms.empty() ? kAllAlgorithms : config.algorithms;
  std::vector<CellPlan> cells = expand_cells(config);

  struct JobResult {
    std::uint64_t seed = 0;
    double entropy = 0.0;
    std::vector<std::uint64_t> access, swaps;  // per algorithm
  };
  std::vector<JobResult> jobs(cells.size() * config.repetitions);

#pragma omp parallel for schedule(dynamic) collapse(2)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(cells.size()); ++c) {
    for (std::int64_t rep = 0; rep < static_cast<std::int64_t>(config.repetitions);
         ++rep) {
      const CellPlan& cell = cells[c];
      JobResult& job = jobs[c * config.repetitions + rep];
      std::uint32_t r = static_cast<std::uint32_t>(rep);

      job.seed = cell_seed(config, cell, r, "cell");
      RequestSequence sequence;
      if (cell.fixed_sequence) {
        sequence = *cell.fixed_sequence;
      } else {
        sequence = make_sequence(cell, job.seed);
      }
      job.entropy = empirical_entropy_serial(sequence);

      // The initial tree and per-algorithm streams derive from the row
      // seed, so a row is reproducible from the CSV alone.
      TreeState initial = build_tree(cell.depth, Layout::UniformRandom,
                                     SeedHash(job.seed).add("initial").value());
      job.access.resize(algorithms.size());
      job.swaps.resize(algorithms.size());
      for (std::size_t ai = 0; ai < algorithms.size(); ++ai) {
        std::uint64_t alg_seed =
            SeedHash(job.seed).add("algorithm").add(algorithms[ai]).value();
        auto alg = make_algorithm(algorithms[ai], initial, alg_seed);
        alg->prepare(sequence.requests);
        for (ElementId e : sequence.requests) alg->serve(e);
        job.access[ai] = alg->ledger().access_cost();
        job.swaps[ai] = alg->ledger().swap_cost();
      }
    }
  }

  std::vector<ResultRow> rows;
  rows.reserve(cells.size() * algorithms.size() * (config.repetitions + 1));
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const CellPlan& cell = cells[c];
    for (std::size_t ai = 0; ai < algorithms.size(); ++ai) {
      double sum_access = 0.0, sum_swaps = 0.0, sum_entropy = 0.0;
      for (std::uint32_t rep = 0; rep < config.repetitions; ++rep) {
        const JobResult& job = jobs[c * config.repetitions + rep];
        ResultRow row;
        row.scenario = config.scenario;
        row.depth = cell.depth;
        row.algorithm = algorithms[ai];
        row.workload = cell.workload;
        row.p = cell.p;
        row.a = cell.a;
        row.requests = cell.requests;
        row.rep = static_cast<std::int32_t>(rep);
        row.seed = job.seed;
        row.access_cost = static_cast<double>(job.access[ai]);
        row.swap_cost = static_cast<double>(job.swaps[ai]);
        row.total_cost = row.access_cost + row.swap_cost;
        row.entropy = job.entropy;
        sum_access += row.access_cost;
        sum_swaps += row.swap_cost;
        sum_entropy += row.entropy;
        rows.push_back(std::move(row));
      }
      ResultRow mean;
      mean.scenario = config.scenario;
      mean.depth = cell.depth;
      mean.algorithm = algorithms[ai];
      mean.workload = cell.workload;
      mean.p = cell.p;
      mean.a = cell.a;
      mean.requests = cell.requests;
      mean.rep = -1;
      mean.access_cost = sum_access / config.repetitions;
      mean.swap_cost = sum_swaps / config.repetitions;
      mean.total_cost = mean.access_cost + mean.swap_cost;
      mean.entropy = sum_entropy / config.repetitions;
      rows.push_back(std::move(mean));
    }
  }

  if (!config.out_path.empty()) {
    std::ofstream out(config.out_path, std::ios::binary);
    if (!out) throw BadConfig("out_path not writable: " + config.out_path);
    out << to_csv(rows);
  }
  return rows;
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << "scenario,depth,algorithm,workload,p,a,m,rep,seed,access_cost,swap_cost,"
         "total_cost,entropy\n";
  for (const ResultRow& row : rows) {
    out << row.scenario << ',' << row.depth << ',' << row.algorithm << ','
        << row.workload << ',' << format_short(row.p) << ',' << format_short(row.a)
        << ',' << row.requests << ',';
    if (row.rep < 0)
      out << "mean,";
    else
      out << row.rep << ',' << row.seed;
    out << ',' << format_number(row.access_cost) << ',' << format_number(row.swap_cost)
        << ',' << format_number(row.total_cost) << ',' << format_number(row.entropy)
        << '\n';
  }
  return out.str();
}

HistogramResult run_histogram(std::uint32_t depth, std::uint64_t requests,
                              std::uint32_t reps, std::uint64_t base_seed) {
  std::vector<HistogramResult> partial(reps);
  std::vector<std::int64_t> diff_sum(reps, 0);

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t rep = 0; rep < static_cast<std::int64_t>(reps); ++rep) {
    std::uint32_t n = (1u << (depth + 1)) - 1;
    std::uint64_t seq_seed = SeedHash(base_seed).add("hist-seq").add(rep).value();
    RequestSequence sequence = gen_uniform(n, requests, seq_seed);
    TreeState initial = build_tree(
        depth, Layout::UniformRandom, SeedHash(base_seed).add("hist-init").add(rep).value());
    RotorPush rotor(initial);
    RandomPush random(initial, SeedHash(base_seed).add("hist-alg").add(rep).value());
    for (ElementId e : sequence.requests) {
      std::int64_t d = static_cast<std::int64_t>(rotor.serve(e).total()) -
                       static_cast<std::int64_t>(random.serve(e).total());
      ++partial[rep].bins[d];
      diff_sum[rep] += d;
    }
    partial[rep].samples = requests;
  }

  HistogramResult merged;
  std::int64_t total_diff = 0;
  for (std::uint32_t rep = 0; rep < reps; ++rep) {
    for (auto [d, count] : partial[rep].bins) merged.bins[d] += count;
    merged.samples += partial[rep].samples;
    total_diff += diff_sum[rep];
  }
  merged.mean = merged.samples == 0
                    ? 0.0
                    : static_cast<double>(total_diff) / static_cast<double>(merged.samples);
  return merged;
}

std::string histogram_csv(const HistogramResult& histogram) {
  std::ostringstream out;
  out << "diff,count\n";
  for (auto [d, count] : histogram.bins) out << d << ',' << count << '\n';
  out << "mean," << format_number(histogram.mean) << '\n';
  return out.str();
}

}  // namespace rotor
