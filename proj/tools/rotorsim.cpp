#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rotor/experiment.hpp"
#include "rotor/verify.hpp"
#include "rotor/workloads.hpp"

namespace {

std::string trimmed(const std::string& s) {
  auto first = s.find_first_not_of(" \t\r");
  auto last = s.find_last_not_of(" \t\r");
  return first == std::string::npos ? "" : s.substr(first, last - first + 1);
}

// Flat key=value configuration; values already given on the command line
// win. Lists use commas (algo=rotor-push,max-push).
void apply_config_file(CLI::App* command, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rotor::BadConfig("config file not readable: " + path);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trimmed(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw rotor::BadConfig("config line is not key=value: " + line);
    std::string key = trimmed(line.substr(0, eq));
    std::string value = trimmed(line.substr(eq + 1));
    CLI::Option* option = command->get_option_no_throw("--" + key);
    if (option == nullptr) throw rotor::BadConfig("config key: " + key);
    if (option->count() > 0) continue;
    std::istringstream values(value);
    std::string item;
    while (std::getline(values, item, ',')) option->add_result(trimmed(item));
    try {
      option->run_callback();
    } catch (const CLI::Error& e) {
      throw rotor::BadConfig("config value for " + key + ": " + e.what());
    }
  }
}

int write_or_print(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write " << out_path << '\n';
    return 2;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-adjusting single-source tree network simulator"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  // simulate: run one cell.
  auto* simulate = app.add_subcommand("simulate", "Run one experiment cell");
  std::string config_path;
  simulate->add_option("--config", config_path,
                       "Flat key=value config file; flags override it");
  std::uint32_t depth = 7;
  std::uint64_t requests = 100000;
  std::vector<std::string> algorithms;
  std::string workload = "uniform";
  double p = 0.0, a = 1.2;
  std::uint64_t seed = 1;
  std::uint32_t reps = 1;
  std::string out_path;
  simulate->add_option("--depth", depth, "Tree depth (n = 2^(depth+1) - 1)");
  simulate->add_option("--requests", requests, "Requests per repetition");
  simulate->add_option("--algo", algorithms,
                       "Algorithm name; repeat for several (default: all six)");
  simulate->add_option("--workload", workload, "uniform|temporal|zipf|combined");
  simulate->add_option("--p", p, "Repeat probability (temporal/combined)");
  simulate->add_option("--a", a, "Zipf skew (zipf/combined)");
  simulate->add_option("--seed", seed, "Base seed");
  simulate->add_option("--reps", reps, "Repetitions");
  simulate->add_option("--out", out_path, "CSV output path (default: stdout)");

  // experiment: scenario presets.
  auto* experiment = app.add_subcommand("experiment", "Run a scenario preset (q1..q5)");
  experiment->add_option("--config", config_path,
                         "Flat key=value config file; flags override it");
  std::string scenario;
  std::string scale_name = "full";
  std::vector<std::string> corpus_paths;
  bool override_requests = false, override_reps = false;
  experiment->add_option("scenario", scenario, "q1|q2|q3|q4|q5")->required();
  experiment->add_option("--scale", scale_name, "quick|full (default: full)");
  experiment->add_option("--requests", requests, "Override requests per repetition")
      ->each([&](const std::string&) { override_requests = true; });
  experiment->add_option("--reps", reps, "Override repetitions")
      ->each([&](const std::string&) { override_reps = true; });
  experiment->add_option("--seed", seed, "Base seed");
  experiment->add_option("--corpus", corpus_paths, "Text files for q5");
  experiment->add_option("--out", out_path, "CSV output path (default: stdout)");

  // histogram: per-request rotor vs random difference.
  auto* histogram = app.add_subcommand(
      "histogram", "Per-request cost difference, rotor-push minus random-push");
  histogram->add_option("--config", config_path,
                        "Flat key=value config file; flags override it");
  histogram->add_option("--depth", depth, "Tree depth");
  histogram->add_option("--requests", requests, "Requests per repetition");
  histogram->add_option("--reps", reps, "Repetitions");
  histogram->add_option("--seed", seed, "Base seed");
  histogram->add_option("--out", out_path, "CSV output path (default: stdout)");

  // verify: invariant batteries.
  auto* verify = app.add_subcommand("verify", "Run the verification batteries");
  std::string verify_scale = "quick";
  verify->add_option("scale", verify_scale, "quick|full");
  verify->add_option("--seed", seed, "Base seed");

  // oracle: tiny-instance competitive report.
  auto* oracle = app.add_subcommand("oracle", "Competitive report on oracle instances");
  std::uint32_t oracle_seeds = 1000, oracle_instances = 200;
  oracle->add_option("--seeds", oracle_seeds, "Random-push seeds per instance");
  oracle->add_option("--instances", oracle_instances, "Sampled 7-node instances");
  oracle->add_option("--seed", seed, "Base seed");
  oracle->add_option("--out", out_path, "Report path (default: stdout)");

  // ingest: corpus statistics.
  auto* ingest = app.add_subcommand("ingest", "Corpus sliding-window statistics");
  std::string corpus_file;
  std::string sequence_out;
  ingest->add_option("file", corpus_file, "Plain text file")->required();
  ingest->add_option("--out", sequence_out, "Write the request sequence here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (CLI::App* sub : {simulate, experiment, histogram})
      if (sub->parsed() && !config_path.empty()) apply_config_file(sub, config_path);

    if (simulate->parsed()) {
      rotor::ExperimentConfig config;
      config.scenario = "custom";
      config.depths = {depth};
      config.algorithms = algorithms;
      config.workload = workload;
      config.p_values = {p};
      config.a_values = {a};
      config.requests = requests;
      config.repetitions = reps;
      config.base_seed = seed;
      return write_or_print(out_path, rotor::to_csv(rotor::run_experiment(config)));
    }

    if (experiment->parsed()) {
      if (scale_name != "quick" && scale_name != "full")
        throw rotor::BadConfig("scale: " + scale_name);
      rotor::ExperimentConfig config = rotor::preset(scenario, scale_name == "quick");
      if (override_requests) config.requests = requests;
      if (override_reps) config.repetitions = reps;
      config.base_seed = seed;
      config.corpus_paths = corpus_paths;
      return write_or_print(out_path, rotor::to_csv(rotor::run_experiment(config)));
    }

    if (histogram->parsed()) {
      rotor::HistogramResult result =
          rotor::run_histogram(depth, requests, reps, seed);
      return write_or_print(out_path, rotor::histogram_csv(result));
    }

    if (verify->parsed()) {
      if (verify_scale != "quick" && verify_scale != "full")
        throw rotor::BadConfig("scale: " + verify_scale);
      auto results = rotor::run_verification_suite(
          verify_scale == "quick" ? rotor::Scale::Quick : rotor::Scale::Full, seed,
          &std::cout);
      return rotor::all_passed(results) ? 0 : 1;
    }

    if (oracle->parsed()) {
      rotor::CompetitiveConfig config;
      config.random_seeds = oracle_seeds;
      config.n7_instances = oracle_instances;
      config.seed = seed;
      return write_or_print(out_path,
                            rotor::competitive_table(rotor::competitive_report(config)));
    }

    if (ingest->parsed()) {
      std::ifstream in(corpus_file, std::ios::binary);
      if (!in) throw rotor::BadConfig("corpus path not readable: " + corpus_file);
      std::ostringstream text;
      text << in.rdbuf();
      rotor::CorpusIngest result = rotor::ingest_corpus(text.str());
      std::cout << "file=" << corpus_file << " unique_triples=" << result.unique_elements
                << " requests=" << result.sequence.size()
                << " tree_depth=" << result.tree_depth
                << " padded_nodes=" << result.sequence.universe - result.unique_elements
                << '\n';
      if (!sequence_out.empty()) {
        std::ofstream out(sequence_out, std::ios::binary);
        if (!out) throw rotor::BadConfig("out path not writable: " + sequence_out);
        rotor::write_sequence(out, result.sequence);
      }
      return 0;
    }
  } catch (const rotor::BadConfig& e) {
    std::cerr << "bad config: " << e.what() << '\n';
    return 2;
  } catch (const rotor::InputTooShort& e) {
    std::cerr << "bad input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
