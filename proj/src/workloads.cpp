#include "rotor/workloads.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "rotor/algorithms.hpp"
#include "rotor/rng.hpp"
#include "rotor/rotor_state.hpp"

namespace rotor {

namespace {

std::string format_param(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

void temporal_pass(std::vector<ElementId>& requests, double p, Rng& rng) {
  // Coins are drawn unconditionally so the pass consumes the same stream
  // positions for every p.
  for (std::size_t i = 1; i < requests.size(); ++i)
    if (rng.next_double() < p) requests[i] = requests[i - 1];
}

std::vector<ElementId> zipf_draws(std::uint32_t n, std::size_t m, double a, Rng& rng) {
  std::vector<double> cumulative = zipf_pmf(n, a);
  for (std::uint32_t i = 1; i < n; ++i) cumulative[i] += cumulative[i - 1];
  cumulative[n - 1] = 1.0;
  std::vector<ElementId> requests;
  requests.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    double u = rng.next_double();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    requests.push_back(static_cast<ElementId>(it - cumulative.begin()));
  }
  return requests;
}

}  // namespace

RequestSequence gen_uniform(std::uint32_t n, std::size_t m, std::uint64_t seed) {
  Rng rng(seed);
  RequestSequence seq;
  seq.universe = n;
  seq.generator = "uniform";
  seq.seed = seed;
  seq.requests.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    seq.requests.push_back(static_cast<ElementId>(rng.next_below(n)));
  return seq;
}

RequestSequence gen_temporal(std::uint32_t n, std::size_t m, double p,
                             std::uint64_t seed) {
  Rng rng(seed);
  RequestSequence seq;
  seq.universe = n;
  seq.generator = "temporal";
  seq.params = "p=" + format_param(p);
  seq.seed = seed;
  seq.requests.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    seq.requests.push_back(static_cast<ElementId>(rng.next_below(n)));
  temporal_pass(seq.requests, p, rng);
  return seq;
}

std::vector<double> zipf_pmf(std::uint32_t n, double a) {
  std::vector<double> pmf(n);
  double norm = 0.0;
  for (std::uint32_t i = 0; i < n; ++i) {
    pmf[i] = std::pow(static_cast<double>(i) + 1.0, -a);
    norm += pmf[i];
  }
  for (double& v : pmf) v /= norm;
  return pmf;
}

RequestSequence gen_zipf(std::uint32_t n, std::size_t m, double a,
                         std::uint64_t seed) {
  Rng rng(seed);
  RequestSequence seq;
  seq.universe = n;
  seq.generator = "zipf";
  seq.params = "a=" + format_param(a);
  seq.seed = seed;
  seq.requests = zipf_draws(n, m, a, rng);
  return seq;
}

RequestSequence gen_combined(std::uint32_t n, std::size_t m, double a, double p,
                             std::uint64_t seed) {
  Rng rng(seed);
  RequestSequence seq;
  seq.universe = n;
  seq.generator = "combined";
  seq.params = "a=" + format_param(a) + ",p=" + format_param(p);
  seq.seed = seed;
  seq.requests = zipf_draws(n, m, a, rng);
  temporal_pass(seq.requests, p, rng);
  return seq;
}

RequestSequence gen_rotor_adversary(std::uint32_t levels, std::size_t m) {
  if (levels == 0) throw std::invalid_argument("adversary needs at least one level");
  std::uint32_t depth = levels - 1;
  TreeState tree(depth);  // identity placement
  RotorState rotor(depth);
  CostLedger ledger;

  auto in_hot_set = [](NodeId v) { return v.index <= 1; };  // root and two leftmost

  RequestSequence seq;
  seq.universe = tree.node_count();
  seq.generator = "rotor-adversary";
  seq.params = "levels=" + std::to_string(levels);
  seq.requests.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    GlobalPath path = rotor.global_path();
    std::uint32_t dstar = 0;
    for (std::uint32_t d = 0; d <= depth; ++d)
      if (in_hot_set(path[d])) dstar = d;
    NodeId v = path[dstar];
    if (!in_hot_set(v)) throw std::logic_error("adversary left the hot set");
    ElementId e = tree.element_at(v);
    seq.requests.push_back(e);
    tree.begin_round();
    ledger.begin_request();
    rotor_push_round(tree, rotor, e, ledger);
  }
  return seq;
}

CorpusIngest ingest_corpus(std::string_view text) {
  if (text.size() < 3) throw InputTooShort("corpus needs at least three characters");

  CorpusIngest result;
  std::unordered_map<std::string, ElementId> ids;
  result.sequence.generator = "corpus";
  result.sequence.requests.reserve(text.size() - 2);
  for (std::size_t i = 0; i + 3 <= text.size(); ++i) {
    std::string triple(text.substr(i, 3));
    auto [it, inserted] = ids.try_emplace(triple, static_cast<ElementId>(ids.size()));
    result.sequence.requests.push_back(it->second);
  }
  result.unique_elements = static_cast<std::uint32_t>(ids.size());

  std::uint32_t depth = 0;
  while (((1u << (depth + 1)) - 1) < result.unique_elements) ++depth;
  result.tree_depth = depth;
  result.sequence.universe = (1u << (depth + 1)) - 1;  // includes padding
  return result;
}

double empirical_entropy_serial(const RequestSequence& seq) {
  std::vector<std::uint64_t> count(seq.universe, 0);
  for (ElementId e : seq.requests) ++count[e];
  double m = static_cast<double>(seq.size());
  double entropy = 0.0;
  for (std::uint64_t c : count) {
    if (c == 0) continue;
    double f = static_cast<double>(c) / m;
    entropy -= f * std::log2(f);
  }
  return entropy;
}

double empirical_entropy(const RequestSequence& seq) {
  std::vector<std::uint64_t> count(seq.universe, 0);
#pragma omp parallel if (seq.size() > 1u << 16)
  {
    std::vector<std::uint64_t> local(seq.universe, 0);
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(seq.size()); ++i)
      ++local[seq.requests[i]];
#pragma omp critical
    for (std::uint32_t e = 0; e < seq.universe; ++e) count[e] += local[e];
  }
  double m = static_cast<double>(seq.size());
  double entropy = 0.0;
  for (std::uint64_t c : count) {
    if (c == 0) continue;
    double f = static_cast<double>(c) / m;
    entropy -= f * std::log2(f);
  }
  return entropy;
}

void write_sequence(std::ostream& out, const RequestSequence& seq) {
  out << "n=" << seq.universe << " m=" << seq.size() << " generator=" << seq.generator
      << " params=" << seq.params << " seed=" << seq.seed << '\n';
  for (ElementId e : seq.requests) out << e << '\n';
}

RequestSequence read_sequence(std::istream& in) {
  RequestSequence seq;
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("missing sequence header");
  std::istringstream fields(header);
  std::string field;
  std::size_t m = 0;
  while (fields >> field) {
    auto eq = field.find('=');
    if (eq == std::string::npos) continue;
    std::string key = field.substr(0, eq);
    std::string value = field.substr(eq + 1);
    if (key == "n") seq.universe = static_cast<std::uint32_t>(std::stoul(value));
    else if (key == "m") m = std::stoul(value);
    else if (key == "generator") seq.generator = value;
    else if (key == "params") seq.params = value;
    else if (key == "seed") seq.seed = std::stoull(value);
  }
  seq.requests.reserve(m);
  std::uint64_t id = 0;
  while (seq.requests.size() < m && in >> id)
    seq.requests.push_back(static_cast<ElementId>(id));
  if (seq.requests.size() != m) throw std::runtime_error("truncated sequence file");
  return seq;
}

RequestSequence regenerate(const RequestSequence& seq) {
  auto param = [&](const std::string& key) {
    std::string token = key + "=";
    std::istringstream parts(seq.params);
    std::string part;
    while (std::getline(parts, part, ','))
      if (part.rfind(token, 0) == 0) return std::stod(part.substr(token.size()));
    throw std::runtime_error("missing parameter " + key + " in sequence metadata");
  };
  if (seq.generator == "uniform") return gen_uniform(seq.universe, seq.size(), seq.seed);
  if (seq.generator == "temporal")
    return gen_temporal(seq.universe, seq.size(), param("p"), seq.seed);
  if (seq.generator == "zipf")
    return gen_zipf(seq.universe, seq.size(), param("a"), seq.seed);
  if (seq.generator == "combined")
    return gen_combined(seq.universe, seq.size(), param("a"), param("p"), seq.seed);
  if (seq.generator == "rotor-adversary")
    return gen_rotor_adversary(static_cast<std::uint32_t>(param("levels")), seq.size());
  throw std::runtime_error("sequence is not regenerable: " + seq.generator);
}

}  // namespace rotor
