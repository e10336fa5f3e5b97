#include "rotor/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "rotor/rng.hpp"

namespace rotor {

double credit(const TreeState& alg_tree, const RotorState* rotor,
              const TreeState& ref_tree, ElementId e, CreditFlavor flavor) {
  NodeId v = alg_tree.node_of(e);
  std::uint32_t ref_level = ref_tree.level_of(e);
  if (flavor == CreditFlavor::Random)
    return kRandomCreditFactor * level_weight(v.level, ref_level);
  std::uint32_t frnk = flip_rank(*rotor, v);
  return kRotorCreditFactor *
         (level_weight(v.level, ref_level) + rank_weight(v.level, ref_level, frnk));
}

namespace {

double credit_at(const TreeState& alg_tree,
                 const std::vector<std::uint32_t>* frnk_by_node,
                 const TreeState& ref_tree, std::uint32_t pos, CreditFlavor flavor,
                 ElementId* out_elem) {
  NodeId v = NodeId::from_bfs(pos);
  ElementId e = alg_tree.element_at(v);
  *out_elem = e;
  std::uint32_t ref_level = ref_tree.level_of(e);
  if (flavor == CreditFlavor::Random)
    return kRandomCreditFactor * level_weight(v.level, ref_level);
  return kRotorCreditFactor *
         (level_weight(v.level, ref_level) +
          rank_weight(v.level, ref_level, (*frnk_by_node)[pos]));
}

}  // namespace

std::vector<double> credit_table_serial(const TreeState& alg_tree,
                                        const std::vector<std::uint32_t>* frnk_by_node,
                                        const TreeState& ref_tree,
                                        CreditFlavor flavor) {
  std::vector<double> credits(alg_tree.node_count());
  for (std::uint32_t pos = 0; pos < alg_tree.node_count(); ++pos) {
    ElementId e;
    double c = credit_at(alg_tree, frnk_by_node, ref_tree, pos, flavor, &e);
    credits[e] = c;
  }
  return credits;
}

std::vector<double> credit_table(const TreeState& alg_tree,
                                 const std::vector<std::uint32_t>* frnk_by_node,
                                 const TreeState& ref_tree, CreditFlavor flavor) {
  std::vector<double> credits(alg_tree.node_count());
  std::int64_t n = alg_tree.node_count();
#pragma omp parallel for schedule(static) if (n > 4096)
  for (std::int64_t pos = 0; pos < n; ++pos) {
    ElementId e;
    double c = credit_at(alg_tree, frnk_by_node, ref_tree,
                         static_cast<std::uint32_t>(pos), flavor, &e);
    credits[e] = c;
  }
  return credits;
}

std::vector<std::uint32_t> request_ranks(std::span<const ElementId> requests) {
  std::size_t m = requests.size();
  ElementId max_id = 0;
  for (ElementId e : requests) max_id = std::max(max_id, e);

  // Fenwick tree with a mark at each element's most recent position.
  std::vector<std::int32_t> bit(m + 1, 0);
  auto add = [&](std::size_t i, std::int32_t d) {
    for (++i; i <= m; i += i & (0 - i)) bit[i] += d;
  };
  auto prefix = [&](std::size_t i) {  // sum of positions [0, i)
    std::int32_t s = 0;
    for (; i > 0; i -= i & (0 - i)) s += bit[i];
    return s;
  };

  std::vector<std::int64_t> last(static_cast<std::size_t>(max_id) + 1, -1);
  std::vector<std::uint32_t> ranks(m);
  for (std::size_t i = 0; i < m; ++i) {
    ElementId e = requests[i];
    std::int32_t distinct;
    if (last[e] < 0) {
      distinct = prefix(i);  // all elements seen so far
    } else {
      distinct = prefix(i) - prefix(static_cast<std::size_t>(last[e]) + 1);
    }
    ranks[i] = static_cast<std::uint32_t>(distinct) + 1;
    if (last[e] >= 0) add(static_cast<std::size_t>(last[e]), -1);
    add(i, +1);
    last[e] = static_cast<std::int64_t>(i);
  }
  return ranks;
}

double working_set_bound(std::span<const ElementId> requests) {
  std::vector<std::uint32_t> ranks = request_ranks(requests);
  double total = 0.0;
  for (std::uint32_t r : ranks) total += std::log2(static_cast<double>(r));
  return total;
}

RoundCheckReport check_rotor_round(const TreeState& pre_tree,
                                   const RotorState& pre_rotor,
                                   const TreeState& post_tree,
                                   const RotorState& post_rotor,
                                   const TreeState& ref_tree, ElementId e_star,
                                   RoundCost cost) {
  std::vector<std::uint32_t> pre_frnk = flip_rank_table(pre_rotor);
  std::vector<std::uint32_t> post_frnk = flip_rank_table(post_rotor);
  std::vector<double> pre_credit =
      credit_table(pre_tree, &pre_frnk, ref_tree, CreditFlavor::Rotor);
  std::vector<double> post_credit =
      credit_table(post_tree, &post_frnk, ref_tree, CreditFlavor::Rotor);

  std::uint32_t d_star = pre_tree.node_of(e_star).level;
  GlobalPath path = pre_rotor.global_path();
  std::vector<bool> on_path(pre_tree.node_count(), false);
  for (std::uint32_t d = 0; d <= d_star; ++d) {
    ElementId e = pre_tree.element_at(path[d]);
    if (e != e_star) on_path[e] = true;
  }

  RoundCheckReport report;
  double sum_all = 0.0;
  for (ElementId e = 0; e < pre_tree.node_count(); ++e) {
    double delta = post_credit[e] - pre_credit[e];
    sum_all += delta;
    if (e == e_star) continue;
    if (on_path[e])
      report.sum_path += delta;
    else
      report.sum_bystander += delta;
  }
  report.amortized = static_cast<double>(cost.total()) + sum_all;
  std::uint32_t ref_level = ref_tree.level_of(e_star);
  report.round_bound = 12.0 * (static_cast<double>(ref_level) + 1.0);

  std::ostringstream detail;
  if (report.sum_path > kRotorCreditFactor) {
    report.ok = false;
    detail << "path credit gain " << report.sum_path << " exceeds " << kRotorCreditFactor
           << "; ";
  }
  if (report.sum_bystander > kRotorCreditFactor) {
    report.ok = false;
    detail << "bystander credit gain " << report.sum_bystander << " exceeds "
           << kRotorCreditFactor << "; ";
  }
  if (report.amortized > report.round_bound) {
    report.ok = false;
    detail << "amortized cost " << report.amortized << " exceeds "
           << report.round_bound << "; ";
  }
  report.detail = detail.str();
  return report;
}

RefSwapCheck check_reference_swap(const TreeState& alg_tree, const RotorState* rotor,
                                  const TreeState& ref_before,
                                  const TreeState& ref_after, CreditFlavor flavor) {
  std::vector<std::uint32_t> frnk;
  const std::vector<std::uint32_t>* frnk_ptr = nullptr;
  if (flavor == CreditFlavor::Rotor) {
    frnk = flip_rank_table(*rotor);
    frnk_ptr = &frnk;
  }
  std::vector<double> before = credit_table(alg_tree, frnk_ptr, ref_before, flavor);
  std::vector<double> after = credit_table(alg_tree, frnk_ptr, ref_after, flavor);

  RefSwapCheck check;
  for (ElementId e = 0; e < alg_tree.node_count(); ++e)
    check.delta += after[e] - before[e];
  check.bound = flavor == CreditFlavor::Rotor ? 3.0 * kRotorCreditFactor
                                              : 2.0 * kRandomCreditFactor;
  check.ok = check.delta <= check.bound;
  return check;
}

RandomRoundCheck check_random_round(const TreeState& pre_tree,
                                    const TreeState& ref_tree, ElementId e_star,
                                    std::uint32_t seeds, std::uint64_t base_seed) {
  std::vector<double> pre_credit =
      credit_table(pre_tree, nullptr, ref_tree, CreditFlavor::Random);
  double pre_sum = std::accumulate(pre_credit.begin(), pre_credit.end(), 0.0);
  std::uint32_t d_star = pre_tree.node_of(e_star).level;
  std::uint32_t ref_level = ref_tree.level_of(e_star);

  std::vector<double> others(seeds), amortized(seeds);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(seeds); ++s) {
    TreeState tree = pre_tree;
    CostLedger ledger;
    Rng rng(SeedHash(base_seed).add(static_cast<std::uint64_t>(s)).value());
    tree.begin_round();
    ledger.begin_request();
    RoundCost cost = random_push_round(tree, rng, e_star, ledger);
    std::vector<double> post_credit =
        credit_table_serial(tree, nullptr, ref_tree, CreditFlavor::Random);
    double post_sum = std::accumulate(post_credit.begin(), post_credit.end(), 0.0);
    double delta_all = post_sum - pre_sum;
    double delta_star = post_credit[e_star] - pre_credit[e_star];
    others[s] = delta_all - delta_star;
    amortized[s] = static_cast<double>(cost.total()) + delta_all;
  }

  auto mean_se = [](const std::vector<double>& xs) {
    double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= xs.size() > 1 ? (xs.size() - 1.0) * xs.size() : 1.0;
    return std::pair<double, double>(mean, std::sqrt(var));
  };

  RandomRoundCheck check;
  auto [mo, so] = mean_se(others);
  auto [ma, sa] = mean_se(amortized);
  check.mean_others = mo;
  check.others_bound = (d_star / 2.0 + 1.0) * kRandomCreditFactor + 3.0 * so;
  check.mean_amortized = ma;
  check.amortized_bound = 16.0 * (static_cast<double>(ref_level) + 1.0) + 3.0 * sa;

  std::ostringstream detail;
  if (check.mean_others > check.others_bound) {
    check.ok = false;
    detail << "mean E' credit gain " << mo << " exceeds " << check.others_bound << "; ";
  }
  if (check.mean_amortized > check.amortized_bound) {
    check.ok = false;
    detail << "mean amortized cost " << ma << " exceeds " << check.amortized_bound
           << "; ";
  }
  check.detail = detail.str();
  return check;
}

// ---------------------------------------------------------------------------
// Brute-force offline optimum
// ---------------------------------------------------------------------------

namespace {

constexpr std::int32_t kInf = std::numeric_limits<std::int32_t>::max() / 4;

struct PermSpace {
  std::uint32_t n = 0;
  std::uint32_t count = 0;                       // n!
  std::vector<std::array<std::uint8_t, 7>> perm; // decode table
  std::vector<std::pair<std::uint8_t, std::uint8_t>> edges;
  std::vector<std::uint32_t> trans;              // count x edges
  std::vector<std::uint8_t> elem_level;          // count x n
};

std::uint32_t encode_perm(std::span<const std::uint8_t> perm) {
  // Lehmer code in the factorial number system.
  std::uint32_t code = 0;
  std::size_t n = perm.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (perm[j] < perm[i]) ++smaller;
    code = code * static_cast<std::uint32_t>(n - i) + smaller;
  }
  return code;
}

PermSpace build_perm_space(std::uint32_t n) {
  PermSpace space;
  space.n = n;
  space.count = 1;
  for (std::uint32_t i = 2; i <= n; ++i) space.count *= i;

  for (std::uint8_t pos = 1; pos < n; ++pos)
    space.edges.push_back({static_cast<std::uint8_t>((pos - 1) / 2), pos});

  space.perm.resize(space.count);
  space.elem_level.assign(static_cast<std::size_t>(space.count) * n, 0);
  space.trans.assign(static_cast<std::size_t>(space.count) * space.edges.size(), 0);

  std::array<std::uint8_t, 7> perm{};
  std::iota(perm.begin(), perm.begin() + n, static_cast<std::uint8_t>(0));
  do {
    std::uint32_t code = encode_perm(std::span<const std::uint8_t>(perm.data(), n));
    space.perm[code] = perm;
    for (std::uint32_t pos = 0; pos < n; ++pos) {
      std::uint32_t level = std::bit_width(pos + 1) - 1;
      space.elem_level[static_cast<std::size_t>(code) * n + perm[pos]] =
          static_cast<std::uint8_t>(level);
    }
    for (std::size_t e = 0; e < space.edges.size(); ++e) {
      std::array<std::uint8_t, 7> next = perm;
      std::swap(next[space.edges[e].first], next[space.edges[e].second]);
      space.trans[static_cast<std::size_t>(code) * space.edges.size() + e] =
          encode_perm(std::span<const std::uint8_t>(next.data(), n));
    }
  } while (std::next_permutation(perm.begin(), perm.begin() + n));
  return space;
}

const PermSpace& perm_space(std::uint32_t n) {
  static const PermSpace space3 = build_perm_space(3);
  static const PermSpace space7 = build_perm_space(7);
  if (n == 3) return space3;
  if (n == 7) return space7;
  throw InstanceTooLarge("oracle supports 3-node and 7-node trees");
}

}  // namespace

OracleResult brute_force_opt(const TreeState& initial,
                             std::span<const ElementId> requests) {
  std::uint32_t n = initial.node_count();
  if (n != 3 && n != 7)
    throw InstanceTooLarge("oracle supports 3-node and 7-node trees");
  std::size_t max_requests = n == 3 ? 16 : 8;
  if (requests.size() > max_requests)
    throw InstanceTooLarge("oracle request limit exceeded");

  const PermSpace& space = perm_space(n);
  std::size_t num_edges = space.edges.size();

  std::array<std::uint8_t, 7> start{};
  for (std::uint32_t pos = 0; pos < n; ++pos)
    start[pos] = static_cast<std::uint8_t>(initial.element_at(NodeId::from_bfs(pos)));
  std::uint32_t start_code = encode_perm(std::span<const std::uint8_t>(start.data(), n));

  std::vector<std::int32_t> layer(space.count, kInf);
  layer[start_code] = 0;

  // pred[t][cfg]: config this one was relaxed from during round t's swap
  // closure, or -1 when the round started here.
  std::vector<std::vector<std::int32_t>> pred(requests.size());

  for (std::size_t t = 0; t < requests.size(); ++t) {
    pred[t].assign(space.count, -1);
    std::int32_t lo = kInf;
    for (std::int32_t v : layer) lo = std::min(lo, v);
    // Unit-weight multi-source relaxation over the swap graph, processed in
    // cost order (Dial buckets).
    std::int32_t max_extra = static_cast<std::int32_t>(n * n);
    std::vector<std::vector<std::uint32_t>> buckets(max_extra + 2);
    for (std::uint32_t cfg = 0; cfg < space.count; ++cfg)
      if (layer[cfg] < kInf) buckets[layer[cfg] - lo].push_back(cfg);
    for (std::int32_t v = 0; v <= max_extra; ++v) {
      for (std::size_t i = 0; i < buckets[v].size(); ++i) {
        std::uint32_t cfg = buckets[v][i];
        if (layer[cfg] != lo + v) continue;
        const std::uint32_t* row = &space.trans[static_cast<std::size_t>(cfg) * num_edges];
        for (std::size_t e = 0; e < num_edges; ++e) {
          std::uint32_t nb = row[e];
          if (layer[nb] > lo + v + 1) {
            layer[nb] = lo + v + 1;
            pred[t][nb] = static_cast<std::int32_t>(cfg);
            if (v + 1 <= max_extra) buckets[v + 1].push_back(nb);
          }
        }
      }
    }
    ElementId e = requests[t];
    for (std::uint32_t cfg = 0; cfg < space.count; ++cfg)
      layer[cfg] += space.elem_level[static_cast<std::size_t>(cfg) * n + e] + 1;
  }

  OracleResult result;
  std::uint32_t best = 0;
  for (std::uint32_t cfg = 1; cfg < space.count; ++cfg)
    if (layer[cfg] < layer[best]) best = cfg;
  result.optimal_cost = static_cast<std::uint64_t>(layer[best]);

  // Walk the predecessor chains backwards to recover per-round swap lists.
  result.witness.resize(requests.size());
  std::uint32_t cfg = best;
  for (std::size_t t = requests.size(); t-- > 0;) {
    OracleResult::Step& step = result.witness[t];
    step.request = requests[t];
    std::vector<std::pair<NodeId, NodeId>> swaps;
    while (pred[t][cfg] >= 0) {
      std::uint32_t prev = static_cast<std::uint32_t>(pred[t][cfg]);
      // Identify which edge was used.
      for (std::size_t e = 0; e < num_edges; ++e) {
        if (space.trans[static_cast<std::size_t>(prev) * num_edges + e] == cfg) {
          swaps.push_back({NodeId::from_bfs(space.edges[e].first),
                           NodeId::from_bfs(space.edges[e].second)});
          break;
        }
      }
      cfg = prev;
    }
    std::reverse(swaps.begin(), swaps.end());
    step.swaps = std::move(swaps);
  }
  return result;
}

std::uint64_t replay_witness(const TreeState& initial,
                             std::span<const ElementId> requests,
                             const OracleResult& oracle) {
  TreeState tree = initial;
  CostLedger ledger;
  if (oracle.witness.size() != requests.size())
    throw std::invalid_argument("witness length mismatch");
  for (std::size_t t = 0; t < requests.size(); ++t) {
    const OracleResult::Step& step = oracle.witness[t];
    if (step.request != requests[t])
      throw std::invalid_argument("witness request mismatch");
    ledger.begin_request();
    for (auto [u, v] : step.swaps) tree.offline_swap(u, v, ledger);
    ledger.add_access(tree.node_of(step.request).level + 1);
  }
  return ledger.total();
}

// ---------------------------------------------------------------------------
// Competitive report
// ---------------------------------------------------------------------------

namespace {

std::uint64_t replay_rotor(const TreeState& initial,
                           std::span<const ElementId> requests) {
  RotorPush alg(initial);
  std::uint64_t total = 0;
  for (ElementId e : requests) total += alg.serve(e).total();
  return total;
}

std::pair<double, double> replay_random_mean(const TreeState& initial,
                                             std::span<const ElementId> requests,
                                             std::uint32_t seeds,
                                             std::uint64_t base_seed) {
  std::vector<double> totals(seeds);
  for (std::uint32_t s = 0; s < seeds; ++s) {
    RandomPush alg(initial, SeedHash(base_seed).add(s).value());
    std::uint64_t total = 0;
    for (ElementId e : requests) total += alg.serve(e).total();
    totals[s] = static_cast<double>(total);
  }
  double mean = std::accumulate(totals.begin(), totals.end(), 0.0) / seeds;
  double var = 0.0;
  for (double x : totals) var += (x - mean) * (x - mean);
  var /= seeds > 1 ? (seeds - 1.0) * seeds : 1.0;
  return {mean, std::sqrt(var)};
}

}  // namespace

std::vector<CompetitiveRow> competitive_report(const CompetitiveConfig& config) {
  struct Instance {
    std::string id;
    TreeState initial;
    std::vector<ElementId> requests;
  };
  std::vector<Instance> instances;

  // Every length-4 sequence over the 3-node tree.
  TreeState tree3(1);
  for (std::uint32_t code = 0; code < 81; ++code) {
    std::vector<ElementId> seq(4);
    std::uint32_t c = code;
    std::string id = "n3-";
    for (std::size_t i = 0; i < 4; ++i) {
      seq[i] = c % 3;
      id += static_cast<char>('0' + seq[i]);
      c /= 3;
    }
    instances.push_back({id, tree3, seq});
  }

  // Sampled length-5 sequences over the 7-node tree.
  TreeState tree7(2);
  Rng rng(config.seed);
  for (std::uint32_t i = 0; i < config.n7_instances; ++i) {
    std::vector<ElementId> seq(config.n7_length);
    std::string id = "n7-" + std::to_string(i) + "-";
    for (std::size_t j = 0; j < seq.size(); ++j) {
      seq[j] = static_cast<ElementId>(rng.next_below(7));
      id += static_cast<char>('0' + seq[j]);
    }
    instances.push_back({id, tree7, seq});
  }

  std::vector<CompetitiveRow> rows(2 * instances.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(instances.size()); ++i) {
    const Instance& inst = instances[i];
    OracleResult oracle = brute_force_opt(inst.initial, inst.requests);
    double opt = static_cast<double>(oracle.optimal_cost);

    CompetitiveRow rotor_row;
    rotor_row.instance = inst.id;
    rotor_row.algorithm = "rotor-push";
    rotor_row.total = static_cast<double>(replay_rotor(inst.initial, inst.requests));
    rotor_row.optimal = oracle.optimal_cost;
    rotor_row.ratio = rotor_row.total / opt;

    CompetitiveRow random_row;
    random_row.instance = inst.id;
    random_row.algorithm = "random-push";
    auto [mean, se] =
        replay_random_mean(inst.initial, inst.requests, config.random_seeds,
                           SeedHash(config.seed).add(inst.id).value());
    random_row.total = mean;
    random_row.stderr_ = se;
    random_row.optimal = oracle.optimal_cost;
    random_row.ratio = mean / opt;

    rows[2 * i] = std::move(rotor_row);
    rows[2 * i + 1] = std::move(random_row);
  }
  return rows;
}

std::string competitive_table(const std::vector<CompetitiveRow>& rows) {
  std::ostringstream out;
  out << "instance_id, alg, total, opt, ratio\n";
  for (const CompetitiveRow& row : rows) {
    out << row.instance << ", " << row.algorithm << ", " << row.total << ", "
        << row.optimal << ", " << row.ratio << '\n';
  }
  return out.str();
}

}  // namespace rotor
