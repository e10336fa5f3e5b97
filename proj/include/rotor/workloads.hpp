#ifndef ROTOR_WORKLOADS_HPP
#define ROTOR_WORKLOADS_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "rotor/tree.hpp"

namespace rotor {

struct InputTooShort : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A request sequence plus the metadata needed to regenerate it exactly.
struct RequestSequence {
  std::vector<ElementId> requests;
  std::uint32_t universe = 0;  // element ids are < universe
  std::string generator;
  std::string params;  // comma-separated key=value, no spaces
  std::uint64_t seed = 0;

  std::size_t size() const { return requests.size(); }
};

RequestSequence gen_uniform(std::uint32_t n, std::size_t m, std::uint64_t seed);

// Uniform base sequence post-processed so each request repeats its
// predecessor with probability p.
RequestSequence gen_temporal(std::uint32_t n, std::size_t m, double p,
                             std::uint64_t seed);

// Zipf(a) over n elements: element i (1-indexed) drawn with probability
// proportional to i^-a; id i-1 is emitted.
RequestSequence gen_zipf(std::uint32_t n, std::size_t m, double a,
                         std::uint64_t seed);

// Zipf base with the temporal repeat pass on top.
RequestSequence gen_combined(std::uint32_t n, std::size_t m, double a, double p,
                             std::uint64_t seed);

// Zipf probability mass function, for tests and frequency checks.
std::vector<double> zipf_pmf(std::uint32_t n, double a);

// Sequence defeating the working-set property of Rotor-Push. Assumes a tree
// of `levels` levels (depth levels-1) with identity placement and all-left
// pointers; generated jointly with a Rotor-Push simulation, always
// requesting the deepest global-path node among the root and the two
// leftmost nodes of each level. 4^levels requests always suffice for the
// first pushed-down element to resurface at the bottom level; at ten levels
// 10^4 already does.
RequestSequence gen_rotor_adversary(std::uint32_t levels, std::size_t m);

inline std::size_t sufficient_adversary_length(std::uint32_t levels) {
  return std::size_t{1} << (2 * levels);
}

struct CorpusIngest {
  RequestSequence sequence;
  std::uint32_t unique_elements = 0;
  std::uint32_t tree_depth = 0;  // smallest depth fitting the unique triples
};

// Sliding window of three characters, sliding by one; triples become dense
// element ids in first-appearance order. Remaining tree slots are padding
// elements that are never requested.
CorpusIngest ingest_corpus(std::string_view text);

// Shannon entropy of the element frequency distribution, in bits.
double empirical_entropy(const RequestSequence& seq);
double empirical_entropy_serial(const RequestSequence& seq);

void write_sequence(std::ostream& out, const RequestSequence& seq);
RequestSequence read_sequence(std::istream& in);

// Regenerates a synthetic sequence from its own metadata.
RequestSequence regenerate(const RequestSequence& seq);

}  // namespace rotor

#endif
