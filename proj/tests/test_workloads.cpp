#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rotor/workloads.hpp"

using namespace rotor;

TEST_CASE("uniform generator") {
  RequestSequence trivial = gen_uniform(1, 50, 3);
  for (ElementId e : trivial.requests) CHECK(e == 0);

  CHECK(gen_uniform(100, 1000, 7).requests == gen_uniform(100, 1000, 7).requests);
  CHECK(gen_uniform(100, 1000, 7).requests != gen_uniform(100, 1000, 8).requests);
}

TEST_CASE("temporal post-processing") {
  CHECK(gen_temporal(50, 2000, 0.0, 11).requests == gen_uniform(50, 2000, 11).requests);

  RequestSequence constant = gen_temporal(50, 2000, 1.0, 11);
  for (ElementId e : constant.requests) CHECK(e == constant.requests[0]);
}

TEST_CASE("zipf distribution") {
  SUBCASE("two elements at skew one") {
    std::vector<double> pmf = zipf_pmf(2, 1.0);
    CHECK(pmf[0] == doctest::Approx(2.0 / 3.0));
    CHECK(pmf[1] == doctest::Approx(1.0 / 3.0));
    RequestSequence seq = gen_zipf(2, 300000, 1.0, 5);
    std::size_t zeros = 0;
    for (ElementId e : seq.requests) zeros += e == 0;
    CHECK(std::abs(static_cast<double>(zeros) / seq.size() - 2.0 / 3.0) < 0.01);
  }

  SUBCASE("extreme skew degenerates to the first element") {
    RequestSequence seq = gen_zipf(100, 2000, 50.0, 5);
    for (ElementId e : seq.requests) CHECK(e == 0);
  }

  SUBCASE("combined with p = 0 equals the base") {
    CHECK(gen_combined(64, 3000, 1.3, 0.0, 5).requests ==
          gen_zipf(64, 3000, 1.3, 5).requests);
  }
}

TEST_CASE("rotor adversary") {
  SUBCASE("two levels: every node is hot, first request at the bottom") {
    RequestSequence seq = gen_rotor_adversary(2, 10);
    CHECK(seq.universe == 3);
    CHECK(seq.requests[0] == 1);  // element at (1,0) under identity
  }

  SUBCASE("requests stay within the hot element set") {
    std::uint32_t levels = 4;
    RequestSequence seq = gen_rotor_adversary(levels, 3000);
    // Identity placement: the hot nodes are the root and the two leftmost
    // nodes per level.
    std::vector<bool> hot(seq.universe, false);
    hot[0] = true;
    for (std::uint32_t level = 1; level < levels; ++level) {
      hot[(1u << level) - 1] = true;
      hot[(1u << level)] = true;
    }
    std::size_t distinct = 0;
    std::vector<bool> seen(seq.universe, false);
    for (ElementId e : seq.requests) {
      CHECK(hot[e]);
      if (!seen[e]) {
        seen[e] = true;
        ++distinct;
      }
    }
    CHECK(distinct <= 2 * levels - 1);
  }
}

TEST_CASE("corpus ingestion") {
  SUBCASE("four characters yield two sliding triples") {
    CorpusIngest ingest = ingest_corpus("abcd");
    CHECK(ingest.sequence.requests == std::vector<ElementId>{0, 1});
    CHECK(ingest.unique_elements == 2);
    CHECK(ingest.tree_depth == 1);
    CHECK(ingest.sequence.universe == 3);  // one padding element
  }

  SUBCASE("repeated characters collapse to one element") {
    CorpusIngest ingest = ingest_corpus("aaaa");
    CHECK(ingest.sequence.requests == std::vector<ElementId>{0, 0});
    CHECK(ingest.unique_elements == 1);
    CHECK(ingest.tree_depth == 0);
  }

  SUBCASE("too short input is rejected") {
    CHECK_THROWS_AS(ingest_corpus("ab"), InputTooShort);
  }
}

TEST_CASE("empirical entropy") {
  RequestSequence seq;
  seq.universe = 4;
  seq.requests = {0, 1, 2, 3, 0, 1, 2, 3};
  CHECK(empirical_entropy(seq) == doctest::Approx(2.0));

  RequestSequence constant;
  constant.universe = 4;
  constant.requests = {2, 2, 2, 2};
  CHECK(empirical_entropy(constant) == doctest::Approx(0.0));
}

TEST_CASE("sequence file round trip") {
  RequestSequence seq = gen_combined(64, 500, 1.5, 0.25, 77);
  std::stringstream file;
  write_sequence(file, seq);
  RequestSequence loaded = read_sequence(file);
  CHECK(loaded.requests == seq.requests);
  CHECK(loaded.universe == seq.universe);
  CHECK(loaded.generator == seq.generator);
  CHECK(loaded.params == seq.params);
  CHECK(loaded.seed == seq.seed);
  CHECK(regenerate(loaded).requests == seq.requests);
}
