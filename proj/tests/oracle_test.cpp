#include <gtest/gtest.h>

#include <numeric>

#include "hyperham/constructions.hpp"
#include "hyperham/oracle.hpp"
#include "hyperham/testing/brute_force.hpp"

using namespace hyperham;

namespace {

Hypergraph3 empty(std::size_t n) { return Hypergraph3::from_edges(n, std::span<const Triple>{}); }

Hypergraph3 relabel(const Hypergraph3& H, const std::vector<Vertex>& pi) {
  std::vector<Triple> edges;
  for (const auto& [a, b, c] : H.edges()) edges.push_back({pi[a], pi[b], pi[c]});
  return Hypergraph3::from_edges(H.n(), edges);
}

}  // namespace

TEST(Oracle, TightCyclesAreHamiltonian) {
  for (std::size_t n = 5; n <= 20; ++n) {
    const auto C = gen::tight_cycle(n);
    ASSERT_TRUE(has_tight_hamilton(C)) << n;
    const auto cyc = extract_tight_hamilton(C);
    ASSERT_TRUE(cyc.has_value());
    EXPECT_TRUE(verify(C, *cyc));
    EXPECT_EQ(cyc->size(), n);
  }
}

TEST(Oracle, IsolatedVertexAndEmpty) {
  auto K = gen::complete(7);
  std::vector<Triple> edges;
  for (const auto& e : K.edges())
    if (e[0] != 6 && e[1] != 6 && e[2] != 6) edges.push_back(e);
  EXPECT_FALSE(has_tight_hamilton(Hypergraph3::from_edges(7, edges)));
  EXPECT_FALSE(has_tight_hamilton(empty(8)));
  EXPECT_FALSE(exhaustive_hamilton(empty(8)));
}

TEST(Oracle, SmallCompleteHosts) {
  EXPECT_TRUE(has_tight_hamilton(gen::complete(4)));
  EXPECT_TRUE(has_tight_hamilton(gen::complete(5)));
  EXPECT_TRUE(exhaustive_hamilton(gen::complete(5)));
  EXPECT_FALSE(has_tight_hamilton(gen::complete(3)));
}

TEST(Oracle, Limits) {
  EXPECT_THROW(has_tight_hamilton(empty(21)), BudgetExceeded);
  EXPECT_THROW(exhaustive_hamilton(empty(10)), BudgetExceeded);
  OracleLimits lim;
  lim.max_n_exhaustive = 10;
  EXPECT_NO_THROW(exhaustive_hamilton(empty(10), lim));
}

TEST(Oracle, DpAgreesWithExhaustiveAndPermutations) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t n = 6;
    for (double p : {0.4, 0.6, 0.8}) {
      const auto H = gen::random(n, p, seed);
      const bool dp = has_tight_hamilton(H);
      EXPECT_EQ(dp, exhaustive_hamilton(H));
      EXPECT_EQ(dp, naive::hamiltonian(H));
    }
  }
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto H = gen::random(8, 0.55, seed);
    EXPECT_EQ(has_tight_hamilton(H), naive::hamiltonian(H));
  }
}

TEST(Oracle, ExtractionAlwaysVerifies) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto H = gen::random(11, 0.5, seed);
    const auto c = extract_tight_hamilton(H);
    EXPECT_EQ(c.has_value(), has_tight_hamilton(H));
    if (c) {
      EXPECT_TRUE(c->is_cycle);
      EXPECT_TRUE(verify(H, *c));
    }
  }
}

TEST(Oracle, InvariantUnderRelabeling) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto H = gen::random(10, 0.45, seed);
    std::vector<Vertex> pi(10);
    std::iota(pi.begin(), pi.end(), Vertex{0});
    Rng rng(seed);
    rng.shuffle(pi);
    EXPECT_EQ(has_tight_hamilton(H), has_tight_hamilton(relabel(H, pi)));
  }
}

TEST(Oracle, Example1IsNotHamiltonian) {
  for (std::size_t n : {10u, 12u})
    for (std::uint64_t seed = 0; seed < 5; ++seed) EXPECT_FALSE(has_tight_hamilton(gen::example1(n, seed)));
}

TEST(CountPaths, Examples) {
  EXPECT_EQ(count_paths_between(gen::complete(6), {0, 1}, {2, 3}, 1), 2u);
  EXPECT_EQ(count_paths_between(gen::complete(8), {0, 1}, {2, 3}, 2), 12u);
  EXPECT_EQ(count_paths_between(empty(8), {0, 1}, {2, 3}, 2), 0u);
  EXPECT_THROW(count_paths_between(empty(15), {0, 1}, {2, 3}, 2), BudgetExceeded);
  EXPECT_THROW(count_paths_between(empty(8), {0, 1}, {2, 3}, 7), BudgetExceeded);
  EXPECT_THROW(count_paths_between(empty(8), {0, 1}, {1, 3}, 2), PreconditionError);
}

TEST(CountPaths, MatchesNaiveAndReversal) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto H = gen::random(10, 0.6, seed);
    const VertexPair p{0, 1}, q{2, 3};
    for (std::size_t inner = 0; inner <= 4; ++inner) {
      const auto c = count_paths_between(H, p, q, inner);
      EXPECT_EQ(c, naive::paths_between(H, p, q, inner));
      EXPECT_EQ(c, count_paths_between(H, {q.second, q.first}, {p.second, p.first}, inner));
    }
  }
}
