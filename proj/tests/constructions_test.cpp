#include <gtest/gtest.h>

#include <cmath>

#include "hyperham/constructions.hpp"
#include "hyperham/motifs.hpp"
#include "hyperham/oracle.hpp"

using namespace hyperham;

TEST(Constructions, CompleteAndCycle) {
  EXPECT_EQ(gen::complete(7).edge_count(), 35u);
  const auto C = gen::tight_cycle(9);
  EXPECT_EQ(C.edge_count(), 9u);
  EXPECT_THROW(gen::tight_cycle(4), PreconditionError);
}

TEST(Constructions, RandomExtremesAndDeterminism) {
  EXPECT_EQ(gen::random(9, 1.0, 3), gen::complete(9));
  EXPECT_EQ(gen::random(9, 0.0, 3).edge_count(), 0u);
  EXPECT_EQ(gen::random(15, 0.5, 11), gen::random(15, 0.5, 11));
  EXPECT_NE(gen::random(15, 0.5, 11), gen::random(15, 0.5, 12));
  const auto R = gen::random(30, 0.3, 4);
  const double frac = static_cast<double>(R.edge_count()) / 4060.0;
  EXPECT_NEAR(frac, 0.3, 0.03);
}

TEST(Constructions, K333IdentityOrderings) {
  const auto K = gen::k333();
  EXPECT_EQ(K.n(), 9u);
  EXPECT_EQ(K.edge_count(), 27u);
  K333 id{0, 1, 2, 3, 4, 5, 6, 7, 8};
  EXPECT_TRUE(is_k333(K, id));
  EXPECT_TRUE(verify_tight_path(K, k333_long_path(id)));
  EXPECT_TRUE(verify_tight_path(K, k333_short_path(id)));
}

TEST(Constructions, C8BlowupLayerPaths) {
  const auto B = gen::c8_blowup(4);
  EXPECT_EQ(B.n(), 32u);
  EXPECT_EQ(B.edge_count(), 8u * 64u);
  C8Blowup g;
  for (Vertex v = 0; v < 32; ++v) g.classes[v % 8][v / 8] = v;
  EXPECT_TRUE(is_c8_blowup(B, g));
  EXPECT_TRUE(verify_tight_path(B, g.path32()));
  EXPECT_TRUE(verify_tight_path(B, g.path24()));
  EXPECT_TRUE(verify_tight_path(B, g.path16()));
  EXPECT_EQ(gen::c8_blowup(1), gen::c8());
}

TEST(Constructions, BlowupOfSingleEdge) {
  const auto E = Hypergraph3::from_edges(3, {{0, 1, 2}});
  const auto B = gen::blowup(E, 2);
  EXPECT_EQ(B.n(), 6u);
  EXPECT_EQ(B.edge_count(), 8u);
  EXPECT_FALSE(B.has_edge(0, 1, 2));  // 0 and 1 are clones of the same vertex
  EXPECT_TRUE(B.has_edge(0, 2, 4));
}

// Regression fixtures: oracle verdicts on small blow-ups, frozen from permutation enumeration.
TEST(Constructions, BlowupHamiltonicityFixtures) {
  const auto edge = Hypergraph3::from_edges(3, {{0, 1, 2}});
  const auto k4minus = Hypergraph3::from_edges(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}});
  const auto bowtie = Hypergraph3::from_edges(5, {{0, 1, 2}, {2, 3, 4}});
  EXPECT_TRUE(has_tight_hamilton(gen::blowup(gen::tight_cycle(5), 2)));
  EXPECT_TRUE(has_tight_hamilton(gen::blowup(gen::tight_cycle(6), 2)));
  EXPECT_TRUE(has_tight_hamilton(gen::blowup(edge, 2)));
  EXPECT_TRUE(has_tight_hamilton(gen::blowup(edge, 3)));
  EXPECT_TRUE(has_tight_hamilton(gen::blowup(gen::complete(4), 2)));
  EXPECT_FALSE(has_tight_hamilton(gen::blowup(k4minus, 2)));
  EXPECT_FALSE(has_tight_hamilton(gen::blowup(bowtie, 2)));
}

TEST(Constructions, Example1ApexCodegree) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const std::size_t n = 20;
    const auto plain = gen::example1(n, seed, false);
    const auto xy = gen::example1(n, seed, true);
    EXPECT_EQ(plain.codegree(n - 2, n - 1), 0u);
    EXPECT_EQ(xy.codegree(n - 2, n - 1), n - 2);
    EXPECT_EQ(xy.edge_count(), plain.edge_count() + n - 2);
  }
}

TEST(Constructions, Example1StructureMatchesColouring) {
  const std::size_t n = 16;
  const auto H = gen::example1(n, 3);
  const Vertex x = n - 2, y = n - 1;
  for (Vertex a = 0; a < n - 2; ++a)
    for (Vertex b = a + 1; b < n - 2; ++b) {
      // Every base pair is in exactly one apex link.
      EXPECT_NE(H.has_edge(x, a, b), H.has_edge(y, a, b));
      const bool red = H.has_edge(x, a, b);
      for (Vertex c = b + 1; c < n - 2; ++c) {
        const bool mono = H.has_edge(x, a, c) == red && H.has_edge(x, b, c) == red;
        EXPECT_EQ(H.has_edge(a, b, c), mono);
      }
    }
}

TEST(Constructions, Example1EqualsHalfBiasedHp) {
  EXPECT_EQ(gen::example1(25, 8, true), gen::hp_construction(25, 0.5, 8, true));
  EXPECT_EQ(gen::example1(25, 8), gen::example1(25, 8));
}

TEST(Constructions, HpValidation) {
  EXPECT_THROW(gen::hp_construction(4, 0.5, 0), PreconditionError);
  EXPECT_THROW(gen::hp_construction(10, 1.5, 0), PreconditionError);
  const auto all_red = gen::hp_construction(10, 1.0, 0);
  EXPECT_EQ(all_red.degree(9), 0u);
  EXPECT_EQ(all_red.degree(8), 28u);
}

TEST(Constructions, Example1MinimumDegreeNearQuarter) {
  const std::size_t n = 120;
  const auto H = gen::example1(n, 1, true);
  const double pairs = static_cast<double>(n * (n - 1) / 2);
  const double d1 = static_cast<double>(H.min_degree()) / pairs;
  EXPECT_GT(d1, 0.19);
  EXPECT_LT(d1, 0.31);
}

TEST(Constructions, GenerateDispatch) {
  gen::GenSpec s;
  s.family = gen::parse_family("random");
  s.n = 12;
  s.p = 0.5;
  s.seed = 2;
  EXPECT_EQ(gen::generate(s), gen::random(12, 0.5, 2));
  s.family = gen::Family::blowup;
  EXPECT_THROW(gen::generate(s), PreconditionError);
  EXPECT_THROW(gen::parse_family("nope"), std::invalid_argument);
  EXPECT_STREQ(gen::family_name(gen::Family::c8_blowup), "c8_blowup");
}
