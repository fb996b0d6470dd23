#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperham/hypergraph.hpp"
#include "hyperham/rng.hpp"

namespace hyperham::gen {

inline Hypergraph3 complete(std::size_t n) {
  std::vector<Triple> t;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      for (Vertex c = b + 1; c < n; ++c) t.push_back({a, b, c});
  return Hypergraph3::from_edges(n, t);
}

/// Tight cycle C_n: edges {i, i+1, i+2} mod n.
inline Hypergraph3 tight_cycle(std::size_t n) {
  if (n < 5) throw PreconditionError("tight_cycle needs n >= 5");
  std::vector<Triple> t;
  for (Vertex i = 0; i < n; ++i)
    t.push_back({i, static_cast<Vertex>((i + 1) % n), static_cast<Vertex>((i + 2) % n)});
  return Hypergraph3::from_edges(n, t);
}

/// Binomial random hypergraph: each triple independently with probability p.
inline Hypergraph3 random(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("random: p must lie in [0,1]");
  Rng rng(seed);
  std::vector<Triple> t;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      for (Vertex c = b + 1; c < n; ++c)
        if (rng.bernoulli(p)) t.push_back({a, b, c});
  return Hypergraph3::from_edges(n, t);
}

/**
 * K_{3,3,3} on 0..8 with parts {0,3,6}, {1,4,7}, {2,5,8}, so that the identity
 * order reads x1 x2 x3 y1 y2 y3 z1 z2 z3.
 */
inline Hypergraph3 k333() {
  std::vector<Triple> t;
  for (Vertex a = 0; a < 9; a += 3)
    for (Vertex b = 1; b < 9; b += 3)
      for (Vertex c = 2; c < 9; c += 3) t.push_back({a, b, c});
  return Hypergraph3::from_edges(9, t);
}

inline Hypergraph3 c8() { return tight_cycle(8); }

/**
 * t-blow-up of the tight 8-cycle on 8t vertices: vertex v sits in class v mod 8,
 * and edges are all triples with one vertex in each of three cyclically
 * consecutive classes. For t = 4 the identity order is e1..e8 f1..f8 g1..g8 h1..h8.
 */
inline Hypergraph3 c8_blowup(std::size_t t = 4) {
  if (t < 1) throw PreconditionError("c8_blowup needs t >= 1");
  const std::size_t n = 8 * t;
  std::vector<Triple> edges;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b)
      for (Vertex c = 0; c < n; ++c) {
        if (b % 8 != (a + 1) % 8 || c % 8 != (a + 2) % 8) continue;
        edges.push_back({a, b, c});
      }
  return Hypergraph3::from_edges(n, edges);
}

/// Vertex v becomes clones v*t .. v*t+t-1; edges are all transversals of cloned edges.
inline Hypergraph3 blowup(const Hypergraph3& H, std::size_t t) {
  if (t < 1) throw PreconditionError("blowup needs t >= 1");
  std::vector<Triple> edges;
  edges.reserve(H.edge_count() * t * t * t);
  for (const auto& [a, b, c] : H.edges())
    for (Vertex i = 0; i < t; ++i)
      for (Vertex j = 0; j < t; ++j)
        for (Vertex k = 0; k < t; ++k)
          edges.push_back({static_cast<Vertex>(a * t + i), static_cast<Vertex>(b * t + j),
                           static_cast<Vertex>(c * t + k)});
  return Hypergraph3::from_edges(H.n() * t, edges);
}

/**
 * Two-colour triangle construction. Pairs of the base vertices 0..n-3 are
 * coloured red with probability p (lexicographic draw order); hyperedges are
 * the monochromatic triangles. Vertex n-2 gets the red graph as its link,
 * vertex n-1 the blue graph. With include_xy_edges every triple containing
 * both apex vertices is added as well.
 */
inline Hypergraph3 hp_construction(std::size_t n, double p, std::uint64_t seed,
                                   bool include_xy_edges = false) {
  if (n < 5) throw PreconditionError("hp_construction needs n >= 5");
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("hp_construction: p must lie in [0,1]");
  const std::size_t m = n - 2;
  const auto x = static_cast<Vertex>(n - 2);
  const auto y = static_cast<Vertex>(n - 1);
  Rng rng(seed);
  std::vector<char> red(m * m, 0);
  for (Vertex u = 0; u < m; ++u)
    for (Vertex v = u + 1; v < m; ++v) {
      const char r = rng.bernoulli(p) ? 1 : 0;
      red[u * m + v] = red[v * m + u] = r;
    }
  std::vector<Triple> edges;
  for (Vertex a = 0; a < m; ++a)
    for (Vertex b = a + 1; b < m; ++b) {
      const char ab = red[a * m + b];
      edges.push_back({ab ? x : y, a, b});
      for (Vertex c = b + 1; c < m; ++c)
        if (red[a * m + c] == ab && red[b * m + c] == ab) edges.push_back({a, b, c});
    }
  if (include_xy_edges)
    for (Vertex w = 0; w < m; ++w) edges.push_back({x, y, w});
  return Hypergraph3::from_edges(n, edges);
}

/// The balanced case p = 1/2 of hp_construction.
inline Hypergraph3 example1(std::size_t n, std::uint64_t seed, bool include_xy_edges = false) {
  return hp_construction(n, 0.5, seed, include_xy_edges);
}

enum class Family { complete, tight_cycle, random, example1, hp, k333, c8, c8_blowup, blowup };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::complete: return "complete";
    case Family::tight_cycle: return "tight_cycle";
    case Family::random: return "random";
    case Family::example1: return "example1";
    case Family::hp: return "hp";
    case Family::k333: return "k333";
    case Family::c8: return "c8";
    case Family::c8_blowup: return "c8_blowup";
    case Family::blowup: return "blowup";
  }
  return "?";
}

inline Family parse_family(const std::string& s) {
  for (auto f : {Family::complete, Family::tight_cycle, Family::random, Family::example1,
                 Family::hp, Family::k333, Family::c8, Family::c8_blowup, Family::blowup})
    if (s == family_name(f)) return f;
  throw std::invalid_argument("unknown family '" + s + "'");
}

struct GenSpec {
  Family family = Family::complete;
  std::size_t n = 0;
  double p = 0.5;
  std::uint64_t seed = 0;
  bool include_xy_edges = false;
  /// Class size for c8_blowup and clone count for blowup.
  std::size_t t = 4;
  /// Base instance for blowup.
  const Hypergraph3* base = nullptr;
};

inline Hypergraph3 generate(const GenSpec& s) {
  switch (s.family) {
    case Family::complete: return complete(s.n);
    case Family::tight_cycle: return tight_cycle(s.n);
    case Family::random: return random(s.n, s.p, s.seed);
    case Family::example1: return example1(s.n, s.seed, s.include_xy_edges);
    case Family::hp: return hp_construction(s.n, s.p, s.seed, s.include_xy_edges);
    case Family::k333: return k333();
    case Family::c8: return c8();
    case Family::c8_blowup: return c8_blowup(s.t);
    case Family::blowup:
      if (!s.base) throw PreconditionError("blowup needs a base hypergraph");
      return blowup(*s.base, s.t);
  }
  throw std::logic_error("unreachable");
}

}  // namespace hyperham::gen
