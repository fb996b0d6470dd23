#pragma once

// Naive reference implementations for cross-checking. Each routine works
// from has_edge alone and enumerates its search space literally, so it shares
// no code path with the optimized library routines it is compared against.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "hyperham/hypergraph.hpp"

namespace hyperham::naive {

inline std::vector<VertexPair> ordered_pairs(std::size_t n) {
  std::vector<VertexPair> out;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b)
      if (a != b) out.emplace_back(a, b);
  return out;
}

inline std::vector<Vertex> subset(std::uint64_t mask, std::size_t n) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v)
    if (mask >> v & 1) out.push_back(v);
  return out;
}

/// min over all X and all P of e(X,P) - d|X||P|. d should be dyadic so doubles stay exact.
inline double ev_min_raw(const Hypergraph3& H, double d) {
  const std::size_t n = H.n();
  const auto pairs = ordered_pairs(n);
  const std::size_t m = pairs.size();
  if (n > 5) throw std::invalid_argument("ev_min_raw: n <= 5 only");
  double best = 0.0;
  for (std::uint64_t xm = 0; xm < (std::uint64_t{1} << n); ++xm) {
    const auto X = subset(xm, n);
    // inc[j] = |N(pairs[j]) ∩ X|
    std::vector<long long> inc(m, 0);
    for (std::size_t j = 0; j < m; ++j)
      for (auto x : X)
        if (H.has_edge(x, pairs[j].first, pairs[j].second)) ++inc[j];
    // Gray code over P.
    long long e = 0, sz = 0;
    std::uint64_t gray = 0;
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << m); ++i) {
      const auto bit = static_cast<std::size_t>(__builtin_ctzll(i));
      gray ^= std::uint64_t{1} << bit;
      const long long sgn = (gray >> bit & 1) ? 1 : -1;
      e += sgn * inc[bit];
      sz += sgn;
      best = std::min(best, static_cast<double>(e) - d * static_cast<double>(X.size()) * static_cast<double>(sz));
    }
  }
  return best;
}

/// min over all X, Y, Z of e(X,Y,Z) - d|X||Y||Z|.
inline double vvv_min_raw(const Hypergraph3& H, double d) {
  const std::size_t n = H.n();
  if (n > 5) throw std::invalid_argument("vvv_min_raw: n <= 5 only");
  const std::uint64_t full = std::uint64_t{1} << n;
  double best = 0.0;
  for (std::uint64_t xm = 0; xm < full; ++xm)
    for (std::uint64_t ym = 0; ym < full; ++ym)
      for (std::uint64_t zm = 0; zm < full; ++zm) {
        long long e = 0;
        const auto X = subset(xm, n), Y = subset(ym, n), Z = subset(zm, n);
        for (auto x : X)
          for (auto y : Y)
            for (auto z : Z)
              if (H.has_edge(x, y, z)) ++e;
        const double v = static_cast<double>(e) -
                         d * static_cast<double>(X.size() * Y.size() * Z.size());
        best = std::min(best, v);
      }
  return best;
}

/// min over all P, Q of e(P,Q) - d|K_ee(Q,P)| with distinct-vertex triples only.
inline double ee_min_raw(const Hypergraph3& H, double d) {
  const std::size_t n = H.n();
  if (n > 4) throw std::invalid_argument("ee_min_raw: n <= 4 only");
  const auto pairs = ordered_pairs(n);
  const std::size_t m = pairs.size();
  double best = 0.0;
  for (std::uint64_t pm = 0; pm < (std::uint64_t{1} << m); ++pm) {
    // Contribution of each q = (y,z) in Q given P: (#x, #edges) over (x,y) in P, x != z.
    std::vector<long long> k(m, 0), e(m, 0);
    for (std::size_t j = 0; j < m; ++j) {
      const auto [y, z] = pairs[j];
      for (std::size_t i = 0; i < m; ++i) {
        if (!(pm >> i & 1)) continue;
        const auto [x, y2] = pairs[i];
        if (y2 != y || x == z) continue;
        ++k[j];
        if (H.has_edge(x, y, z)) ++e[j];
      }
    }
    long long E = 0, K = 0;
    std::uint64_t gray = 0;
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << m); ++i) {
      const auto bit = static_cast<std::size_t>(__builtin_ctzll(i));
      gray ^= std::uint64_t{1} << bit;
      const long long sgn = (gray >> bit & 1) ? 1 : -1;
      E += sgn * e[bit];
      K += sgn * k[bit];
      best = std::min(best, static_cast<double>(E) - d * static_cast<double>(K));
    }
  }
  return best;
}

/// Ordered distinct (x,y,z,w) with {x,y} in P, {z,w} in Q (unordered membership), xyz, yzw in E.
inline std::uint64_t cherries(const Hypergraph3& H, const std::vector<char>& Pm,
                              const std::vector<char>& Qm) {
  const std::size_t n = H.n();
  std::uint64_t c = 0;
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = 0; y < n; ++y)
      for (Vertex z = 0; z < n; ++z)
        for (Vertex w = 0; w < n; ++w) {
          if (x == y || x == z || x == w || y == z || y == w || z == w) continue;
          if (!Pm[x * n + y] || !Qm[z * n + w]) continue;
          if (H.has_edge(x, y, z) && H.has_edge(y, z, w)) ++c;
        }
  return c;
}

/// Apex-rooted K4(3)- copies: apex a and an unordered triple {x,y,z}.
inline std::uint64_t k4minus(const Hypergraph3& H) {
  const std::size_t n = H.n();
  std::uint64_t c = 0;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex x = 0; x < n; ++x)
      for (Vertex y = x + 1; y < n; ++y)
        for (Vertex z = y + 1; z < n; ++z) {
          if (a == x || a == y || a == z) continue;
          if (H.has_edge(a, x, y) && H.has_edge(a, x, z) && H.has_edge(a, y, z)) ++c;
        }
  return c;
}

/// All maps V(F) -> V(H) (injective if requested) preserving every edge of F.
inline std::uint64_t embeddings(const Hypergraph3& F, const Hypergraph3& H, bool injective) {
  const std::size_t k = F.n(), n = H.n();
  std::vector<Vertex> img(k, 0);
  std::uint64_t c = 0;
  if (n == 0) return k == 0 ? 1 : 0;
  while (true) {
    bool ok = true;
    if (injective)
      for (std::size_t i = 0; i < k && ok; ++i)
        for (std::size_t j = i + 1; j < k && ok; ++j)
          if (img[i] == img[j]) ok = false;
    for (const auto& t : F.edges()) {
      if (!ok) break;
      if (!H.has_edge(img[t[0]], img[t[1]], img[t[2]])) ok = false;
    }
    if (ok) ++c;
    std::size_t i = 0;
    while (i < k && ++img[i] == n) img[i++] = 0;
    if (i == k) break;
  }
  return c;
}

/// Tight Hamilton cycle by trying every permutation with vertex 0 first.
inline bool hamiltonian(const Hypergraph3& H) {
  const std::size_t n = H.n();
  if (n < 4) return false;
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      ok = H.has_edge(perm[i], perm[(i + 1) % n], perm[(i + 2) % n]);
    if (ok) return true;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return false;
}

/// Tight paths from -> to with exactly `inner` inner vertices, by unpruned enumeration.
inline std::uint64_t paths_between(const Hypergraph3& H, VertexPair from, VertexPair to,
                                   std::size_t inner) {
  const std::size_t n = H.n();
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < n; ++v)
    if (v != from.first && v != from.second && v != to.first && v != to.second) rest.push_back(v);
  if (inner > rest.size()) return 0;
  std::uint64_t c = 0;
  std::vector<std::size_t> idx(inner, 0);
  while (true) {
    std::vector<Vertex> seq{from.first, from.second};
    bool distinct = true;
    for (std::size_t i = 0; i < inner; ++i) {
      for (std::size_t j = 0; j < i; ++j)
        if (idx[i] == idx[j]) distinct = false;
      seq.push_back(rest[idx[i]]);
    }
    seq.push_back(to.first);
    seq.push_back(to.second);
    if (distinct) {
      bool ok = true;
      for (std::size_t i = 0; i + 2 < seq.size() && ok; ++i) ok = H.has_edge(seq[i], seq[i + 1], seq[i + 2]);
      if (ok) ++c;
    }
    std::size_t i = 0;
    while (i < inner && ++idx[i] == rest.size()) idx[i++] = 0;
    if (i == inner) break;
  }
  return c;
}

/// Repeated full passes deleting edges that contain a pair of codegree in (0, beta*n).
inline std::vector<Triple> clean_edges(const Hypergraph3& H, double beta) {
  const std::size_t n = H.n();
  std::vector<Triple> E = H.edges();
  const double t = beta * static_cast<double>(n);
  while (true) {
    std::vector<std::size_t> cod(n * n, 0);
    for (const auto& e : E)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          if (i != j) ++cod[e[i] * n + e[j]];
    std::vector<Triple> keep;
    for (const auto& e : E) {
      const bool low = static_cast<double>(cod[e[0] * n + e[1]]) < t ||
                       static_cast<double>(cod[e[0] * n + e[2]]) < t ||
                       static_cast<double>(cod[e[1] * n + e[2]]) < t;
      if (!low) keep.push_back(e);
    }
    if (keep.size() == E.size()) return E;
    E = std::move(keep);
  }
}

}  // namespace hyperham::naive
