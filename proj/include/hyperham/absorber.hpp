#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "hyperham/bitset.hpp"
#include "hyperham/hypergraph.hpp"
#include "hyperham/motifs.hpp"
#include "hyperham/rng.hpp"

namespace hyperham {

/**
 * 21-vertex absorber: a K3,3,3 labelled x1 x2 x3 y1 y2 y3 z1 z2 z3 plus three
 * link paths (a_i, b_i, c_i, d_i). In the idle state the path pieces are
 * x1x2x3z1z2z3 and a_i b_i y_i c_i d_i; absorbing (v1,v2,v3) turns them into
 * x1x2x3y1y2y3z1z2z3 and a_i b_i v_i c_i d_i.
 */
struct Absorber {
  K333 K{};
  std::array<std::array<Vertex, 4>, 3> P{};
  /// eligible[i] = {v : a_i b_i v, b_i v c_i, v c_i d_i in E}, sorted.
  std::array<std::vector<Vertex>, 3> eligible;

  Vertex y(std::size_t i) const { return K[3 + i]; }

  std::vector<Vertex> vertices() const {
    std::vector<Vertex> out(K.begin(), K.end());
    for (const auto& p : P) out.insert(out.end(), p.begin(), p.end());
    return out;
  }

  std::vector<Vertex> slot_path(std::size_t i, Vertex v) const {
    return {P[i][0], P[i][1], v, P[i][2], P[i][3]};
  }
};

inline std::vector<Vertex> slot_eligible(const Hypergraph3& H, const std::array<Vertex, 4>& p) {
  Bitset e(H.n(), H.nbr_bits(p[0], p[1]));
  e &= H.nbr_bits(p[1], p[2]);
  e &= H.nbr_bits(p[2], p[3]);
  return e.to_vector();
}

inline void refresh_eligible(const Hypergraph3& H, Absorber& A) {
  for (std::size_t i = 0; i < 3; ++i) A.eligible[i] = slot_eligible(H, A.P[i]);
}

/// Checks every clause of the absorber definition for T = (v1, v2, v3) directly against H.
inline bool is_absorber(const Hypergraph3& H, const Absorber& A, const std::array<Vertex, 3>& T) {
  const auto vs = A.vertices();
  Bitset seen(H.n());
  for (auto v : vs) {
    if (v >= H.n() || seen.test(v)) return false;
    seen.set(v);
  }
  for (auto v : T) {
    if (v >= H.n() || seen.test(v)) return false;
    seen.set(v);
  }
  if (!verify_tight_path(H, k333_long_path(A.K))) return false;
  if (!verify_tight_path(H, k333_short_path(A.K))) return false;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!verify_tight_path(H, A.slot_path(i, A.y(i)))) return false;
    if (!verify_tight_path(H, A.slot_path(i, T[i]))) return false;
  }
  return true;
}

struct AbsorberSearch {
  std::optional<Absorber> absorber;
  std::uint64_t expansions = 0;
  std::size_t k333_found = 0;
};

/**
 * Seeds a K3,3,3 outside `forbidden`, then for each i picks the link path
 * a_i-b_i-c_i-d_i in N(y_i) whose eligible set (outside forbidden and the
 * absorber) is largest. `budget` caps candidate quadruples per slot.
 */
inline AbsorberSearch find_absorber(const Hypergraph3& H, const Bitset& forbidden,
                                    std::size_t min_eligibility, std::uint64_t budget,
                                    std::uint64_t seed, std::size_t tries = 8) {
  AbsorberSearch out;
  const std::size_t n = H.n();
  if (n < 21 || forbidden.size() != n || n - forbidden.count() < 21) return out;
  Rng rng(seed);
  for (std::size_t t = 0; t < tries; ++t) {
    const auto k = find_k333(H, forbidden, 4, rng.next());
    if (!k) continue;
    ++out.k333_found;
    Absorber A;
    A.K = *k;
    Bitset used = forbidden;
    for (auto v : A.K) used.set(v);
    bool ok = true;
    for (std::size_t i = 0; i < 3 && ok; ++i) {
      const Vertex y = A.y(i);
      auto link = std::vector<VertexPair>(H.link(y).begin(), H.link(y).end());
      rng.shuffle(link);
      std::size_t best = 0;
      std::optional<std::array<Vertex, 4>> best_p;
      std::uint64_t spent = 0;
      for (auto [b, c] : link) {
        if (spent >= budget) break;
        if (used.test(b) || used.test(c)) continue;
        for (int flip = 0; flip < 2 && spent < budget; ++flip) {
          if (flip) std::swap(b, c);
          Bitset as(n, H.nbr_bits(y, b)), ds(n, H.nbr_bits(y, c));
          as.subtract(used);
          ds.subtract(used);
          as.reset(c);
          ds.reset(b);
          for (auto a : as.to_vector()) {
            if (spent >= budget) break;
            for (auto d : ds.to_vector()) {
              if (a == d) continue;
              if (++spent > budget) break;
              Bitset e(n, H.nbr_bits(a, b));
              e &= H.nbr_bits(b, c);
              e &= H.nbr_bits(c, d);
              e.subtract(used);
              e.reset(a);
              e.reset(d);
              const std::size_t score = e.count();
              if (!best_p || score > best) {
                best = score;
                best_p = std::array<Vertex, 4>{a, b, c, d};
              }
            }
          }
        }
      }
      out.expansions += spent;
      if (!best_p || best < min_eligibility) {
        ok = false;
        break;
      }
      A.P[i] = *best_p;
      for (auto v : *best_p) used.set(v);
    }
    if (!ok) continue;
    refresh_eligible(H, A);
    out.absorber = std::move(A);
    return out;
  }
  return out;
}

}  // namespace hyperham
