#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hyperham/bitset.hpp"
#include "hyperham/connect.hpp"
#include "hyperham/hypergraph.hpp"
#include "hyperham/rng.hpp"

namespace hyperham {

struct CountReport {
  std::string motif;
  std::uint64_t count = 0;
  /// count / n^arity
  double normalized = 0.0;
  std::size_t arity = 0;
  bool exact = true;
  bool cap_hit = false;
  std::uint64_t samples = 0;
  std::string convention;
};

namespace detail {
inline double npow(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 0; i < k; ++i) r *= static_cast<double>(n);
  return r;
}
inline void normalize(CountReport& r, std::size_t n) {
  r.normalized = n == 0 ? 0.0 : static_cast<double>(r.count) / npow(n, r.arity);
}
inline double beta_threshold(double beta, std::size_t n) { return beta * static_cast<double>(n); }
}  // namespace detail

// ---------------------------------------------------------------------------
// Cleaning and connectable pairs

/// Largest sub-hypergraph in which every pair has codegree 0 or at least beta*n.
inline Hypergraph3 clean(const Hypergraph3& H, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw PreconditionError("clean: beta must lie in (0,1)");
  const std::size_t n = H.n();
  const double thr = detail::beta_threshold(beta, n);
  const auto& E = H.edges();
  std::vector<char> alive(E.size(), 1);
  std::vector<std::size_t> cod(n * n, 0);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) cod[u * n + v] = H.cod(u, v);
  auto edge_index = [&](Vertex a, Vertex b, Vertex c) {
    const Triple t = sorted_triple(a, b, c);
    return static_cast<std::size_t>(std::lower_bound(E.begin(), E.end(), t) - E.begin());
  };
  auto bad = [&](std::size_t c) { return c > 0 && static_cast<double>(c) < thr; };
  std::vector<VertexPair> work;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (bad(cod[u * n + v])) work.push_back({u, v});
  while (!work.empty()) {
    const auto [u, v] = work.back();
    work.pop_back();
    if (!bad(cod[u * n + v])) continue;
    for (auto w : H.neighbors(u, v)) {
      const std::size_t i = edge_index(u, v, w);
      if (!alive[i]) continue;
      alive[i] = 0;
      const auto& e = E[i];
      for (auto [p, q] : {VertexPair{e[0], e[1]}, VertexPair{e[0], e[2]}, VertexPair{e[1], e[2]}}) {
        auto& c = cod[p * n + q];
        --c;
        if (bad(c)) work.push_back({p, q});
      }
    }
  }
  std::vector<Triple> kept;
  for (std::size_t i = 0; i < E.size(); ++i)
    if (alive[i]) kept.push_back(E[i]);
  return Hypergraph3::from_edges(n, kept);
}

/// (x,y) is beta-connectable when |{z : xyz in E, d(y,z) >= beta n}| >= beta n.
inline bool is_connectable(const Hypergraph3& H, double beta, Vertex x, Vertex y) {
  if (x == y) return false;
  const double thr = detail::beta_threshold(beta, H.n());
  std::size_t good = 0;
  for (auto z : H.neighbors(x, y))
    if (static_cast<double>(H.cod(y, z)) >= thr) ++good;
  return static_cast<double>(good) >= thr;
}

inline PairSet connectable_pairs(const Hypergraph3& H, double beta) {
  std::vector<VertexPair> out;
  for (Vertex x = 0; x < H.n(); ++x)
    for (Vertex y = 0; y < H.n(); ++y)
      if (x != y && is_connectable(H, beta, x, y)) out.push_back({x, y});
  return PairSet(true, std::move(out));
}

// ---------------------------------------------------------------------------
// K4(3)- and cherries

/// Apex-rooted copies: (a, {x,y,z}) with axy, axz, ayz in E. Equals the sum of
/// triangle counts over all link graphs.
inline CountReport count_k4minus(const Hypergraph3& H,
                                 std::optional<std::uint64_t> cap = std::nullopt) {
  CountReport r;
  r.motif = "k4minus";
  r.arity = 4;
  r.convention = "apex-rooted, unordered base";
  const std::size_t n = H.n();
  std::uint64_t total3 = 0;  // each triangle counted once per side
  for (Vertex a = 0; a < n && !r.cap_hit; ++a)
    for (const auto& [x, y] : H.link(a)) {
      total3 += intersection_count(H.nbr_bits(a, x), H.nbr_bits(a, y));
      if (cap && total3 / 3 >= *cap) {
        r.cap_hit = true;
        break;
      }
    }
  r.count = total3 / 3;
  r.exact = !r.cap_hit;
  detail::normalize(r, n);
  return r;
}

/// Monte-Carlo estimate from uniform 4-tuples in V^4.
inline CountReport sample_k4minus(const Hypergraph3& H, std::uint64_t samples, std::uint64_t seed) {
  CountReport r;
  r.motif = "k4minus";
  r.arity = 4;
  r.exact = false;
  r.samples = samples;
  r.convention = "apex-rooted, unordered base";
  const std::size_t n = H.n();
  if (n < 4 || samples == 0) return r;
  Rng rng(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const auto a = static_cast<Vertex>(rng.below(n));
    const auto x = static_cast<Vertex>(rng.below(n));
    const auto y = static_cast<Vertex>(rng.below(n));
    const auto z = static_cast<Vertex>(rng.below(n));
    if (H.has_edge(a, x, y) && H.has_edge(a, x, z) && H.has_edge(a, y, z)) ++hits;
  }
  // Each apex-rooted copy corresponds to 3! ordered (x,y,z).
  const double labeled = static_cast<double>(hits) / static_cast<double>(samples) * detail::npow(n, 4);
  r.normalized = labeled / 6.0 / detail::npow(n, 4);
  r.count = static_cast<std::uint64_t>(std::llround(labeled / 6.0));
  return r;
}

/// Ordered (x,y,z,w), all distinct, with {x,y} in P, {z,w} in Q and xyz, yzw in E.
inline CountReport count_cherries(const Hypergraph3& H, const PairSet& P, const PairSet& Q,
                                  std::optional<std::uint64_t> cap = std::nullopt) {
  CountReport r;
  r.motif = "cherries";
  r.arity = 4;
  r.convention = "ordered 4-tuples";
  const std::size_t n = H.n();
  auto rows = [&](const PairSet& S) {
    std::vector<Bitset> out(n, Bitset(n));
    for (const auto& [a, b] : S.members()) {
      H.check_vertex(a);
      H.check_vertex(b);
      out[a].set(b);
      if (!S.ordered()) out[b].set(a);
    }
    return out;
  };
  const auto prow = rows(P), qrow = rows(Q);
  std::uint64_t c = 0;
  for (Vertex y = 0; y < n && !r.cap_hit; ++y)
    for (Vertex z = 0; z < n; ++z) {
      if (y == z || H.cod(y, z) == 0) continue;
      Bitset A(n, H.nbr_bits(y, z)), B(n, H.nbr_bits(y, z));
      A &= prow[y];
      B &= qrow[z];
      c += A.count() * B.count() - intersection_count(A.words(), B.words());
      if (cap && c >= *cap) {
        r.cap_hit = true;
        break;
      }
    }
  r.count = c;
  r.exact = !r.cap_hit;
  detail::normalize(r, n);
  return r;
}

// ---------------------------------------------------------------------------
// Turns

/// Seven vertices such that every {a_i, b_j, c, d} spans a K4(3)- with apex a_i.
struct Turn {
  Vertex a1, a2, a3, b1, b2, c, d;
  std::array<Vertex, 7> vertices() const { return {a1, a2, a3, b1, b2, c, d}; }
  bool operator==(const Turn&) const = default;
  auto operator<=>(const Turn&) const = default;
};

inline bool is_turn(const Hypergraph3& H, const Turn& t) {
  const auto vs = t.vertices();
  for (auto v : vs)
    if (v >= H.n()) return false;
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j)
      if (vs[i] == vs[j]) return false;
  for (Vertex a : {t.a1, t.a2, t.a3}) {
    if (!H.has_edge(a, t.c, t.d)) return false;
    for (Vertex b : {t.b1, t.b2})
      if (!H.has_edge(a, b, t.c) || !H.has_edge(a, b, t.d)) return false;
  }
  return true;
}

/// The four orientation paths between {a1,b1} and {a2,b2} through a turn.
inline std::array<std::vector<Vertex>, 4> turn_paths(const Turn& t) {
  return {{{t.a1, t.b1, t.c, t.a2, t.b2},
           {t.a1, t.b1, t.c, t.a3, t.d, t.b2, t.a2},
           {t.b1, t.a1, t.c, t.d, t.a2, t.b2},
           {t.b1, t.a1, t.c, t.b2, t.a2}}};
}

/**
 * Verified turns from guided samples (a pair (c,d), three apexes from N(c,d),
 * two bases from the common neighbourhoods) and from uniform random 7-tuples.
 */
inline std::vector<Turn> find_turns(const Hypergraph3& H, std::uint64_t samples,
                                    std::uint64_t seed, std::size_t max_results = 0) {
  std::vector<Turn> out;
  const std::size_t n = H.n();
  if (n < 7) return out;
  std::set<Turn> seen;
  Rng rng(seed);
  auto pick_distinct = [&](std::vector<Vertex> pool, std::size_t k) {
    rng.shuffle(pool);
    pool.resize(k);
    return pool;
  };
  auto record = [&](const Turn& t) {
    if (is_turn(H, t) && seen.insert(t).second) out.push_back(t);
  };
  for (std::uint64_t s = 0; s < samples; ++s) {
    if (max_results && out.size() >= max_results) break;
    if (s % 4 == 3) {
      std::vector<Vertex> all(n);
      for (Vertex v = 0; v < n; ++v) all[v] = v;
      const auto p = pick_distinct(all, 7);
      record({p[0], p[1], p[2], p[3], p[4], p[5], p[6]});
      continue;
    }
    const auto c = static_cast<Vertex>(rng.below(n));
    auto d = static_cast<Vertex>(rng.below(n - 1));
    if (d >= c) ++d;
    const auto nb = H.neighbors(c, d);
    if (nb.size() < 3) continue;
    const auto as = pick_distinct(std::vector<Vertex>(nb.begin(), nb.end()), 3);
    Bitset common = Bitset::full(n);
    for (auto a : as) {
      common &= H.nbr_bits(a, c);
      common &= H.nbr_bits(a, d);
    }
    for (auto a : as) common.reset(a);
    common.reset(c);
    common.reset(d);
    if (common.count() < 2) continue;
    const auto bs = pick_distinct(common.to_vector(), 2);
    record({as[0], as[1], as[2], bs[0], bs[1], c, d});
  }
  return out;
}

struct OrientationResult {
  VertexPair from, to;
  std::optional<TightPath> path;
  std::uint64_t expansions = 0;
  bool budget_exhausted = false;
};

/// Connections between q and q' for all four orientation combinations.
inline std::array<OrientationResult, 4> turnable_check(const Hypergraph3& H, VertexPair q,
                                                       VertexPair qp, std::size_t max_inner = 3,
                                                       std::uint64_t budget = 100000,
                                                       std::uint64_t seed = 0) {
  if (q.first == q.second || qp.first == qp.second)
    throw PreconditionError("turnable_check: pairs need two distinct vertices");
  if (q.first == qp.first || q.first == qp.second || q.second == qp.first || q.second == qp.second)
    throw PreconditionError("turnable_check: pairs must be disjoint");
  const Bitset all = Bitset::full(H.n());
  std::array<OrientationResult, 4> out;
  const VertexPair froms[2] = {q, {q.second, q.first}};
  const VertexPair tos[2] = {qp, {qp.second, qp.first}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      ConnectOptions opt;
      opt.max_inner = max_inner;
      opt.budget = budget;
      opt.seed = mix_seed(seed, static_cast<std::uint64_t>(2 * i + j));
      auto res = connect(H, froms[i], tos[j], all, opt);
      auto& o = out[static_cast<std::size_t>(2 * i + j)];
      o.from = froms[i];
      o.to = tos[j];
      o.path = std::move(res.path);
      o.expansions = res.expansions;
      o.budget_exhausted = res.budget_exhausted;
    }
  return out;
}

// ---------------------------------------------------------------------------
// Embeddings

enum class EmbedMode { injective, homomorphic };

inline constexpr std::size_t kMaxPatternVertices = 10;

/// Labeled embeddings of F into H by backtracking; candidates for a vertex
/// closing an edge of F come from the codegree neighbourhood of its image.
inline CountReport count_embeddings(const Hypergraph3& F, const Hypergraph3& H, EmbedMode mode,
                                    std::optional<std::uint64_t> cap = std::nullopt) {
  const std::size_t k = F.n();
  if (k > kMaxPatternVertices)
    throw PreconditionError("count_embeddings: pattern has more than 10 vertices");
  CountReport r;
  r.motif = "embeddings";
  r.arity = k;
  r.convention = mode == EmbedMode::injective ? "labeled injective" : "labeled homomorphic";
  const std::size_t n = H.n();

  // Order pattern vertices so each one closes as many edges as possible early.
  std::vector<Vertex> order;
  std::vector<char> placed(k, 0);
  for (std::size_t step = 0; step < k; ++step) {
    Vertex best = 0;
    long best_score = -1;
    for (Vertex f = 0; f < k; ++f) {
      if (placed[f]) continue;
      long score = 0;
      for (const auto& [p, q] : F.link(f)) score += (placed[p] && placed[q]) ? 100 : (placed[p] || placed[q]);
      if (score > best_score) {
        best_score = score;
        best = f;
      }
    }
    placed[best] = 1;
    order.push_back(best);
  }
  // closing[i]: pattern edges completed when order[i] is placed, as the other two vertices.
  std::vector<std::vector<VertexPair>> closing(k);
  std::vector<std::size_t> pos(k);
  for (std::size_t i = 0; i < k; ++i) pos[order[i]] = i;
  for (const auto& [a, b, c] : F.edges()) {
    const Vertex last = pos[a] > pos[b] ? (pos[a] > pos[c] ? a : c) : (pos[b] > pos[c] ? b : c);
    std::vector<Vertex> rest;
    for (Vertex v : {a, b, c})
      if (v != last) rest.push_back(v);
    closing[pos[last]].push_back({rest[0], rest[1]});
  }

  std::vector<Vertex> img(k, 0);
  Bitset used(n);
  std::uint64_t count = 0;
  auto dfs = [&](auto&& self, std::size_t i) -> void {
    if (r.cap_hit) return;
    if (i == k) {
      ++count;
      if (cap && count >= *cap) r.cap_hit = true;
      return;
    }
    Bitset cand = Bitset::full(n);
    for (const auto& [p, q] : closing[i]) {
      if (img[p] == img[q]) return;
      cand &= H.nbr_bits(img[p], img[q]);
    }
    if (mode == EmbedMode::injective) cand.subtract(used);
    const Vertex f = order[i];
    cand.for_each([&](Vertex v) {
      if (r.cap_hit) return;
      img[f] = v;
      const bool fresh = !used.test(v);
      if (fresh) used.set(v);
      self(self, i + 1);
      if (fresh) used.reset(v);
    });
  };
  if (k == 0) {
    count = 1;
  } else {
    dfs(dfs, 0);
  }
  r.count = count;
  r.exact = !r.cap_hit;
  detail::normalize(r, n);
  return r;
}

// ---------------------------------------------------------------------------
// K3,3,3

/// Labeled K3,3,3 as x1 x2 x3 y1 y2 y3 z1 z2 z3 with parts {x_i, y_i, z_i}.
using K333 = std::array<Vertex, 9>;

inline std::vector<Vertex> k333_long_path(const K333& k) { return {k.begin(), k.end()}; }
inline std::vector<Vertex> k333_short_path(const K333& k) {
  return {k[0], k[1], k[2], k[6], k[7], k[8]};
}

inline bool is_k333(const Hypergraph3& H, const K333& k) {
  for (std::size_t i = 0; i < 9; ++i) {
    if (k[i] >= H.n()) return false;
    for (std::size_t j = i + 1; j < 9; ++j)
      if (k[i] == k[j]) return false;
  }
  for (std::size_t a = 0; a < 9; a += 3)
    for (std::size_t b = 1; b < 9; b += 3)
      for (std::size_t c = 2; c < 9; c += 3)
        if (!H.has_edge(k[a], k[b], k[c])) return false;
  return true;
}

/**
 * Random edge (x1,x2,x3) outside `avoid`, then depth-first completion of
 * y1 y2 y3 z1 z2 z3, each slot restricted to the common neighbourhood of all
 * placed vertices from the two other parts. `budget` caps expansions per try.
 */
inline std::optional<K333> find_k333(const Hypergraph3& H, const Bitset& avoid, std::size_t tries,
                                     std::uint64_t seed, std::uint64_t budget = 5000) {
  const std::size_t n = H.n();
  if (n < 9 || avoid.size() != n || n - avoid.count() < 9) return std::nullopt;
  Rng rng(seed);
  std::vector<Triple> edges;
  for (const auto& e : H.edges())
    if (!avoid.test(e[0]) && !avoid.test(e[1]) && !avoid.test(e[2])) edges.push_back(e);
  if (edges.empty()) return std::nullopt;
  for (std::size_t t = 0; t < tries; ++t) {
    Triple e = rng.pick(edges);
    rng.shuffle(std::span<Vertex>(e));
    K333 k{};
    k[0] = e[0];
    k[1] = e[1];
    k[2] = e[2];
    Bitset used = avoid;
    for (auto v : e) used.set(v);
    std::uint64_t spent = 0;
    auto dfs = [&](auto&& self, std::size_t slot) -> bool {
      if (slot == 9) return true;
      if (++spent > budget) return false;
      const std::size_t part = slot % 3;
      Bitset cand = Bitset::full(n);
      cand.subtract(used);
      const std::size_t p1 = (part + 1) % 3, p2 = (part + 2) % 3;
      for (std::size_t i = p1; i < slot; i += 3)
        for (std::size_t j = p2; j < slot; j += 3) cand &= H.nbr_bits(k[i], k[j]);
      auto vs = cand.to_vector();
      rng.shuffle(vs);
      for (auto v : vs) {
        k[slot] = v;
        used.set(v);
        if (self(self, slot + 1)) return true;
        used.reset(v);
        if (spent > budget) return false;
      }
      return false;
    };
    if (dfs(dfs, 3) && verify_tight_path(H, k333_long_path(k)) &&
        verify_tight_path(H, k333_short_path(k)))
      return k;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Tight 8-cycle and its 4-blow-up

/// Backtracking for a tight 8-cycle whose smallest vertex comes first.
inline std::optional<TightPath> find_c8(const Hypergraph3& H, std::uint64_t budget = 1000000) {
  const std::size_t n = H.n();
  if (n < 8) return std::nullopt;
  std::vector<Vertex> seq;
  Bitset used(n);
  std::uint64_t spent = 0;
  auto dfs = [&](auto&& self) -> bool {
    if (seq.size() == 8) return verify_tight_cycle(H, seq);
    if (++spent > budget) return false;
    const Vertex root = seq[0];
    auto try_v = [&](Vertex v) {
      if (v <= root || used.test(v)) return false;
      seq.push_back(v);
      used.set(v);
      if (self(self)) return true;
      used.reset(v);
      seq.pop_back();
      return false;
    };
    if (seq.size() == 1) {
      for (Vertex v = root + 1; v < n; ++v)
        if (H.cod(root, v) > 0 && try_v(v)) return true;
      return false;
    }
    for (auto v : H.neighbors(seq[seq.size() - 2], seq.back())) {
      if (spent > budget) return false;
      if (try_v(v)) return true;
    }
    return false;
  };
  for (Vertex r = 0; r + 7 < n && spent <= budget; ++r) {
    seq = {r};
    used.clear();
    used.set(r);
    if (dfs(dfs)) return TightPath{seq, true};
  }
  return std::nullopt;
}

/// classes[i] = {e_{i+1}, f_{i+1}, g_{i+1}, h_{i+1}}.
struct C8Blowup {
  std::array<std::array<Vertex, 4>, 8> classes{};

  std::vector<Vertex> layered_path(std::initializer_list<std::size_t> layers) const {
    std::vector<Vertex> out;
    for (auto l : layers)
      for (std::size_t i = 0; i < 8; ++i) out.push_back(classes[i][l]);
    return out;
  }
  std::vector<Vertex> path32() const { return layered_path({0, 1, 2, 3}); }
  /// The f-layer removed.
  std::vector<Vertex> path24() const { return layered_path({0, 2, 3}); }
  /// The f- and g-layers removed.
  std::vector<Vertex> path16() const { return layered_path({0, 3}); }
  std::vector<Vertex> vertices() const { return path32(); }
};

inline bool is_c8_blowup(const Hypergraph3& H, const C8Blowup& g) {
  Bitset seen(H.n());
  for (const auto& cl : g.classes)
    for (auto v : cl) {
      if (v >= H.n() || seen.test(v)) return false;
      seen.set(v);
    }
  for (std::size_t i = 0; i < 8; ++i)
    for (auto a : g.classes[i])
      for (auto b : g.classes[(i + 1) % 8])
        for (auto c : g.classes[(i + 2) % 8])
          if (!H.has_edge(a, b, c)) return false;
  return true;
}

namespace detail {

// Fills the 32 slots round-robin (layer by layer over the 8 classes). A slot
// in class i must complete every edge of the windows (i-2,i-1,i), (i-1,i,i+1),
// (i,i+1,i+2) with the vertices already placed.
inline std::optional<C8Blowup> grow_c8_blowup(const Hypergraph3& H, const Bitset& avoid,
                                              const std::vector<Vertex>& seed_round,
                                              std::uint64_t budget, Rng& rng,
                                              std::uint64_t& spent) {
  const std::size_t n = H.n();
  C8Blowup g;
  std::array<std::size_t, 8> filled{};
  Bitset used = avoid;
  std::vector<Bitset> shadow(n, Bitset(n));
  for (Vertex u = 0; u < n; ++u)
    for (Vertex w = 0; w < n; ++w)
      if (u != w && H.cod(u, w) > 0) shadow[u].set(w);
  auto place = [&](std::size_t cls, Vertex v) {
    g.classes[cls][filled[cls]++] = v;
    used.set(v);
  };
  for (std::size_t i = 0; i < seed_round.size(); ++i) place(i, seed_round[i]);
  const std::size_t start = seed_round.size();
  auto dfs = [&](auto&& self, std::size_t slot) -> bool {
    if (slot == 32) return true;
    if (++spent > budget) return false;
    const std::size_t cls = slot % 8;
    const std::size_t m2 = (cls + 6) % 8, m1 = (cls + 7) % 8, p1 = (cls + 1) % 8,
                      p2 = (cls + 2) % 8;
    Bitset cand = Bitset::full(n);
    cand.subtract(used);
    for (std::size_t o : {m2, m1, p1, p2})
      for (std::size_t k = 0; k < filled[o]; ++k) cand &= shadow[g.classes[o][k]];
    for (auto [o1, o2] : {std::pair{m2, m1}, std::pair{m1, p1}, std::pair{p1, p2}})
      for (std::size_t a = 0; a < filled[o1]; ++a)
        for (std::size_t b = 0; b < filled[o2]; ++b)
          cand &= H.nbr_bits(g.classes[o1][a], g.classes[o2][b]);
    auto vs = cand.to_vector();
    rng.shuffle(vs);
    for (auto v : vs) {
      place(cls, v);
      if (self(self, slot + 1)) return true;
      --filled[cls];
      used.reset(v);
      if (spent > budget) return false;
    }
    return false;
  };
  if (dfs(dfs, start)) return g;
  return std::nullopt;
}

}  // namespace detail

/**
 * C8(4) search. First looks for the six-vertex gadget F (two K4(3)- with apex
 * a sharing x, joined by a cherry y z y' z') and grows the blow-up around the
 * first round x a y z y' z'; then falls back to an unseeded growth.
 */
inline std::optional<C8Blowup> find_c8_blowup(const Hypergraph3& H, std::uint64_t budget = 200000,
                                              std::uint64_t seed = 0,
                                              const Bitset* avoid = nullptr) {
  const std::size_t n = H.n();
  const Bitset none(n);
  const Bitset& av = avoid ? *avoid : none;
  if (n < 32 || n - av.count() < 32) return std::nullopt;
  Rng rng(seed);
  std::uint64_t spent = 0;
  const std::uint64_t seeded_budget = budget / 2;
  std::vector<Vertex> vs;
  for (Vertex v = 0; v < n; ++v)
    if (!av.test(v)) vs.push_back(v);
  for (std::size_t attempt = 0; attempt < 16 && spent < seeded_budget; ++attempt) {
    const Vertex a = rng.pick(vs);
    const auto link = H.link(a);
    if (link.empty()) continue;
    auto [x, y] = link[rng.below(link.size())];
    if (rng.bernoulli(0.5)) std::swap(x, y);
    if (av.test(x) || av.test(y)) continue;
    // z completes {a,x,y,z}; y', z' complete {a,x,y',z'}; cherry y z y' z'.
    Bitset zc(n, H.nbr_bits(a, x));
    zc &= H.nbr_bits(a, y);
    zc.subtract(av);
    std::optional<std::vector<Vertex>> round;
    zc.for_each([&](Vertex z) {
      if (round) return;
      Bitset yp(n, H.nbr_bits(y, z));
      yp &= H.nbr_bits(a, x);
      yp.subtract(av);
      yp.for_each([&](Vertex y2) {
        if (round || y2 == y || y2 == z) return;
        Bitset zp(n, H.nbr_bits(z, y2));
        zp &= H.nbr_bits(a, x);
        zp &= H.nbr_bits(a, y2);
        zp.subtract(av);
        zp.for_each([&](Vertex z2) {
          if (round || z2 == y || z2 == z) return;
          round = std::vector<Vertex>{x, a, y, z, y2, z2};
        });
      });
    });
    if (!round) continue;
    if (auto g = detail::grow_c8_blowup(H, av, *round, seeded_budget, rng, spent)) return g;
  }
  return detail::grow_c8_blowup(H, av, {}, budget, rng, spent);
}

}  // namespace hyperham
