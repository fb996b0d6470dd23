#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperham/absorber.hpp"
#include "hyperham/bitset.hpp"
#include "hyperham/connect.hpp"
#include "hyperham/hypergraph.hpp"
#include "hyperham/motifs.hpp"
#include "hyperham/rng.hpp"

namespace hyperham {

enum class HamiltonMode { ev, ee };

inline const char* hamilton_mode_name(HamiltonMode m) { return m == HamiltonMode::ev ? "ev" : "ee"; }
inline HamiltonMode parse_hamilton_mode(const std::string& s) {
  if (s == "ev") return HamiltonMode::ev;
  if (s == "ee") return HamiltonMode::ee;
  throw std::invalid_argument("unknown mode '" + s + "'");
}

struct PipelineParams {
  double beta = 0.05;
  double gamma = 0.15;
  /// Probability that a vertex enters the reservoir; gamma^2 when unset.
  std::optional<double> reservoir_fraction;
  /// Absorber target is ceil(absorber_multiplier * gamma^2 * n).
  double absorber_multiplier = 2.0;
  std::size_t max_inner = 15;
  std::size_t retries = 5;
  std::uint64_t seed = 0;
  std::uint64_t connect_budget = 20000;
  std::uint64_t absorber_budget = 20000;
  std::uint64_t gadget_budget = 50000;
  std::size_t min_eligibility = 1;
  bool use_gadget = true;
  HamiltonMode mode = HamiltonMode::ev;

  double reservoir() const { return reservoir_fraction.value_or(gamma * gamma); }

  void validate() const {
    if (!(beta > 0.0 && beta < 1.0)) throw PreconditionError("beta must lie in (0,1)");
    if (!(gamma > 0.0 && gamma < 1.0)) throw PreconditionError("gamma must lie in (0,1)");
    const double r = reservoir();
    if (!(r >= 0.0 && r <= 1.0)) throw PreconditionError("reservoir fraction must lie in [0,1]");
    if (max_inner < 1) throw PreconditionError("max_inner must be at least 1");
    if (absorber_multiplier <= 0.0) throw PreconditionError("absorber multiplier must be positive");
  }
};

// ---------------------------------------------------------------------------
// Almost cover

struct CoverResult {
  std::vector<TightPath> paths;
  std::vector<Vertex> uncovered;
  bool shortfall = false;
  std::string diagnostic;
};

namespace detail {

/// Greedy tight path inside `avail`, extended forward then backward; each step
/// prefers the candidate with the most continuations.
inline std::vector<Vertex> greedy_path(const Hypergraph3& G, const Bitset& avail, Triple start,
                                       Rng& rng) {
  std::vector<Vertex> seq(start.begin(), start.end());
  Bitset in(G.n());
  for (auto v : seq) in.set(v);
  auto extend = [&]() {
    for (;;) {
      const Vertex a = seq[seq.size() - 2], b = seq.back();
      Bitset c(G.n(), G.nbr_bits(a, b));
      c &= avail;
      c.subtract(in);
      if (c.none()) return;
      auto vs = c.to_vector();
      rng.shuffle(vs);
      Vertex best = vs[0];
      std::size_t best_score = 0;
      bool first = true;
      for (auto v : vs) {
        Bitset nxt(G.n(), G.nbr_bits(b, v));
        nxt &= avail;
        nxt.subtract(in);
        nxt.reset(v);
        const std::size_t s = nxt.count();
        if (first || s > best_score) {
          best = v;
          best_score = s;
          first = false;
        }
      }
      seq.push_back(best);
      in.set(best);
    }
  };
  extend();
  std::reverse(seq.begin(), seq.end());
  extend();
  std::reverse(seq.begin(), seq.end());
  return seq;
}

}  // namespace detail

/**
 * Vertex-disjoint tight paths built greedily inside clean(H, beta), restricted
 * to vertices outside `exclude`. Stops once fewer than gamma^2 n vertices are
 * uncovered, or when no path of max(4, ceil(beta n)) vertices can be grown.
 */
inline CoverResult almost_cover(const Hypergraph3& H, double beta, double gamma, std::uint64_t seed,
                                const Bitset* exclude = nullptr, std::size_t starts_per_round = 12) {
  const std::size_t n = H.n();
  const Hypergraph3 G = clean(H, beta);
  Rng rng(seed);
  Bitset avail = Bitset::full(n);
  if (exclude) avail.subtract(*exclude);
  const double target = gamma * gamma * static_cast<double>(n);
  const std::size_t min_len =
      std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(beta * static_cast<double>(n))));
  CoverResult out;
  while (static_cast<double>(avail.count()) >= target && avail.any()) {
    std::vector<Triple> edges;
    for (const auto& e : G.edges())
      if (avail.test(e[0]) && avail.test(e[1]) && avail.test(e[2])) edges.push_back(e);
    if (edges.empty()) break;
    std::vector<Vertex> best;
    for (std::size_t s = 0; s < starts_per_round; ++s) {
      Triple e = rng.pick(edges);
      rng.shuffle(std::span<Vertex>(e));
      auto p = detail::greedy_path(G, avail, e, rng);
      if (p.size() > best.size()) best = std::move(p);
    }
    if (best.size() < min_len) break;
    for (auto v : best) avail.reset(v);
    out.paths.push_back(TightPath{std::move(best), false});
  }
  out.uncovered = avail.to_vector();
  if (static_cast<double>(out.uncovered.size()) >= target && !out.uncovered.empty()) {
    out.shortfall = true;
    out.diagnostic = std::to_string(out.uncovered.size()) + " vertices uncovered, target below " +
                     std::to_string(target);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Absorbing path

enum class PieceKind { link, k333, slot, gadget };

/// A contiguous stretch of the absorbing path.
struct Piece {
  PieceKind kind = PieceKind::link;
  std::vector<Vertex> vertices;
  std::size_t absorber = 0;
  std::size_t slot = 0;
  bool reversed = false;
};

struct AbsorbingPath {
  TightPath path;
  std::vector<Absorber> absorbers;
  std::vector<Piece> pieces;
  std::optional<C8Blowup> gadget;
  /// Gadget layers still in the path: 4, 3 or 2.
  std::size_t gadget_layers = 4;
  std::size_t spare_capacity = 0;
  bool start_connectable = false;
  bool end_connectable = false;

  void rebuild() {
    path.vertices.clear();
    path.is_cycle = false;
    for (const auto& p : pieces) path.vertices.insert(path.vertices.end(), p.vertices.begin(), p.vertices.end());
  }

  /// Start offset of each piece inside path.
  std::vector<std::size_t> offsets() const {
    std::vector<std::size_t> out;
    std::size_t o = 0;
    for (const auto& p : pieces) {
      out.push_back(o);
      o += p.vertices.size();
    }
    return out;
  }
};

struct AbsorbingBuild {
  std::optional<AbsorbingPath> result;
  std::string stage;
  std::string diagnostic;
  std::size_t absorbers_target = 0;
  std::size_t absorbers_found = 0;
  bool gadget_found = false;
  std::uint64_t connect_expansions = 0;
};

inline std::size_t absorber_target(std::size_t n, std::size_t reserved, const PipelineParams& params) {
  const auto want = static_cast<std::size_t>(
      std::ceil(params.absorber_multiplier * params.gamma * params.gamma * static_cast<double>(n)));
  // 21 vertices per absorber plus at least four link vertices.
  const std::size_t cap = n > reserved ? (n - reserved) / 25 : 0;
  if (cap == 0) return 0;
  return std::clamp<std::size_t>(want, 1, cap);
}

inline AbsorbingBuild build_absorbing_path(const Hypergraph3& H, const Bitset& R,
                                           const PipelineParams& params, std::uint64_t seed) {
  params.validate();
  const std::size_t n = H.n();
  AbsorbingBuild out;
  const Hypergraph3 G = clean(H, params.beta);
  Bitset forbidden = R;
  out.absorbers_target = absorber_target(n, R.count(), params);
  AbsorbingPath ap;
  for (std::size_t j = 0; j < out.absorbers_target; ++j) {
    auto s = find_absorber(G, forbidden, params.min_eligibility, params.absorber_budget,
                           mix_seed(seed, 100 + j));
    if (!s.absorber) break;
    Absorber A = std::move(*s.absorber);
    refresh_eligible(H, A);
    for (auto v : A.vertices()) forbidden.set(v);
    ap.absorbers.push_back(std::move(A));
  }
  out.absorbers_found = ap.absorbers.size();
  if (ap.absorbers.empty()) {
    out.stage = "absorber_shortage";
    out.diagnostic = "no absorber found (target " + std::to_string(out.absorbers_target) + ")";
    return out;
  }
  if (params.use_gadget && n >= forbidden.count() + 40) {
    ap.gadget = find_c8_blowup(H, params.gadget_budget, mix_seed(seed, 200), &forbidden);
    if (ap.gadget)
      for (auto v : ap.gadget->vertices()) forbidden.set(v);
  }
  out.gadget_found = ap.gadget.has_value();

  std::vector<Piece> segs;
  for (std::size_t j = 0; j < ap.absorbers.size(); ++j) {
    const auto& A = ap.absorbers[j];
    segs.push_back({PieceKind::k333, k333_short_path(A.K), j, 0, false});
    for (std::size_t i = 0; i < 3; ++i) segs.push_back({PieceKind::slot, A.slot_path(i, A.y(i)), j, i, false});
  }
  if (ap.gadget) segs.push_back({PieceKind::gadget, ap.gadget->path32(), 0, 0, false});

  Bitset allowed = Bitset::full(n);
  allowed.subtract(forbidden);
  ap.pieces.push_back(segs[0]);
  for (std::size_t s = 1; s < segs.size(); ++s) {
    const auto& last = ap.pieces.back().vertices;
    const VertexPair from{last[last.size() - 2], last.back()};
    bool linked = false;
    for (int flip = 0; flip < 2 && !linked; ++flip) {
      Piece next = segs[s];
      if (flip) {
        std::reverse(next.vertices.begin(), next.vertices.end());
        next.reversed = true;
      }
      ConnectOptions opt;
      opt.max_inner = params.max_inner;
      opt.budget = params.connect_budget;
      opt.seed = mix_seed(seed, 300 + 2 * s + static_cast<std::size_t>(flip));
      const auto res = connect(H, from, {next.vertices[0], next.vertices[1]}, allowed, opt);
      out.connect_expansions += res.expansions;
      if (!res.path) continue;
      const auto& pv = res.path->vertices;
      Piece link{PieceKind::link, std::vector<Vertex>(pv.begin() + 2, pv.end() - 2), 0, 0, false};
      for (auto v : link.vertices) allowed.reset(v);
      ap.pieces.push_back(std::move(link));
      ap.pieces.push_back(std::move(next));
      linked = true;
    }
    if (!linked) {
      out.stage = "connection";
      out.diagnostic = "could not link piece " + std::to_string(s) + " of " + std::to_string(segs.size());
      return out;
    }
  }
  ap.rebuild();
  if (!verify(H, ap.path)) throw std::logic_error("absorbing path failed verification");
  const auto& pv = ap.path.vertices;
  ap.start_connectable = is_connectable(H, params.beta, pv[1], pv[0]);
  ap.end_connectable = is_connectable(H, params.beta, pv[pv.size() - 2], pv.back());
  ap.spare_capacity = ap.absorbers.size();
  out.result = std::move(ap);
  out.stage = "ok";
  return out;
}

// ---------------------------------------------------------------------------
// Absorb

struct AbsorbResult {
  std::optional<TightPath> path;
  std::optional<AbsorbingPath> updated;
  std::string diagnostic;
  std::size_t matched = 0;
  std::size_t gadget_removed = 0;
};

namespace detail {

/// Kuhn's augmenting-path matching of `left` items into slots; adj[i] lists slot ids.
inline std::vector<int> kuhn_matching(const std::vector<std::vector<int>>& adj, std::size_t slots,
                                      std::size_t& matched) {
  std::vector<int> slot_of(adj.size(), -1), owner(slots, -1);
  std::vector<char> seen;
  auto augment = [&](auto&& self, std::size_t u) -> bool {
    for (int s : adj[u]) {
      if (seen[static_cast<std::size_t>(s)]) continue;
      seen[static_cast<std::size_t>(s)] = 1;
      const int o = owner[static_cast<std::size_t>(s)];
      if (o < 0 || self(self, static_cast<std::size_t>(o))) {
        owner[static_cast<std::size_t>(s)] = static_cast<int>(u);
        slot_of[u] = s;
        return true;
      }
    }
    return false;
  };
  matched = 0;
  for (std::size_t u = 0; u < adj.size(); ++u) {
    seen.assign(slots, 0);
    if (augment(augment, u)) ++matched;
  }
  return slot_of;
}

inline bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace detail

/**
 * Inserts U into the absorbing path. A size not divisible by 3 is first fixed
 * by dropping one or two gadget layers; then the vertices of U are matched to
 * the slots of |U|/3 absorbers, and each used absorber switches to its
 * absorbing state. End pairs are preserved.
 */
inline AbsorbResult absorb(const Hypergraph3& H, const AbsorbingPath& A, std::span<const Vertex> U) {
  AbsorbResult out;
  const std::size_t n = H.n();
  Bitset in_path(n);
  for (auto v : A.path.vertices) in_path.set(v);
  Bitset u_set(n);
  for (auto v : U) {
    H.check_vertex(v);
    if (in_path.test(v)) throw PreconditionError("absorb: U intersects the absorbing path");
    if (u_set.test(v)) throw PreconditionError("absorb: U has a repeated vertex");
    u_set.set(v);
  }
  AbsorbingPath next = A;
  std::vector<Vertex> todo(U.begin(), U.end());
  if (todo.empty()) {
    out.path = A.path;
    out.updated = std::move(next);
    return out;
  }
  if (const std::size_t r = todo.size() % 3; r != 0) {
    const std::size_t drop = r == 1 ? 1 : 2;  // 8 = 2 (mod 3)
    if (!next.gadget || next.gadget_layers != 4) {
      out.diagnostic = "divisibility: |U| = " + std::to_string(todo.size()) +
                       " is not a multiple of 3 and no gadget is available";
      return out;
    }
    const auto& g = *next.gadget;
    for (auto& p : next.pieces) {
      if (p.kind != PieceKind::gadget) continue;
      p.vertices = drop == 1 ? g.path24() : g.path16();
      if (p.reversed) std::reverse(p.vertices.begin(), p.vertices.end());
    }
    for (std::size_t l = 1; l <= drop; ++l)
      for (std::size_t i = 0; i < 8; ++i) todo.push_back(g.classes[i][l]);
    next.gadget_layers = 4 - drop;
    out.gadget_removed = 8 * drop;
  }
  const std::size_t k = todo.size() / 3;
  const std::size_t t = next.absorbers.size();
  if (k > t) {
    out.diagnostic = "capacity: " + std::to_string(todo.size()) + " vertices need " +
                     std::to_string(k) + " absorbers, only " + std::to_string(t) + " available";
    return out;
  }

  // Absorber subsets: exhaustive when small, otherwise best-scoring first.
  std::vector<std::size_t> order(t);
  for (std::size_t j = 0; j < t; ++j) order[j] = j;
  {
    Bitset todo_set = to_bitset(n, todo);
    std::vector<std::size_t> score(t, 0);
    for (std::size_t j = 0; j < t; ++j)
      for (const auto& el : next.absorbers[j].eligible)
        for (auto v : el)
          if (todo_set.test(v)) ++score[j];
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return score[a] > score[b]; });
  }
  std::vector<std::size_t> comb(k);
  for (std::size_t i = 0; i < k; ++i) comb[i] = i;
  std::size_t tried = 0;
  std::vector<int> assignment;
  std::vector<std::size_t> chosen;
  do {
    ++tried;
    std::vector<std::size_t> sel(k);
    for (std::size_t i = 0; i < k; ++i) sel[i] = order[comb[i]];
    std::vector<std::vector<int>> adj(todo.size());
    for (std::size_t u = 0; u < todo.size(); ++u)
      for (std::size_t s = 0; s < k; ++s)
        for (std::size_t i = 0; i < 3; ++i) {
          const auto& el = next.absorbers[sel[s]].eligible[i];
          if (std::binary_search(el.begin(), el.end(), todo[u])) adj[u].push_back(static_cast<int>(3 * s + i));
        }
    std::size_t matched = 0;
    auto slot_of = detail::kuhn_matching(adj, 3 * k, matched);
    out.matched = std::max(out.matched, matched);
    if (matched == todo.size()) {
      assignment = std::move(slot_of);
      chosen = std::move(sel);
      break;
    }
  } while (tried < 5000 && detail::next_combination(comb, t));
  if (chosen.empty() && k > 0) {
    out.diagnostic = "matching: best matching covers " + std::to_string(out.matched) + " of " +
                     std::to_string(todo.size()) + " vertices";
    return out;
  }

  std::vector<std::array<Vertex, 3>> incoming(t);
  std::vector<char> used(t, 0);
  for (std::size_t u = 0; u < todo.size(); ++u) {
    const auto s = static_cast<std::size_t>(assignment[u]);
    const std::size_t j = chosen[s / 3];
    incoming[j][s % 3] = todo[u];
    used[j] = 1;
  }
  for (auto& p : next.pieces) {
    if (p.kind == PieceKind::k333 && used[p.absorber]) {
      p.vertices = k333_long_path(next.absorbers[p.absorber].K);
      if (p.reversed) std::reverse(p.vertices.begin(), p.vertices.end());
    } else if (p.kind == PieceKind::slot && used[p.absorber]) {
      const Vertex v = incoming[p.absorber][p.slot];
      auto sp = next.absorbers[p.absorber].slot_path(p.slot, v);
      if (!verify_tight_path(H, sp)) throw std::logic_error("absorber exchange broke a slot path");
      p.vertices = std::move(sp);
      if (p.reversed) std::reverse(p.vertices.begin(), p.vertices.end());
    }
  }
  // Used absorbers are retired by dropping their slot eligibility.
  for (std::size_t j = 0; j < t; ++j)
    if (used[j])
      for (auto& el : next.absorbers[j].eligible) el.clear();
  next.rebuild();
  next.spare_capacity = 0;
  for (const auto& a : next.absorbers)
    if (!a.eligible[0].empty()) ++next.spare_capacity;
  const auto& before = A.path.vertices;
  const auto& after = next.path.vertices;
  if (!verify(H, next.path) || after.size() < 4 || after[0] != before[0] || after[1] != before[1] ||
      after[after.size() - 2] != before[before.size() - 2] || after.back() != before.back())
    throw std::logic_error("absorb produced a path that fails verification");
  out.path = next.path;
  out.updated = std::move(next);
  return out;
}

// ---------------------------------------------------------------------------
// Full pipeline

struct AttemptTrace {
  std::uint64_t seed = 0;
  std::size_t reservoir = 0;
  std::size_t absorbers_target = 0;
  std::size_t absorbers_found = 0;
  bool gadget = false;
  std::size_t absorbing_length = 0;
  std::size_t cover_paths = 0;
  std::size_t uncovered = 0;
  std::size_t connections = 0;
  std::size_t dissolved = 0;
  std::size_t trims = 0;
  std::size_t adjustments = 0;
  std::size_t leftover = 0;
  std::uint64_t connect_expansions = 0;
  std::string stage = "ok";
  std::string diagnostic;
};

struct HamiltonResult {
  std::optional<TightPath> cycle;
  std::vector<AttemptTrace> trace;
  std::string failing_stage;
};

namespace detail {

struct Assembly {
  const Hypergraph3& H;
  const PipelineParams& params;
  Rng rng;
  AttemptTrace& tr;
  // segs[0] is the absorbing path; links[i] joins segs[i] to segs[i+1 mod m].
  std::vector<std::vector<Vertex>> segs;
  std::vector<std::vector<Vertex>> links;
  Bitset pool;
  Bitset reservoir;

  std::optional<std::vector<Vertex>> link(std::size_t i, const Bitset& allowed,
                                          std::optional<std::size_t> exact) {
    const auto& a = segs[i];
    const auto& b = segs[(i + 1) % segs.size()];
    ConnectOptions opt;
    opt.max_inner = params.max_inner;
    opt.budget = params.connect_budget;
    opt.seed = rng.next();
    opt.exact_inner = exact;
    auto res = connect(H, {a[a.size() - 2], a.back()}, {b[0], b[1]}, allowed, opt);
    tr.connect_expansions += res.expansions;
    if (!res.path) return std::nullopt;
    const auto& pv = res.path->vertices;
    return std::vector<Vertex>(pv.begin() + 2, pv.end() - 2);
  }

  std::optional<std::vector<Vertex>> link_any(std::size_t i) {
    std::vector<Bitset> tiers;
    Bitset r = reservoir;
    r &= pool;
    if (r.any()) tiers.push_back(r);
    tiers.push_back(pool);
    for (const auto& allowed : tiers) {
      if (params.mode == HamiltonMode::ee)
        for (std::size_t l : {5, 6, 7})
          if (l <= params.max_inner && allowed.count() >= l)
            if (auto p = link(i, allowed, l)) return p;
      if (auto p = link(i, allowed, std::nullopt)) return p;
    }
    return std::nullopt;
  }

  void take(const std::vector<Vertex>& vs) {
    for (auto v : vs) pool.reset(v);
  }
  void give(const std::vector<Vertex>& vs) {
    for (auto v : vs) pool.set(v);
  }

  /// Links every gap in order; unlinkable cover paths get trimmed, then dissolved.
  bool link_all() {
    links.assign(segs.size(), {});
    std::size_t i = 0;
    while (i < segs.size()) {
      const std::size_t j = (i + 1) % segs.size();
      if (auto p = link_any(i)) {
        take(*p);
        links[i] = std::move(*p);
        ++tr.connections;
        ++i;
        continue;
      }
      bool fixed = false;
      // Free a few vertices from the start of the next cover path.
      if (j != 0) {
        for (std::size_t q = 1; q <= 3 && !fixed && segs[j].size() >= 4 + q; ++q) {
          std::vector<Vertex> cut(segs[j].begin(), segs[j].begin() + static_cast<std::ptrdiff_t>(q));
          segs[j].erase(segs[j].begin(), segs[j].begin() + static_cast<std::ptrdiff_t>(q));
          give(cut);
          ++tr.trims;
          if (auto p = link_any(i)) {
            take(*p);
            links[i] = std::move(*p);
            ++tr.connections;
            fixed = true;
          } else {
            take(cut);
            segs[j].insert(segs[j].begin(), cut.begin(), cut.end());
            --tr.trims;
          }
        }
      }
      if (fixed) {
        ++i;
        continue;
      }
      // Dissolve the next cover path, or the current one when closing the cycle.
      const std::size_t victim = j != 0 ? j : i;
      if (victim == 0) return false;
      give(segs[victim]);
      segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(victim));
      links.erase(links.begin() + static_cast<std::ptrdiff_t>(victim));
      ++tr.dissolved;
      if (victim == i) {
        // Undo the link into the dissolved path and retry from its predecessor.
        --i;
        give(links[i]);
        links[i].clear();
        --tr.connections;
      }
    }
    return true;
  }

  /// Single-gap rewrites (optional end trim plus a relink of exact length)
  /// until the leftover is a multiple of 3 within absorber capacity.
  bool adjust(std::size_t capacity, bool gadget) {
    // With a gadget, a leftover of 1 or 2 (mod 3) grows by 8 or 16 inside absorb.
    auto cost = [&](std::size_t L) -> std::size_t {
      const std::size_t eff = gadget ? L + 8 * (L % 3) : L;
      std::size_t c = 0;
      if (eff > capacity) c += 1000 + 10 * (eff - capacity);
      if (eff % 3 != 0) c += 500;
      return c;
    };
    for (std::size_t round = 0; round < 12; ++round) {
      const std::size_t L = pool.count();
      const std::size_t cur = cost(L);
      if (cur == 0) return true;
      struct Cand {
        std::size_t gap, trim, len, newL, cost;
        double pref;
      };
      std::vector<Cand> cands;
      for (std::size_t g = 0; g < segs.size(); ++g) {
        const std::size_t old = links[g].size();
        for (std::size_t q = 0; q <= 2; ++q) {
          if (q > 0 && (g == 0 || segs[g].size() < 4 + q)) continue;
          const std::size_t avail = L + q + old;
          for (std::size_t l = 1; l <= params.max_inner && l <= avail; ++l) {
            if (q == 0 && l == old) continue;
            const std::size_t nl = avail - l;
            double pref = static_cast<double>(l) / 100.0;
            if (params.mode == HamiltonMode::ev) {
              if (q == 0 && l % 3 != old % 3) pref += 2.0;
            } else {
              if (q > 0) pref += 2.0;
              if (l < 5 || l > 7) pref += 1.0;
            }
            const std::size_t c = cost(nl);
            if (c < cur) cands.push_back({g, q, l, nl, c, pref});
          }
        }
      }
      std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        return a.cost != b.cost ? a.cost < b.cost : a.pref < b.pref;
      });
      bool progressed = false;
      std::size_t attempts = 0;
      for (const auto& c : cands) {
        if (++attempts > 40) break;
        std::vector<Vertex> cut;
        if (c.trim > 0) {
          auto& s = segs[c.gap];
          cut.assign(s.end() - static_cast<std::ptrdiff_t>(c.trim), s.end());
          s.resize(s.size() - c.trim);
          give(cut);
        }
        const auto old = links[c.gap];
        give(old);
        if (auto p = link(c.gap, pool, c.len)) {
          take(*p);
          links[c.gap] = std::move(*p);
          if (c.trim > 0) ++tr.trims;
          ++tr.adjustments;
          progressed = true;
          break;
        }
        take(old);
        if (c.trim > 0) {
          take(cut);
          segs[c.gap].insert(segs[c.gap].end(), cut.begin(), cut.end());
        }
      }
      if (!progressed) return false;
    }
    return cost(pool.count()) == 0;
  }
};

}  // namespace detail

inline HamiltonResult find_tight_hamilton(const Hypergraph3& H, const PipelineParams& params) {
  params.validate();
  const std::size_t n = H.n();
  if (n < 12) throw PreconditionError("find_tight_hamilton needs n >= 12; use the oracle below that");
  HamiltonResult out;
  const std::size_t attempts = std::max<std::size_t>(1, params.retries);
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    AttemptTrace tr;
    tr.seed = mix_seed(params.seed, attempt);
    auto fail = [&](const std::string& stage, const std::string& diag) {
      tr.stage = stage;
      tr.diagnostic = diag;
      out.failing_stage = stage;
      out.trace.push_back(tr);
    };
    Rng rng(tr.seed);
    Bitset R(n);
    for (Vertex v = 0; v < n; ++v)
      if (rng.bernoulli(params.reservoir())) R.set(v);
    tr.reservoir = R.count();

    const auto build = build_absorbing_path(H, R, params, rng.next());
    tr.absorbers_target = build.absorbers_target;
    tr.absorbers_found = build.absorbers_found;
    tr.gadget = build.gadget_found;
    tr.connect_expansions += build.connect_expansions;
    if (!build.result) {
      fail(build.stage, build.diagnostic);
      continue;
    }
    const AbsorbingPath& ap = *build.result;
    tr.absorbing_length = ap.path.size();

    Bitset exclude = R;
    for (auto v : ap.path.vertices) exclude.set(v);
    const auto cover = almost_cover(H, params.beta, params.gamma, rng.next(), &exclude);
    tr.cover_paths = cover.paths.size();
    tr.uncovered = cover.uncovered.size();

    detail::Assembly as{H, params, Rng(rng.next()), tr, {}, {}, Bitset(n), R};
    as.segs.push_back(ap.path.vertices);
    for (const auto& p : cover.paths) as.segs.push_back(p.vertices);
    as.pool = R;
    for (auto v : cover.uncovered) as.pool.set(v);
    if (!as.link_all()) {
      fail("connection", "could not close the cycle through the absorbing path");
      continue;
    }
    const bool gadget = ap.gadget.has_value() && ap.gadget_layers == 4;
    if (!as.adjust(3 * ap.absorbers.size(), gadget)) {
      fail("leftover", std::to_string(as.pool.count()) + " leftover vertices for capacity " +
                           std::to_string(3 * ap.absorbers.size()));
      continue;
    }
    tr.leftover = as.pool.count();
    const auto absorbed = absorb(H, ap, as.pool.to_vector());
    if (!absorbed.path) {
      fail("absorb", absorbed.diagnostic);
      continue;
    }
    // Gadget layers dropped by absorb moved into the absorbed vertex set, so the
    // cycle is the absorbed path followed by every link and cover path.
    std::vector<Vertex> cyc = absorbed.path->vertices;
    for (std::size_t i = 0; i < as.segs.size(); ++i) {
      cyc.insert(cyc.end(), as.links[i].begin(), as.links[i].end());
      if (i + 1 < as.segs.size()) cyc.insert(cyc.end(), as.segs[i + 1].begin(), as.segs[i + 1].end());
    }
    TightPath cycle{std::move(cyc), true};
    if (cycle.size() != n || !verify(H, cycle)) {
      fail("verification", "assembled sequence is not a tight Hamilton cycle");
      continue;
    }
    out.trace.push_back(tr);
    out.cycle = std::move(cycle);
    out.failing_stage.clear();
    return out;
  }
  return out;
}

}  // namespace hyperham
