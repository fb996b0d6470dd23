#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperham/hypergraph.hpp"

namespace hyperham {

struct OracleLimits {
  std::size_t max_n_dp = 20;
  std::size_t max_n_exhaustive = 9;
};

struct PathCountLimits {
  std::size_t max_n = 14;
  std::size_t max_inner = 6;
};

namespace detail {

// Tight Hamilton cycles through 0 s ... u p with s < p. R[S][v] holds the
// bitmask of u such that some tight path 0, s, ..., u, v covers exactly S.
// S always contains 0 and s, so it is stored without those two bits.
class HamiltonDp {
 public:
  explicit HamiltonDp(const Hypergraph3& H) : H_(H), n_(H.n()) {
    nbr_.assign(n_ * n_, 0);
    for (Vertex a = 0; a < n_; ++a)
      for (Vertex b = 0; b < n_; ++b)
        if (a != b) nbr_[a * n_ + b] = static_cast<std::uint32_t>(H.nbr_bits(a, b)[0]);
  }

  std::optional<std::vector<Vertex>> solve(bool extract) {
    if (n_ < 4) return std::nullopt;
    const std::uint32_t full = (n_ == 32) ? ~0U : ((1U << n_) - 1);
    for (Vertex s = 1; s + 1 < n_; ++s) {
      if (H_.cod(0, s) == 0) continue;
      run(s);
      const std::uint32_t S = full;
      for (Vertex p = s + 1; p < n_; ++p) {
        const std::uint32_t us = at(S, p) & nbr(p, 0) & nbr_of_pair_with(p, 0, s);
        if (!us) continue;
        if (!extract) return std::vector<Vertex>{};
        return backtrack(s, p, static_cast<Vertex>(std::countr_zero(us)));
      }
    }
    return std::nullopt;
  }

 private:
  std::uint32_t nbr(Vertex a, Vertex b) const { return nbr_[a * n_ + b]; }
  // u qualifies when (p,0,s) is an edge; independent of u.
  std::uint32_t nbr_of_pair_with(Vertex p, Vertex z, Vertex s) const {
    return H_.has_edge(p, z, s) ? ~0U : 0U;
  }

  std::size_t index(std::uint32_t S) const {
    // drop bit 0 and bit s_
    const std::uint32_t low = (S >> 1) & ((1U << (s_ - 1)) - 1);
    const std::uint32_t high = S >> (s_ + 1);
    return (static_cast<std::size_t>(high) << (s_ - 1)) | low;
  }
  std::uint32_t& at(std::uint32_t S, Vertex v) { return R_[index(S) * n_ + v]; }

  void run(Vertex s) {
    s_ = s;
    const std::size_t states = std::size_t{1} << (n_ - 2);
    R_.assign(states * n_, 0);
    const std::uint32_t base = 1U | (1U << s);
    at(base, s) = 1U;
    // Enumerate S containing 0 and s in increasing order of the packed index,
    // which is increasing in S, so predecessors are always complete.
    for (std::size_t idx = 0; idx < states; ++idx) {
      const std::uint32_t low = static_cast<std::uint32_t>(idx) & ((1U << (s - 1)) - 1);
      const std::uint32_t high = static_cast<std::uint32_t>(idx >> (s - 1));
      const std::uint32_t S = base | (low << 1) | (high << (s + 1));
      const std::uint32_t* row = &R_[idx * n_];
      for (Vertex v = 0; v < n_; ++v) {
        const std::uint32_t us = row[v];
        if (!us) continue;
        for (Vertex w = 1; w < n_; ++w) {
          if ((S >> w) & 1U) continue;
          if (us & nbr(v, w)) at(S | (1U << w), w) |= 1U << v;
        }
      }
    }
  }

  std::vector<Vertex> backtrack(Vertex s, Vertex p, Vertex u) {
    std::vector<Vertex> rev{p, u};
    std::uint32_t S = (n_ == 32) ? ~0U : ((1U << n_) - 1);
    S &= ~(1U << p);
    Vertex cur = u, nxt = p;
    while (cur != s) {
      const std::uint32_t cands = at(S, cur) & nbr(cur, nxt);
      const auto t = static_cast<Vertex>(std::countr_zero(cands));
      S &= ~(1U << cur);
      nxt = cur;
      cur = t;
      rev.push_back(cur);
    }
    rev.push_back(0);
    return {rev.rbegin(), rev.rend()};
  }

  const Hypergraph3& H_;
  std::size_t n_;
  Vertex s_ = 1;
  std::vector<std::uint32_t> nbr_;
  std::vector<std::uint32_t> R_;
};

}  // namespace detail

inline bool has_tight_hamilton(const Hypergraph3& H, const OracleLimits& lim = {}) {
  if (H.n() > lim.max_n_dp)
    throw BudgetExceeded("oracle DP exceeds vertex cap (n <= " + std::to_string(lim.max_n_dp) + ")");
  return detail::HamiltonDp(H).solve(false).has_value();
}

inline std::optional<TightPath> extract_tight_hamilton(const Hypergraph3& H,
                                                       const OracleLimits& lim = {}) {
  if (H.n() > lim.max_n_dp)
    throw BudgetExceeded("oracle DP exceeds vertex cap (n <= " + std::to_string(lim.max_n_dp) + ")");
  auto seq = detail::HamiltonDp(H).solve(true);
  if (!seq) return std::nullopt;
  TightPath c{std::move(*seq), true};
  if (!verify(H, c)) throw std::logic_error("oracle extraction failed verification");
  return c;
}

/// Permutations starting at vertex 0, pruned at the first missing triple.
inline bool exhaustive_hamilton(const Hypergraph3& H, const OracleLimits& lim = {}) {
  const std::size_t n = H.n();
  if (n > lim.max_n_exhaustive)
    throw BudgetExceeded("exhaustive oracle exceeds vertex cap (n <= " +
                         std::to_string(lim.max_n_exhaustive) + ")");
  if (n < 4) return false;
  std::vector<Vertex> seq{0};
  std::vector<char> used(n, 0);
  used[0] = 1;
  auto dfs = [&](auto&& self) -> bool {
    if (seq.size() == n)
      return H.has_edge(seq[n - 2], seq[n - 1], seq[0]) && H.has_edge(seq[n - 1], seq[0], seq[1]);
    for (Vertex v = 1; v < n; ++v) {
      if (used[v]) continue;
      const std::size_t k = seq.size();
      if (k >= 2 && !H.has_edge(seq[k - 2], seq[k - 1], v)) continue;
      used[v] = 1;
      seq.push_back(v);
      if (self(self)) return true;
      seq.pop_back();
      used[v] = 0;
    }
    return false;
  };
  return dfs(dfs);
}

/// Exact number of tight paths from (x,y) to (z,w) with exactly `inner` inner vertices.
inline std::uint64_t count_paths_between(const Hypergraph3& H, VertexPair from, VertexPair to,
                                         std::size_t inner, const PathCountLimits& lim = {}) {
  const std::size_t n = H.n();
  if (n > lim.max_n || inner > lim.max_inner)
    throw BudgetExceeded("count_paths_between exceeds budget (n <= " + std::to_string(lim.max_n) +
                         ", inner <= " + std::to_string(lim.max_inner) + ")");
  const Vertex ends[4] = {from.first, from.second, to.first, to.second};
  for (int i = 0; i < 4; ++i) {
    H.check_vertex(ends[i]);
    for (int j = i + 1; j < 4; ++j)
      if (ends[i] == ends[j]) throw PreconditionError("count_paths_between needs four distinct endpoints");
  }
  std::vector<char> used(n, 0);
  for (auto v : ends) used[v] = 1;
  std::vector<Vertex> seq{from.first, from.second};
  std::uint64_t count = 0;
  auto dfs = [&](auto&& self, std::size_t k) -> void {
    const std::size_t m = seq.size();
    if (k == inner) {
      if (H.has_edge(seq[m - 2], seq[m - 1], to.first) && H.has_edge(seq[m - 1], to.first, to.second))
        ++count;
      return;
    }
    for (auto v : H.neighbors(seq[m - 2], seq[m - 1])) {
      if (used[v]) continue;
      used[v] = 1;
      seq.push_back(v);
      self(self, k + 1);
      seq.pop_back();
      used[v] = 0;
    }
  };
  dfs(dfs, 0);
  return count;
}

}  // namespace hyperham
