#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "hyperham/bitset.hpp"
#include "hyperham/hypergraph.hpp"
#include "hyperham/rng.hpp"

namespace hyperham {

struct ConnectOptions {
  std::size_t min_inner = 1;
  std::size_t max_inner = 15;
  /// When set, only this exact number of inner vertices is tried.
  std::optional<std::size_t> exact_inner;
  /// Node expansions across all lengths.
  std::uint64_t budget = 200000;
  std::uint64_t seed = 0;
};

struct ConnectResult {
  std::optional<TightPath> path;
  std::uint64_t expansions = 0;
  bool budget_exhausted = false;
  std::size_t inner = 0;
};

namespace detail {

class Connector {
 public:
  Connector(const Hypergraph3& H, VertexPair from, VertexPair to, const Bitset& allowed,
            const ConnectOptions& opt)
      : H_(H), from_(from), to_(to), opt_(opt), rng_(opt.seed), pool_(allowed) {
    for (Vertex v : {from.first, from.second, to.first, to.second}) pool_.reset(v);
  }

  ConnectResult run() {
    ConnectResult res;
    std::vector<std::size_t> lengths;
    if (opt_.exact_inner) {
      lengths.push_back(*opt_.exact_inner);
    } else {
      for (std::size_t l = opt_.min_inner; l <= opt_.max_inner; ++l) lengths.push_back(l);
    }
    for (auto l : lengths) {
      std::optional<std::vector<Vertex>> inner = l <= 3 ? search_direct(l) : search_meet(l);
      if (inner) {
        std::vector<Vertex> seq{from_.first, from_.second};
        seq.insert(seq.end(), inner->begin(), inner->end());
        seq.push_back(to_.first);
        seq.push_back(to_.second);
        TightPath p{std::move(seq), false};
        if (!verify(H_, p)) throw std::logic_error("connect produced an invalid path");
        res.path = std::move(p);
        res.inner = l;
        break;
      }
      if (exhausted_) break;
    }
    res.expansions = expansions_;
    res.budget_exhausted = exhausted_;
    return res;
  }

 private:
  bool spend() {
    if (expansions_ >= opt_.budget) {
      exhausted_ = true;
      return false;
    }
    ++expansions_;
    return true;
  }

  /// Candidates in N(a,b) ∩ pool ∖ used, by descending codegree with b, seeded tie-break.
  std::vector<Vertex> successors(Vertex a, Vertex b, const Bitset& used, const Bitset* also) {
    Bitset c(H_.n(), H_.nbr_bits(a, b));
    c &= pool_;
    c.subtract(used);
    if (also) c &= *also;
    auto vs = c.to_vector();
    rng_.shuffle(vs);
    std::stable_sort(vs.begin(), vs.end(),
                     [&](Vertex x, Vertex y) { return H_.cod(b, x) > H_.cod(b, y); });
    return vs;
  }

  std::optional<std::vector<Vertex>> search_direct(std::size_t l) {
    const Vertex z = to_.first, w = to_.second;
    if (l == 0) {
      if (H_.has_edge(from_.first, from_.second, z) && H_.has_edge(from_.second, z, w))
        return std::vector<Vertex>{};
      return std::nullopt;
    }
    const Bitset last(H_.n(), H_.nbr_bits(z, w));
    std::vector<Vertex> seq{from_.first, from_.second};
    Bitset used(H_.n());
    std::optional<std::vector<Vertex>> found;
    auto dfs = [&](auto&& self, std::size_t k) -> bool {
      if (k == l) {
        const Vertex a = seq[seq.size() - 2], b = seq.back();
        if (H_.has_edge(a, b, z) && H_.has_edge(b, z, w)) {
          found.emplace(seq.begin() + 2, seq.end());
          return true;
        }
        return false;
      }
      if (!spend()) return false;
      const auto cands =
          successors(seq[seq.size() - 2], seq.back(), used, k + 1 == l ? &last : nullptr);
      for (auto v : cands) {
        seq.push_back(v);
        used.set(v);
        if (self(self, k + 1)) return true;
        used.reset(v);
        seq.pop_back();
        if (exhausted_) return false;
      }
      return false;
    };
    dfs(dfs, 0);
    return found;
  }

  // Inner vertices v1..vl. The forward half stores prefixes v1..va keyed by
  // (v_{a-1}, v_a); the backward half grows v_l, v_{l-1}, ... down to v_{a-1}
  // from (w, z) and looks up the same pair. Every consecutive triple lies in
  // one of the two halves.
  std::optional<std::vector<Vertex>> search_meet(std::size_t l) {
    const std::size_t a = (l + 1) / 2;
    std::map<VertexPair, std::vector<std::vector<Vertex>>> table;
    {
      std::vector<Vertex> seq{from_.first, from_.second};
      Bitset used(H_.n());
      auto fwd = [&](auto&& self, std::size_t k) -> void {
        if (k == a) {
          table[{seq[seq.size() - 2], seq.back()}].emplace_back(seq.begin() + 2, seq.end());
          return;
        }
        if (!spend()) return;
        for (auto v : successors(seq[seq.size() - 2], seq.back(), used, nullptr)) {
          seq.push_back(v);
          used.set(v);
          self(self, k + 1);
          used.reset(v);
          seq.pop_back();
          if (exhausted_) return;
        }
      };
      fwd(fwd, 0);
    }
    if (table.empty()) return std::nullopt;

    const std::size_t back_len = l - a + 2;  // v_l down to v_{a-1}
    std::vector<Vertex> rev{to_.second, to_.first};
    Bitset used(H_.n());
    std::optional<std::vector<Vertex>> found;
    auto bwd = [&](auto&& self, std::size_t k) -> bool {
      if (k == back_len) {
        // rev = w z v_l ... v_a v_{a-1}
        const VertexPair key{rev.back(), rev[rev.size() - 2]};
        const auto it = table.find(key);
        if (it == table.end()) return false;
        for (const auto& pre : it->second) {
          if (!spend()) return false;
          bool clash = false;
          for (std::size_t i = 0; i + 2 < pre.size() && !clash; ++i) clash = used.test(pre[i]);
          if (clash) continue;
          std::vector<Vertex> inner(pre.begin(), pre.end());
          for (std::size_t i = rev.size() - 2; i-- > 2;) inner.push_back(rev[i]);
          found = std::move(inner);
          return true;
        }
        return false;
      }
      if (!spend()) return false;
      for (auto v : successors(rev[rev.size() - 2], rev.back(), used, nullptr)) {
        rev.push_back(v);
        used.set(v);
        if (self(self, k + 1)) return true;
        used.reset(v);
        rev.pop_back();
        if (exhausted_) return false;
      }
      return false;
    };
    bwd(bwd, 0);
    return found;
  }

  const Hypergraph3& H_;
  VertexPair from_, to_;
  const ConnectOptions& opt_;
  Rng rng_;
  Bitset pool_;
  std::uint64_t expansions_ = 0;
  bool exhausted_ = false;
};

}  // namespace detail

/**
 * Tight path from_pair, v1..vl, to_pair with inner vertices drawn from
 * `allowed`. Sound but incomplete: a returned path always verifies, while
 * absence only means nothing was found within the expansion budget.
 */
inline ConnectResult connect(const Hypergraph3& H, VertexPair from, VertexPair to,
                             const Bitset& allowed, const ConnectOptions& opt = {}) {
  for (Vertex v : {from.first, from.second, to.first, to.second}) H.check_vertex(v);
  {
    const Vertex e[4] = {from.first, from.second, to.first, to.second};
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (e[i] == e[j]) throw PreconditionError("connect needs four distinct endpoint vertices");
  }
  if (allowed.size() != H.n()) throw PreconditionError("connect: allowed set has the wrong size");
  return detail::Connector(H, from, to, allowed, opt).run();
}

}  // namespace hyperham
