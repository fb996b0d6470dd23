#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperham/bitset.hpp"
#include "hyperham/types.hpp"

namespace hyperham {

/**
 * Immutable 3-uniform hypergraph on vertices 0..n-1.
 *
 * Edges are stored as sorted triples in lexicographic order. Two indices are
 * built eagerly: for every ordered pair (u,v) a bit row of N(u,v) (constant
 * time membership and fast set algebra), and for every unordered pair the
 * sorted neighbour list. The vertex link N(v) is kept as a sorted list of
 * unordered pairs.
 */
class Hypergraph3 {
 public:
  Hypergraph3() = default;

  /// Throws std::invalid_argument on an out-of-range or repeated vertex.
  static Hypergraph3 from_edges(std::size_t n, std::span<const Triple> triples) {
    std::vector<Triple> canon;
    canon.reserve(triples.size());
    for (const auto& t : triples) {
      for (auto v : t) {
        if (v >= n)
          throw std::invalid_argument("vertex " + std::to_string(v) + " out of range for n=" +
                                      std::to_string(n));
      }
      if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
        throw std::invalid_argument("repeated vertex in triple (" + std::to_string(t[0]) + "," +
                                    std::to_string(t[1]) + "," + std::to_string(t[2]) + ")");
      canon.push_back(sorted_triple(t[0], t[1], t[2]));
    }
    std::sort(canon.begin(), canon.end());
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
    return Hypergraph3(n, std::move(canon));
  }

  static Hypergraph3 from_edges(std::size_t n, std::initializer_list<Triple> triples) {
    return from_edges(n, std::span<const Triple>(triples.begin(), triples.size()));
  }

  std::size_t n() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Triple>& edges() const { return edges_; }
  std::size_t words() const { return words_; }

  bool has_edge(Vertex a, Vertex b, Vertex c) const {
    if (a == b || b == c || a == c) return false;
    return (pair_bits_[row(a, b) + (c >> 6)] >> (c & 63)) & 1U;
  }

  /// N(u,v) as a bit row; u != v.
  std::span<const std::uint64_t> nbr_bits(Vertex u, Vertex v) const {
    return {pair_bits_.data() + row(u, v), words_};
  }

  /// N(u,v) as a sorted list; u != v.
  std::span<const Vertex> neighbors(Vertex u, Vertex v) const {
    const std::size_t k = pair_key(u, v);
    return {pair_nbrs_.data() + pair_off_[k], pair_off_[k + 1] - pair_off_[k]};
  }

  /// N(v): the unordered pairs {a,b} (a<b) with {v,a,b} an edge.
  std::span<const VertexPair> link(Vertex v) const {
    return {link_.data() + link_off_[v], link_off_[v + 1] - link_off_[v]};
  }

  std::size_t degree(Vertex v) const {
    check_vertex(v);
    return link_off_[v + 1] - link_off_[v];
  }

  std::size_t codegree(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("codegree needs two distinct vertices");
    return cod(u, v);
  }

  /// Unchecked codegree for hot loops.
  std::size_t cod(Vertex u, Vertex v) const {
    const std::size_t k = pair_key(u, v);
    return pair_off_[k + 1] - pair_off_[k];
  }

  std::size_t min_degree() const { return min_degree_; }
  std::size_t min_codegree() const { return min_codegree_; }

  void check_vertex(Vertex v) const {
    if (v >= n_)
      throw std::out_of_range("vertex " + std::to_string(v) + " out of range for n=" +
                              std::to_string(n_));
  }

  /// Sub-hypergraph on the same vertex set keeping only edges inside `keep`.
  Hypergraph3 induced(const Bitset& keep) const {
    std::vector<Triple> kept;
    for (const auto& e : edges_)
      if (keep.test(e[0]) && keep.test(e[1]) && keep.test(e[2])) kept.push_back(e);
    return Hypergraph3(n_, std::move(kept));
  }

  bool operator==(const Hypergraph3& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  Hypergraph3(std::size_t n, std::vector<Triple> sorted_unique)
      : n_(n), words_(words_for(n)), edges_(std::move(sorted_unique)) {
    build_indices();
  }

  std::size_t row(Vertex u, Vertex v) const { return (std::size_t{u} * n_ + v) * words_; }
  std::size_t pair_key(Vertex u, Vertex v) const {
    return u < v ? std::size_t{u} * n_ + v : std::size_t{v} * n_ + u;
  }

  void build_indices() {
    pair_bits_.assign(n_ * n_ * words_, 0);
    std::vector<std::size_t> pair_count(n_ * n_ + 1, 0);
    std::vector<std::size_t> link_count(n_ + 1, 0);
    for (const auto& [a, b, c] : edges_) {
      ++pair_count[pair_key(a, b)];
      ++pair_count[pair_key(a, c)];
      ++pair_count[pair_key(b, c)];
      ++link_count[a];
      ++link_count[b];
      ++link_count[c];
    }
    pair_off_.assign(n_ * n_ + 1, 0);
    for (std::size_t k = 0; k < n_ * n_; ++k) pair_off_[k + 1] = pair_off_[k] + pair_count[k];
    link_off_.assign(n_ + 1, 0);
    for (std::size_t v = 0; v < n_; ++v) link_off_[v + 1] = link_off_[v] + link_count[v];

    pair_nbrs_.resize(pair_off_.back());
    link_.resize(link_off_.back());
    std::vector<std::size_t> pair_fill(pair_off_.begin(), pair_off_.end() - 1);
    std::vector<std::size_t> link_fill(link_off_.begin(), link_off_.end() - 1);

    auto add_pair = [&](Vertex u, Vertex v, Vertex w) {
      pair_nbrs_[pair_fill[pair_key(u, v)]++] = w;
      pair_bits_[row(u, v) + (w >> 6)] |= std::uint64_t{1} << (w & 63);
      pair_bits_[row(v, u) + (w >> 6)] |= std::uint64_t{1} << (w & 63);
    };
    // Edges are lexicographically sorted, so every list below fills in sorted order
    // except pair lists, which get a final sort.
    for (const auto& [a, b, c] : edges_) {
      add_pair(a, b, c);
      add_pair(a, c, b);
      add_pair(b, c, a);
      link_[link_fill[a]++] = {b, c};
      link_[link_fill[b]++] = {a, c};
      link_[link_fill[c]++] = {a, b};
    }
    for (std::size_t k = 0; k < n_ * n_; ++k)
      std::sort(pair_nbrs_.begin() + static_cast<std::ptrdiff_t>(pair_off_[k]),
                pair_nbrs_.begin() + static_cast<std::ptrdiff_t>(pair_off_[k + 1]));
    for (std::size_t v = 0; v < n_; ++v)
      std::sort(link_.begin() + static_cast<std::ptrdiff_t>(link_off_[v]),
                link_.begin() + static_cast<std::ptrdiff_t>(link_off_[v + 1]));

    min_degree_ = 0;
    min_codegree_ = 0;
    if (n_ > 0) {
      min_degree_ = std::numeric_limits<std::size_t>::max();
      for (std::size_t v = 0; v < n_; ++v) min_degree_ = std::min(min_degree_, link_count[v]);
    }
    if (n_ > 1) {
      min_codegree_ = std::numeric_limits<std::size_t>::max();
      for (Vertex u = 0; u < n_; ++u)
        for (Vertex v = u + 1; v < n_; ++v) min_codegree_ = std::min(min_codegree_, cod(u, v));
    }
  }

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<Triple> edges_;
  std::vector<std::uint64_t> pair_bits_;
  std::vector<std::size_t> pair_off_{0};
  std::vector<Vertex> pair_nbrs_;
  std::vector<std::size_t> link_off_{0};
  std::vector<VertexPair> link_;
  std::size_t min_degree_ = 0;
  std::size_t min_codegree_ = 0;
};

/// A set of vertex pairs with distinct endpoints; unordered sets store (min,max).
class PairSet {
 public:
  PairSet() = default;
  explicit PairSet(bool ordered) : ordered_(ordered) {}
  PairSet(bool ordered, std::vector<VertexPair> members) : ordered_(ordered) {
    for (auto& p : members) {
      if (p.first == p.second)
        throw std::invalid_argument("pair (" + std::to_string(p.first) + "," +
                                    std::to_string(p.second) + ") repeats a vertex");
      if (!ordered_ && p.first > p.second) std::swap(p.first, p.second);
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    members_ = std::move(members);
  }

  /// Every pair of distinct vertices of 0..n-1.
  static PairSet all(std::size_t n, bool ordered) {
    std::vector<VertexPair> m;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v)
        if (u != v && (ordered || u < v)) m.emplace_back(u, v);
    return PairSet(ordered, std::move(m));
  }

  bool ordered() const { return ordered_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<VertexPair>& members() const { return members_; }

  bool contains(Vertex u, Vertex v) const {
    VertexPair p{u, v};
    if (!ordered_ && p.first > p.second) std::swap(p.first, p.second);
    return std::binary_search(members_.begin(), members_.end(), p);
  }

  /// n*n membership matrix; unordered sets fill both orientations.
  std::vector<char> matrix(std::size_t n) const {
    std::vector<char> m(n * n, 0);
    for (auto [u, v] : members_) {
      m[u * n + v] = 1;
      if (!ordered_) m[v * n + u] = 1;
    }
    return m;
  }

  bool operator==(const PairSet& other) const = default;

 private:
  bool ordered_ = true;
  std::vector<VertexPair> members_;
};

/// An ordered vertex sequence; tightness is checked by verify_tight_path/cycle.
struct TightPath {
  std::vector<Vertex> vertices;
  bool is_cycle = false;

  std::size_t size() const { return vertices.size(); }
  VertexPair start_pair() const { return {vertices[0], vertices[1]}; }
  VertexPair end_pair() const {
    return {vertices[vertices.size() - 2], vertices[vertices.size() - 1]};
  }
  bool operator==(const TightPath& other) const = default;
};

/**
 * First violation of the tight path (or cycle) property, or nullopt when the
 * sequence is valid. Paths need at least 3 vertices, cycles at least 4.
 */
inline std::optional<std::string> tight_violation(const Hypergraph3& H,
                                                  std::span<const Vertex> seq, bool cycle) {
  const std::size_t len = seq.size();
  if (len < 3) return "sequence has fewer than 3 vertices";
  if (cycle && len < 4) return "cycle has fewer than 4 vertices";
  Bitset seen(H.n());
  for (std::size_t i = 0; i < len; ++i) {
    if (seq[i] >= H.n()) return "vertex " + std::to_string(seq[i]) + " out of range";
    if (seen.test(seq[i])) return "vertex " + std::to_string(seq[i]) + " repeats";
    seen.set(seq[i]);
  }
  const std::size_t triples = cycle ? len : len - 2;
  for (std::size_t i = 0; i < triples; ++i) {
    const Vertex a = seq[i], b = seq[(i + 1) % len], c = seq[(i + 2) % len];
    if (!H.has_edge(a, b, c))
      return "triple at position " + std::to_string(i) + " (" + std::to_string(a) + "," +
             std::to_string(b) + "," + std::to_string(c) + ") is not an edge";
  }
  return std::nullopt;
}

inline bool verify_tight_path(const Hypergraph3& H, std::span<const Vertex> seq) {
  return !tight_violation(H, seq, false);
}

inline bool verify_tight_cycle(const Hypergraph3& H, std::span<const Vertex> seq) {
  return !tight_violation(H, seq, true);
}

inline bool verify(const Hypergraph3& H, const TightPath& p) {
  return !tight_violation(H, p.vertices, p.is_cycle);
}

/// Ordered pairs (v1,v2) in V1 x V2 whose unordered pair lies in the shadow of H.
inline PairSet shadow_between(const Hypergraph3& H, std::span<const Vertex> V1,
                              std::span<const Vertex> V2) {
  Bitset in1(H.n());
  for (auto v : V1) {
    H.check_vertex(v);
    in1.set(v);
  }
  for (auto v : V2) {
    H.check_vertex(v);
    if (in1.test(v))
      throw std::invalid_argument("shadow_between: vertex " + std::to_string(v) +
                                  " lies in both sets");
  }
  std::vector<VertexPair> out;
  for (auto a : V1)
    for (auto b : V2)
      if (H.cod(a, b) > 0) out.emplace_back(a, b);
  return PairSet(true, std::move(out));
}

}  // namespace hyperham
