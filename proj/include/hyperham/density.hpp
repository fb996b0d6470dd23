#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hyperham/bitset.hpp"
#include "hyperham/hypergraph.hpp"
#include "hyperham/rng.hpp"

namespace hyperham {

enum class Notion { vvv, ev, ee };
enum class Mode { exact, heuristic, sampled };

inline const char* notion_name(Notion n) {
  switch (n) {
    case Notion::vvv: return "vvv";
    case Notion::ev: return "ev";
    case Notion::ee: return "ee";
  }
  return "?";
}
inline const char* mode_name(Mode m) {
  switch (m) {
    case Mode::exact: return "exact";
    case Mode::heuristic: return "heuristic";
    case Mode::sampled: return "sampled";
  }
  return "?";
}
inline Notion parse_notion(const std::string& s) {
  if (s == "vvv") return Notion::vvv;
  if (s == "ev") return Notion::ev;
  if (s == "ee") return Notion::ee;
  throw std::invalid_argument("unknown notion '" + s + "'");
}
inline Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::exact;
  if (s == "heuristic") return Mode::heuristic;
  if (s == "sampled") return Mode::sampled;
  throw std::invalid_argument("unknown mode '" + s + "'");
}

inline constexpr std::size_t kExactEvMaxN = 24;
inline constexpr std::size_t kExactVvvMaxN = 11;
inline constexpr std::size_t kExactEeMaxN = 5;

using Wide = __int128;

/// d as num / 2^shift. Every double in [0,1] above 2^-27 is represented exactly.
struct Dyadic {
  Wide num = 0;
  int shift = 0;

  static Dyadic from(double d) {
    if (!(d >= 0.0 && d <= 1.0)) throw PreconditionError("density d must lie in [0,1]");
    if (d == 0.0) return {0, 0};
    constexpr int kMaxShift = 80;
    int e = 0;
    const double f = std::frexp(d, &e);  // d = f * 2^e, f in [0.5, 1)
    auto m = static_cast<std::int64_t>(std::ldexp(f, 53));
    int s = 53 - e;
    if (s > kMaxShift) {
      m = static_cast<std::int64_t>(std::llround(std::ldexp(d, kMaxShift)));
      s = kMaxShift;
    }
    while (s > 0 && (m & 1) == 0) {
      m >>= 1;
      --s;
    }
    return {static_cast<Wide>(m), s};
  }

  /// (e - d * product) * 2^shift
  Wide scaled(std::uint64_t e, std::uint64_t product) const {
    return (static_cast<Wide>(e) << shift) - num * static_cast<Wide>(product);
  }
  double unscale(Wide v) const {
    return static_cast<double>(static_cast<long double>(v) / std::ldexp(1.0L, shift));
  }
};

struct DeviationReport {
  Notion notion = Notion::ev;
  Mode mode = Mode::exact;
  double d = 0.0;
  std::size_t n = 0;
  /// e(witness) - d * size_product; zero at the empty witness, so never positive.
  double raw = 0.0;
  double rho_hat = 0.0;
  bool exact = false;
  std::uint64_t e = 0;
  std::uint64_t size_product = 0;
  std::vector<Vertex> X, Y, Z;
  std::vector<VertexPair> P, Q;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  /// Sampled mode only: the Monte-Carlo estimate that ranked the winning witness.
  double estimate = 0.0;
  std::uint64_t evaluations = 0;
};

struct Incidence {
  std::uint64_t e = 0;
  std::uint64_t product = 0;
};

// ---------------------------------------------------------------------------
// Direct recounts on an explicit witness.

/// e(X,Y,Z) counts ordered (x,y,z) in X*Y*Z spanning an edge; product |X||Y||Z|.
inline Incidence vvv_count(const Hypergraph3& H, std::span<const Vertex> X,
                           std::span<const Vertex> Y, std::span<const Vertex> Z) {
  const Bitset zb = to_bitset(H.n(), Z);
  std::uint64_t e = 0;
  for (auto x : X)
    for (auto y : Y)
      if (x != y) e += intersection_count(H.nbr_bits(x, y), zb.words());
  return {e, static_cast<std::uint64_t>(X.size()) * Y.size() * Z.size()};
}

/// e(X,P) counts (x,(y,z)) with x in X, (y,z) in P spanning an edge; product |X||P|.
inline Incidence ev_count(const Hypergraph3& H, std::span<const Vertex> X,
                          std::span<const VertexPair> P) {
  const Bitset xb = to_bitset(H.n(), X);
  std::uint64_t e = 0;
  for (const auto& [y, z] : P) e += intersection_count(H.nbr_bits(y, z), xb.words());
  return {e, static_cast<std::uint64_t>(X.size()) * P.size()};
}

/// K_ee(Q,P) = {((x,y),(y,z)) in P*Q : x != z}; e counts members spanning an edge.
inline Incidence ee_count(const Hypergraph3& H, std::span<const VertexPair> P,
                          std::span<const VertexPair> Q) {
  const std::size_t n = H.n();
  std::vector<std::vector<Vertex>> into(n);  // into[y] = {x : (x,y) in P}
  for (const auto& [x, y] : P) into[y].push_back(x);
  Incidence r;
  for (const auto& [y, z] : Q)
    for (auto x : into[y]) {
      if (x == z) continue;
      ++r.product;
      if (H.has_edge(x, y, z)) ++r.e;
    }
  return r;
}

namespace detail {

inline std::vector<Vertex> mask_vertices(std::uint64_t mask) {
  std::vector<Vertex> out;
  while (mask) {
    out.push_back(static_cast<Vertex>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

inline void finish(DeviationReport& r, const Dyadic& dy, Incidence inc) {
  r.e = inc.e;
  r.size_product = inc.product;
  r.raw = dy.unscale(dy.scaled(inc.e, inc.product));
  const double n3 = static_cast<double>(r.n) * static_cast<double>(r.n) * static_cast<double>(r.n);
  r.rho_hat = (r.n == 0 || r.raw >= 0.0) ? 0.0 : -r.raw / n3;
}

inline std::vector<VertexPair> distinct_pairs(std::size_t n) {
  std::vector<VertexPair> out;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b)
      if (a != b) out.push_back({a, b});
  return out;
}

// Best responses. Each returns the optimal free component given the others.

/// P minimising e(X,P) - d|X||P|: the pairs with negative margin.
inline std::vector<VertexPair> ev_best_pairs(const Hypergraph3& H, const Dyadic& dy,
                                             const Bitset& X) {
  const auto sx = static_cast<std::uint64_t>(X.count());
  std::vector<VertexPair> P;
  for (Vertex y = 0; y < H.n(); ++y)
    for (Vertex z = 0; z < H.n(); ++z) {
      if (y == z) continue;
      if (dy.scaled(intersection_count(H.nbr_bits(y, z), X.words()), sx) < 0) P.push_back({y, z});
    }
  return P;
}

/// Objective of the best P for X, scaled by 2^shift.
inline Wide ev_objective(const Hypergraph3& H, const Dyadic& dy, const Bitset& X) {
  const auto sx = static_cast<std::uint64_t>(X.count());
  Wide total = 0;
  for (Vertex y = 0; y < H.n(); ++y)
    for (Vertex z = y + 1; z < H.n(); ++z) {
      const Wide m = dy.scaled(intersection_count(H.nbr_bits(y, z), X.words()), sx);
      if (m < 0) total += 2 * m;
    }
  return total;
}

/// Third set minimising e given two of X,Y,Z (the count is symmetric in roles).
inline Bitset vvv_best_third(const Hypergraph3& H, const Dyadic& dy, const Bitset& A,
                             const Bitset& B) {
  const auto prod = static_cast<std::uint64_t>(A.count() * B.count());
  const auto av = A.to_vector();
  Bitset out(H.n());
  for (Vertex z = 0; z < H.n(); ++z) {
    std::uint64_t c = 0;
    for (auto a : av)
      if (a != z) c += intersection_count(H.nbr_bits(a, z), B.words());
    if (dy.scaled(c, prod) < 0) out.set(z);
  }
  return out;
}

/// Q minimising the ee objective for fixed P (or P for fixed Q with reversed = true).
inline std::vector<char> ee_best_response(const Hypergraph3& H, const Dyadic& dy,
                                          const std::vector<char>& fixed, bool reversed) {
  const std::size_t n = H.n();
  std::vector<char> out(n * n, 0);
  // Q side: include (y,z) iff sum over x with (x,y) in P, x != z of (edge - d) < 0.
  // P side: include (x,y) iff sum over z with (y,z) in Q, z != x of (edge - d) < 0.
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b) {
      if (a == b) continue;
      std::uint64_t e = 0, k = 0;
      for (Vertex w = 0; w < n; ++w) {
        if (w == a || w == b) continue;
        const bool in = reversed ? fixed[b * n + w] : fixed[w * n + a];
        if (!in) continue;
        ++k;
        if (H.has_edge(a, b, w)) ++e;
      }
      if (dy.scaled(e, k) < 0) out[a * n + b] = 1;
    }
  return out;
}

inline std::vector<VertexPair> pairs_of(const std::vector<char>& m, std::size_t n) {
  std::vector<VertexPair> out;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b)
      if (m[a * n + b]) out.push_back({a, b});
  return out;
}

inline Bitset random_subset(std::size_t n, double p, Rng& rng) {
  Bitset b(n);
  for (std::size_t v = 0; v < n; ++v)
    if (rng.bernoulli(p)) b.set(v);
  return b;
}

inline Bitset complement(const Bitset& b) {
  Bitset out = Bitset::full(b.size());
  out.subtract(b);
  return out;
}

}  // namespace detail

struct DensityOptions {
  std::uint64_t seed = 0;
  /// Sampled mode: total Monte-Carlo draws spread over the candidate witnesses.
  std::uint64_t samples = 100000;
  /// Heuristic mode: random restarts beyond the sampled starting point.
  std::size_t restarts = 32;
  std::size_t max_rounds = 50;
};

// ---------------------------------------------------------------------------
// ev

inline DeviationReport ev_exact(const Hypergraph3& H, double d) {
  const std::size_t n = H.n();
  if (n > kExactEvMaxN)
    throw BudgetExceeded("ev exact mode exceeds exact budget (n <= " +
                         std::to_string(kExactEvMaxN) + ", got " + std::to_string(n) + ")");
  const Dyadic dy = Dyadic::from(d);
  DeviationReport r;
  r.notion = Notion::ev;
  r.mode = Mode::exact;
  r.d = d;
  r.n = n;
  r.exact = true;

  std::vector<std::size_t> idx(n * n, 0);
  std::size_t np = 0;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) idx[a * n + b] = idx[b * n + a] = np++;
  std::vector<std::uint32_t> cnt(np, 0);
  std::vector<std::uint64_t> hist(n + 1, 0);
  hist[0] = np;
  std::vector<Wide> level(n + 1);
  for (std::size_t c = 0; c <= n; ++c) level[c] = static_cast<Wide>(c) << dy.shift;

  Wide best = 0;
  std::uint64_t best_mask = 0, mask = 0;
  std::uint64_t size = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < total; ++i) {
    const auto v = static_cast<Vertex>(std::countr_zero(i));
    const bool adding = !((mask >> v) & 1U);
    mask ^= std::uint64_t{1} << v;
    size += adding ? 1 : std::uint64_t(-1);
    for (const auto& [a, b] : H.link(v)) {
      auto& c = cnt[idx[a * n + b]];
      --hist[c];
      c += adding ? 1U : std::uint32_t(-1);
      ++hist[c];
    }
    const Wide thresh = dy.num * static_cast<Wide>(size);
    Wide obj = 0;
    for (std::size_t c = 0; c <= n && level[c] < thresh; ++c)
      if (hist[c]) obj += static_cast<Wide>(hist[c]) * (level[c] - thresh);
    obj *= 2;
    if (obj < best) {
      best = obj;
      best_mask = mask;
    }
  }
  r.evaluations = total;
  const Bitset xb = to_bitset(n, detail::mask_vertices(best_mask));
  r.X = xb.to_vector();
  r.P = detail::ev_best_pairs(H, dy, xb);
  const Incidence inc = ev_count(H, r.X, r.P);
  if (dy.scaled(inc.e, inc.product) != best)
    throw std::logic_error("ev exact: witness recount disagrees with search");
  detail::finish(r, dy, inc);
  return r;
}

inline DeviationReport ev_sampled(const Hypergraph3& H, double d, const DensityOptions& opt) {
  const std::size_t n = H.n();
  const Dyadic dy = Dyadic::from(d);
  DeviationReport r;
  r.notion = Notion::ev;
  r.mode = Mode::sampled;
  r.d = d;
  r.n = n;
  r.seed = opt.seed;
  if (n < 2) {
    detail::finish(r, dy, {});
    return r;
  }
  Rng rng(opt.seed);
  std::vector<Bitset> cands;
  cands.push_back(Bitset::full(n));
  for (int i = 0; i < 16; ++i) {
    const auto y = static_cast<Vertex>(rng.below(n));
    auto z = static_cast<Vertex>(rng.below(n - 1));
    if (z >= y) ++z;
    Bitset nb(n, H.nbr_bits(y, z));
    cands.push_back(detail::complement(nb));
  }
  for (double p : {0.25, 0.5, 0.75})
    for (int i = 0; i < 4; ++i) cands.push_back(detail::random_subset(n, p, rng));

  const std::uint64_t per = std::max<std::uint64_t>(1, (opt.samples + cands.size() - 1) / cands.size());
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
  double best_est = 0.0;
  std::size_t best = cands.size();
  for (std::size_t ci = 0; ci < cands.size(); ++ci) {
    const auto& X = cands[ci];
    const double dx = d * static_cast<double>(X.count());
    double acc = 0.0;
    for (std::uint64_t s = 0; s < per; ++s) {
      const auto y = static_cast<Vertex>(rng.below(n));
      auto z = static_cast<Vertex>(rng.below(n - 1));
      if (z >= y) ++z;
      const double m = static_cast<double>(intersection_count(H.nbr_bits(y, z), X.words())) - dx;
      if (m < 0) acc += m;
    }
    const double est = acc / static_cast<double>(per) * pairs;
    if (best == cands.size() || est < best_est) {
      best_est = est;
      best = ci;
    }
  }
  r.samples = per * cands.size();
  r.evaluations = cands.size();
  r.estimate = best_est;
  const Bitset& X = cands[best];
  r.X = X.to_vector();
  r.P = detail::ev_best_pairs(H, dy, X);
  detail::finish(r, dy, ev_count(H, r.X, r.P));
  return r;
}

inline DeviationReport ev_heuristic(const Hypergraph3& H, double d, const DensityOptions& opt) {
  const std::size_t n = H.n();
  const Dyadic dy = Dyadic::from(d);
  DeviationReport start = ev_sampled(H, d, opt);
  Rng rng(mix_seed(opt.seed, 1));
  std::vector<Bitset> starts;
  starts.push_back(to_bitset(n, start.X));
  for (std::size_t i = 0; i < opt.restarts; ++i)
    starts.push_back(detail::random_subset(n, rng.uniform(), rng));

  Bitset best_x = starts.front();
  Wide best = detail::ev_objective(H, dy, best_x);
  std::uint64_t evals = 0;
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  for (auto& X : starts) {
    Wide cur = detail::ev_objective(H, dy, X);
    for (std::size_t round = 0; round < opt.max_rounds; ++round) {
      bool improved = false;
      rng.shuffle(order);
      for (auto v : order) {
        X.flip(v);
        const Wide o = detail::ev_objective(H, dy, X);
        ++evals;
        if (o < cur) {
          cur = o;
          improved = true;
        } else {
          X.flip(v);
        }
      }
      if (!improved) break;
    }
    if (cur < best) {
      best = cur;
      best_x = X;
    }
  }
  DeviationReport r;
  r.notion = Notion::ev;
  r.mode = Mode::heuristic;
  r.d = d;
  r.n = n;
  r.seed = opt.seed;
  r.samples = start.samples;
  r.evaluations = evals;
  r.X = best_x.to_vector();
  r.P = detail::ev_best_pairs(H, dy, best_x);
  detail::finish(r, dy, ev_count(H, r.X, r.P));
  return r;
}

// ---------------------------------------------------------------------------
// vvv

inline DeviationReport vvv_exact(const Hypergraph3& H, double d) {
  const std::size_t n = H.n();
  if (n > kExactVvvMaxN)
    throw BudgetExceeded("vvv exact mode exceeds exact budget (n <= " +
                         std::to_string(kExactVvvMaxN) + ", got " + std::to_string(n) + ")");
  const Dyadic dy = Dyadic::from(d);
  DeviationReport r;
  r.notion = Notion::vvv;
  r.mode = Mode::exact;
  r.d = d;
  r.n = n;
  r.exact = true;

  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<std::uint32_t> w(n * n, 0);
  std::vector<std::int64_t> cnt(n, 0);
  Wide best = 0;
  std::uint64_t best_x = 0, best_y = 0;
  for (std::uint64_t xm = 1; xm < total; ++xm) {
    const auto sx = static_cast<std::uint64_t>(std::popcount(xm));
    for (Vertex y = 0; y < n; ++y)
      for (Vertex z = 0; z < n; ++z)
        w[y * n + z] = y == z ? 0 : static_cast<std::uint32_t>(std::popcount(H.nbr_bits(y, z)[0] & xm));
    std::fill(cnt.begin(), cnt.end(), 0);
    std::uint64_t ym = 0, sy = 0;
    for (std::uint64_t i = 1; i < total; ++i) {
      const auto y = static_cast<Vertex>(std::countr_zero(i));
      const bool adding = !((ym >> y) & 1U);
      ym ^= std::uint64_t{1} << y;
      sy += adding ? 1 : std::uint64_t(-1);
      for (Vertex z = 0; z < n; ++z) cnt[z] += adding ? w[y * n + z] : -std::int64_t(w[y * n + z]);
      const std::uint64_t prod = sx * sy;
      Wide obj = 0;
      for (Vertex z = 0; z < n; ++z) {
        const Wide m = dy.scaled(static_cast<std::uint64_t>(cnt[z]), prod);
        if (m < 0) obj += m;
      }
      if (obj < best) {
        best = obj;
        best_x = xm;
        best_y = ym;
      }
    }
  }
  r.evaluations = total * total;
  const Bitset xb = to_bitset(n, detail::mask_vertices(best_x));
  const Bitset yb = to_bitset(n, detail::mask_vertices(best_y));
  r.X = xb.to_vector();
  r.Y = yb.to_vector();
  r.Z = detail::vvv_best_third(H, dy, xb, yb).to_vector();
  const Incidence inc = vvv_count(H, r.X, r.Y, r.Z);
  if (dy.scaled(inc.e, inc.product) != best)
    throw std::logic_error("vvv exact: witness recount disagrees with search");
  detail::finish(r, dy, inc);
  return r;
}

inline DeviationReport vvv_sampled(const Hypergraph3& H, double d, const DensityOptions& opt) {
  const std::size_t n = H.n();
  const Dyadic dy = Dyadic::from(d);
  DeviationReport r;
  r.notion = Notion::vvv;
  r.mode = Mode::sampled;
  r.d = d;
  r.n = n;
  r.seed = opt.seed;
  if (n == 0) {
    detail::finish(r, dy, {});
    return r;
  }
  Rng rng(opt.seed);
  std::vector<std::pair<Bitset, Bitset>> cands;
  cands.emplace_back(Bitset::full(n), Bitset::full(n));
  for (double p : {0.25, 0.5, 0.75})
    for (int i = 0; i < 4; ++i) {
      auto a = detail::random_subset(n, p, rng);
      cands.emplace_back(a, a);
      cands.emplace_back(a, detail::complement(a));
    }
  const std::uint64_t per = std::max<std::uint64_t>(1, (opt.samples + cands.size() - 1) / cands.size());
  double best_est = 0.0;
  std::size_t best = cands.size();
  for (std::size_t ci = 0; ci < cands.size(); ++ci) {
    const auto& [X, Y] = cands[ci];
    const auto xv = X.to_vector();
    const double prod = d * static_cast<double>(X.count() * Y.count());
    double acc = 0.0;
    for (std::uint64_t s = 0; s < per; ++s) {
      const auto z = static_cast<Vertex>(rng.below(n));
      std::uint64_t c = 0;
      for (auto x : xv)
        if (x != z) c += intersection_count(H.nbr_bits(x, z), Y.words());
      const double m = static_cast<double>(c) - prod;
      if (m < 0) acc += m;
    }
    const double est = acc / static_cast<double>(per) * static_cast<double>(n);
    if (best == cands.size() || est < best_est) {
      best_est = est;
      best = ci;
    }
  }
  r.samples = per * cands.size();
  r.evaluations = cands.size();
  r.estimate = best_est;
  const auto& [X, Y] = cands[best];
  r.X = X.to_vector();
  r.Y = Y.to_vector();
  r.Z = detail::vvv_best_third(H, dy, X, Y).to_vector();
  detail::finish(r, dy, vvv_count(H, r.X, r.Y, r.Z));
  return r;
}

inline DeviationReport vvv_heuristic(const Hypergraph3& H, double d, const DensityOptions& opt) {
  const std::size_t n = H.n();
  const Dyadic dy = Dyadic::from(d);
  const DeviationReport start = vvv_sampled(H, d, opt);
  Rng rng(mix_seed(opt.seed, 2));
  struct Triple3 {
    Bitset x, y, z;
  };
  auto value = [&](const Triple3& t) {
    const auto inc = vvv_count(H, t.x.to_vector(), t.y.to_vector(), t.z.to_vector());
    return dy.scaled(inc.e, inc.product);
  };
  std::vector<Triple3> starts;
  starts.push_back({to_bitset(n, start.X), to_bitset(n, start.Y), to_bitset(n, start.Z)});
  for (std::size_t i = 0; i < opt.restarts; ++i) {
    auto x = detail::random_subset(n, rng.uniform(), rng);
    auto y = detail::random_subset(n, rng.uniform(), rng);
    auto z = detail::vvv_best_third(H, dy, x, y);
    starts.push_back({std::move(x), std::move(y), std::move(z)});
  }
  Triple3 best_t = starts.front();
  Wide best = value(best_t);
  std::uint64_t evals = 0;
  for (auto& t : starts) {
    Wide cur = value(t);
    for (std::size_t round = 0; round < opt.max_rounds; ++round) {
      t.z = detail::vvv_best_third(H, dy, t.x, t.y);
      t.x = detail::vvv_best_third(H, dy, t.y, t.z);
      t.y = detail::vvv_best_third(H, dy, t.x, t.z);
      evals += 3;
      const Wide v = value(t);
      if (v >= cur) {
        cur = std::min(cur, v);
        break;
      }
      cur = v;
    }
    cur = value(t);
    if (cur < best) {
      best = cur;
      best_t = t;
    }
  }
  DeviationReport r;
  r.notion = Notion::vvv;
  r.mode = Mode::heuristic;
  r.d = d;
  r.n = n;
  r.seed = opt.seed;
  r.samples = start.samples;
  r.evaluations = evals;
  r.X = best_t.x.to_vector();
  r.Y = best_t.y.to_vector();
  r.Z = best_t.z.to_vector();
  detail::finish(r, dy, vvv_count(H, r.X, r.Y, r.Z));
  return r;
}

// ---------------------------------------------------------------------------
// ee

inline DeviationReport ee_exact(const Hypergraph3& H, double d) {
  const std::size_t n = H.n();
  if (n > kExactEeMaxN)
    throw BudgetExceeded("ee exact mode exceeds exact budget (n <= " +
                         std::to_string(kExactEeMaxN) + ", got " + std::to_string(n) + ")");
  const Dyadic dy = Dyadic::from(d);
  DeviationReport r;
  r.notion = Notion::ee;
  r.mode = Mode::exact;
  r.d = d;
  r.n = n;
  r.exact = true;

  const auto pairs = detail::distinct_pairs(n);
  const std::size_t m = pairs.size();
  std::vector<Wide> margin(n * n, 0);  // margin of Q-candidate (y,z)
  const Wide hit = (Wide{1} << dy.shift) - dy.num;
  const Wide miss = -dy.num;
  Wide best = 0;
  std::uint64_t best_mask = 0, mask = 0;
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t i = 1; i < total; ++i) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(i));
    const bool adding = !((mask >> bit) & 1U);
    mask ^= std::uint64_t{1} << bit;
    const auto [x, y] = pairs[bit];
    for (Vertex z = 0; z < n; ++z) {
      if (z == x || z == y) continue;
      const Wide delta = H.has_edge(x, y, z) ? hit : miss;
      margin[y * n + z] += adding ? delta : -delta;
    }
    Wide obj = 0;
    for (const auto& [a, b] : pairs) {
      const Wide v = margin[a * n + b];
      if (v < 0) obj += v;
    }
    if (obj < best) {
      best = obj;
      best_mask = mask;
    }
  }
  r.evaluations = total;
  std::vector<char> pm(n * n, 0);
  for (std::size_t b = 0; b < m; ++b)
    if ((best_mask >> b) & 1U) pm[pairs[b].first * n + pairs[b].second] = 1;
  r.P = detail::pairs_of(pm, n);
  r.Q = detail::pairs_of(detail::ee_best_response(H, dy, pm, false), n);
  const Incidence inc = ee_count(H, r.P, r.Q);
  if (dy.scaled(inc.e, inc.product) != best)
    throw std::logic_error("ee exact: witness recount disagrees with search");
  detail::finish(r, dy, inc);
  return r;
}

inline DeviationReport ee_sampled(const Hypergraph3& H, double d, const DensityOptions& opt) {
  const std::size_t n = H.n();
  const Dyadic dy = Dyadic::from(d);
  DeviationReport r;
  r.notion = Notion::ee;
  r.mode = Mode::sampled;
  r.d = d;
  r.n = n;
  r.seed = opt.seed;
  if (n < 3) {
    detail::finish(r, dy, {});
    return r;
  }
  Rng rng(opt.seed);
  std::vector<std::vector<char>> cands;
  auto build = [&](auto pred) {
    std::vector<char> m(n * n, 0);
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = 0; b < n; ++b)
        if (a != b && pred(a, b)) m[a * n + b] = 1;
    return m;
  };
  cands.push_back(build([](Vertex, Vertex) { return true; }));
  const double thresh = d * static_cast<double>(n - 2);
  cands.push_back(build([&](Vertex a, Vertex b) { return static_cast<double>(H.cod(a, b)) < thresh; }));
  for (double p : {0.25, 0.5, 0.75})
    for (int i = 0; i < 4; ++i) cands.push_back(build([&](Vertex, Vertex) { return rng.bernoulli(p); }));
  for (int i = 0; i < 4; ++i) {
    const Bitset s = detail::random_subset(n, 0.5, rng);
    cands.push_back(build([&](Vertex a, Vertex b) { return s.test(a) != s.test(b); }));
    cands.push_back(build([&](Vertex a, Vertex b) { return s.test(a) == s.test(b); }));
  }

  const std::uint64_t per = std::max<std::uint64_t>(1, (opt.samples + cands.size() - 1) / cands.size());
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
  double best_est = 0.0;
  std::size_t best = cands.size();
  for (std::size_t ci = 0; ci < cands.size(); ++ci) {
    const auto& pm = cands[ci];
    double acc = 0.0;
    for (std::uint64_t s = 0; s < per; ++s) {
      const auto y = static_cast<Vertex>(rng.below(n));
      auto z = static_cast<Vertex>(rng.below(n - 1));
      if (z >= y) ++z;
      double m = 0.0;
      for (Vertex x = 0; x < n; ++x)
        if (x != y && x != z && pm[x * n + y]) m += (H.has_edge(x, y, z) ? 1.0 : 0.0) - d;
      if (m < 0) acc += m;
    }
    const double est = acc / static_cast<double>(per) * pairs;
    if (best == cands.size() || est < best_est) {
      best_est = est;
      best = ci;
    }
  }
  r.samples = per * cands.size();
  r.evaluations = cands.size();
  r.estimate = best_est;
  r.P = detail::pairs_of(cands[best], n);
  r.Q = detail::pairs_of(detail::ee_best_response(H, dy, cands[best], false), n);
  detail::finish(r, dy, ee_count(H, r.P, r.Q));
  return r;
}

/// Alternating minimisation: best Q for P, then best P for Q, until no improvement.
inline DeviationReport ee_heuristic(const Hypergraph3& H, double d, const DensityOptions& opt) {
  const std::size_t n = H.n();
  const Dyadic dy = Dyadic::from(d);
  const DeviationReport start = ee_sampled(H, d, opt);
  Rng rng(mix_seed(opt.seed, 3));
  auto to_matrix = [&](const std::vector<VertexPair>& ps) {
    std::vector<char> m(n * n, 0);
    for (const auto& [a, b] : ps) m[a * n + b] = 1;
    return m;
  };
  auto value = [&](const std::vector<char>& p, const std::vector<char>& q) {
    const auto inc = ee_count(H, detail::pairs_of(p, n), detail::pairs_of(q, n));
    return dy.scaled(inc.e, inc.product);
  };
  std::vector<std::vector<char>> starts;
  starts.push_back(to_matrix(start.P));
  for (std::size_t i = 0; i < opt.restarts; ++i) {
    const double p = rng.uniform();
    std::vector<char> m(n * n, 0);
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = 0; b < n; ++b)
        if (a != b && rng.bernoulli(p)) m[a * n + b] = 1;
    starts.push_back(std::move(m));
  }
  std::vector<char> best_p = starts.front();
  std::vector<char> best_q = detail::ee_best_response(H, dy, best_p, false);
  Wide best = value(best_p, best_q);
  std::uint64_t evals = 0;
  for (auto& p : starts) {
    auto q = detail::ee_best_response(H, dy, p, false);
    Wide cur = value(p, q);
    for (std::size_t round = 0; round < opt.max_rounds; ++round) {
      auto np = detail::ee_best_response(H, dy, q, true);
      auto nq = detail::ee_best_response(H, dy, np, false);
      evals += 2;
      const Wide v = value(np, nq);
      if (v >= cur) break;
      cur = v;
      p = std::move(np);
      q = std::move(nq);
    }
    if (cur < best) {
      best = cur;
      best_p = p;
      best_q = q;
    }
  }
  DeviationReport r;
  r.notion = Notion::ee;
  r.mode = Mode::heuristic;
  r.d = d;
  r.n = n;
  r.seed = opt.seed;
  r.samples = start.samples;
  r.evaluations = evals;
  r.P = detail::pairs_of(best_p, n);
  r.Q = detail::pairs_of(best_q, n);
  detail::finish(r, dy, ee_count(H, r.P, r.Q));
  return r;
}

// ---------------------------------------------------------------------------
// Dispatch

inline DeviationReport ev_deviation(const Hypergraph3& H, double d, Mode mode,
                                    const DensityOptions& opt = {}) {
  switch (mode) {
    case Mode::exact: return ev_exact(H, d);
    case Mode::heuristic: return ev_heuristic(H, d, opt);
    case Mode::sampled: return ev_sampled(H, d, opt);
  }
  throw std::logic_error("unreachable");
}

inline DeviationReport vvv_deviation(const Hypergraph3& H, double d, Mode mode,
                                     const DensityOptions& opt = {}) {
  switch (mode) {
    case Mode::exact: return vvv_exact(H, d);
    case Mode::heuristic: return vvv_heuristic(H, d, opt);
    case Mode::sampled: return vvv_sampled(H, d, opt);
  }
  throw std::logic_error("unreachable");
}

inline DeviationReport ee_deviation(const Hypergraph3& H, double d, Mode mode,
                                    const DensityOptions& opt = {}) {
  switch (mode) {
    case Mode::exact: return ee_exact(H, d);
    case Mode::heuristic: return ee_heuristic(H, d, opt);
    case Mode::sampled: return ee_sampled(H, d, opt);
  }
  throw std::logic_error("unreachable");
}

inline DeviationReport deviation(const Hypergraph3& H, Notion notion, double d, Mode mode,
                                 const DensityOptions& opt = {}) {
  switch (notion) {
    case Notion::vvv: return vvv_deviation(H, d, mode, opt);
    case Notion::ev: return ev_deviation(H, d, mode, opt);
    case Notion::ee: return ee_deviation(H, d, mode, opt);
  }
  throw std::logic_error("unreachable");
}

/// Recount of a report's witness: (e, size product).
inline Incidence recount(const Hypergraph3& H, const DeviationReport& r) {
  switch (r.notion) {
    case Notion::vvv: return vvv_count(H, r.X, r.Y, r.Z);
    case Notion::ev: return ev_count(H, r.X, r.P);
    case Notion::ee: return ee_count(H, r.P, r.Q);
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Regularity utilities

/// The x in X with |N(x,P)| < (d - sqrt(rho))|P|, where N(x,P) = {(y,z) in P : xyz in E}.
inline std::vector<Vertex> restricted_degree_filter(const Hypergraph3& H,
                                                    std::span<const Vertex> X, const PairSet& P,
                                                    double d, double rho) {
  if (!P.ordered()) throw PreconditionError("restricted_degree_filter needs an ordered PairSet");
  const double bound = (d - std::sqrt(rho)) * static_cast<double>(P.size());
  std::vector<Vertex> out;
  for (auto x : X) {
    H.check_vertex(x);
    std::size_t c = 0;
    for (const auto& [y, z] : P.members())
      if (H.has_edge(x, y, z)) ++c;
    if (static_cast<double>(c) < bound) out.push_back(x);
  }
  return out;
}

/// Simple undirected graph with bitset adjacency.
class SimpleGraph {
 public:
  explicit SimpleGraph(std::size_t n) : n_(n), adj_(n, Bitset(n)) {}

  static SimpleGraph from_edges(std::size_t n, std::span<const VertexPair> edges) {
    SimpleGraph g(n);
    for (const auto& [a, b] : edges) g.add_edge(a, b);
    return g;
  }

  void add_edge(Vertex a, Vertex b) {
    if (a >= n_ || b >= n_) throw std::out_of_range("graph vertex out of range");
    if (a == b) throw std::invalid_argument("graph loops are not allowed");
    if (!adj_[a].test(b)) ++m_;
    adj_[a].set(b);
    adj_[b].set(a);
  }

  std::size_t n() const { return n_; }
  std::size_t edge_count() const { return m_; }
  bool has_edge(Vertex a, Vertex b) const { return adj_[a].test(b); }
  const Bitset& row(Vertex v) const { return adj_[v]; }

  std::uint64_t edges_between(const Bitset& A, const Bitset& B) const {
    std::uint64_t e = 0;
    A.for_each([&](Vertex a) { e += intersection_count(adj_[a].words(), B.words()); });
    return e;
  }

 private:
  std::size_t n_;
  std::size_t m_ = 0;
  std::vector<Bitset> adj_;
};

struct RegularPairReport {
  std::vector<Vertex> V1, V2;
  double eta = 0.0;
  double density = 0.0;
  bool certified = false;
  std::size_t probes = 0;
  std::size_t depth = 0;
};

namespace detail {

inline double pair_density(const SimpleGraph& G, const Bitset& A, const Bitset& B) {
  const double denom = static_cast<double>(A.count()) * static_cast<double>(B.count());
  return denom == 0 ? 0.0 : static_cast<double>(G.edges_between(A, B)) / denom;
}

/// Keep the k vertices of S with the most neighbours in T (ties by id).
inline Bitset top_by_degree(const SimpleGraph& G, const Bitset& S, const Bitset& T, std::size_t k) {
  auto vs = S.to_vector();
  std::stable_sort(vs.begin(), vs.end(), [&](Vertex a, Vertex b) {
    return intersection_count(G.row(a).words(), T.words()) >
           intersection_count(G.row(b).words(), T.words());
  });
  vs.resize(std::min(k, vs.size()));
  return to_bitset(G.n(), vs);
}

}  // namespace detail

/**
 * Equal-size disjoint V1, V2 whose bipartite graph passed every irregularity
 * probe. A probe witness (X, Y) with |e(X,Y) - density|X||Y|| > eta|V1||V2|
 * sends the search into the densest of the four quadrants it induces.
 * Pairs with |V1| <= 6 are checked exhaustively and then marked certified.
 */
inline RegularPairReport find_regular_pair(const SimpleGraph& G, double eta, double d,
                                           std::uint64_t seed = 0, std::size_t probes = 64) {
  const std::size_t n = G.n();
  if (!(eta > 0.0 && eta < 1.0)) throw PreconditionError("find_regular_pair: eta must lie in (0,1)");
  if (static_cast<double>(G.edge_count()) < d * static_cast<double>(n) * static_cast<double>(n) / 2.0)
    throw PreconditionError("find_regular_pair: e(G) < d n^2 / 2");
  if (n < 2) throw PreconditionError("find_regular_pair needs at least 2 vertices");
  Rng rng(seed);
  RegularPairReport rep;
  rep.eta = eta;

  Bitset A(n), B(n);
  for (Vertex v = 0; v < n / 2; ++v) A.set(v);
  for (Vertex v = static_cast<Vertex>(n / 2); v < 2 * (n / 2); ++v) B.set(v);

  for (std::size_t depth = 0;; ++depth) {
    rep.depth = depth;
    const std::size_t m = A.count();
    const double dens = detail::pair_density(G, A, B);
    const auto min_side = static_cast<std::size_t>(std::ceil(eta * static_cast<double>(m)));
    const double tol = eta * static_cast<double>(m) * static_cast<double>(m);
    auto is_witness = [&](const Bitset& X, const Bitset& Y) {
      if (X.count() < std::max<std::size_t>(1, min_side) || Y.count() < std::max<std::size_t>(1, min_side))
        return false;
      const double dev = static_cast<double>(G.edges_between(X, Y)) -
                         dens * static_cast<double>(X.count()) * static_cast<double>(Y.count());
      return std::abs(dev) > tol;
    };

    std::optional<std::pair<Bitset, Bitset>> witness;
    bool exhaustive = false;
    if (m <= 6) {
      exhaustive = true;
      const auto av = A.to_vector(), bv = B.to_vector();
      for (std::uint32_t xm = 1; xm < (1U << m) && !witness; ++xm)
        for (std::uint32_t ym = 1; ym < (1U << m) && !witness; ++ym) {
          Bitset X(n), Y(n);
          for (std::size_t i = 0; i < m; ++i) {
            if ((xm >> i) & 1U) X.set(av[i]);
            if ((ym >> i) & 1U) Y.set(bv[i]);
          }
          ++rep.probes;
          if (is_witness(X, Y)) witness.emplace(X, Y);
        }
    } else {
      const std::size_t k = std::max<std::size_t>(min_side, 1);
      for (std::size_t kk : {k, m / 2}) {
        if (witness) break;
        for (int flip = 0; flip < 2 && !witness; ++flip) {
          Bitset X = detail::top_by_degree(G, A, B, kk);
          Bitset Y = detail::top_by_degree(G, B, A, kk);
          if (flip) {
            X = detail::top_by_degree(G, A, detail::complement(B).subtract(A), kk);
            Y = detail::top_by_degree(G, B, X, kk);
          }
          ++rep.probes;
          if (is_witness(X, Y)) witness.emplace(X, Y);
        }
      }
      for (std::size_t p = 0; p < probes && !witness; ++p) {
        const double frac = eta + (1.0 - eta) * rng.uniform();
        Bitset X(n), Y(n);
        A.for_each([&](Vertex v) { if (rng.bernoulli(frac)) X.set(v); });
        B.for_each([&](Vertex v) { if (rng.bernoulli(frac)) Y.set(v); });
        ++rep.probes;
        if (is_witness(X, Y)) witness.emplace(X, Y);
      }
    }

    if (!witness) {
      rep.V1 = A.to_vector();
      rep.V2 = B.to_vector();
      rep.density = dens;
      rep.certified = exhaustive;
      return rep;
    }

    const auto& [X, Y] = *witness;
    Bitset Xc = A, Yc = B;
    Xc.subtract(X);
    Yc.subtract(Y);
    double best_dens = -1.0;
    Bitset nA, nB;
    for (const Bitset* S : std::array<const Bitset*, 2>{&X, &Xc})
      for (const Bitset* T : std::array<const Bitset*, 2>{&Y, &Yc}) {
        const std::size_t k = std::min(S->count(), T->count());
        if (k < 1) continue;
        Bitset S2 = detail::top_by_degree(G, *S, *T, k);
        Bitset T2 = detail::top_by_degree(G, *T, S2, k);
        const double dq = detail::pair_density(G, S2, T2);
        if (dq > best_dens) {
          best_dens = dq;
          nA = std::move(S2);
          nB = std::move(T2);
        }
      }
    if (best_dens <= dens + 1e-12 || depth >= 64) {
      rep.V1 = A.to_vector();
      rep.V2 = B.to_vector();
      rep.density = dens;
      rep.certified = false;
      return rep;
    }
    A = std::move(nA);
    B = std::move(nB);
  }
}

/// (|shadow(V1,V3)|, |shadow(V2,V3)|) for pairwise disjoint, equal-size V1, V2, V3.
inline std::pair<std::size_t, std::size_t> partite_shadow_sizes(const Hypergraph3& H,
                                                                std::span<const Vertex> V1,
                                                                std::span<const Vertex> V2,
                                                                std::span<const Vertex> V3) {
  if (V1.size() != V2.size() || V2.size() != V3.size())
    throw PreconditionError("partite_shadow_sizes needs parts of equal size");
  Bitset seen(H.n());
  for (auto part : {V1, V2, V3})
    for (auto v : part) {
      H.check_vertex(v);
      if (seen.test(v)) throw PreconditionError("partite_shadow_sizes needs disjoint parts");
      seen.set(v);
    }
  return {shadow_between(H, V1, V3).size(), shadow_between(H, V2, V3).size()};
}

}  // namespace hyperham
