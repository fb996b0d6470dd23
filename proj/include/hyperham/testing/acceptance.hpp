// Acceptance criteria shared by the acceptance runner and `hyperham bench`.
#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "hyperham/hyperham.hpp"
#include "hyperham/testing/brute_force.hpp"
#include "hyperham/testing/fixtures.hpp"

namespace hyperham::acceptance {

// Pinned tolerances and sizes.
inline constexpr double kOracleSeconds = 30.0;
inline constexpr double kExample1Seconds = 300.0;
inline constexpr double kDegreeLow = 0.22, kDegreeHigh = 0.28;
inline constexpr double kEvRhoMax = 0.02;
inline constexpr std::uint64_t kEvSamples = 100000;
inline constexpr double kHpTolerance = 0.03;
inline constexpr std::size_t kPipelineRuns = 500;
inline constexpr double kCompletenessRate = 0.8;
inline constexpr double kPipelineSeconds = 60.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class... Args>
inline std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

inline double choose2(std::size_t n) { return static_cast<double>(n) * static_cast<double>(n - 1) / 2.0; }

inline Outcome oracle_agreement() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t agree = 0, total = 0;
  const double ps[] = {0.3, 0.5, 0.7, 0.9};
  for (std::uint64_t i = 0; i < 200; ++i) {
    const std::size_t n = 5 + i % 4;
    const double p = ps[(i / 4) % 4];
    const auto H = gen::random(n, p, 1000 + i);
    ++total;
    if (has_tight_hamilton(H) == exhaustive_hamilton(H)) ++agree;
  }
  const double secs = seconds_since(t0);
  return {agree == total && secs < kOracleSeconds, fmt("%zu/%zu agree in %.2fs", agree, total, secs)};
}

inline Outcome ev_exactness() {
  std::size_t ok = 0, total = 0;
  const double ds[] = {0.25, 0.5, 0.75};
  auto run = [&](std::size_t n, std::size_t count) {
    for (std::uint64_t s = 0; s < count; ++s) {
      const auto H = gen::random(n, 0.5, 2000 + 31 * n + s);
      const double d = ds[s % 3];
      ++total;
      if (ev_deviation(H, d, Mode::exact).raw == naive::ev_min_raw(H, d)) ++ok;
    }
  };
  run(4, 20);
  run(5, 10);
  return {ok == total, fmt("%zu/%zu exact raw equal to (X,P) enumeration", ok, total)};
}

inline Outcome example1_non_hamiltonian() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t falses = 0, total = 0;
  for (std::size_t n : {10u, 12u, 14u, 16u})
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      ++total;
      if (!has_tight_hamilton(gen::example1(n, seed))) ++falses;
    }
  const double secs = seconds_since(t0);
  return {falses == total && secs < kExample1Seconds,
          fmt("%zu/%zu non-Hamiltonian in %.1fs", falses, total, secs)};
}

inline Outcome example1_density_profile() {
  const std::size_t n = 200;
  std::size_t passing = 0;
  double worst_rho = 0.0, lo = 1.0, hi = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto H = gen::example1(n, seed, true);
    const double d1 = static_cast<double>(H.min_degree()) / choose2(n);
    DensityOptions opt;
    opt.seed = seed;
    opt.samples = kEvSamples;
    const auto r = ev_deviation(H, 0.25, Mode::sampled, opt);
    lo = std::min(lo, d1);
    hi = std::max(hi, d1);
    worst_rho = std::max(worst_rho, r.rho_hat);
    if (d1 >= kDegreeLow && d1 <= kDegreeHigh && r.rho_hat <= kEvRhoMax && r.samples >= kEvSamples) ++passing;
  }
  return {passing >= 19, fmt("%zu/20 seeds pass; delta1/C(n,2) in [%.4f, %.4f], max rho_hat %.5f",
                             passing, lo, hi, worst_rho)};
}

inline Outcome hp_degree_formulas() {
  const std::size_t n = 300;
  bool all = true;
  std::string detail;
  for (double p : {0.5, 2.0 / 3.0, 0.9}) {
    const double f1 = std::min(1.0 - p, p * p * p + (1 - p) * (1 - p) * (1 - p));
    const double f2 = (1 - p) * (1 - p);
    std::size_t ok = 0;
    double m1 = 0.0, m2 = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto H = gen::hp_construction(n, p, seed, true);
      const double d1 = static_cast<double>(H.min_degree()) / choose2(n);
      const double d2 = static_cast<double>(H.min_codegree()) / static_cast<double>(n);
      m1 += d1 / 10.0;
      m2 += d2 / 10.0;
      if (std::abs(d1 - f1) <= kHpTolerance && std::abs(d2 - f2) <= kHpTolerance) ++ok;
    }
    all = all && ok >= 9;
    detail += fmt("%sp=%.3f: %zu/10 (mean d1 %.3f vs %.3f, mean d2 %.3f vs %.3f)", detail.empty() ? "" : "; ", p,
                  ok, m1, f1, m2, f2);
  }
  return {all, detail};
}

inline Outcome pipeline_soundness() {
  std::size_t runs = 0, found = 0, bad = 0;
  for (std::uint64_t i = 0; runs < kPipelineRuns; ++i) {
    Hypergraph3 H;
    switch (i % 5) {
      case 0: H = gen::random(12 + i % 25, 0.75 + 0.05 * static_cast<double>(i % 5), i); break;
      case 1: H = gen::complete(12 + i % 20); break;
      case 2: H = gen::random(30 + i % 11, 0.9, i); break;
      case 3: H = gen::example1(12 + i % 10, i, i % 2 == 0); break;
      default: H = gen::hp_construction(20 + i % 10, 0.3, i, true); break;
    }
    PipelineParams params;
    params.seed = i;
    params.retries = 2;
    params.mode = i % 7 == 0 ? HamiltonMode::ee : HamiltonMode::ev;
    const auto r = find_tight_hamilton(H, params);
    ++runs;
    if (r.cycle) {
      ++found;
      if (r.cycle->size() != H.n() || !verify_tight_cycle(H, r.cycle->vertices)) ++bad;
    }
  }
  return {bad == 0, fmt("%zu invocations, %zu cycles returned, %zu failed verification", runs, found, bad)};
}

inline Outcome pipeline_completeness() {
  std::size_t ok = 0;
  double slowest = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto H = gen::random(36, 0.9, seed);
    PipelineParams params;
    params.seed = seed;
    params.retries = 5;
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = find_tight_hamilton(H, params);
    const double secs = seconds_since(t0);
    slowest = std::max(slowest, secs);
    if (r.cycle && verify_tight_cycle(H, r.cycle->vertices) && secs < kPipelineSeconds) ++ok;
  }
  std::size_t complete_ok = 0;
  const auto K = gen::complete(30);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PipelineParams params;
    params.seed = seed;
    const auto r = find_tight_hamilton(K, params);
    if (r.cycle && verify_tight_cycle(K, r.cycle->vertices)) ++complete_ok;
  }
  const bool pass = static_cast<double>(ok) >= kCompletenessRate * 20.0 && complete_ok == 20;
  return {pass, fmt("random(36,0.9): %zu/20, complete(30): %zu/20, slowest %.2fs", ok, complete_ok, slowest)};
}

inline Outcome gadget_identities() {
  const auto K = gen::k333();
  const K333 id{0, 1, 2, 3, 4, 5, 6, 7, 8};
  const bool k333_ok = verify_tight_path(K, k333_long_path(id)) && verify_tight_path(K, k333_short_path(id));
  const auto B = gen::c8_blowup(4);
  C8Blowup g;
  for (Vertex v = 0; v < 32; ++v) g.classes[v % 8][v / 8] = v;
  const bool c8_ok = verify_tight_path(B, g.path32()) && verify_tight_path(B, g.path24()) &&
                     verify_tight_path(B, g.path16());
  const auto H = gen::random(12, 0.8, 8);
  const auto turns = find_turns(H, 20000, 8, 100);
  std::size_t good = 0;
  for (const auto& t : turns) {
    bool ok = is_turn(H, t);
    for (const auto& p : turn_paths(t)) ok = ok && verify_tight_path(H, p);
    if (ok) ++good;
  }
  const bool pass = k333_ok && c8_ok && turns.size() == 100 && good == 100;
  return {pass, fmt("k333 %s, c8_blowup %s, turns %zu/%zu verified", k333_ok ? "ok" : "FAIL",
                    c8_ok ? "ok" : "FAIL", good, turns.size())};
}

inline Outcome absorber_soundness() {
  const auto H = gen::random(40, 0.8, 9);
  const Bitset none(40);
  std::size_t sampled = 0, passed = 0;
  for (std::uint64_t s = 0; sampled < 1000 && s < 50; ++s) {
    const auto found = find_absorber(H, none, 1, 20000, s);
    if (!found.absorber) continue;
    const auto& A = *found.absorber;
    const auto vs = A.vertices();
    const std::set<Vertex> inside(vs.begin(), vs.end());
    Rng rng(s);
    for (int k = 0; k < 100 && sampled < 1000; ++k) {
      std::array<Vertex, 3> T{};
      bool ok = true;
      for (std::size_t i = 0; i < 3 && ok; ++i) {
        std::vector<Vertex> pool;
        for (auto v : A.eligible[i])
          if (!inside.count(v) && std::find(T.begin(), T.begin() + i, v) == T.begin() + i) pool.push_back(v);
        ok = !pool.empty();
        if (ok) T[i] = rng.pick(pool);
      }
      if (!ok) continue;
      ++sampled;
      if (is_absorber(H, A, T)) ++passed;
    }
  }
  const auto f = naive::single_absorber_fixture();
  const auto r = absorb(f.H, f.path, f.U);
  bool exchange = r.path.has_value() && verify(f.H, *r.path) && r.path->size() == 24;
  if (exchange) {
    const auto& A = f.path.absorbers[0];
    const auto& pv = r.path->vertices;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto it = std::find(pv.begin(), pv.end(), f.U[i]);
      exchange = exchange && it != pv.end() && *(it - 1) == A.P[i][1] && *(it + 1) == A.P[i][2];
    }
  }
  return {sampled == 1000 && passed == 1000 && exchange,
          fmt("%zu/%zu sampled pairs pass is_absorber; fixture exchange %s", passed, sampled,
              exchange ? "verified" : "FAILED")};
}

inline Outcome cherry_connection_crosscheck() {
  std::size_t agree = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const std::size_t n = 5 + s % 8;
    const auto H = s == 0 ? gen::complete(5) : gen::random(n, 0.5, 3000 + s);
    const auto all = PairSet::all(H.n(), false);
    const auto fast = count_cherries(H, all, all).count;
    const auto naive = naive::cherries(H, all.matrix(H.n()), all.matrix(H.n()));
    if (fast == naive && (s != 0 || fast == 120)) ++agree;
  }
  std::size_t absent = 0, confirmed = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 12;
    const auto H = gen::example1(n, seed);
    const Vertex x = static_cast<Vertex>(n - 2);
    std::vector<VertexPair> red, blue;
    for (Vertex a = 0; a < n - 2; ++a)
      for (Vertex b = a + 1; b < n - 2; ++b) (H.has_edge(x, a, b) ? red : blue).push_back({a, b});
    for (const auto& r : red)
      for (const auto& b : blue) {
        if (r.first == b.first || r.first == b.second || r.second == b.first || r.second == b.second)
          continue;
        ConnectOptions opt;
        opt.max_inner = 15;
        opt.seed = seed;
        opt.budget = 20000;
        if (connect(H, r, b, Bitset::full(n), opt).path) continue;
        ++absent;
        bool zero = true;
        for (std::size_t l = 0; l <= 5 && zero; ++l) zero = count_paths_between(H, r, b, l) == 0;
        if (zero) ++confirmed;
        break;  // one blue partner per red pair keeps the runtime small
      }
  }
  return {agree == 20 && absent > 0 && confirmed == absent,
          fmt("cherries %zu/20 agree; %zu connect absences, %zu confirmed by exact path counts", agree,
              absent, confirmed)};
}

inline Outcome density_hierarchy() {
  std::size_t checked = 0, violations = 0, ee_zero = 0, ev_zero = 0, vvv_zero = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const std::size_t n = 4 + i % 2;
    const auto H = i < 4 ? gen::complete(n) : gen::random(n, 0.3 + 0.1 * static_cast<double>(i % 7), 4000 + i);
    for (double d : {0.2, 0.5}) {
      const double ee = ee_deviation(H, d, Mode::exact).rho_hat;
      const double ev = ev_deviation(H, d, Mode::exact).rho_hat;
      const double vvv = vvv_deviation(H, d, Mode::exact).rho_hat;
      ++checked;
      ee_zero += ee == 0.0;
      ev_zero += ev == 0.0;
      vvv_zero += vvv == 0.0;
      if ((ee == 0.0 && ev != 0.0) || (ev == 0.0 && vvv != 0.0)) ++violations;
    }
  }
  return {violations == 0, fmt("%zu (instance,d) checks, %zu implication violations; zero rho_hat counts "
                               "ee %zu, ev %zu, vvv %zu",
                               checked, violations, ee_zero, ev_zero, vvv_zero)};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

inline std::vector<Criterion> criteria() {
  return {
      {"oracle agreement (DP vs exhaustive)", oracle_agreement},
      {"ev exact deviation vs full enumeration", ev_exactness},
      {"example1 has no tight Hamilton cycle", example1_non_hamiltonian},
      {"example1 degree and ev density profile", example1_density_profile},
      {"H_p minimum degree and codegree formulas", hp_degree_formulas},
      {"pipeline soundness", pipeline_soundness},
      {"pipeline completeness", pipeline_completeness},
      {"gadget path identities", gadget_identities},
      {"absorber soundness and exchange", absorber_soundness},
      {"cherry counts and connection absences", cherry_connection_crosscheck},
      {"density notion hierarchy", density_hierarchy},
  };
}

}  // namespace hyperham::acceptance
