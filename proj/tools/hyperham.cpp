// hyperham: command-line front end for generation, density measurement, motif search,
// the Hamilton pipeline and the exact oracles.
//
// Exit codes: 0 verified success, 1 searched and absent, 2 usage error,
// 3 budget or precondition error (a JSON diagnostic is printed).

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hyperham/hyperham.hpp"
#include "hyperham/report_json.hpp"
#include "hyperham/testing/acceptance.hpp"

using namespace hyperham;
using namespace hyperham::gen;
using json = nlohmann::json;

namespace {

enum Exit : int { kOk = 0, kAbsent = 1, kUsage = 2, kError = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::size_t default_threads() {
  if (const char* env = std::getenv("HYPERHAM_THREADS")) {
    try {
      const auto v = std::stoul(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

struct Global {
  std::string format = "json";
  std::size_t threads = default_threads();
  bool strict = false;
  std::vector<std::string> argv;
};

class Timer {
 public:
  void lap(const std::string& name) {
    const auto now = std::chrono::steady_clock::now();
    laps_[name] = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
  }
  const json& laps() const { return laps_; }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
  json laps_ = json::object();
};

VertexPair parse_pair(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("expected a pair x,y but got '" + s + "'");
  try {
    return {static_cast<Vertex>(std::stoul(s.substr(0, comma))), static_cast<Vertex>(std::stoul(s.substr(comma + 1)))};
  } catch (const std::exception&) {
    throw UsageError("expected a pair x,y but got '" + s + "'");
  }
}

void check_pair(const Hypergraph3& H, VertexPair p) {
  H.check_vertex(p.first);
  H.check_vertex(p.second);
  if (p.first == p.second) throw PreconditionError("pair endpoints must differ");
}

json instance_json(const Hypergraph3& H, const std::string& file) {
  json j = to_json(H);
  if (!file.empty()) j["file"] = file;
  return j;
}

json cycle_json(const Hypergraph3& H, const TightPath& c) {
  // Every cycle leaving the tool is re-checked against the host.
  if (!verify(H, c)) throw std::logic_error("internal error: cycle failed re-verification");
  return to_json(c);
}

void print_text(std::ostream& out, const json& j, const std::string& indent = "") {
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      out << indent << k << ":\n";
      print_text(out, v, indent + "  ");
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        out << indent << k << "[" << i << "]:\n";
        print_text(out, v[i], indent + "  ");
      }
    } else {
      out << indent << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

void emit(const Global& g, const json& report) {
  if (g.format == "text") {
    print_text(std::cout, report);
  } else {
    std::cout << report.dump(2) << "\n";
  }
}

json envelope(const Global& g) {
  json j;
  j["schema_version"] = kJsonSchemaVersion;
  j["command"] = g.argv;
  return j;
}

void need_seed(const Global& g, const CLI::Option* seed, const std::string& what) {
  if (g.strict && seed->count() == 0) throw UsageError(what + " is randomized: --seed is required with --strict");
}

// ---------------------------------------------------------------------------
// Subcommand state

struct GenArgs {
  std::string family;
  std::size_t n = 0;
  double p = 0.5;
  std::uint64_t seed = 0;
  bool xy = false;
  std::size_t t = 4;
  std::string base;
  std::string out;
  CLI::Option* seed_opt = nullptr;
};

struct DensityArgs {
  std::string notion;
  double d = 0.5;
  std::string mode = "exact";
  std::uint64_t samples = 100000;
  std::size_t restarts = 32;
  std::uint64_t seed = 0;
  std::string file;
  CLI::Option* seed_opt = nullptr;
};

struct MotifArgs {
  std::string count;
  std::string find;
  std::string pattern;
  bool homomorphic = false;
  std::uint64_t cap = 0;
  std::uint64_t samples = 0;
  std::uint64_t budget = 200000;
  std::uint64_t seed = 0;
  std::string file;
  CLI::Option* seed_opt = nullptr;
};

struct HamiltonArgs {
  std::string mode = "ev";
  double beta = 0.05;
  double gamma = 0.15;
  std::uint64_t seed = 0;
  std::size_t retries = 5;
  std::size_t max_inner = 15;
  std::size_t exact_inner = 0;
  std::uint64_t budget = 200000;
  std::string from, to;
  std::string file;
  CLI::Option* seed_opt = nullptr;
};

struct OracleArgs {
  std::string from, to;
  std::size_t inner = 0;
  std::string file;
};

// ---------------------------------------------------------------------------
// Handlers. Each fills `report` and returns the exit code.

int run_gen(const Global& g, const GenArgs& a, json& report) {
  const Family fam = parse_family(a.family);
  if (fam == Family::random || fam == Family::example1 || fam == Family::hp) need_seed(g, a.seed_opt, "gen");
  Timer timer;
  GenSpec spec;
  spec.family = fam;
  spec.n = a.n;
  spec.p = a.p;
  spec.seed = a.seed;
  spec.include_xy_edges = a.xy;
  spec.t = a.t;
  std::optional<Hypergraph3> base;
  if (fam == Family::blowup) {
    if (a.base.empty()) throw UsageError("--family blowup needs --base file.h3");
    base = read_h3_file(a.base);
    spec.base = &*base;
  }
  const auto H = generate(spec);
  timer.lap("generate");
  if (a.out.empty()) {
    std::cout << to_h3_string(H);
    return kOk;
  }
  write_h3_file(a.out, H);
  timer.lap("write");
  report["seed"] = a.seed;
  report["instance"] = instance_json(H, a.out);
  report["result"] = {{"family", family_name(fam)}, {"output", a.out}};
  report["timings_ms"] = timer.laps();
  emit(g, report);
  return kOk;
}

int run_density(const Global& g, const DensityArgs& a, json& report) {
  const Mode mode = parse_mode(a.mode);
  if (mode != Mode::exact) need_seed(g, a.seed_opt, "density --mode " + a.mode);
  Timer timer;
  const auto H = read_h3_file(a.file);
  timer.lap("read");
  DensityOptions opt;
  opt.seed = a.seed;
  opt.samples = a.samples;
  opt.restarts = a.restarts;
  const auto r = deviation(H, parse_notion(a.notion), a.d, mode, opt);
  timer.lap("measure");
  report["seed"] = a.seed;
  report["instance"] = instance_json(H, a.file);
  report["result"] = to_json(r);
  report["timings_ms"] = timer.laps();
  emit(g, report);
  return kOk;
}

int run_motifs(const Global& g, const MotifArgs& a, json& report) {
  if (a.count.empty() == a.find.empty()) throw UsageError("motifs needs exactly one of --count or --find");
  const bool randomized = a.samples > 0 || a.find == "turn" || a.find == "k333" || a.find == "c84";
  if (randomized) need_seed(g, a.seed_opt, "motifs");
  Timer timer;
  const auto H = read_h3_file(a.file);
  timer.lap("read");
  report["seed"] = a.seed;
  report["instance"] = instance_json(H, a.file);
  const auto cap = a.cap > 0 ? std::optional<std::uint64_t>(a.cap) : std::nullopt;
  int code = kOk;
  json result;
  if (a.count == "k4minus") {
    result = to_json(a.samples > 0 ? sample_k4minus(H, a.samples, a.seed) : count_k4minus(H, cap));
  } else if (a.count == "cherries") {
    const auto all = PairSet::all(H.n(), false);
    result = to_json(count_cherries(H, all, all, cap));
  } else if (a.count == "embeddings") {
    if (a.pattern.empty()) throw UsageError("--count embeddings needs --pattern file.h3");
    const auto F = read_h3_file(a.pattern);
    result = to_json(count_embeddings(F, H, a.homomorphic ? EmbedMode::homomorphic : EmbedMode::injective, cap));
  } else if (a.find == "turn") {
    const auto turns = find_turns(H, a.samples > 0 ? a.samples : 20000, a.seed, 1);
    result = {{"gadget", "turn"}, {"found", !turns.empty()}};
    if (!turns.empty()) {
      result["turn"] = to_json(turns.front());
      json paths = json::array();
      for (const auto& p : turn_paths(turns.front())) {
        if (!verify_tight_path(H, p)) throw std::logic_error("internal error: turn path failed re-verification");
        paths.push_back(p);
      }
      result["paths"] = paths;
    }
    code = turns.empty() ? kAbsent : kOk;
  } else if (a.find == "k333") {
    const auto k = find_k333(H, Bitset(H.n()), 64, a.seed, a.budget);
    result = {{"gadget", "k333"}, {"found", k.has_value()}};
    if (k) {
      result["classes"] = *k;
      result["long_path"] = k333_long_path(*k);
      result["short_path"] = k333_short_path(*k);
    }
    code = k ? kOk : kAbsent;
  } else if (a.find == "c8") {
    const auto c = find_c8(H, a.budget);
    result = {{"gadget", "c8"}, {"found", c.has_value()}};
    if (c) result["cycle"] = cycle_json(H, *c);
    code = c ? kOk : kAbsent;
  } else if (a.find == "c84") {
    const auto b = find_c8_blowup(H, a.budget, a.seed);
    result = {{"gadget", "c84"}, {"found", b.has_value()}};
    if (b) {
      if (!is_c8_blowup(H, *b)) throw std::logic_error("internal error: C8(4) failed re-verification");
      result["blowup"] = to_json(*b);
    }
    code = b ? kOk : kAbsent;
  }
  timer.lap("search");
  report["result"] = result;
  report["timings_ms"] = timer.laps();
  emit(g, report);
  return code;
}

int run_hamilton_find(const Global& g, const HamiltonArgs& a, json& report) {
  need_seed(g, a.seed_opt, "hamilton find");
  Timer timer;
  const auto H = read_h3_file(a.file);
  timer.lap("read");
  PipelineParams params;
  params.mode = parse_hamilton_mode(a.mode);
  params.beta = a.beta;
  params.gamma = a.gamma;
  params.seed = a.seed;
  params.retries = a.retries;
  params.max_inner = a.max_inner;
  const auto r = find_tight_hamilton(H, params);
  timer.lap("pipeline");
  json result = to_json(r);
  if (r.cycle) result["cycle"] = cycle_json(H, *r.cycle);
  report["seed"] = a.seed;
  report["instance"] = instance_json(H, a.file);
  report["result"] = result;
  report["timings_ms"] = timer.laps();
  emit(g, report);
  return r.cycle ? kOk : kAbsent;
}

int run_hamilton_connect(const Global& g, const HamiltonArgs& a, json& report) {
  need_seed(g, a.seed_opt, "hamilton connect");
  Timer timer;
  const auto H = read_h3_file(a.file);
  timer.lap("read");
  const auto from = parse_pair(a.from), to = parse_pair(a.to);
  check_pair(H, from);
  check_pair(H, to);
  ConnectOptions opt;
  opt.max_inner = a.max_inner;
  opt.budget = a.budget;
  opt.seed = a.seed;
  if (a.exact_inner > 0) opt.exact_inner = a.exact_inner;
  const auto r = connect(H, from, to, Bitset::full(H.n()), opt);
  timer.lap("connect");
  if (!r.path && r.budget_exhausted) {
    throw BudgetExceeded("connection search exhausted its budget of " + std::to_string(a.budget) + " expansions");
  }
  json result = {{"found", r.path.has_value()}, {"expansions", r.expansions}, {"budget_exhausted", r.budget_exhausted}};
  if (r.path) {
    if (!verify(H, *r.path)) throw std::logic_error("internal error: connection failed re-verification");
    result["path"] = to_json(*r.path);
    result["inner"] = r.inner;
  }
  report["seed"] = a.seed;
  report["instance"] = instance_json(H, a.file);
  report["result"] = result;
  report["timings_ms"] = timer.laps();
  emit(g, report);
  return r.path ? kOk : kAbsent;
}

int run_hamilton_cover(const Global& g, const HamiltonArgs& a, json& report) {
  need_seed(g, a.seed_opt, "hamilton cover");
  Timer timer;
  const auto H = read_h3_file(a.file);
  timer.lap("read");
  const auto c = almost_cover(H, a.beta, a.gamma, a.seed);
  timer.lap("cover");
  for (const auto& p : c.paths)
    if (!verify(H, p)) throw std::logic_error("internal error: cover path failed re-verification");
  report["seed"] = a.seed;
  report["instance"] = instance_json(H, a.file);
  report["result"] = to_json(c);
  report["timings_ms"] = timer.laps();
  emit(g, report);
  return c.paths.empty() ? kAbsent : kOk;
}

int run_oracle_hamilton(const Global& g, const OracleArgs& a, json& report) {
  Timer timer;
  const auto H = read_h3_file(a.file);
  timer.lap("read");
  const auto c = extract_tight_hamilton(H);
  timer.lap("oracle");
  json result = {{"hamiltonian", c.has_value()}};
  if (c) result["cycle"] = cycle_json(H, *c);
  report["instance"] = instance_json(H, a.file);
  report["result"] = result;
  report["timings_ms"] = timer.laps();
  emit(g, report);
  return c ? kOk : kAbsent;
}

int run_oracle_count(const Global& g, const OracleArgs& a, json& report) {
  Timer timer;
  const auto H = read_h3_file(a.file);
  timer.lap("read");
  const auto from = parse_pair(a.from), to = parse_pair(a.to);
  check_pair(H, from);
  check_pair(H, to);
  const auto count = count_paths_between(H, from, to, a.inner);
  timer.lap("count");
  report["instance"] = instance_json(H, a.file);
  report["result"] = {{"from", from}, {"to", to}, {"inner", a.inner}, {"count", count}};
  report["timings_ms"] = timer.laps();
  emit(g, report);
  return kOk;
}

int run_bench(const Global& g, json& report) {
  const auto all = acceptance::criteria();
  std::vector<acceptance::Outcome> outcomes(all.size());
  std::vector<double> secs(all.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < all.size();) {
      const auto t0 = std::chrono::steady_clock::now();
      try {
        outcomes[i] = all[i].run();
      } catch (const std::exception& e) {
        outcomes[i] = {false, std::string("exception: ") + e.what()};
      }
      secs[i] = acceptance::seconds_since(t0);
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::max<std::size_t>(1, g.threads); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::size_t failed = 0;
  json rows = json::array();
  for (std::size_t i = 0; i < all.size(); ++i) {
    failed += !outcomes[i].pass;
    rows.push_back({{"criterion", i + 1},
                    {"name", all[i].name},
                    {"pass", outcomes[i].pass},
                    {"detail", outcomes[i].detail},
                    {"seconds", secs[i]}});
  }
  report["result"] = {{"criteria", rows}, {"failed", failed}, {"threads", g.threads}};
  if (g.format == "text") {
    std::printf("%-3s %-5s %8s  %s\n", "#", "pass", "seconds", "criterion");
    for (std::size_t i = 0; i < all.size(); ++i)
      std::printf("%-3zu %-5s %8.2f  %s: %s\n", i + 1, outcomes[i].pass ? "yes" : "NO", secs[i], all[i].name,
                  outcomes[i].detail.c_str());
    std::printf("%zu of %zu criteria failed\n", failed, all.size());
  } else {
    emit(g, report);
  }
  return failed == 0 ? kOk : kAbsent;
}

}  // namespace

int main(int argc, char** argv) {
  Global g;
  g.argv.assign(argv, argv + argc);

  CLI::App app{"Tight Hamilton cycles in uniformly dense 3-graphs"};
  app.require_subcommand(1);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--threads", g.threads, "Worker threads (default: HYPERHAM_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--strict", g.strict, "Require --seed for randomized subcommands");

  GenArgs ga;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("--family", ga.family)
      ->required()
      ->check(CLI::IsMember({"complete", "tight_cycle", "random", "example1", "hp", "k333", "c8", "c8_blowup",
                             "blowup"}));
  gen_cmd->add_option("--n", ga.n, "Vertex count");
  gen_cmd->add_option("--p", ga.p, "Edge or colouring probability")->check(CLI::Range(0.0, 1.0));
  ga.seed_opt = gen_cmd->add_option("--seed", ga.seed);
  gen_cmd->add_flag("--xy-edges", ga.xy, "Add the edges through both apex vertices");
  gen_cmd->add_option("--t", ga.t, "Class size (c8_blowup) or clone count (blowup)");
  gen_cmd->add_option("--base", ga.base, "Base instance for blowup")->check(CLI::ExistingFile);
  gen_cmd->add_option("-o,--output", ga.out, "Output .h3 file (stdout when omitted)");

  DensityArgs da;
  auto* den_cmd = app.add_subcommand("density", "Measure a uniform-density deviation");
  den_cmd->add_option("--notion", da.notion)->required()->check(CLI::IsMember({"vvv", "ev", "ee"}));
  den_cmd->add_option("--d", da.d)->required()->check(CLI::Range(0.0, 1.0));
  den_cmd->add_option("--mode", da.mode)->check(CLI::IsMember({"exact", "heuristic", "sampled"}));
  den_cmd->add_option("--samples", da.samples)->check(CLI::PositiveNumber);
  den_cmd->add_option("--restarts", da.restarts);
  da.seed_opt = den_cmd->add_option("--seed", da.seed);
  den_cmd->add_option("file", da.file)->required()->check(CLI::ExistingFile);

  MotifArgs ma;
  auto* mot_cmd = app.add_subcommand("motifs", "Count motifs or search for gadgets");
  mot_cmd->add_option("--count", ma.count)->check(CLI::IsMember({"k4minus", "cherries", "embeddings"}));
  mot_cmd->add_option("--find", ma.find)->check(CLI::IsMember({"turn", "k333", "c8", "c84"}));
  mot_cmd->add_option("--pattern", ma.pattern, "Pattern hypergraph for --count embeddings")->check(CLI::ExistingFile);
  mot_cmd->add_flag("--homomorphic", ma.homomorphic, "Count homomorphisms instead of embeddings");
  mot_cmd->add_option("--cap", ma.cap, "Stop counting at this value (0 = no cap)");
  mot_cmd->add_option("--samples", ma.samples, "Sample instead of enumerating");
  mot_cmd->add_option("--budget", ma.budget, "Search budget in node expansions");
  ma.seed_opt = mot_cmd->add_option("--seed", ma.seed);
  mot_cmd->add_option("file", ma.file)->required()->check(CLI::ExistingFile);

  HamiltonArgs ha;
  auto* ham_cmd = app.add_subcommand("hamilton", "Tight Hamilton cycle pipeline and its stages");
  ham_cmd->require_subcommand(1);
  auto add_common = [&](CLI::App* c) {
    ha.seed_opt = c->add_option("--seed", ha.seed);
    c->add_option("file", ha.file)->required()->check(CLI::ExistingFile);
  };
  auto* find_cmd = ham_cmd->add_subcommand("find", "Run the full pipeline");
  find_cmd->add_option("--mode", ha.mode)->check(CLI::IsMember({"ev", "ee"}));
  find_cmd->add_option("--beta", ha.beta);
  find_cmd->add_option("--gamma", ha.gamma);
  find_cmd->add_option("--retries", ha.retries);
  find_cmd->add_option("--max-inner", ha.max_inner);
  add_common(find_cmd);
  auto* conn_cmd = ham_cmd->add_subcommand("connect", "Connect two ordered pairs by a tight path");
  conn_cmd->add_option("--from", ha.from, "Start pair x,y")->required();
  conn_cmd->add_option("--to", ha.to, "End pair z,w")->required();
  conn_cmd->add_option("--max-inner", ha.max_inner);
  conn_cmd->add_option("--exact-inner", ha.exact_inner, "Only this many inner vertices");
  conn_cmd->add_option("--budget", ha.budget, "Node expansion budget");
  add_common(conn_cmd);
  auto* cover_cmd = ham_cmd->add_subcommand("cover", "Cover most vertices by disjoint tight paths");
  cover_cmd->add_option("--beta", ha.beta);
  cover_cmd->add_option("--gamma", ha.gamma);
  add_common(cover_cmd);

  OracleArgs oa;
  auto* ora_cmd = app.add_subcommand("oracle", "Exact small-instance oracles");
  ora_cmd->require_subcommand(1);
  auto* oh_cmd = ora_cmd->add_subcommand("hamilton", "Decide tight Hamiltonicity (n <= 20)");
  oh_cmd->add_option("file", oa.file)->required()->check(CLI::ExistingFile);
  auto* oc_cmd = ora_cmd->add_subcommand("count-paths", "Count tight paths between two pairs");
  oc_cmd->add_option("--from", oa.from)->required();
  oc_cmd->add_option("--to", oa.to)->required();
  oc_cmd->add_option("--inner", oa.inner)->required();
  oc_cmd->add_option("file", oa.file)->required()->check(CLI::ExistingFile);

  auto* bench_cmd = app.add_subcommand("bench", "Run the acceptance suites and print a summary table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  json report = envelope(g);
  try {
    if (*gen_cmd) return run_gen(g, ga, report);
    if (*den_cmd) return run_density(g, da, report);
    if (*mot_cmd) return run_motifs(g, ma, report);
    if (*find_cmd) return run_hamilton_find(g, ha, report);
    if (*conn_cmd) return run_hamilton_connect(g, ha, report);
    if (*cover_cmd) return run_hamilton_cover(g, ha, report);
    if (*oh_cmd) return run_oracle_hamilton(g, oa, report);
    if (*oc_cmd) return run_oracle_count(g, oa, report);
    if (*bench_cmd) return run_bench(g, report);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    report["error"] = {{"kind", "budget"}, {"message", e.what()}};
    std::cout << report.dump(2) << "\n";
    return kError;
  } catch (const std::exception& e) {
    report["error"] = {{"kind", "precondition"}, {"message", e.what()}};
    std::cout << report.dump(2) << "\n";
    return kError;
  }
  return kUsage;
}
