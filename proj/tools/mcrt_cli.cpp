// mcrt: command-line front end for the mated-CRT map library.
//
//   mcrt simulate   build one graph and dump its edge list
//   mcrt experiment run a Monte Carlo experiment (JSON config and/or flags)
//   mcrt bounds     print the closed-form exponent bounds for gamma values
//   mcrt mullin     enumerate / round-trip / decode quadrant walks
//   mcrt selftest   run the invariant suite
//
// Exit codes: 0 success, 1 configuration error, 2 failed check.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcrt/bounds.hpp"
#include "mcrt/error.hpp"
#include "mcrt/experiments.hpp"
#include "mcrt/mated_graph.hpp"
#include "mcrt/mullin.hpp"
#include "mcrt/paths.hpp"
#include "mcrt/selftest.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitCheck = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts a decimal number, "sqrt(x)" or "sqrt(a/b)".
double parse_gamma(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto number = [&](const std::string& t) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse gamma '" + text + "'");
    }
    if (used != t.size()) throw ConfigError("cannot parse gamma '" + text + "'");
    return v;
  };
  if (s.rfind("sqrt(", 0) == 0 && s.back() == ')') {
    const std::string inner = s.substr(5, s.size() - 6);
    const auto slash = inner.find('/');
    double v = slash == std::string::npos
                   ? number(inner)
                   : number(inner.substr(0, slash)) / number(inner.substr(slash + 1));
    return std::sqrt(v);
  }
  return number(s);
}

std::vector<double> parse_gamma_list(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) out.push_back(parse_gamma(tok));
  }
  return out;
}

std::vector<long> parse_scales(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    const auto dots = tok.find("..");
    try {
      if (dots != std::string::npos) {
        const long a = std::stol(tok.substr(0, dots)), b = std::stol(tok.substr(dots + 2));
        for (long v = a; v <= b; ++v) out.push_back(v);
      } else {
        out.push_back(std::stol(tok));
      }
    } catch (const std::exception&) {
      throw ConfigError("cannot parse scales '" + text + "'");
    }
  }
  return out;
}

std::uint64_t parse_seed(const std::string& text) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used, 0);
    if (used != text.size()) throw ConfigError("bad seed");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse seed '" + text + "'");
  }
}

// Seed precedence: flag, then config file, then MCRT_SEED, then 1.
std::uint64_t fallback_seed() {
  if (const char* env = std::getenv("MCRT_SEED")) return parse_seed(env);
  return 1;
}

// Writes to --out when given, stdout otherwise.
class Output {
public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

struct SimulateOpts {
  std::string gamma = "sqrt(2)";
  std::string kind = "unconditioned";
  std::string rule = "continuous";
  std::size_t cells = 256;
  std::size_t cell_samples = 1;
  std::string seed;
  std::string out;
};

int run_simulate(const SimulateOpts& o) {
  const auto params = mcrt::GammaParams::make(parse_gamma(o.gamma));
  const std::uint64_t seed = o.seed.empty() ? fallback_seed() : parse_seed(o.seed);
  const auto kind = mcrt::parse_path_kind(o.kind);
  std::optional<mcrt::PathSample> path;
  if (kind == mcrt::PathKind::LatticeQuadrantBridge) {
    if (o.cells % 2 != 0) throw ConfigError("lattice walks need an even number of steps");
    path = mcrt::sample_lattice_walk(o.cells * o.cell_samples / 2, {seed, 0},
                                     mcrt::LatticeMethod::Rejection);
  } else {
    const std::size_t M = o.cells * o.cell_samples;
    path = mcrt::sample_path(params, kind, M, 1.0 / static_cast<double>(M), {seed, 0});
  }
  mcrt::AdjacencyRule rule;
  if (o.rule == "continuous") {
    rule = mcrt::AdjacencyRule::Continuous;
  } else if (o.rule == "lattice") {
    rule = mcrt::AdjacencyRule::Lattice;
  } else {
    throw ConfigError("rule must be 'continuous' or 'lattice'");
  }
  const auto g = mcrt::build_graph(*path, mcrt::CellDecomposition::for_path(*path, o.cell_samples), rule);
  Output out(o.out);
  out.stream() << "# vertices " << g.size() << " edges " << g.edge_count() << '\n';
  mcrt::write_edge_list(out.stream(), g);
  return kExitOk;
}

struct ExperimentOpts {
  std::string config;
  std::string kind, gamma, scales, seed, format, out, diameter_method;
  std::size_t replicates = 0, cell_samples = 0;
  unsigned jobs = 0;
};

mcrt::ExperimentConfig load_experiment_config(const ExperimentOpts& o, const CLI::App& app,
                                              std::string& format, std::string& out_path) {
  using nlohmann::json;
  json j = json::object();
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw ConfigError("cannot read config file '" + o.config + "'");
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ConfigError(std::string("malformed config: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
  }
  mcrt::ExperimentConfig c;
  try {
    if (j.contains("kind")) c.kind = mcrt::parse_experiment_kind(j["kind"].get<std::string>());
    if (j.contains("gamma"))
      c.gamma = j["gamma"].is_string() ? parse_gamma(j["gamma"].get<std::string>()) : j["gamma"].get<double>();
    if (j.contains("scales")) c.scales = j["scales"].get<std::vector<long>>();
    if (j.contains("replicates")) c.replicates = j["replicates"].get<std::size_t>();
    c.master_seed = j.contains("seed") ? j["seed"].get<std::uint64_t>() : fallback_seed();
    if (j.contains("diameter_method")) {
      const auto m = j["diameter_method"].get<std::string>();
      if (m != "exact" && m != "double_sweep") throw ConfigError("diameter_method must be exact or double_sweep");
      c.diameter_method = m == "exact" ? mcrt::DiameterMethod::Exact : mcrt::DiameterMethod::DoubleSweep;
    }
    if (j.contains("sweep_rounds")) c.sweep_rounds = j["sweep_rounds"].get<int>();
    if (j.contains("exact_threshold")) c.exact_threshold = j["exact_threshold"].get<std::size_t>();
    if (j.contains("cell_samples")) c.cell_samples = j["cell_samples"].get<std::size_t>();
    if (j.contains("window_cells")) c.window_cells = j["window_cells"].get<std::size_t>();
    if (j.contains("delta")) c.delta = j["delta"].get<double>();
    if (j.contains("steps_per_unit")) c.steps_per_unit = j["steps_per_unit"].get<std::size_t>();
    if (j.contains("m_values")) c.m_values = j["m_values"].get<std::vector<long>>();
    if (j.contains("chi_hat")) c.chi_hat = j["chi_hat"].get<double>();
    if (j.contains("frequency_threshold")) c.frequency_threshold = j["frequency_threshold"].get<double>();
    if (j.contains("jobs")) c.jobs = j["jobs"].get<unsigned>();
    if (j.contains("format")) format = j["format"].get<std::string>();
    if (j.contains("out")) out_path = j["out"].get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  // flags override file values
  if (app.count("--kind")) c.kind = mcrt::parse_experiment_kind(o.kind);
  if (app.count("--gamma")) c.gamma = parse_gamma(o.gamma);
  if (app.count("--scales")) c.scales = parse_scales(o.scales);
  if (app.count("--replicates")) c.replicates = o.replicates;
  if (app.count("--seed")) c.master_seed = parse_seed(o.seed);
  if (app.count("--jobs")) c.jobs = o.jobs;
  if (app.count("--cell-samples")) c.cell_samples = o.cell_samples;
  if (app.count("--diameter-method")) {
    if (o.diameter_method != "exact" && o.diameter_method != "double_sweep")
      throw ConfigError("diameter-method must be exact or double_sweep");
    c.diameter_method =
        o.diameter_method == "exact" ? mcrt::DiameterMethod::Exact : mcrt::DiameterMethod::DoubleSweep;
  }
  if (app.count("--format")) format = o.format;
  if (app.count("--out")) out_path = o.out;
  if (format != "csv" && format != "json" && format != "plot")
    throw ConfigError("format must be csv, json or plot");
  return c;
}

int run_experiment_cmd(const ExperimentOpts& o, const CLI::App& app) {
  std::string format = "csv", out_path;
  const auto cfg = load_experiment_config(o, app, format, out_path);
  const auto result = mcrt::run_experiment(cfg);
  Output out(out_path);
  if (format == "csv") mcrt::write_csv(out.stream(), result);
  if (format == "json") mcrt::write_json(out.stream(), result);
  if (format == "plot") mcrt::write_plot(out.stream(), result);
  for (const auto& ch : result.checks)
    std::cerr << (ch.pass ? "PASS " : "FAIL ") << ch.name << ": " << ch.detail << '\n';
  if (result.fit)
    std::cerr << std::setprecision(17) << "fit slope " << result.fit->slope << " +- "
              << result.fit->slope_stderr << '\n';
  return result.all_checks_pass() ? kExitOk : kExitCheck;
}

int run_bounds(const std::vector<std::string>& gammas, const std::string& format, const std::string& out_path) {
  const auto list = parse_gamma_list(gammas.empty() ? std::vector<std::string>{"sqrt(2)", "sqrt(8/3)", "sqrt(3)"} : gammas);
  Output out(out_path);
  auto& os = out.stream();
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (double g : list) {
      const auto b = mcrt::exponent_bounds(g);
      arr.push_back({{"gamma", b.gamma}, {"watabiki_d", b.watabiki_d}, {"d_minus", b.d_minus},
                     {"d_plus", b.d_plus}, {"xi_minus", b.xi_minus}, {"chi_lower", b.chi_lower},
                     {"chi_upper", b.chi_upper}});
    }
    os << arr.dump(2) << '\n';
    return kExitOk;
  }
  if (format != "csv") throw ConfigError("format must be csv or json");
  os << "gamma,watabiki_d,d_minus,d_plus,xi_minus,chi_lower,chi_upper\n" << std::setprecision(17);
  for (double g : list) {
    const auto b = mcrt::exponent_bounds(g);
    os << b.gamma << ',' << b.watabiki_d << ',' << b.d_minus << ',' << b.d_plus << ','
       << b.xi_minus << ',' << b.chi_lower << ',' << b.chi_upper << '\n';
  }
  return kExitOk;
}

int run_mullin(const std::string& action, int n, const std::string& walk, const std::string& out_path) {
  Output out(out_path);
  auto& os = out.stream();
  if (action == "enumerate") {
    for (const auto& w : mcrt::enumerate_quadrant_walks(n)) os << w << '\n';
    return kExitOk;
  }
  if (action == "roundtrip") {
    std::size_t total = 0, bad = 0;
    for (int k = 1; k <= n; ++k)
      for (const auto& w : mcrt::enumerate_quadrant_walks(k)) {
        ++total;
        const auto p = mcrt::walk_from_string(w);
        const auto back = mcrt::trees_to_walk(mcrt::walk_to_trees(p));
        const auto g = mcrt::build_graph(p, mcrt::CellDecomposition::for_path(p, 1), mcrt::AdjacencyRule::Lattice);
        if (mcrt::walk_to_string(back) != w || !(g == mcrt::walk_to_triangle_graph(p).graph)) {
          ++bad;
          os << "mismatch " << w << '\n';
        }
      }
    os << total << " walks, " << bad << " mismatches\n";
    return bad == 0 ? kExitOk : kExitCheck;
  }
  if (action == "decode") {
    const auto p = mcrt::walk_from_string(walk);
    const auto trees = mcrt::walk_to_trees(p);
    os << "d";
    for (int v : trees.d) os << ' ' << v;
    os << "\nd_star";
    for (int v : trees.d_star) os << ' ' << v;
    os << '\n';
    mcrt::write_edge_list(os, mcrt::walk_to_triangle_graph(p).graph);
    return kExitOk;
  }
  throw ConfigError("mullin action must be enumerate, roundtrip or decode");
}

int run_selftest_cmd(const std::string& seed_text, unsigned jobs) {
  const std::uint64_t seed = seed_text.empty() ? fallback_seed() : parse_seed(seed_text);
  bool all = true;
  for (const auto& c : mcrt::run_selftest(seed, jobs)) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
    std::cout << '\n';
    all = all && c.pass;
  }
  return all ? kExitOk : kExitCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mated-CRT map simulation and exponent estimation"};
  app.require_subcommand(1);

  SimulateOpts sim;
  auto* simulate = app.add_subcommand("simulate", "build one structure graph and dump its edge list");
  simulate->add_option("--gamma", sim.gamma, "gamma in (0,2); accepts sqrt(a/b)");
  simulate->add_option("--kind", sim.kind, "unconditioned|bridge|excursion|meander|lattice");
  simulate->add_option("--rule", sim.rule, "continuous|lattice");
  simulate->add_option("--cells", sim.cells, "number of cells N")->check(CLI::PositiveNumber);
  simulate->add_option("--cell-samples", sim.cell_samples, "samples per cell K")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "master seed (default: MCRT_SEED or 1)");
  simulate->add_option("--out", sim.out, "output file (default stdout)");

  ExperimentOpts ex;
  auto* experiment = app.add_subcommand("experiment", "run a Monte Carlo experiment");
  experiment->add_option("--config", ex.config, "JSON config file; flags override its values");
  experiment->add_option("--kind", ex.kind, "experiment kind, e.g. DiameterScaling");
  experiment->add_option("--gamma", ex.gamma, "gamma in (0,2); accepts sqrt(a/b)");
  experiment->add_option("--scales", ex.scales, "comma list, ranges allowed: 6..12");
  experiment->add_option("--replicates", ex.replicates, "replicates per scale");
  experiment->add_option("--seed", ex.seed, "master seed");
  experiment->add_option("--jobs", ex.jobs, "worker threads (0 = hardware)");
  experiment->add_option("--cell-samples", ex.cell_samples, "samples per cell");
  experiment->add_option("--diameter-method", ex.diameter_method, "exact|double_sweep");
  experiment->add_option("--out", ex.out, "output file (default stdout)");
  experiment->add_option("--format", ex.format, "csv|json|plot");

  std::vector<std::string> bound_gammas;
  std::string bounds_format = "csv", bounds_out;
  auto* bounds = app.add_subcommand("bounds", "print closed-form exponent bounds");
  bounds->add_option("--gamma", bound_gammas, "gamma values (comma list or repeated)");
  bounds->add_option("--format", bounds_format, "csv|json");
  bounds->add_option("--out", bounds_out, "output file (default stdout)");

  std::string mullin_action, mullin_walk, mullin_out;
  int mullin_n = 2;
  auto* mullin = app.add_subcommand("mullin", "quadrant walks and triangle graphs");
  mullin->add_option("action", mullin_action, "enumerate|roundtrip|decode")->required();
  mullin->add_option("--n", mullin_n, "walk half-length n (enumerate, roundtrip)");
  mullin->add_option("--walk", mullin_walk, "EWNS string (decode)");
  mullin->add_option("--out", mullin_out, "output file (default stdout)");

  std::string self_seed;
  unsigned self_jobs = 0;
  auto* selftest = app.add_subcommand("selftest", "run the invariant suite");
  selftest->add_option("--seed", self_seed, "master seed");
  selftest->add_option("--jobs", self_jobs, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*simulate) return run_simulate(sim);
    if (*experiment) return run_experiment_cmd(ex, *experiment);
    if (*bounds) return run_bounds(bound_gammas, bounds_format, bounds_out);
    if (*mullin) return run_mullin(mullin_action, mullin_n, mullin_walk, mullin_out);
    if (*selftest) return run_selftest_cmd(self_seed, self_jobs);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const mcrt::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
