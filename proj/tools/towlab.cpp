// towlab: command-line laboratory for the tug-of-war game with noise and
// running payoff.  Six subcommands share one option vocabulary:
//
//   solve      fixed point of the dynamic-programming operator, grid dump
//   simulate   Monte Carlo play on a solved field, payoff / stopping-time rows
//   walk       1-D auxiliary walk on the unit interval, stopping-time rows
//   cylinder   cylinder walk, bottom-escape failure probabilities
//   verify     regularity estimates (oscillation, Harnack, comparison, ...)
//   converge   manufactured-solution error table over an epsilon family
//
// Every command writes a versioned JSON report (<command>.json) that echoes
// the effective configuration with defaults filled in; tabular data goes to
// CSV files next to it (or into the report itself under --format json).
// All randomness derives from --seed, so a fixed (config, seed) reproduces
// every output byte; the one exception is the wall-clock runtime_seconds
// column of the convergence table.
//
// Exit codes: 0 success, 1 bad configuration (the diagnostic names the
// offending flag), 2 numerical failure (error.json holds the details).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tow/domain.hpp"
#include "tow/dpp.hpp"
#include "tow/errors.hpp"
#include "tow/field.hpp"
#include "tow/game.hpp"
#include "tow/io.hpp"
#include "tow/params.hpp"
#include "tow/pde.hpp"
#include "tow/regularity.hpp"
#include "tow/rng.hpp"
#include "tow/strategy.hpp"
#include "tow/walks.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// option bundles

struct GlobalOpts {
  std::uint64_t seed = 1;
  int threads = 0;  // 0: leave the OpenMP default alone
  std::string out = ".";
  std::string format = "csv";
  bool dump_traces = false;
};

struct ModelOpts {
  double p = 4.0;
  int n = 2;
  double epsilon = 0.1;
  double h = 0.0;  // 0: epsilon / 4
  std::string shape = "ball";
  std::vector<double> center;
  double radius = 1.0;
  std::vector<double> radii;        // annulus: inner, outer
  std::vector<double> half_widths;  // box
  std::string F = "const:1";
  std::string f = "const:1";
  bool relax_resolution = false;
  bool allow_zero_f = false;
};

struct SolverOpts {
  double tol = 0.0;  // 0: solver default
  std::uint64_t max_iter = 1'000'000;
  std::string scheme = "jacobi";
};

void add_global_options(CLI::App& app, GlobalOpts& g) {
  app.add_option("--seed", g.seed, "Master seed; every random stream derives from it")
      ->capture_default_str();
  app.add_option("--threads", g.threads, "OpenMP thread count (0: library default)")
      ->capture_default_str();
  app.add_option("--out", g.out, "Output directory, created if missing")->capture_default_str();
  app.add_option("--format", g.format, "Tabular output: csv files, or rows embedded in the report")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_flag("--dump-traces", g.dump_traces,
               "simulate: also write the first games as trace_<k>.csv");
}

void add_model_options(CLI::App* cmd, ModelOpts& m) {
  cmd->add_option("--p", m.p, "Exponent of the p-Laplacian, > 2")->capture_default_str();
  cmd->add_option("--n", m.n, "Space dimension, >= 1")->capture_default_str();
  cmd->add_option("--epsilon", m.epsilon, "Step radius of the game")->capture_default_str();
  cmd->add_option("--h", m.h, "Grid spacing (0: epsilon/4)")->capture_default_str();
  cmd->add_option("--shape", m.shape, "Domain shape")
      ->check(CLI::IsMember({"box", "ball", "annulus"}))
      ->capture_default_str();
  cmd->add_option("--center", m.center, "Domain center, n comma-separated coordinates")
      ->delimiter(',');
  cmd->add_option("--radius", m.radius, "Ball radius")->capture_default_str();
  cmd->add_option("--radii", m.radii, "Annulus radii: inner,outer")->delimiter(',')->expected(2);
  cmd->add_option("--half-widths", m.half_widths, "Box half-widths, one per axis")->delimiter(',');
  cmd->add_option("--F", m.F,
                  "Boundary payoff: const:c | linear:a0,b1,..,bn | quadratic:A,c | radial:c0,c1,c2")
      ->capture_default_str();
  cmd->add_option("--f", m.f, "Running payoff, same grammar as --F")->capture_default_str();
  cmd->add_flag("--relax-resolution", m.relax_resolution, "Permit h > epsilon/4 (coarse fixtures)");
  cmd->add_flag("--allow-zero-f", m.allow_zero_f, "Permit f == 0 (f < 0 stays rejected)");
}

void add_solver_options(CLI::App* cmd, SolverOpts& s) {
  cmd->add_option("--tol", s.tol, "Stopping tolerance (0: 1e-9 scaled by the payoff size)")
      ->capture_default_str();
  cmd->add_option("--max-iter", s.max_iter, "Sweep budget before NonConvergence")
      ->capture_default_str();
  cmd->add_option("--scheme", s.scheme, "Sweep order")
      ->check(CLI::IsMember({"jacobi", "gauss-seidel"}))
      ->capture_default_str();
}

// ---------------------------------------------------------------------------
// parsing helpers

std::vector<double> parse_numbers(const std::string& s, const std::string& flag) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = s.find(',', pos);
    const std::string tok =
        s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size() || !std::isfinite(v)) {
      throw tow::ValidationError(flag + ": '" + tok + "' is not a finite number in '" + s + "'");
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<double> parse_point(const std::string& s, int dim, const std::string& flag) {
  auto v = parse_numbers(s, flag);
  if (static_cast<int>(v.size()) != dim) {
    throw tow::ValidationError(flag + ": expected " + std::to_string(dim) +
                               " coordinates, got " + std::to_string(v.size()));
  }
  return v;
}

// Closed set of payoff built-ins; numeric parameters, no expression language.
tow::SpatialFn parse_payoff(const std::string& spec, int dim, const std::string& flag) {
  const std::size_t colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::vector<double> a;
  if (colon != std::string::npos) a = parse_numbers(spec.substr(colon + 1), flag);
  auto need = [&](std::size_t k, const char* what) {
    if (a.size() != k) {
      throw tow::ValidationError(flag + ": " + name + " takes " + what + ", got " +
                                 std::to_string(a.size()) + " numbers in '" + spec + "'");
    }
  };
  if (name == "const") {
    need(1, "1 parameter (const:c)");
    const double c = a[0];
    return [c](std::span<const double>) { return c; };
  }
  if (name == "linear") {
    need(static_cast<std::size_t>(dim) + 1, "1 + n parameters (linear:a0,b1,..,bn)");
    return [a](std::span<const double> x) {
      double v = a[0];
      for (std::size_t i = 0; i < x.size(); ++i) v += a[i + 1] * x[i];
      return v;
    };
  }
  if (name == "quadratic") {
    need(2, "2 parameters (quadratic:A,c -> A - c|x|^2)");
    const double A = a[0], c = a[1];
    return [A, c](std::span<const double> x) {
      double r2 = 0.0;
      for (double v : x) r2 += v * v;
      return A - c * r2;
    };
  }
  if (name == "radial") {
    need(3, "3 parameters (radial:c0,c1,c2 -> c0 + c1 |x| + c2 |x|^2)");
    const double c0 = a[0], c1 = a[1], c2 = a[2];
    return [c0, c1, c2](std::span<const double> x) {
      double r2 = 0.0;
      for (double v : x) r2 += v * v;
      return c0 + c1 * std::sqrt(r2) + c2 * r2;
    };
  }
  throw tow::ValidationError(flag + ": unknown payoff '" + name +
                             "' (const | linear | quadratic | radial)");
}

tow::Shape make_shape(const ModelOpts& m) {
  std::vector<double> c = m.center;
  if (c.empty()) c.assign(static_cast<std::size_t>(m.n), 0.0);
  if (static_cast<int>(c.size()) != m.n) {
    throw tow::ValidationError("--center: expected n = " + std::to_string(m.n) +
                               " coordinates, got " + std::to_string(c.size()));
  }
  if (m.shape == "ball") return tow::Shape::ball(c, m.radius);
  if (m.shape == "annulus") {
    if (m.radii.size() != 2) {
      throw tow::ValidationError("--radii: annulus needs inner,outer");
    }
    return tow::Shape::annulus(c, m.radii[0], m.radii[1]);
  }
  if (m.half_widths.empty()) {
    throw tow::ValidationError("--half-widths: required for --shape box");
  }
  if (static_cast<int>(m.half_widths.size()) != m.n) {
    throw tow::ValidationError("--half-widths: expected n = " + std::to_string(m.n) +
                               " values, got " + std::to_string(m.half_widths.size()));
  }
  return tow::Shape::box(c, m.half_widths);
}

std::shared_ptr<const tow::DiscreteDomain> build_model(const ModelOpts& m,
                                                       const tow::GameParams& gp) {
  const double h = m.h > 0.0 ? m.h : gp.epsilon / 4.0;
  tow::BuildOptions bo;
  bo.relax_resolution = m.relax_resolution;
  bo.allow_zero_running_payoff = m.allow_zero_f;
  return tow::build_domain(make_shape(m), gp, h, parse_payoff(m.F, m.n, "--F"),
                           parse_payoff(m.f, m.n, "--f"), bo);
}

tow::SolveOptions make_solve_options(const SolverOpts& s) {
  tow::SolveOptions o;
  o.tol = s.tol;
  o.max_iter = s.max_iter;
  o.scheme = s.scheme == "gauss-seidel" ? tow::SweepScheme::GaussSeidel
                                        : tow::SweepScheme::Jacobi;
  return o;
}

// ---------------------------------------------------------------------------
// report plumbing

json echo_global(const GlobalOpts& g, const std::string& command) {
  return json{{"command", command}, {"seed", g.seed},     {"threads", g.threads},
              {"out", g.out},       {"format", g.format}, {"dump_traces", g.dump_traces}};
}

json echo_model(const ModelOpts& m) {
  return json{{"p", m.p},
              {"n", m.n},
              {"epsilon", m.epsilon},
              {"h", m.h > 0.0 ? m.h : m.epsilon / 4.0},
              {"shape", m.shape},
              {"center", m.center.empty() ? std::vector<double>(m.n, 0.0) : m.center},
              {"radius", m.radius},
              {"radii", m.radii},
              {"half_widths", m.half_widths},
              {"F", m.F},
              {"f", m.f},
              {"relax_resolution", m.relax_resolution},
              {"allow_zero_f", m.allow_zero_f}};
}

json echo_solver(const SolverOpts& s) {
  return json{{"tol", s.tol}, {"max_iter", s.max_iter}, {"scheme", s.scheme}};
}

fs::path ensure_outdir(const GlobalOpts& g) {
  fs::path dir = g.out.empty() ? fs::path(".") : fs::path(g.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoFailure("--out: cannot create '" + dir.string() + "': " + ec.message());
  return dir;
}

template <class Fn>
void write_file(const fs::path& path, Fn&& body) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoFailure("cannot open '" + path.string() + "' for writing");
  body(os);
  os.flush();
  if (!os) throw IoFailure("write failed on '" + path.string() + "'");
}

void write_report(const fs::path& path, const json& report) {
  write_file(path, [&](std::ostream& os) { os << report.dump(2) << "\n"; });
}

std::vector<double> node_position(const tow::DiscreteDomain& dom, std::size_t node) {
  return dom.position(node);
}

json position_json(const std::vector<double>& x) {
  json arr = json::array();
  for (double v : x) arr.push_back(v);
  return arr;
}

// ---------------------------------------------------------------------------
// solve

int cmd_solve(const GlobalOpts& g, const ModelOpts& m, const SolverOpts& s,
              const std::vector<std::string>& probe_specs) {
  const auto gp = tow::GameParams::create(m.p, m.n, m.epsilon);
  const auto dom = build_model(m, gp);
  const auto res = tow::solve_value(dom, gp, make_solve_options(s));

  const fs::path dir = ensure_outdir(g);
  write_file(dir / "solution.grid",
             [&](std::ostream& os) { tow::write_grid_dump(os, res.u, gp); });

  // Probes sample the solved field by multilinear interpolation; a probe whose
  // interpolation cell touches an Exterior node reports nan rather than a
  // fabricated value.
  json probes = json::array();
  for (const auto& spec : probe_specs) {
    const auto x = parse_point(spec, m.n, "--probe");
    const double v = tow::multilinear_sample(res.u, x);
    probes.push_back(json{{"x", position_json(x)}, {"value", v}});
  }
  if (g.format == "csv") {
    write_file(dir / "probes.csv", [&](std::ostream& os) {
      for (int a = 0; a < m.n; ++a) os << (a ? "," : "") << "x" << a;
      os << ",value\n";
      for (const auto& row : probes) {
        for (const auto& c : row["x"]) os << tow::format_double(c.get<double>()) << ',';
        os << tow::format_double(row["value"].get<double>()) << "\n";
      }
    });
  }

  json report{{"schema", "towlab-report/1"},
              {"config", {{"global", echo_global(g, "solve")},
                          {"model", echo_model(m)},
                          {"solver", echo_solver(s)}}},
              {"nodes", dom->node_count()},
              {"interior_nodes", dom->interior.size()},
              {"iterations", res.iterations},
              {"residual", res.residual},
              {"monotone", res.monotone},
              {"probes", probes}};
  write_report(dir / "solve.json", report);
  std::cout << "solve: " << dom->interior.size() << " interior nodes, " << res.iterations
            << " sweeps, residual " << tow::format_double(res.residual) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimOpts {
  std::vector<double> start;  // empty: shape center
  std::uint64_t games = 10'000;
  std::string max_rule = "greedy";
  std::string min_rule = "greedy";
  std::uint64_t step_cap = tow::kDefaultStepCap;
};

tow::Strategy parse_strategy(const std::string& spec, const tow::ScalarField& u, bool is_max,
                             const std::string& flag) {
  if (spec == "greedy") return is_max ? tow::Strategy::greedy_max(u) : tow::Strategy::greedy_min(u);
  if (spec == "still") return tow::Strategy::stand_still();
  if (spec.rfind("pull:", 0) == 0) {
    const auto x = parse_point(spec.substr(5), u.domain->dim(), flag);
    return tow::Strategy::pull_toward(u.domain->nearest_node(x));
  }
  throw tow::ValidationError(flag + ": unknown strategy '" + spec +
                             "' (greedy | still | pull:x0,..)");
}

int cmd_simulate(const GlobalOpts& g, const ModelOpts& m, const SolverOpts& s, const SimOpts& sim) {
  const auto gp = tow::GameParams::create(m.p, m.n, m.epsilon);
  const auto dom = build_model(m, gp);
  const auto res = tow::solve_value(dom, gp, make_solve_options(s));

  std::vector<double> start_x = sim.start;
  if (start_x.empty()) {
    start_x = m.center.empty() ? std::vector<double>(m.n, 0.0) : m.center;
  }
  if (static_cast<int>(start_x.size()) != m.n) {
    throw tow::ValidationError("--start: expected n = " + std::to_string(m.n) +
                               " coordinates, got " + std::to_string(start_x.size()));
  }
  const std::size_t start = dom->nearest_node_of(start_x, tow::NodeClass::Interior);

  const tow::Strategy smax = parse_strategy(sim.max_rule, res.u, true, "--max");
  const tow::Strategy smin = parse_strategy(sim.min_rule, res.u, false, "--min");

  // Game i always plays on the stream (seed, i) whichever estimator consumes
  // it, so payoff and stopping-time rows describe the same ensemble.
  tow::McResult payoff;
  if (sim.max_rule == "greedy" && sim.min_rule == "greedy") {
    payoff = tow::estimate_value_mc(dom, gp, res.u, start, sim.games, {g.seed, 0});
  } else {
    if (sim.games < 100) throw tow::ValidationError("--games: need at least 100");
    const tow::GameEngine eng(dom, gp);
    std::vector<double> vals(sim.games);
    for (std::uint64_t i = 0; i < sim.games; ++i) {
      vals[i] = eng.play_outcome(smax, smin, start, {g.seed, i}, {}, sim.step_cap).total_payoff;
    }
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= static_cast<double>(vals.size());
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    var /= static_cast<double>(vals.size() - 1);
    payoff = {mean, std::sqrt(var / static_cast<double>(vals.size())), sim.games};
  }
  const auto tau = tow::estimate_stopping_time(dom, gp, smax, smin, start, sim.games, {g.seed, 0});

  const std::vector<tow::StatsRow> rows = {
      {"payoff", payoff.mean, payoff.std_error, payoff.n, g.seed},
      {"tau", tau.mean, tau.std_error, tau.n, g.seed},
  };
  const fs::path dir = ensure_outdir(g);
  if (g.format == "csv") {
    write_file(dir / "stats.csv", [&](std::ostream& os) { tow::write_stats_csv(os, rows); });
  }
  if (g.dump_traces) {
    const tow::GameEngine eng(dom, gp);
    const std::uint64_t k = std::min<std::uint64_t>(sim.games, 10);
    for (std::uint64_t i = 0; i < k; ++i) {
      const auto trace = eng.play(smax, smin, start, {g.seed, i}, {}, sim.step_cap);
      write_file(dir / ("trace_" + std::to_string(i) + ".csv"),
                 [&](std::ostream& os) { tow::write_trace_csv(os, trace, *dom); });
    }
  }

  json jrows = json::array();
  for (const auto& r : rows) {
    jrows.push_back(json{{"estimator", r.estimator},
                         {"mean", r.mean},
                         {"std_error", r.std_error},
                         {"N", r.n},
                         {"seed", r.seed}});
  }
  json report{{"schema", "towlab-report/1"},
              {"config", {{"global", echo_global(g, "simulate")},
                          {"model", echo_model(m)},
                          {"solver", echo_solver(s)},
                          {"run", {{"start", start_x},
                                   {"games", sim.games},
                                   {"max", sim.max_rule},
                                   {"min", sim.min_rule},
                                   {"step_cap", sim.step_cap}}}}},
              {"start_node", position_json(node_position(*dom, start))},
              {"value_at_start", res.u.values[start]},
              {"rows", jrows}};
  write_report(dir / "simulate.json", report);
  std::cout << "simulate: payoff " << tow::format_double(payoff.mean) << " +- "
            << tow::format_double(payoff.std_error) << ", tau " << tow::format_double(tau.mean)
            << " over " << sim.games << " games\n";
  return 0;
}

// ---------------------------------------------------------------------------
// walk

struct WalkOpts {
  double p = 4.0;
  int n = 1;
  double epsilon = 0.05;
  std::vector<double> t0s;
  std::uint64_t games = 10'000;
  std::uint64_t step_cap = tow::kDefaultStepCap;
};

int cmd_walk(const GlobalOpts& g, const WalkOpts& w) {
  const auto gp = tow::GameParams::create(w.p, w.n, w.epsilon);
  const std::vector<double> t0s = w.t0s.empty() ? std::vector<double>{0.5} : w.t0s;

  std::vector<tow::StatsRow> rows;
  json jrows = json::array();
  for (std::size_t j = 0; j < t0s.size(); ++j) {
    const double t0 = t0s[j];
    const auto mc = tow::walk_1d(t0, gp, w.games, {g.seed, j * w.games}, w.step_cap);
    std::int64_t k_lo = 0, k_hi = 0;
    tow::walk_1d_bounds(t0, gp.epsilon, k_lo, k_hi);
    // Gambler's-ruin mean absorption time of the lattice walk, exact.
    const double exact = static_cast<double>(-k_lo) * static_cast<double>(k_hi) / gp.alpha;
    const double bound = 5.0 * t0 / (gp.alpha * gp.eps2());
    rows.push_back({"walk_tau(t0=" + tow::format_double(t0) + ")", mc.mean, mc.std_error, mc.n,
                    g.seed});
    jrows.push_back(json{{"t0", t0},
                         {"mean", mc.mean},
                         {"std_error", mc.std_error},
                         {"N", mc.n},
                         {"exact_mean", exact},
                         {"bound", bound},
                         {"k_lo", k_lo},
                         {"k_hi", k_hi}});
  }

  const fs::path dir = ensure_outdir(g);
  if (g.format == "csv") {
    write_file(dir / "stats.csv", [&](std::ostream& os) { tow::write_stats_csv(os, rows); });
  }
  json report{{"schema", "towlab-report/1"},
              {"config", {{"global", echo_global(g, "walk")},
                          {"run", {{"p", w.p},
                                   {"n", w.n},
                                   {"epsilon", w.epsilon},
                                   {"t0", t0s},
                                   {"games", w.games},
                                   {"step_cap", w.step_cap}}}}},
              {"rows", jrows}};
  write_report(dir / "walk.json", report);
  for (const auto& r : rows) {
    std::cout << r.estimator << ": mean " << tow::format_double(r.mean) << " +- "
              << tow::format_double(r.std_error) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// cylinder

struct CylOpts {
  double p = 4.0;
  int n = 2;
  double epsilon = 0.1;
  double r = 1.0;
  std::vector<double> ts;
  std::uint64_t games = 10'000;
  std::uint64_t step_cap = tow::kDefaultStepCap;
};

int cmd_cylinder(const GlobalOpts& g, const CylOpts& c) {
  const auto gp = tow::GameParams::create(c.p, c.n, c.epsilon);
  const std::vector<double> ts = c.ts.empty() ? std::vector<double>{0.2, 0.6, 1.0} : c.ts;

  struct Row {
    double t, p_fail, se;
    std::uint64_t n;
  };
  std::vector<Row> rows;
  for (std::size_t j = 0; j < ts.size(); ++j) {
    const auto mc = tow::cylinder_walk(ts[j], c.r, gp, c.games, {g.seed, j * c.games}, c.step_cap);
    rows.push_back({ts[j], mc.mean, mc.std_error, mc.n});
  }
  // Least-squares slope of p_fail against (t + epsilon); the escape argument
  // makes it non-negative.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    const double x = r.t + gp.epsilon;
    sx += x;
    sy += r.p_fail;
    sxx += x * x;
    sxy += x * r.p_fail;
  }
  const double nn = static_cast<double>(rows.size());
  const double den = nn * sxx - sx * sx;
  const double slope = den != 0.0 ? (nn * sxy - sx * sy) / den : 0.0;

  const fs::path dir = ensure_outdir(g);
  if (g.format == "csv") {
    write_file(dir / "cylinder.csv", [&](std::ostream& os) {
      os << "t,r,epsilon,p_fail,std_error,N,seed\n";
      for (const auto& r : rows) {
        os << tow::format_double(r.t) << ',' << tow::format_double(c.r) << ','
           << tow::format_double(gp.epsilon) << ',' << tow::format_double(r.p_fail) << ','
           << tow::format_double(r.se) << ',' << r.n << ',' << g.seed << "\n";
      }
    });
  }
  json jrows = json::array();
  for (const auto& r : rows) {
    jrows.push_back(
        json{{"t", r.t}, {"p_fail", r.p_fail}, {"std_error", r.se}, {"N", r.n}});
  }
  json report{{"schema", "towlab-report/1"},
              {"config", {{"global", echo_global(g, "cylinder")},
                          {"run", {{"p", c.p},
                                   {"n", c.n},
                                   {"epsilon", c.epsilon},
                                   {"r", c.r},
                                   {"t", ts},
                                   {"games", c.games},
                                   {"step_cap", c.step_cap}}}}},
              {"rows", jrows},
              {"fit_slope_in_t_plus_eps", slope}};
  write_report(dir / "cylinder.json", report);
  std::cout << "cylinder: " << rows.size() << " heights, fit slope "
            << tow::format_double(slope) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOpts {
  std::vector<std::string> lipschitz;  // cx,..,r,R
  std::vector<std::string> harnack;    // cx,..,r
  std::vector<std::string> inf_decay;  // y..,z..,r,R
  std::uint64_t local_pairs = 0;
  bool global_bound = false;
  double ceiling = std::numeric_limits<double>::infinity();
};

std::vector<std::pair<std::size_t, std::size_t>> random_admissible_pairs(
    const tow::DiscreteDomain& dom, double epsilon, std::uint64_t count, tow::RngSpec spec) {
  tow::CounterRng rng(spec);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(count);
  std::vector<std::size_t> cand;
  for (std::uint64_t attempt = 0; pairs.size() < count && attempt < 1000 * count + 1000;
       ++attempt) {
    const std::size_t x = dom.interior[rng.next_below(dom.interior.size())];
    cand.clear();
    tow::for_nodes_in_ball(dom, x, 10.0 * epsilon, [&](std::size_t j) {
      if (dom.cls(j) == tow::NodeClass::Interior && j != x) cand.push_back(j);
    });
    if (cand.empty()) continue;
    pairs.emplace_back(x, cand[rng.next_below(cand.size())]);
  }
  if (pairs.size() < count) {
    throw tow::ValidationError("--local-pairs: could not draw " + std::to_string(count) +
                               " admissible pairs on this grid");
  }
  return pairs;
}

int cmd_verify(const GlobalOpts& g, const ModelOpts& m, const SolverOpts& s, const VerifyOpts& v) {
  const auto gp = tow::GameParams::create(m.p, m.n, m.epsilon);
  const auto dom = build_model(m, gp);
  const auto res = tow::solve_value(dom, gp, make_solve_options(s));
  const auto f_field = tow::running_payoff_field(dom);

  std::vector<tow::RegularityReport> reports;
  for (const auto& spec : v.lipschitz) {
    auto a = parse_numbers(spec, "--lipschitz");
    if (static_cast<int>(a.size()) != m.n + 2) {
      throw tow::ValidationError("--lipschitz: expected center (n numbers), r, R in '" + spec +
                                 "'");
    }
    const double R = a.back();
    a.pop_back();
    const double r = a.back();
    a.pop_back();
    const std::size_t node = dom->nearest_node_of(a, tow::NodeClass::Interior);
    reports.push_back(tow::verify_lipschitz(res.u, f_field, gp, node, r, R, v.ceiling));
  }
  for (const auto& spec : v.harnack) {
    auto a = parse_numbers(spec, "--harnack");
    if (static_cast<int>(a.size()) != m.n + 1) {
      throw tow::ValidationError("--harnack: expected center (n numbers), r in '" + spec + "'");
    }
    const double r = a.back();
    a.pop_back();
    const std::size_t node = dom->nearest_node_of(a, tow::NodeClass::Interior);
    reports.push_back(tow::verify_harnack(res.u, gp, node, r, v.ceiling));
  }
  if (v.local_pairs > 0) {
    const auto pairs = random_admissible_pairs(*dom, gp.epsilon, v.local_pairs, {g.seed, 0});
    reports.push_back(tow::verify_local_comparison(res.u, gp, pairs));
  }
  if (v.global_bound) {
    reports.push_back(tow::verify_global_bound(res.u, gp, v.ceiling));
  }
  for (const auto& spec : v.inf_decay) {
    auto a = parse_numbers(spec, "--inf-decay");
    if (static_cast<int>(a.size()) != 2 * m.n + 2) {
      throw tow::ValidationError("--inf-decay: expected y (n numbers), z (n numbers), r, R in '" +
                                 spec + "'");
    }
    const double R = a.back();
    a.pop_back();
    const double r = a.back();
    a.pop_back();
    const std::vector<double> y(a.begin(), a.begin() + m.n);
    const std::vector<double> z(a.begin() + m.n, a.end());
    reports.push_back(tow::verify_inf_decay(res.u, gp,
                                            dom->nearest_node_of(y, tow::NodeClass::Interior),
                                            dom->nearest_node_of(z, tow::NodeClass::Interior), r,
                                            R, v.ceiling));
  }

  const fs::path dir = ensure_outdir(g);
  if (g.format == "csv") {
    write_file(dir / "verify.csv",
               [&](std::ostream& os) { tow::write_reports_csv(os, reports); });
  }
  json jreports = json::array();
  json summary = json::object();
  for (const auto& rep : reports) {
    jreports.push_back(tow::report_to_json(rep));
    auto& slot = summary[rep.estimate];
    if (slot.is_null()) {
      slot = json{{"max_measured", rep.measured_constant},
                  {"min_measured", rep.measured_constant},
                  {"all_pass", rep.pass},
                  {"probes", 1}};
    } else {
      slot["max_measured"] = std::max(slot["max_measured"].get<double>(), rep.measured_constant);
      slot["min_measured"] = std::min(slot["min_measured"].get<double>(), rep.measured_constant);
      slot["all_pass"] = slot["all_pass"].get<bool>() && rep.pass;
      slot["probes"] = slot["probes"].get<int>() + 1;
    }
  }
  json report{{"schema", "towlab-report/1"},
              {"config", {{"global", echo_global(g, "verify")},
                          {"model", echo_model(m)},
                          {"solver", echo_solver(s)},
                          {"run", {{"lipschitz", v.lipschitz},
                                   {"harnack", v.harnack},
                                   {"inf_decay", v.inf_decay},
                                   {"local_pairs", v.local_pairs},
                                   {"global_bound", v.global_bound},
                                   {"ceiling", v.ceiling}}}}},
              {"reports", jreports},
              {"summary", summary}};
  write_report(dir / "verify.json", report);
  std::size_t passed = 0;
  for (const auto& rep : reports) passed += rep.pass ? 1 : 0;
  std::cout << "verify: " << passed << "/" << reports.size() << " probes passed\n";
  return 0;
}

// ---------------------------------------------------------------------------
// converge

struct ConvergeOpts {
  double p = 4.0;
  int n = 2;
  double radius = 1.0;
  double A = 1.0;
  std::vector<double> eps;
  double slack = 0.10;
  bool negative_control = false;
};

int cmd_converge(const GlobalOpts& g, const ConvergeOpts& c, const SolverOpts& s) {
  std::vector<double> eps = c.eps.empty() ? std::vector<double>{0.2, 0.1} : c.eps;
  const double max_eps = *std::max_element(eps.begin(), eps.end());
  // The widest strip determines how far positivity of u_star must extend.
  const auto gp = tow::GameParams::create(c.p, c.n, max_eps);
  const auto sol = tow::make_quadratic_solution(gp, c.A, c.radius);
  const auto shape = tow::Shape::ball(std::vector<double>(c.n, 0.0), c.radius);

  tow::StudyOptions opts;
  opts.tol = s.tol;
  opts.max_iter = s.max_iter;
  opts.scheme = s.scheme == "gauss-seidel" ? tow::SweepScheme::GaussSeidel
                                           : tow::SweepScheme::Jacobi;
  opts.scale_payoff = !c.negative_control;
  const auto rows = tow::convergence_study(sol, shape, c.p, eps, opts);
  const bool monotone = tow::errors_non_increasing(rows, c.slack);

  const fs::path dir = ensure_outdir(g);
  if (g.format == "csv") {
    write_file(dir / "convergence.csv",
               [&](std::ostream& os) { tow::write_convergence_csv(os, rows); });
  }
  json report{{"schema", "towlab-report/1"},
              {"config", {{"global", echo_global(g, "converge")},
                          {"solver", echo_solver(s)},
                          {"run", {{"p", c.p},
                                   {"n", c.n},
                                   {"radius", c.radius},
                                   {"A", c.A},
                                   {"eps", eps},
                                   {"slack", c.slack},
                                   {"negative_control", c.negative_control}}}}},
              {"solution", sol.description},
              {"rows", tow::convergence_to_json(rows)},
              {"errors_non_increasing", monotone}};
  write_report(dir / "converge.json", report);
  for (const auto& r : rows) {
    std::cout << "converge: eps " << tow::format_double(r.epsilon) << " sup_error "
              << tow::format_double(r.sup_error) << "\n";
  }
  std::cout << "converge: errors_non_increasing = " << (monotone ? "true" : "false") << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

int numeric_failure(const GlobalOpts& g, const std::string& type, const std::string& message,
                    std::optional<std::uint64_t> iterations = {},
                    std::optional<double> residual = {}) {
  std::cerr << "error: " << message << "\n";
  json err{{"schema", "towlab-error/1"}, {"error_type", type}, {"message", message}};
  if (iterations) err["iterations"] = *iterations;
  if (residual) err["residual"] = *residual;
  try {
    write_report(ensure_outdir(g) / "error.json", err);
  } catch (const std::exception&) {
    // The report is best effort; the exit code already says it failed.
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"towlab: tug-of-war with noise, solver and laboratory"};
  app.set_help_flag("--help", "Print help");
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI file ([subcommand] sections)");

  GlobalOpts g;
  add_global_options(app, g);

  ModelOpts model;
  SolverOpts solver;

  auto* c_solve = app.add_subcommand(
      "solve", "Solve the dynamic-programming fixed point and dump the value grid");
  c_solve->fallthrough();
  c_solve->set_help_flag("--help", "Print help");
  add_model_options(c_solve, model);
  add_solver_options(c_solve, solver);
  std::vector<std::string> probe_specs;
  c_solve->add_option("--probe", probe_specs,
                      "Sample the solved field at a point (n comma-separated coordinates)")
      ->take_all();

  auto* c_sim = app.add_subcommand("simulate", "Play Monte Carlo games on the solved field");
  c_sim->fallthrough();
  c_sim->set_help_flag("--help", "Print help");
  add_model_options(c_sim, model);
  add_solver_options(c_sim, solver);
  SimOpts sim;
  c_sim->add_option("--start", sim.start, "Start point (default: domain center)")->delimiter(',');
  c_sim->add_option("--games,--N", sim.games, "Number of games (>= 100)")->capture_default_str();
  c_sim->add_option("--max", sim.max_rule, "Max player: greedy | still | pull:x0,..")
      ->capture_default_str();
  c_sim->add_option("--min", sim.min_rule, "Min player: greedy | still | pull:x0,..")
      ->capture_default_str();
  c_sim->add_option("--step-cap", sim.step_cap, "Abort a game after this many steps")
      ->capture_default_str();

  auto* c_walk = app.add_subcommand("walk", "Run the 1-D auxiliary walk on the unit interval");
  c_walk->fallthrough();
  c_walk->set_help_flag("--help", "Print help");
  WalkOpts walk;
  c_walk->add_option("--p", walk.p, "Exponent of the p-Laplacian, > 2")->capture_default_str();
  c_walk->add_option("--n", walk.n, "Dimension entering alpha and beta")->capture_default_str();
  c_walk->add_option("--epsilon", walk.epsilon, "Step size of the walk")->capture_default_str();
  c_walk->add_option("--t0", walk.t0s, "Start height(s) in (epsilon, 1); repeatable")->take_all();
  c_walk->add_option("--games,--N", walk.games, "Number of walks (>= 100)")->capture_default_str();
  c_walk->add_option("--step-cap", walk.step_cap, "Abort a walk after this many steps")
      ->capture_default_str();

  auto* c_cyl = app.add_subcommand("cylinder", "Estimate bottom-escape failure probabilities");
  c_cyl->fallthrough();
  c_cyl->set_help_flag("--help", "Print help");
  CylOpts cyl;
  c_cyl->add_option("--p", cyl.p, "Exponent of the p-Laplacian, > 2")->capture_default_str();
  c_cyl->add_option("--n", cyl.n, "Dimension of the spatial component")->capture_default_str();
  c_cyl->add_option("--epsilon", cyl.epsilon, "Step size of the walk")->capture_default_str();
  c_cyl->add_option("--r", cyl.r, "Cylinder half-size: B_2r x [0, 2r]")->capture_default_str();
  c_cyl->add_option("--t", cyl.ts, "Start height(s) in [0, 2r]; repeatable")->take_all();
  c_cyl->add_option("--games,--N", cyl.games, "Number of walks per height (>= 100)")
      ->capture_default_str();
  c_cyl->add_option("--step-cap", cyl.step_cap, "Abort a walk after this many steps")
      ->capture_default_str();

  auto* c_verify = app.add_subcommand("verify", "Measure regularity estimates on a solved field");
  c_verify->fallthrough();
  c_verify->set_help_flag("--help", "Print help");
  add_model_options(c_verify, model);
  add_solver_options(c_verify, solver);
  VerifyOpts ver;
  c_verify->add_option("--lipschitz", ver.lipschitz,
                       "Oscillation probe: center (n numbers), r, R; repeatable")
      ->take_all();
  c_verify->add_option("--harnack", ver.harnack,
                       "Harnack probe: center (n numbers), r; repeatable")
      ->take_all();
  c_verify->add_option("--inf-decay", ver.inf_decay,
                       "Infimum-decay probe: y (n), z (n), r, R; repeatable")
      ->take_all();
  c_verify->add_option("--local-pairs", ver.local_pairs,
                       "Check the local comparison on this many random pairs")
      ->capture_default_str();
  c_verify->add_flag("--global-bound", ver.global_bound,
                     "Measure sup u / (sup F + sup f) over the whole domain");
  c_verify->add_option("--ceiling", ver.ceiling,
                       "Pass/fail threshold applied to the probes that accept one");

  auto* c_conv = app.add_subcommand(
      "converge", "Error table of the manufactured quadratic solution over an epsilon family");
  c_conv->fallthrough();
  c_conv->set_help_flag("--help", "Print help");
  add_solver_options(c_conv, solver);
  ConvergeOpts conv;
  c_conv->add_option("--p", conv.p, "Exponent of the p-Laplacian, > 2")->capture_default_str();
  c_conv->add_option("--n", conv.n, "Space dimension")->capture_default_str();
  c_conv->add_option("--radius", conv.radius, "Ball radius")->capture_default_str();
  c_conv->add_option("--A", conv.A, "Peak of u*(x) = A - c|x|^2")->capture_default_str();
  c_conv->add_option("--eps", conv.eps, "Epsilon family (h = epsilon/4 each); repeatable")
      ->take_all();
  c_conv->add_option("--slack", conv.slack, "Allowed relative error increase between rows")
      ->capture_default_str();
  c_conv->add_flag("--negative-control", conv.negative_control,
                   "Feed the unscaled payoff (solves a different equation)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

#ifdef _OPENMP
  if (g.threads > 0) omp_set_num_threads(g.threads);
#endif

  try {
    if (c_solve->parsed()) return cmd_solve(g, model, solver, probe_specs);
    if (c_sim->parsed()) return cmd_simulate(g, model, solver, sim);
    if (c_walk->parsed()) return cmd_walk(g, walk);
    if (c_cyl->parsed()) return cmd_cylinder(g, cyl);
    if (c_verify->parsed()) return cmd_verify(g, model, solver, ver);
    if (c_conv->parsed()) return cmd_converge(g, conv, solver);
  } catch (const tow::NonConvergence& e) {
    return numeric_failure(g, "NonConvergence", e.what(), e.iterations, e.residual);
  } catch (const tow::StepLimitExceeded& e) {
    return numeric_failure(g, "StepLimitExceeded", e.what());
  } catch (const tow::DegenerateGradient& e) {
    return numeric_failure(g, "DegenerateGradient", e.what());
  } catch (const tow::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    return numeric_failure(g, "InternalError", e.what());
  }
  return 0;
}
