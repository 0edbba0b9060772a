// Microbenchmark comparing the OpenMP kernels against their serial
// references: the DPP sweep, greedy-vs-greedy Monte Carlo and the interval
// walk.  Each section also checks that parallel and serial agree bit for bit,
// which is the determinism contract the parallel code promises.
//
//   towlab_bench [--epsilon E] [--sweeps N] [--games N] [--threads T]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tow/domain.hpp"
#include "tow/dpp.hpp"
#include "tow/field.hpp"
#include "tow/game.hpp"
#include "tow/params.hpp"
#include "tow/walks.hpp"

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int t) {
#ifdef _OPENMP
  omp_set_num_threads(t);
#else
  (void)t;
#endif
}

struct Args {
  double epsilon = 0.05;
  int sweeps = 100;
  std::uint64_t games = 20'000;
  int threads = 0;  // 0: OpenMP default
};

Args parse(int argc, char** argv) {
  Args a;
  for (int i = 1; i < argc; ++i) {
    const std::string key = argv[i];
    auto value = [&]() -> const char* {
      if (i + 1 >= argc) {
        std::fprintf(stderr, "missing value for %s\n", key.c_str());
        std::exit(2);
      }
      return argv[++i];
    };
    if (key == "--epsilon") {
      a.epsilon = std::atof(value());
    } else if (key == "--sweeps") {
      a.sweeps = std::atoi(value());
    } else if (key == "--games") {
      a.games = std::strtoull(value(), nullptr, 10);
    } else if (key == "--threads") {
      a.threads = std::atoi(value());
    } else {
      std::fprintf(stderr,
                   "usage: towlab_bench [--epsilon E] [--sweeps N] [--games N] [--threads T]\n");
      std::exit(key == "--help" ? 0 : 2);
    }
  }
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  const Args args = parse(argc, argv);
  if (args.threads > 0) set_threads(args.threads);

  const auto gp = tow::GameParams::create(4.0, 2, args.epsilon);
  const auto dom = tow::build_domain(tow::Shape::ball({0.0, 0.0}, 1.0), gp, args.epsilon / 4.0,
                                     [](std::span<const double>) { return 1.0; },
                                     [](std::span<const double>) { return 1.0; });
  std::printf("unit disk, eps = %g, h = %g: %zu interior nodes, %d thread(s)\n", args.epsilon,
              args.epsilon / 4.0, dom->interior.size(),
              args.threads > 0 ? args.threads : max_threads());

  // DPP sweep kernel.  Applying T to a mid-iteration field exercises the same
  // stencil work as a solver run without the solver loop on top.
  {
    tow::ScalarField u = tow::field_from_boundary(dom, 0.0);
    for (int k = 0; k < 10; ++k) u = tow::dpp_apply(u, gp);

    const double t0 = now_seconds();
    tow::ScalarField up = u;
    for (int k = 0; k < args.sweeps; ++k) up = tow::dpp_apply(up, gp);
    const double par = now_seconds() - t0;

    const double t1 = now_seconds();
    tow::ScalarField us = u;
    for (int k = 0; k < args.sweeps; ++k) us = tow::dpp_apply_serial(us, gp);
    const double ser = now_seconds() - t1;

    const double diff = tow::sup_diff(up, us);
    std::printf("dpp sweep     %5d sweeps  parallel %8.3f s (%7.1f sweeps/s)  serial %8.3f s  "
                "speedup %.2fx  sup|diff| = %g%s\n",
                args.sweeps, par, args.sweeps / par, ser, ser / par, diff,
                diff == 0.0 ? "" : "  [MISMATCH]");
  }

  // Greedy-vs-greedy Monte Carlo over a solved field.
  {
    tow::SolveOptions o;
    o.scheme = tow::SweepScheme::GaussSeidel;
    o.certify = false;
    const auto sol = tow::solve_value(dom, gp, o);
    const std::size_t start = dom->nearest_node_of(std::vector<double>{0.3, 0.0},
                                                   tow::NodeClass::Interior);

    const double t0 = now_seconds();
    const auto par = tow::estimate_value_mc(dom, gp, sol.u, start, args.games, {5150, 0});
    const double tp = now_seconds() - t0;

    set_threads(1);
    const double t1 = now_seconds();
    const auto ser = tow::estimate_value_mc(dom, gp, sol.u, start, args.games, {5150, 0});
    const double ts = now_seconds() - t1;
    if (args.threads > 0) set_threads(args.threads);

    const bool same = par.mean == ser.mean && par.std_error == ser.std_error;
    std::printf("game mc       %5llu games   parallel %8.3f s (%7.0f games/s)   serial %8.3f s  "
                "speedup %.2fx  mean %s\n",
                static_cast<unsigned long long>(args.games), tp, args.games / tp, ts, ts / tp,
                same ? "identical" : "[MISMATCH]");
  }

  // Interval walk.
  {
    const auto gp1 = tow::GameParams::create(4.0, 1, args.epsilon);

    const double t0 = now_seconds();
    const auto par = tow::walk_1d(0.5, gp1, args.games, {5151, 0});
    const double tp = now_seconds() - t0;

    set_threads(1);
    const double t1 = now_seconds();
    const auto ser = tow::walk_1d(0.5, gp1, args.games, {5151, 0});
    const double ts = now_seconds() - t1;
    if (args.threads > 0) set_threads(args.threads);

    const bool same = par.mean == ser.mean && par.std_error == ser.std_error;
    std::printf("interval walk %5llu walks   parallel %8.3f s (%7.0f walks/s)   serial %8.3f s  "
                "speedup %.2fx  mean %s\n",
                static_cast<unsigned long long>(args.games), tp, args.games / tp, ts, ts / tp,
                same ? "identical" : "[MISMATCH]");
  }

  return 0;
}
