#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "tow/field.hpp"
#include "tow/game.hpp"
#include "tow/params.hpp"
#include "tow/pde.hpp"
#include "tow/regularity.hpp"

#include <json.hpp>

namespace tow {

/// Shortest round-trip decimal form of x ("%.17g" trimmed); identical input
/// bits always print identically, so reruns produce byte-identical files.
std::string format_double(double x);

/// Text grid dump.  Header lines:
///   towlab-grid 1
///   dim / extents / origin / h / epsilon / p / shape / nodes
/// then one line per node in linear order: index vector, class name, value
/// (value is "nan" off the strip/interior).
void write_grid_dump(std::ostream& os, const ScalarField& u, const GameParams& params);

struct StatsRow {
  std::string estimator;
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
};

/// CSV with header "estimator,mean,std_error,N,seed".
void write_stats_csv(std::ostream& os, std::span<const StatsRow> rows);

/// CSV with header "step,coin,x0..,cumulative_running_sum": position and the
/// running payoff sum accumulated before arriving there, one line per visited
/// node (step 0 is the start with coin "start").
void write_trace_csv(std::ostream& os, const GameTrace& trace, const DiscreteDomain& dom);

/// CSV with header "epsilon,h,sup_error,iterations,residual,runtime_seconds".
void write_convergence_csv(std::ostream& os, std::span<const ConvergenceRow> rows);

/// CSV of regularity reports; details are packed key=value joined by ';'.
void write_reports_csv(std::ostream& os, std::span<const RegularityReport> rows);

nlohmann::json report_to_json(const RegularityReport& rep);
nlohmann::json convergence_to_json(std::span<const ConvergenceRow> rows);

}  // namespace tow
