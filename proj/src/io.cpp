#include "tow/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace tow {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  // Shortest representation that round-trips: try increasing precision.
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

void write_grid_dump(std::ostream& os, const ScalarField& u, const GameParams& params) {
  const DiscreteDomain& dom = *u.domain;
  os << "towlab-grid 1\n";
  os << "dim " << dom.dim() << "\n";
  os << "extents";
  for (auto e : dom.extents) os << ' ' << e;
  os << "\n";
  os << "origin";
  for (double o : dom.origin) os << ' ' << format_double(o);
  os << "\n";
  os << "h " << format_double(dom.h) << "\n";
  os << "epsilon " << format_double(dom.epsilon) << "\n";
  os << "p " << format_double(params.p) << "\n";
  os << "shape " << dom.shape_id << "\n";
  os << "nodes " << dom.node_count() << "\n";
  std::vector<std::int64_t> mi(dom.dim());
  for (std::size_t i = 0; i < dom.node_count(); ++i) {
    dom.multi_index(i, mi);
    for (int a = 0; a < dom.dim(); ++a) os << mi[a] << ' ';
    os << node_class_name(dom.cls(i)) << ' ' << format_double(u.values[i]) << "\n";
  }
}

void write_stats_csv(std::ostream& os, std::span<const StatsRow> rows) {
  os << "estimator,mean,std_error,N,seed\n";
  for (const auto& r : rows) {
    os << r.estimator << ',' << format_double(r.mean) << ',' << format_double(r.std_error) << ','
       << r.n << ',' << r.seed << "\n";
  }
}

void write_trace_csv(std::ostream& os, const GameTrace& trace, const DiscreteDomain& dom) {
  os << "step,coin";
  for (int a = 0; a < dom.dim(); ++a) os << ",x" << a;
  os << ",cumulative_running_sum\n";
  std::vector<double> pos(dom.dim());
  double cum = 0.0;
  for (std::size_t k = 0; k < trace.positions.size(); ++k) {
    os << k << ',' << (k == 0 ? "start" : coin_name(trace.coins[k - 1]));
    dom.position(trace.positions[k], pos);
    for (double c : pos) os << ',' << format_double(c);
    os << ',' << format_double(cum) << "\n";
    // f accrues at the node a step departs from; the final node accrues none.
    if (k + 1 < trace.positions.size()) cum += dom.f[trace.positions[k]];
  }
}

void write_convergence_csv(std::ostream& os, std::span<const ConvergenceRow> rows) {
  os << "epsilon,h,sup_error,iterations,residual,runtime_seconds\n";
  for (const auto& r : rows) {
    os << format_double(r.epsilon) << ',' << format_double(r.h) << ','
       << format_double(r.sup_error) << ',' << r.iterations << ',' << format_double(r.residual)
       << ',' << format_double(r.runtime_seconds) << "\n";
  }
}

void write_reports_csv(std::ostream& os, std::span<const RegularityReport> rows) {
  os << "estimate,pass,degenerate,measured_constant,ceiling,p,n,epsilon,domain,details\n";
  for (const auto& r : rows) {
    os << r.estimate << ',' << (r.pass ? 1 : 0) << ',' << (r.degenerate ? 1 : 0) << ','
       << format_double(r.measured_constant) << ',' << format_double(r.ceiling) << ','
       << format_double(r.p) << ',' << r.n << ',' << format_double(r.epsilon) << ",\""
       << r.domain_id << "\",\"";
    bool first = true;
    for (const auto& [k, v] : r.details) {
      os << (first ? "" : ";") << k << '=' << format_double(v);
      first = false;
    }
    os << "\"\n";
  }
}

nlohmann::json report_to_json(const RegularityReport& rep) {
  nlohmann::json j;
  j["estimate"] = rep.estimate;
  j["pass"] = rep.pass;
  j["degenerate"] = rep.degenerate;
  j["measured_constant"] = rep.measured_constant;
  j["ceiling"] = std::isfinite(rep.ceiling) ? nlohmann::json(rep.ceiling)
                                            : nlohmann::json("inf");
  j["p"] = rep.p;
  j["n"] = rep.n;
  j["epsilon"] = rep.epsilon;
  j["domain"] = rep.domain_id;
  j["details"] = rep.details;
  return j;
}

nlohmann::json convergence_to_json(std::span<const ConvergenceRow> rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j;
    j["epsilon"] = r.epsilon;
    j["h"] = r.h;
    j["sup_error"] = r.sup_error;
    j["iterations"] = r.iterations;
    j["residual"] = r.residual;
    j["runtime_seconds"] = r.runtime_seconds;
    arr.push_back(j);
  }
  return arr;
}

}  // namespace tow
