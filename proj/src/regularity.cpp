#include "tow/regularity.hpp"

#include <cmath>
#include <string>

#include "tow/errors.hpp"

namespace tow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

RegularityReport base_report(std::string name, const ScalarField& u, const GameParams& params) {
  RegularityReport rep;
  rep.estimate = std::move(name);
  rep.p = params.p;
  rep.n = params.n;
  rep.epsilon = params.epsilon;
  rep.domain_id = u.domain ? u.domain->shape_id : "";
  return rep;
}

void check_field(const ScalarField& u, const GameParams& params, const char* where) {
  if (!u.domain) throw ValidationError(std::string(where) + ": field without a grid");
  if (u.domain->dim() != params.n) {
    throw DomainMismatch(std::string(where) + ": grid dimension vs params.n mismatch");
  }
  if (std::fabs(u.domain->epsilon - params.epsilon) > 1e-12 * (1.0 + params.epsilon)) {
    throw DomainMismatch(std::string(where) + ": grid epsilon vs params epsilon mismatch");
  }
}

void require_interior(const ScalarField& u, std::size_t node, const char* where) {
  if (node >= u.domain->node_count() || u.domain->cls(node) != NodeClass::Interior) {
    throw GeometryError(std::string(where) + ": node " + std::to_string(node) +
                        " is not an interior grid node");
  }
}

void require_ball_inside(const ScalarField& u, std::size_t center, double radius,
                         const char* where) {
  if (!(u.domain->boundary_dist[center] > radius)) {
    throw GeometryError(std::string(where) + ": ball of radius " + std::to_string(radius) +
                        " around node " + std::to_string(center) + " leaves the domain (margin " +
                        std::to_string(u.domain->boundary_dist[center]) + ")");
  }
}

double min_interior(const ScalarField& u) {
  double m = kInf;
  for (std::size_t i : u.domain->interior) m = std::min(m, u.values[i]);
  return m;
}

struct BallRange {
  double lo = kInf;
  double hi = -kInf;
  std::size_t count = 0;
};

BallRange ball_range(const ScalarField& u, std::size_t center, double radius,
                     bool interior_only, const char* where) {
  BallRange r;
  for_nodes_in_ball(*u.domain, center, radius, [&](std::size_t i) {
    if (interior_only && u.domain->cls(i) != NodeClass::Interior) {
      throw GeometryError(std::string(where) + ": ball around node " + std::to_string(center) +
                          " touches the boundary strip although it must stay inside Omega");
    }
    const double v = u.values[i];
    r.lo = std::min(r.lo, v);
    r.hi = std::max(r.hi, v);
    ++r.count;
  });
  if (r.count == 0) {
    throw EmptyBall(std::string(where) + ": no grid node within radius " + std::to_string(radius) +
                    " of node " + std::to_string(center));
  }
  return r;
}

}  // namespace

double oscillation(const ScalarField& u, std::size_t center, double radius) {
  if (!u.domain) throw ValidationError("oscillation: field without a grid");
  if (center >= u.domain->node_count()) throw ValidationError("oscillation: bad center node");
  const BallRange r = ball_range(u, center, radius, false, "oscillation");
  return r.hi - r.lo;
}

RegularityReport verify_lipschitz(const ScalarField& u, const ScalarField& f_field,
                                  const GameParams& params, std::size_t a, double r, double R,
                                  double ceiling) {
  check_field(u, params, "verify_lipschitz");
  require_same_geometry(u, f_field);
  require_interior(u, a, "verify_lipschitz");
  if (!(params.epsilon < r) || !(r <= R)) {
    throw GeometryError("verify_lipschitz: need epsilon < r <= R, got r = " + std::to_string(r) +
                        ", R = " + std::to_string(R));
  }
  require_ball_inside(u, a, 6.0 * R, "verify_lipschitz");

  RegularityReport rep = base_report("lipschitz", u, params);
  rep.ceiling = ceiling;

  const double osc_u_r = oscillation(u, a, r);
  const double osc_u_6R = oscillation(u, a, 6.0 * R);
  const BallRange f_6R = ball_range(f_field, a, 6.0 * R, true, "verify_lipschitz[f]");
  const BallRange f_6r = ball_range(f_field, a, 6.0 * r, true, "verify_lipschitz[f]");
  const double osc_f_6R = f_6R.hi - f_6R.lo;
  const double denom = (r / R) * (osc_u_6R + osc_f_6R);

  rep.details["r"] = r;
  rep.details["R"] = R;
  rep.details["osc_u_r"] = osc_u_r;
  rep.details["osc_u_6R"] = osc_u_6R;
  rep.details["osc_f_6R"] = osc_f_6R;
  rep.details["osc_f_6r"] = f_6r.hi - f_6r.lo;
  rep.details["denominator"] = denom;

  if (denom == 0.0) {
    // osc over the big ball vanished, so osc over the small one did too.
    rep.degenerate = true;
    rep.measured_constant = 0.0;
    rep.pass = true;
    return rep;
  }
  rep.measured_constant = osc_u_r / denom;
  rep.pass = rep.measured_constant <= ceiling;
  return rep;
}

RegularityReport verify_harnack(const ScalarField& u, const GameParams& params, std::size_t a,
                                double r, double ceiling) {
  check_field(u, params, "verify_harnack");
  require_interior(u, a, "verify_harnack");
  if (!(r > 0.0)) throw GeometryError("verify_harnack: r must be > 0");
  require_ball_inside(u, a, 30.0 * r, "verify_harnack");
  const double min_u = min_interior(u);
  if (!(min_u > 0.0)) {
    throw NonPositiveField("verify_harnack: inf u = " + std::to_string(min_u) +
                           " but the estimate needs u > 0");
  }

  RegularityReport rep = base_report("harnack", u, params);
  rep.ceiling = ceiling;
  const BallRange br = ball_range(u, a, r, true, "verify_harnack");
  const double sup_f = u.domain->sup_f();
  rep.details["r"] = r;
  rep.details["sup_ball"] = br.hi;
  rep.details["inf_ball"] = br.lo;
  rep.details["sup_f"] = sup_f;
  rep.measured_constant = br.hi / (br.lo + sup_f);
  rep.pass = rep.measured_constant <= ceiling;
  return rep;
}

RegularityReport verify_local_comparison(
    const ScalarField& u, const GameParams& params,
    std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  check_field(u, params, "verify_local_comparison");
  if (pairs.empty()) throw ValidationError("verify_local_comparison: empty pair list");
  const double min_u = min_interior(u);
  if (!(min_u > 0.0)) {
    throw NonPositiveField("verify_local_comparison: inf u = " + std::to_string(min_u) +
                           " but the estimate needs u > 0");
  }

  RegularityReport rep = base_report("local_comparison", u, params);
  const double reach = 10.0 * params.epsilon;
  const int n = u.domain->dim();
  std::vector<double> px(n), py(n);

  double worst = kInf;
  std::size_t wx = 0, wy = 0;
  for (const auto& [x, y] : pairs) {
    require_interior(u, x, "verify_local_comparison");
    require_interior(u, y, "verify_local_comparison");
    u.domain->position(x, px);
    u.domain->position(y, py);
    double d2 = 0.0;
    for (int a = 0; a < n; ++a) d2 += (px[a] - py[a]) * (px[a] - py[a]);
    if (d2 > reach * reach * (1.0 + 1e-9)) {
      throw GeometryError("verify_local_comparison: pair farther apart than 10 epsilon");
    }
    const double ratio = u.values[x] / u.values[y];
    if (ratio < worst) {
      worst = ratio;
      wx = x;
      wy = y;
    }
  }

  const double floor = std::pow(params.half_alpha(), 20);
  rep.measured_constant = worst;
  rep.ceiling = kInf;
  rep.details["floor"] = floor;
  rep.details["pairs"] = static_cast<double>(pairs.size());
  rep.details["worst_x"] = static_cast<double>(wx);
  rep.details["worst_y"] = static_cast<double>(wy);
  rep.pass = worst >= floor * (1.0 - 1e-12);
  return rep;
}

RegularityReport verify_global_bound(const ScalarField& u, const GameParams& params,
                                     double ceiling) {
  check_field(u, params, "verify_global_bound");
  RegularityReport rep = base_report("global_bound", u, params);
  rep.ceiling = ceiling;

  double sup_u = -kInf;
  for (std::size_t i : u.domain->interior) sup_u = std::max(sup_u, u.values[i]);
  const double sup_F = u.domain->sup_F();
  const double sup_f = u.domain->sup_f();
  const double denom = sup_F + sup_f;
  rep.details["sup_u"] = sup_u;
  rep.details["sup_F"] = sup_F;
  rep.details["sup_f"] = sup_f;
  if (!(denom > 0.0)) {
    rep.degenerate = true;
    rep.measured_constant = 0.0;
    rep.pass = sup_u <= 0.0;
    return rep;
  }
  rep.measured_constant = sup_u / denom;
  rep.pass = rep.measured_constant <= ceiling;
  return rep;
}

RegularityReport verify_payoff_monotonicity(const ScalarField& u, const ScalarField& v,
                                            double slack) {
  require_same_geometry(u, v);
  if (!(slack >= 0.0)) throw ValidationError("verify_payoff_monotonicity: slack must be >= 0");

  RegularityReport rep;
  rep.estimate = "payoff_monotonicity";
  rep.n = u.domain->dim();
  rep.epsilon = u.domain->epsilon;
  rep.domain_id = u.domain->shape_id;

  double worst = kInf;
  std::size_t worst_node = 0;
  auto scan = [&](const std::vector<std::size_t>& idx) {
    for (std::size_t i : idx) {
      const double d = v.values[i] - u.values[i];
      if (d < worst) {
        worst = d;
        worst_node = i;
      }
    }
  };
  scan(u.domain->interior);
  scan(u.domain->strip);

  rep.measured_constant = worst;
  rep.details["slack"] = slack;
  rep.details["worst_node"] = static_cast<double>(worst_node);
  rep.pass = worst >= -slack;
  return rep;
}

RegularityReport verify_inf_decay(const ScalarField& u, const GameParams& params, std::size_t y,
                                  std::size_t z, double r, double R, double ceiling) {
  check_field(u, params, "verify_inf_decay");
  require_interior(u, y, "verify_inf_decay");
  require_interior(u, z, "verify_inf_decay");
  if (!(2.0 * params.epsilon < r) || !(r < R)) {
    throw GeometryError("verify_inf_decay: need 2 epsilon < r < R");
  }
  require_ball_inside(u, y, 30.0 * R, "verify_inf_decay");
  {
    const int n = u.domain->dim();
    std::vector<double> py = u.domain->position(y), pz = u.domain->position(z);
    double d2 = 0.0;
    for (int a = 0; a < n; ++a) d2 += (py[a] - pz[a]) * (py[a] - pz[a]);
    if (d2 > 4.0 * R * R * (1.0 + 1e-9)) {
      throw GeometryError("verify_inf_decay: z must lie in B_2R(y)");
    }
  }
  const double min_u = min_interior(u);
  if (!(min_u > 0.0)) {
    throw NonPositiveField("verify_inf_decay: inf u = " + std::to_string(min_u) +
                           " but the estimate needs u > 0");
  }

  RegularityReport rep = base_report("inf_decay", u, params);
  rep.ceiling = ceiling;
  const BallRange br = ball_range(u, z, r, true, "verify_inf_decay");
  const double u_y = u.values[y];
  const double rn = std::pow(r, u.domain->dim());
  rep.details["r"] = r;
  rep.details["R"] = R;
  rep.details["inf_ball"] = br.lo;
  rep.details["u_y"] = u_y;
  rep.details["measured_r2n"] = br.lo * rn * rn / u_y;
  rep.measured_constant = br.lo * rn / u_y;
  rep.pass = rep.measured_constant <= ceiling;
  return rep;
}

}  // namespace tow
