#include "tow/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tow/errors.hpp"
#include "tow/stencil.hpp"

namespace tow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::string join(std::span<const double> v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

}  // namespace

const char* node_class_name(NodeClass c) {
  switch (c) {
    case NodeClass::Interior: return "interior";
    case NodeClass::BoundaryStrip: return "strip";
    case NodeClass::Exterior: return "exterior";
  }
  return "?";
}

Shape Shape::box(std::vector<double> center, std::vector<double> half_widths) {
  if (center.empty() || center.size() != half_widths.size()) {
    throw ValidationError("box needs matching non-empty center and half_widths");
  }
  for (double w : half_widths) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("box half_widths must be >= 0");
  }
  Shape s;
  s.kind_ = Kind::Box;
  s.center_ = std::move(center);
  s.half_widths_ = std::move(half_widths);
  return s;
}

Shape Shape::ball(std::vector<double> center, double radius) {
  if (center.empty()) throw ValidationError("ball needs a non-empty center");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ValidationError("ball radius must be > 0");
  Shape s;
  s.kind_ = Kind::Ball;
  s.center_ = std::move(center);
  s.outer_ = radius;
  return s;
}

Shape Shape::annulus(std::vector<double> center, double inner_radius, double outer_radius) {
  if (center.empty()) throw ValidationError("annulus needs a non-empty center");
  if (!(inner_radius > 0.0) || !(outer_radius > inner_radius)) {
    throw ValidationError("annulus needs 0 < inner_radius < outer_radius");
  }
  Shape s;
  s.kind_ = Kind::Annulus;
  s.center_ = std::move(center);
  s.inner_ = inner_radius;
  s.outer_ = outer_radius;
  return s;
}

bool Shape::contains(std::span<const double> x) const {
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - center_[i];
  switch (kind_) {
    case Kind::Box:
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (!(std::fabs(d[i]) < half_widths_[i])) return false;
      }
      return true;
    case Kind::Ball:
      return norm(d) < outer_;
    case Kind::Annulus: {
      const double r = norm(d);
      return r > inner_ && r < outer_;
    }
  }
  return false;
}

double Shape::boundary_distance(std::span<const double> x) const {
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - center_[i];
  switch (kind_) {
    case Kind::Box: {
      bool inside = true;
      double inside_margin = kInf;
      double out2 = 0.0;
      for (std::size_t i = 0; i < d.size(); ++i) {
        const double gap = half_widths_[i] - std::fabs(d[i]);
        inside_margin = std::min(inside_margin, gap);
        if (gap < 0.0) {
          inside = false;
          out2 += gap * gap;
        }
      }
      return inside ? inside_margin : std::sqrt(out2);
    }
    case Kind::Ball:
      return std::fabs(outer_ - norm(d));
    case Kind::Annulus: {
      const double r = norm(d);
      if (r <= inner_) return inner_ - r;
      if (r >= outer_) return r - outer_;
      return std::min(r - inner_, outer_ - r);
    }
  }
  return 0.0;
}

void Shape::bounding_box(std::vector<double>& lo, std::vector<double>& hi) const {
  const int n = dim();
  lo.assign(n, 0.0);
  hi.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const double w = (kind_ == Kind::Box) ? half_widths_[i] : outer_;
    lo[i] = center_[i] - w;
    hi[i] = center_[i] + w;
  }
}

std::string Shape::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Box:
      os << "box[center=(" << join(center_) << ") half_widths=(" << join(half_widths_) << ")]";
      break;
    case Kind::Ball:
      os << "ball[center=(" << join(center_) << ") radius=" << outer_ << "]";
      break;
    case Kind::Annulus:
      os << "annulus[center=(" << join(center_) << ") inner=" << inner_ << " outer=" << outer_
         << "]";
      break;
  }
  return os.str();
}

void DiscreteDomain::multi_index(std::size_t linear, std::span<std::int64_t> out) const {
  for (int a = dim() - 1; a >= 0; --a) {
    out[a] = static_cast<std::int64_t>(linear % extents[a]);
    linear /= extents[a];
  }
}

std::size_t DiscreteDomain::linear_index(std::span<const std::int64_t> mi) const {
  std::size_t lin = 0;
  for (int a = 0; a < dim(); ++a) lin = lin * extents[a] + static_cast<std::size_t>(mi[a]);
  return lin;
}

void DiscreteDomain::position(std::size_t linear, std::span<double> out) const {
  for (int a = dim() - 1; a >= 0; --a) {
    out[a] = origin[a] + h * static_cast<double>(linear % extents[a]);
    linear /= extents[a];
  }
}

std::vector<double> DiscreteDomain::position(std::size_t linear) const {
  std::vector<double> p(dim());
  position(linear, p);
  return p;
}

bool DiscreteDomain::same_geometry(const DiscreteDomain& other) const {
  return h == other.h && epsilon == other.epsilon && origin == other.origin &&
         extents == other.extents && node_class == other.node_class;
}

double DiscreteDomain::sup_F() const {
  double s = -kInf;
  for (std::size_t i : strip) s = std::max(s, F[i]);
  return s;
}

double DiscreteDomain::inf_F() const {
  double s = kInf;
  for (std::size_t i : strip) s = std::min(s, F[i]);
  return s;
}

double DiscreteDomain::sup_f() const {
  double s = -kInf;
  for (std::size_t i : interior) s = std::max(s, f[i]);
  return s;
}

double DiscreteDomain::min_f() const {
  double s = kInf;
  for (std::size_t i : interior) s = std::min(s, f[i]);
  return s;
}

std::size_t DiscreteDomain::nearest_node(std::span<const double> x) const {
  std::vector<std::int64_t> mi(dim());
  for (int a = 0; a < dim(); ++a) {
    auto i = static_cast<std::int64_t>(std::llround((x[a] - origin[a]) / h));
    mi[a] = std::clamp<std::int64_t>(i, 0, extents[a] - 1);
  }
  return linear_index(mi);
}

std::size_t DiscreteDomain::nearest_node_of(std::span<const double> x, NodeClass wanted) const {
  const std::size_t guess = nearest_node(x);
  if (node_class[guess] == wanted) return guess;
  std::size_t best = node_count();
  double best2 = kInf;
  std::vector<double> pos(dim());
  for (std::size_t i = 0; i < node_count(); ++i) {
    if (node_class[i] != wanted) continue;
    position(i, pos);
    double d2 = 0.0;
    for (int a = 0; a < dim(); ++a) d2 += (pos[a] - x[a]) * (pos[a] - x[a]);
    if (d2 < best2) {
      best2 = d2;
      best = i;
    }
  }
  if (best == node_count()) {
    throw ValidationError(std::string("no node of class ") + node_class_name(wanted) +
                          " in the grid");
  }
  return best;
}

std::shared_ptr<const DiscreteDomain> build_domain(const Shape& shape, const GameParams& params,
                                                   double h, const SpatialFn& F,
                                                   const SpatialFn& f,
                                                   const BuildOptions& options) {
  const int n = shape.dim();
  if (n != params.n) {
    throw ValidationError("shape dimension " + std::to_string(n) +
                          " does not match params.n = " + std::to_string(params.n));
  }
  if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("grid spacing h must be > 0");
  const double eps = params.epsilon;
  if (!options.relax_resolution && h > eps / 4.0 * (1.0 + kStencilTie)) {
    throw ValidationError("grid spacing h = " + std::to_string(h) + " exceeds epsilon/4 = " +
                          std::to_string(eps / 4.0) + "; pass relax_resolution to override");
  }

  auto dom = std::make_shared<DiscreteDomain>();
  dom->h = h;
  dom->epsilon = eps;
  dom->shape_id = shape.describe();

  std::vector<double> lo, hi;
  shape.bounding_box(lo, hi);
  dom->origin.resize(n);
  dom->extents.resize(n);
  std::size_t total = 1;
  for (int a = 0; a < n; ++a) {
    // Inflate by the strip width plus two cells of slack so stencil index
    // arithmetic never leaves the allocated grid.
    dom->origin[a] = lo[a] - eps - 2.0 * h;
    const double top = hi[a] + eps + 2.0 * h;
    const auto count = static_cast<std::int64_t>(std::floor((top - dom->origin[a]) / h + 1e-9)) + 1;
    dom->extents[a] = count;
    total *= static_cast<std::size_t>(count);
    if (total > (std::size_t{1} << 31)) {
      throw ValidationError("grid would have more than 2^31 nodes; refine the request");
    }
  }
  dom->strides.resize(n);
  dom->strides[n - 1] = 1;
  for (int a = n - 2; a >= 0; --a) dom->strides[a] = dom->strides[a + 1] * dom->extents[a + 1];

  dom->node_class.assign(total, NodeClass::Exterior);
  dom->boundary_dist.assign(total, 0.0);
  dom->F.assign(total, kNaN);
  dom->f.assign(total, kNaN);

  std::vector<double> pos(n);
  for (std::size_t i = 0; i < total; ++i) {
    dom->position(i, pos);
    dom->boundary_dist[i] = shape.boundary_distance(pos);
    if (shape.contains(pos)) {
      dom->node_class[i] = NodeClass::Interior;
    } else if (dom->boundary_dist[i] <= eps * (1.0 + kStencilTie)) {
      dom->node_class[i] = NodeClass::BoundaryStrip;
    }
  }

  const BallStencil st = make_ball_stencil(n, h, eps);
  const std::vector<std::ptrdiff_t> deltas = linearize(st, *dom);

  // Strip nodes no interior stencil can reach are dead weight: no game, sweep
  // or measurement ever reads them, so they are reclassified Exterior and F is
  // never sampled there.
  std::vector<char> reached(total, 0);
  for (std::size_t i = 0; i < total; ++i) {
    if (dom->node_class[i] != NodeClass::Interior) continue;
    for (std::ptrdiff_t d : deltas) {
      const std::size_t j = i + d;
      if (dom->node_class[j] == NodeClass::Exterior) {
        throw GeometryError("stencil target of an interior node is Exterior; shape " +
                            dom->shape_id + " classified inconsistently");
      }
      reached[j] = 1;
    }
  }
  for (std::size_t i = 0; i < total; ++i) {
    if (dom->node_class[i] == NodeClass::BoundaryStrip && !reached[i]) {
      dom->node_class[i] = NodeClass::Exterior;
    }
  }

  for (std::size_t i = 0; i < total; ++i) {
    if (dom->node_class[i] == NodeClass::Interior) {
      dom->interior.push_back(i);
    } else if (dom->node_class[i] == NodeClass::BoundaryStrip) {
      dom->strip.push_back(i);
    }
  }
  if (dom->interior.empty()) {
    throw ValidationError("shape " + dom->shape_id + " contains no interior grid node at h = " +
                          std::to_string(h));
  }
  if (dom->strip.empty()) {
    throw ValidationError("boundary strip of " + dom->shape_id + " holds no grid node");
  }

  for (std::size_t i : dom->strip) {
    dom->position(i, pos);
    const double v = F(pos);
    if (!std::isfinite(v)) {
      throw ValidationError("boundary payoff F is not finite at (" + join(pos) + ")");
    }
    dom->F[i] = v;
  }
  for (std::size_t i : dom->interior) {
    dom->position(i, pos);
    const double v = f(pos);
    if (!std::isfinite(v) || v < 0.0) {
      throw ValidationError("running payoff f must be finite and >= 0, got " + std::to_string(v) +
                            " at (" + join(pos) + ")");
    }
    if (v == 0.0 && !options.allow_zero_running_payoff) {
      throw ValidationError("running payoff f vanishes at (" + join(pos) +
                            "); pass allow_zero_running_payoff to permit f == 0");
    }
    dom->f[i] = v;
  }

  return dom;
}

void for_nodes_in_ball(const DiscreteDomain& dom, std::size_t center, double radius,
                       const std::function<void(std::size_t)>& fn) {
  const int n = dom.dim();
  std::vector<std::int64_t> c(n), lo(n), hi(n), cur(n);
  dom.multi_index(center, c);
  const auto reach = static_cast<std::int64_t>(std::floor(radius / dom.h * (1.0 + 1e-12)));
  for (int a = 0; a < n; ++a) {
    lo[a] = std::max<std::int64_t>(0, c[a] - reach);
    hi[a] = std::min<std::int64_t>(dom.extents[a] - 1, c[a] + reach);
    if (lo[a] > hi[a]) return;
    cur[a] = lo[a];
  }
  const double r2 = radius * radius * (1.0 + 1e-12);
  while (true) {
    double d2 = 0.0;
    for (int a = 0; a < n; ++a) {
      const double da = static_cast<double>(cur[a] - c[a]) * dom.h;
      d2 += da * da;
    }
    if (d2 <= r2) {
      const std::size_t i = dom.linear_index(cur);
      if (dom.node_class[i] != NodeClass::Exterior) fn(i);
    }
    int a = n - 1;
    while (a >= 0 && cur[a] == hi[a]) {
      cur[a] = lo[a];
      --a;
    }
    if (a < 0) break;
    ++cur[a];
  }
}

}  // namespace tow
