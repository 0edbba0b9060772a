#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tow/params.hpp"

namespace tow {

enum class NodeClass : std::uint8_t { Interior = 0, BoundaryStrip = 1, Exterior = 2 };

const char* node_class_name(NodeClass c);

/// Closed set of supported domain shapes: axis-aligned box, ball, annulus.
/// All are given by center plus extents; `contains` tests the open set and
/// `boundary_distance` returns dist(x, boundary) for x inside or outside.
class Shape {
 public:
  static Shape box(std::vector<double> center, std::vector<double> half_widths);
  static Shape ball(std::vector<double> center, double radius);
  static Shape annulus(std::vector<double> center, double inner_radius, double outer_radius);

  int dim() const { return static_cast<int>(center_.size()); }
  bool contains(std::span<const double> x) const;
  double boundary_distance(std::span<const double> x) const;
  void bounding_box(std::vector<double>& lo, std::vector<double>& hi) const;
  std::string describe() const;

 private:
  Shape() = default;
  enum class Kind { Box, Ball, Annulus };
  Kind kind_ = Kind::Box;
  std::vector<double> center_;
  std::vector<double> half_widths_;
  double inner_ = 0.0;
  double outer_ = 0.0;
};

/// Pointwise data sampled on grid nodes (boundary payoff F, running payoff f).
using SpatialFn = std::function<double(std::span<const double>)>;

struct BuildOptions {
  /// Permit h > epsilon/4.  Only for documented coarse fixtures.
  bool relax_resolution = false;
  /// Permit f == 0 somewhere (f must still be >= 0 everywhere).
  bool allow_zero_running_payoff = false;
};

/// Uniform grid over a bounding box of Omega inflated by epsilon, with every
/// node classified as Interior (inside Omega), BoundaryStrip (outside Omega but
/// within epsilon of its boundary and reachable by some interior stencil), or
/// Exterior (never read).  F is sampled on the strip, f on the interior.
struct DiscreteDomain {
  double h = 0.0;
  double epsilon = 0.0;
  std::vector<double> origin;
  std::vector<std::int64_t> extents;
  std::vector<std::ptrdiff_t> strides;  // row-major, axis 0 slowest
  std::vector<NodeClass> node_class;
  std::vector<double> boundary_dist;  // dist(node, boundary of Omega), all nodes
  std::vector<double> F;              // NaN off the strip
  std::vector<double> f;              // NaN off the interior
  std::vector<std::size_t> interior;  // linear indices, ascending
  std::vector<std::size_t> strip;
  std::string shape_id;

  int dim() const { return static_cast<int>(extents.size()); }
  std::size_t node_count() const { return node_class.size(); }
  NodeClass cls(std::size_t i) const { return node_class[i]; }

  void multi_index(std::size_t linear, std::span<std::int64_t> out) const;
  std::size_t linear_index(std::span<const std::int64_t> mi) const;
  void position(std::size_t linear, std::span<double> out) const;
  std::vector<double> position(std::size_t linear) const;

  /// Same h, origin, extents and node classification (payoffs may differ).
  bool same_geometry(const DiscreteDomain& other) const;

  double sup_F() const;
  double inf_F() const;
  double sup_f() const;
  double min_f() const;

  /// Nearest grid node to x, optionally restricted to one class.
  std::size_t nearest_node(std::span<const double> x) const;
  std::size_t nearest_node_of(std::span<const double> x, NodeClass wanted) const;
};

/// Builds and validates the discrete domain.  Throws ValidationError when
/// h > epsilon/4 (without the relax flag), when f <= 0 is sampled (f == 0
/// needs the relax flag, f < 0 is always rejected), when F is not finite on
/// the strip, or when the interior or the strip comes out empty.  Throws
/// GeometryError if any interior stencil target lands on an Exterior node.
std::shared_ptr<const DiscreteDomain> build_domain(const Shape& shape, const GameParams& params,
                                                   double h, const SpatialFn& F,
                                                   const SpatialFn& f,
                                                   const BuildOptions& options = {});

/// Visits every non-Exterior node within the closed ball of `radius` around
/// `center` (distances between node positions).  fn(linear_index) is called in
/// ascending linear order.
void for_nodes_in_ball(const DiscreteDomain& dom, std::size_t center, double radius,
                       const std::function<void(std::size_t)>& fn);

}  // namespace tow
