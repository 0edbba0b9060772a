#include "support/fixtures.hpp"

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace towtest {

Fixture1D make_fixture_1d() {
  Fixture1D fx;
  fx.params = tow::GameParams::create(4.0, 1, 0.5);
  tow::Shape shape = tow::Shape::box({0.5}, {0.5});
  tow::BuildOptions opts;
  opts.relax_resolution = true;
  fx.dom = tow::build_domain(
      shape, fx.params, 0.5, [](std::span<const double> x) { return x[0]; },
      [](std::span<const double>) { return 1.0; }, opts);

  const double mid[] = {0.5};
  const double lo[] = {0.0};
  const double hi[] = {1.0};
  fx.mid = fx.dom->nearest_node_of(mid, tow::NodeClass::Interior);
  fx.left = fx.dom->nearest_node_of(lo, tow::NodeClass::BoundaryStrip);
  fx.right = fx.dom->nearest_node_of(hi, tow::NodeClass::BoundaryStrip);
  return fx;
}

DiskCase make_disk(double p, double epsilon, double radius, double F_const, double f_const) {
  DiskCase dc;
  dc.params = tow::GameParams::create(p, 2, epsilon);
  tow::Shape shape = tow::Shape::ball({0.0, 0.0}, radius);
  dc.dom = tow::build_domain(
      shape, dc.params, epsilon / 4.0,
      [F_const](std::span<const double>) { return F_const; },
      [f_const](std::span<const double>) { return f_const; });
  const double origin[] = {0.0, 0.0};
  dc.center = dc.dom->nearest_node_of(origin, tow::NodeClass::Interior);
  return dc;
}

}  // namespace towtest
