#include "tow/stencil.hpp"

#include <cmath>
#include <string>

#include "tow/domain.hpp"
#include "tow/errors.hpp"

namespace tow {

namespace {

void enumerate(int dim, int axis, int reach, double h2, double r2, std::vector<int>& cur,
               double partial_norm2, std::vector<std::vector<int>>& out) {
  if (axis == dim) {
    out.push_back(cur);
    return;
  }
  for (int d = -reach; d <= reach; ++d) {
    const double norm2 = partial_norm2 + static_cast<double>(d) * d * h2;
    if (norm2 > r2 * (1.0 + kStencilTie)) continue;
    cur[axis] = d;
    enumerate(dim, axis + 1, reach, h2, r2, cur, norm2, out);
  }
  cur[axis] = 0;
}

}  // namespace

BallStencil make_ball_stencil(int dim, double h, double radius) {
  if (dim < 1) throw ValidationError("stencil dimension must be >= 1, got " + std::to_string(dim));
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw ValidationError("stencil spacing h must be finite and > 0");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ValidationError("stencil radius must be finite and > 0");
  }
  BallStencil st;
  st.dim = dim;
  st.h = h;
  st.radius = radius;
  const int reach = static_cast<int>(std::floor(radius / h * (1.0 + kStencilTie)));
  std::vector<int> cur(dim, 0);
  // Ascending per-axis enumeration yields lexicographic order directly.
  enumerate(dim, 0, reach, h * h, radius * radius, cur, 0.0, st.offsets);
  return st;
}

std::vector<std::ptrdiff_t> linearize(const BallStencil& st, const DiscreteDomain& dom) {
  if (st.dim != dom.dim()) {
    throw DomainMismatch("stencil dimension " + std::to_string(st.dim) +
                         " does not match grid dimension " + std::to_string(dom.dim()));
  }
  std::vector<std::ptrdiff_t> deltas;
  deltas.reserve(st.count());
  for (const auto& off : st.offsets) {
    std::ptrdiff_t d = 0;
    for (int a = 0; a < st.dim; ++a) d += off[a] * dom.strides[a];
    deltas.push_back(d);
  }
  return deltas;
}

}  // namespace tow
