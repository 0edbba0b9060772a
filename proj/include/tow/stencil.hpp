#pragma once

#include <cstddef>
#include <vector>

namespace tow {

struct DiscreteDomain;

/// Integer offsets delta with ||delta||_2 * h <= radius, i.e. the grid nodes of
/// the closed ball B_radius(0) at spacing h.  Contains the zero offset and is
/// sorted lexicographically; every argmax/argmin scan over a stencil keeps the
/// first strict winner, so ties break toward the lexicographically smallest
/// offset and results do not depend on traversal accidents.
struct BallStencil {
  int dim = 0;
  double h = 0.0;
  double radius = 0.0;
  std::vector<std::vector<int>> offsets;

  std::size_t count() const { return offsets.size(); }
};

/// Relative slack applied to the radius comparison so that offsets landing
/// exactly on the shell (the usual case when h divides the radius) are kept
/// regardless of rounding in h or radius.
inline constexpr double kStencilTie = 1e-9;

BallStencil make_ball_stencil(int dim, double h, double radius);

/// Offsets converted to row-major linear-index deltas on a concrete grid.
std::vector<std::ptrdiff_t> linearize(const BallStencil& st, const DiscreteDomain& dom);

}  // namespace tow
