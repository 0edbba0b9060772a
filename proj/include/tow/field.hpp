#pragma once

#include <memory>
#include <vector>

#include "tow/domain.hpp"

namespace tow {

/// Node-indexed doubles tied to one grid.  Finite on Interior and
/// BoundaryStrip nodes, NaN on Exterior nodes (reading an Exterior value is a
/// bug and the NaN poisons any result that does).
struct ScalarField {
  std::shared_ptr<const DiscreteDomain> domain;
  std::vector<double> values;

  double at(std::size_t i) const { return values[i]; }
  double& at(std::size_t i) { return values[i]; }
};

/// Strip = F, every interior node = interior_value.
ScalarField field_from_boundary(std::shared_ptr<const DiscreteDomain> dom, double interior_value);

/// Strip and interior sampled from g.
ScalarField sample_field(std::shared_ptr<const DiscreteDomain> dom, const SpatialFn& g);

/// The running payoff as a field: interior = f, strip = NaN (f is an interior
/// quantity; measurements over it must stay inside Omega).
ScalarField running_payoff_field(std::shared_ptr<const DiscreteDomain> dom);

/// Same field shifted by c on interior and strip alike.
ScalarField shifted(const ScalarField& u, double c);

/// Throws DomainMismatch unless both fields live on grids with identical
/// geometry (payoffs may differ).
void require_same_geometry(const ScalarField& a, const ScalarField& b);

/// Throws ValidationError if any interior or strip value is not finite.
void require_finite(const ScalarField& u, const char* label);

/// Max over interior and strip of |a - b| (same-geometry fields).
double sup_diff(const ScalarField& a, const ScalarField& b);

/// Multilinear interpolation of u at a physical point inside the grid; NaN
/// from any Exterior corner poisons the result on purpose.
double multilinear_sample(const ScalarField& u, std::span<const double> x);

}  // namespace tow
