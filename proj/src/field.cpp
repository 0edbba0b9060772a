#include "tow/field.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tow/errors.hpp"

namespace tow {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

ScalarField field_from_boundary(std::shared_ptr<const DiscreteDomain> dom, double interior_value) {
  ScalarField u;
  u.values.assign(dom->node_count(), kNaN);
  for (std::size_t i : dom->strip) u.values[i] = dom->F[i];
  for (std::size_t i : dom->interior) u.values[i] = interior_value;
  u.domain = std::move(dom);
  return u;
}

ScalarField sample_field(std::shared_ptr<const DiscreteDomain> dom, const SpatialFn& g) {
  ScalarField u;
  u.values.assign(dom->node_count(), kNaN);
  std::vector<double> pos(dom->dim());
  for (std::size_t i : dom->strip) {
    dom->position(i, pos);
    u.values[i] = g(pos);
  }
  for (std::size_t i : dom->interior) {
    dom->position(i, pos);
    u.values[i] = g(pos);
  }
  u.domain = std::move(dom);
  return u;
}

ScalarField running_payoff_field(std::shared_ptr<const DiscreteDomain> dom) {
  ScalarField u;
  u.values.assign(dom->node_count(), kNaN);
  for (std::size_t i : dom->interior) u.values[i] = dom->f[i];
  u.domain = std::move(dom);
  return u;
}

ScalarField shifted(const ScalarField& u, double c) {
  ScalarField v = u;
  for (std::size_t i : u.domain->interior) v.values[i] += c;
  for (std::size_t i : u.domain->strip) v.values[i] += c;
  return v;
}

void require_same_geometry(const ScalarField& a, const ScalarField& b) {
  if (!a.domain || !b.domain) throw DomainMismatch("field without a grid");
  if (a.domain.get() == b.domain.get()) return;
  if (!a.domain->same_geometry(*b.domain)) {
    throw DomainMismatch("fields live on different grids (" + a.domain->shape_id + " vs " +
                         b.domain->shape_id + ")");
  }
}

void require_finite(const ScalarField& u, const char* label) {
  if (!u.domain) throw ValidationError(std::string(label) + ": field without a grid");
  for (std::size_t i : u.domain->interior) {
    if (!std::isfinite(u.values[i])) {
      throw ValidationError(std::string(label) + ": non-finite value at interior node " +
                            std::to_string(i));
    }
  }
  for (std::size_t i : u.domain->strip) {
    if (!std::isfinite(u.values[i])) {
      throw ValidationError(std::string(label) + ": non-finite value at strip node " +
                            std::to_string(i));
    }
  }
}

double sup_diff(const ScalarField& a, const ScalarField& b) {
  require_same_geometry(a, b);
  double s = 0.0;
  for (std::size_t i : a.domain->interior) s = std::max(s, std::fabs(a.values[i] - b.values[i]));
  for (std::size_t i : a.domain->strip) s = std::max(s, std::fabs(a.values[i] - b.values[i]));
  return s;
}

double multilinear_sample(const ScalarField& u, std::span<const double> x) {
  const DiscreteDomain& dom = *u.domain;
  const int n = dom.dim();
  std::vector<std::int64_t> base(n);
  std::vector<double> frac(n);
  for (int a = 0; a < n; ++a) {
    const double t = (x[a] - dom.origin[a]) / dom.h;
    auto i0 = static_cast<std::int64_t>(std::floor(t));
    if (i0 < 0 || i0 + 1 >= dom.extents[a]) {
      throw ValidationError("multilinear_sample: point outside the grid");
    }
    base[a] = i0;
    frac[a] = t - static_cast<double>(i0);
  }
  double acc = 0.0;
  std::vector<std::int64_t> mi(n);
  for (unsigned corner = 0; corner < (1u << n); ++corner) {
    double w = 1.0;
    for (int a = 0; a < n; ++a) {
      const bool hi = corner & (1u << a);
      mi[a] = base[a] + (hi ? 1 : 0);
      w *= hi ? frac[a] : 1.0 - frac[a];
    }
    acc += w * u.values[dom.linear_index(mi)];
  }
  return acc;
}

}  // namespace tow
