#include "tow/strategy.hpp"

#include <cstdint>
#include <vector>

#include "tow/errors.hpp"

namespace tow {

std::size_t Strategy::move(const StencilView& view, std::size_t from,
                           std::span<const std::int64_t> from_mi) const {
  switch (kind_) {
    case StrategyKind::StandStill:
      return view.zero_offset;

    case StrategyKind::GreedyMax: {
      const double* v = field_->values.data();
      std::size_t best = 0;
      double bv = v[from + view.deltas[0]];
      for (std::size_t k = 1; k < view.deltas.size(); ++k) {
        const double x = v[from + view.deltas[k]];
        if (x > bv) {
          bv = x;
          best = k;
        }
      }
      return best;
    }

    case StrategyKind::GreedyMin: {
      const double* v = field_->values.data();
      std::size_t best = 0;
      double bv = v[from + view.deltas[0]];
      for (std::size_t k = 1; k < view.deltas.size(); ++k) {
        const double x = v[from + view.deltas[k]];
        if (x < bv) {
          bv = x;
          best = k;
        }
      }
      return best;
    }

    case StrategyKind::PullToward: {
      // Minimize |from + offset - target| in index space; exact in integers.
      const int n = view.dom->dim();
      std::vector<std::int64_t> tgt(n);
      view.dom->multi_index(target_, tgt);
      std::size_t best = 0;
      std::int64_t bd = -1;
      for (std::size_t k = 0; k < view.stencil->offsets.size(); ++k) {
        const auto& off = view.stencil->offsets[k];
        std::int64_t d2 = 0;
        for (int a = 0; a < n; ++a) {
          const std::int64_t d = from_mi[a] + off[a] - tgt[a];
          d2 += d * d;
        }
        if (bd < 0 || d2 < bd) {
          bd = d2;
          best = k;
        }
      }
      return best;
    }
  }
  throw ValidationError("Strategy::move: unknown kind");
}

}  // namespace tow
