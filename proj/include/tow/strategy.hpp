#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "tow/field.hpp"
#include "tow/stencil.hpp"

namespace tow {

enum class StrategyKind : std::uint8_t { GreedyMax, GreedyMin, PullToward, StandStill };

/// Stencil data a strategy needs to pick a move; owned by the game engine.
struct StencilView {
  const DiscreteDomain* dom = nullptr;
  const BallStencil* stencil = nullptr;
  std::span<const std::ptrdiff_t> deltas;
  std::size_t zero_offset = 0;  // index of the all-zero offset
};

/// A move rule for one player.  Greedy rules maximize/minimize a reference
/// field over the stencil (exact argmax, no slack; on a finite stencil the
/// extremum is attained).  PullToward steps to the stencil node closest to a
/// fixed target node.  All ties break toward the lexicographically smallest
/// offset, making every strategy deterministic.
///
/// Greedy strategies hold a non-owning pointer to the reference field; the
/// caller keeps it alive for the strategy's lifetime.
class Strategy {
 public:
  static Strategy greedy_max(const ScalarField& u) { return {StrategyKind::GreedyMax, &u, 0}; }
  static Strategy greedy_min(const ScalarField& u) { return {StrategyKind::GreedyMin, &u, 0}; }
  static Strategy pull_toward(std::size_t target_node) {
    return {StrategyKind::PullToward, nullptr, target_node};
  }
  static Strategy stand_still() { return {StrategyKind::StandStill, nullptr, 0}; }

  StrategyKind kind() const { return kind_; }
  const ScalarField* field() const { return field_; }
  std::size_t target() const { return target_; }

  /// Index into the stencil of the chosen move from `from` (whose multi-index
  /// the caller maintains incrementally).
  std::size_t move(const StencilView& view, std::size_t from,
                   std::span<const std::int64_t> from_mi) const;

 private:
  Strategy(StrategyKind k, const ScalarField* f, std::size_t t) : kind_(k), field_(f), target_(t) {}
  StrategyKind kind_;
  const ScalarField* field_;
  std::size_t target_;
};

}  // namespace tow
