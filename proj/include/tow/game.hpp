#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "tow/dpp.hpp"
#include "tow/params.hpp"
#include "tow/rng.hpp"
#include "tow/strategy.hpp"

namespace tow {

enum class Coin : std::uint8_t { MaxWin, MinWin, Random };

const char* coin_name(Coin c);

/// Full record of one play: positions x_0..x_tau, the coin of every step,
/// the accumulated running payoff sum and the total payoff
///   F(x_tau) + eps^2 * sum_{j < tau} f(x_j).
/// When a custom stop rule ended the game at an interior node, total_payoff
/// holds only the running part and stopped_by_rule is set.
struct GameTrace {
  std::vector<std::size_t> positions;
  std::vector<Coin> coins;
  std::uint64_t tau = 0;
  double running_sum = 0.0;
  double total_payoff = 0.0;
  bool stopped_by_rule = false;
};

/// Trace minus the per-step record; what the estimators aggregate.
struct GameOutcome {
  std::size_t end_node = 0;
  std::uint64_t tau = 0;
  double running_sum = 0.0;
  double total_payoff = 0.0;
  bool stopped_by_rule = false;
};

/// Optional early-stop predicate on the current node (checked on arrival,
/// including at the start); lets diagnostics realize stopping times tau* <= tau.
using StopRule = std::function<bool(std::size_t)>;

inline constexpr std::uint64_t kDefaultStepCap = 1'000'000'000;

/// One coin per step: u < alpha/2 Max moves, u < alpha Min moves, else the
/// token jumps to a uniformly random stencil node (center included).  A step
/// first accrues f at the departing node, then moves; the game ends on arrival
/// in the boundary strip.  Exceeding step_cap throws StepLimitExceeded.
class GameEngine {
 public:
  GameEngine(std::shared_ptr<const DiscreteDomain> dom, const GameParams& params);

  GameTrace play(const Strategy& max_player, const Strategy& min_player, std::size_t start,
                 RngSpec rng, const StopRule& stop = {},
                 std::uint64_t step_cap = kDefaultStepCap) const;

  GameOutcome play_outcome(const Strategy& max_player, const Strategy& min_player,
                           std::size_t start, RngSpec rng, const StopRule& stop = {},
                           std::uint64_t step_cap = kDefaultStepCap) const;

  const DiscreteDomain& domain() const { return *dom_; }
  const BallStencil& stencil() const { return stencil_; }
  StencilView view() const;

 private:
  template <class Recorder>
  GameOutcome run(const Strategy& sI, const Strategy& sII, std::size_t start, RngSpec rng,
                  const StopRule& stop, std::uint64_t step_cap, Recorder& rec) const;

  std::shared_ptr<const DiscreteDomain> dom_;
  GameParams params_;
  BallStencil stencil_;
  std::vector<std::ptrdiff_t> deltas_;
  std::size_t zero_offset_ = 0;
};

/// Convenience wrapper building a one-shot engine.
GameTrace play_game(std::shared_ptr<const DiscreteDomain> dom, const GameParams& params,
                    const Strategy& max_player, const Strategy& min_player, std::size_t start,
                    RngSpec rng, const StopRule& stop = {},
                    std::uint64_t step_cap = kDefaultStepCap);

struct McResult {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;
};

/// Mean payoff of greedy-vs-greedy play on value_field over N independent
/// games (streams rng.stream_id .. rng.stream_id + N - 1).  N >= 100.
McResult estimate_value_mc(std::shared_ptr<const DiscreteDomain> dom, const GameParams& params,
                           const ScalarField& value_field, std::size_t start, std::uint64_t N,
                           RngSpec rng);

/// Mean stopping time tau of the given strategy pair, same stream layout.
McResult estimate_stopping_time(std::shared_ptr<const DiscreteDomain> dom,
                                const GameParams& params, const Strategy& max_player,
                                const Strategy& min_player, std::size_t start, std::uint64_t N,
                                RngSpec rng);

}  // namespace tow
