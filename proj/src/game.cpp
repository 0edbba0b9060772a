#include "tow/game.hpp"

#include <cmath>
#include <exception>
#include <string>

#include "tow/errors.hpp"

namespace tow {

const char* coin_name(Coin c) {
  switch (c) {
    case Coin::MaxWin: return "max";
    case Coin::MinWin: return "min";
    case Coin::Random: return "random";
  }
  return "?";
}

namespace {

void check_strategy(const Strategy& s, const DiscreteDomain& dom, const char* who) {
  if (s.field()) {
    if (!s.field()->domain || !s.field()->domain->same_geometry(dom)) {
      throw DomainMismatch(std::string("strategy for ") + who +
                           " references a field on a different grid");
    }
  }
  if (s.kind() == StrategyKind::PullToward && s.target() >= dom.node_count()) {
    throw ValidationError(std::string("pull target of ") + who + " is not a grid node");
  }
}

struct NullRecorder {
  void start(std::size_t) {}
  void step(Coin, std::size_t) {}
};

struct TraceRecorder {
  GameTrace* t;
  void start(std::size_t node) { t->positions.push_back(node); }
  void step(Coin c, std::size_t node) {
    t->coins.push_back(c);
    t->positions.push_back(node);
  }
};

struct McAccum {
  double mean = 0.0;
  double std_error = 0.0;
};

McAccum reduce(const std::vector<double>& xs) {
  McAccum a;
  double sum = 0.0;
  for (double x : xs) sum += x;
  a.mean = sum / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - a.mean) * (x - a.mean);
  a.std_error = std::sqrt(ss / static_cast<double>(xs.size() - 1)) /
                std::sqrt(static_cast<double>(xs.size()));
  return a;
}

}  // namespace

GameEngine::GameEngine(std::shared_ptr<const DiscreteDomain> dom, const GameParams& params)
    : dom_(std::move(dom)), params_(params) {
  if (!dom_) throw ValidationError("GameEngine: null grid");
  if (dom_->dim() != params.n) {
    throw DomainMismatch("GameEngine: grid dimension vs params.n mismatch");
  }
  if (std::fabs(dom_->epsilon - params.epsilon) > 1e-12 * (1.0 + dom_->epsilon)) {
    throw DomainMismatch("GameEngine: grid epsilon " + std::to_string(dom_->epsilon) +
                         " vs params epsilon " + std::to_string(params.epsilon));
  }
  stencil_ = make_ball_stencil(dom_->dim(), dom_->h, dom_->epsilon);
  deltas_ = linearize(stencil_, *dom_);
  for (std::size_t k = 0; k < stencil_.offsets.size(); ++k) {
    if (deltas_[k] == 0) zero_offset_ = k;
  }
}

StencilView GameEngine::view() const {
  return {dom_.get(), &stencil_, deltas_, zero_offset_};
}

template <class Recorder>
GameOutcome GameEngine::run(const Strategy& sI, const Strategy& sII, std::size_t start,
                            RngSpec spec, const StopRule& stop, std::uint64_t step_cap,
                            Recorder& rec) const {
  if (start >= dom_->node_count() || dom_->cls(start) != NodeClass::Interior) {
    throw ValidationError("game start node must be Interior");
  }
  check_strategy(sI, *dom_, "Max");
  check_strategy(sII, *dom_, "Min");

  const StencilView sv = view();
  CounterRng rng(spec);

  std::vector<std::int64_t> mi(dom_->dim());
  dom_->multi_index(start, mi);

  GameOutcome out;
  std::size_t cur = start;
  rec.start(cur);

  for (std::uint64_t steps = 0;; ++steps) {
    if (dom_->cls(cur) == NodeClass::BoundaryStrip) {
      out.tau = steps;
      out.total_payoff = dom_->F[cur] + params_.eps2() * out.running_sum;
      break;
    }
    if (stop && stop(cur)) {
      out.tau = steps;
      out.total_payoff = params_.eps2() * out.running_sum;
      out.stopped_by_rule = true;
      break;
    }
    if (steps >= step_cap) {
      throw StepLimitExceeded("game exceeded " + std::to_string(step_cap) + " steps");
    }

    out.running_sum += dom_->f[cur];

    const double u = rng.next_double();
    Coin coin;
    std::size_t k;
    if (u < params_.half_alpha()) {
      coin = Coin::MaxWin;
      k = sI.move(sv, cur, mi);
    } else if (u < params_.alpha) {
      coin = Coin::MinWin;
      k = sII.move(sv, cur, mi);
    } else {
      coin = Coin::Random;
      k = rng.next_below(deltas_.size());
    }
    cur = cur + static_cast<std::size_t>(deltas_[k]);
    const auto& off = stencil_.offsets[k];
    for (int a = 0; a < dom_->dim(); ++a) mi[a] += off[a];
    rec.step(coin, cur);
  }

  out.end_node = cur;
  return out;
}

GameTrace GameEngine::play(const Strategy& sI, const Strategy& sII, std::size_t start, RngSpec rng,
                           const StopRule& stop, std::uint64_t step_cap) const {
  GameTrace t;
  TraceRecorder rec{&t};
  const GameOutcome out = run(sI, sII, start, rng, stop, step_cap, rec);
  t.tau = out.tau;
  t.running_sum = out.running_sum;
  t.total_payoff = out.total_payoff;
  t.stopped_by_rule = out.stopped_by_rule;
  return t;
}

GameOutcome GameEngine::play_outcome(const Strategy& sI, const Strategy& sII, std::size_t start,
                                     RngSpec rng, const StopRule& stop,
                                     std::uint64_t step_cap) const {
  NullRecorder rec;
  return run(sI, sII, start, rng, stop, step_cap, rec);
}

GameTrace play_game(std::shared_ptr<const DiscreteDomain> dom, const GameParams& params,
                    const Strategy& sI, const Strategy& sII, std::size_t start, RngSpec rng,
                    const StopRule& stop, std::uint64_t step_cap) {
  return GameEngine(std::move(dom), params).play(sI, sII, start, rng, stop, step_cap);
}

namespace {

/// Runs N games in parallel, one stream per game, and reduces per-game values
/// in stream order so the result is independent of the schedule.
template <class PerGame>
McResult mc_loop(std::uint64_t N, const PerGame& one) {
  std::vector<double> vals(N, 0.0);
  std::vector<std::exception_ptr> errs(N);
  const auto m = static_cast<std::int64_t>(N);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < m; ++i) {
    try {
      vals[i] = one(static_cast<std::uint64_t>(i));
    } catch (...) {
      errs[i] = std::current_exception();
    }
  }
  for (const auto& e : errs) {
    if (e) std::rethrow_exception(e);
  }
  const McAccum a = reduce(vals);
  return {a.mean, a.std_error, N};
}

}  // namespace

McResult estimate_value_mc(std::shared_ptr<const DiscreteDomain> dom, const GameParams& params,
                           const ScalarField& value_field, std::size_t start, std::uint64_t N,
                           RngSpec rng) {
  if (N < 100) throw ValidationError("estimate_value_mc: N must be >= 100");
  require_finite(value_field, "estimate_value_mc value field");
  const GameEngine eng(std::move(dom), params);
  const Strategy smax = Strategy::greedy_max(value_field);
  const Strategy smin = Strategy::greedy_min(value_field);
  return mc_loop(N, [&](std::uint64_t i) {
    return eng.play_outcome(smax, smin, start, RngSpec{rng.master_seed, rng.stream_id + i})
        .total_payoff;
  });
}

McResult estimate_stopping_time(std::shared_ptr<const DiscreteDomain> dom,
                                const GameParams& params, const Strategy& sI, const Strategy& sII,
                                std::size_t start, std::uint64_t N, RngSpec rng) {
  if (N < 100) throw ValidationError("estimate_stopping_time: N must be >= 100");
  const GameEngine eng(std::move(dom), params);
  return mc_loop(N, [&](std::uint64_t i) {
    return static_cast<double>(
        eng.play_outcome(sI, sII, start, RngSpec{rng.master_seed, rng.stream_id + i}).tau);
  });
}

}  // namespace tow
