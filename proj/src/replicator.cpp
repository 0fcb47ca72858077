#include "npop/replicator.hpp"

#include <cmath>

#include "npop/text.hpp"

namespace npop {

ReplicatorState replicator_step(const ReplicatorState& state, const MatrixGame& game, ReplicatorForm form) {
  const std::size_t n = game.size();
  if (state.x.size() != n) throw InvalidInput("state dimension does not match game");
  if (!(state.alpha > 0.0)) throw InvalidInput("alpha must be positive");
  std::vector<double> f(n);
  fitness_against(game, state.x, f);
  double phi = 0.0;
  for (std::size_t i = 0; i < n; ++i) phi += state.x[i] * f[i];

  ReplicatorState next{std::vector<double>(n), state.t + 1, state.alpha};
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double growth = form == ReplicatorForm::Standard ? state.x[i] * (f[i] - phi) : f[i] - phi;
    next.x[i] = state.x[i] + state.alpha * growth;
    if (!(next.x[i] >= 0.0 && next.x[i] <= 1.0))
      throw InvalidInput("replicator step left [0,1]; reduce alpha");
    sum += next.x[i];
  }
  // Standard increments sum to zero analytically; remove rounding drift.
  // The literal form does not conserve mass and is left as computed.
  if (form == ReplicatorForm::Standard)
    for (double& x : next.x) x /= sum;
  return next;
}

TrajectoryRecord replicator_run(const StrategyVector& x0, const MatrixGame& game, double alpha,
                                std::uint64_t steps, std::uint64_t sample_every, ReplicatorForm form) {
  if (x0.size() != game.size()) throw InvalidInput("initial state dimension does not match game");
  if (sample_every == 0) throw InvalidInput("sample interval must be positive");
  TrajectoryRecord rec;
  rec.strategy_names = game.strategy_names();
  rec.set_meta("model", "replicator");
  rec.set_meta("game", game.name());
  rec.set_meta("alpha", format_exact(alpha));
  rec.set_meta("steps", std::to_string(steps));
  if (form == ReplicatorForm::Literal) rec.set_meta("form", "literal");

  ReplicatorState state{x0.values(), 0, alpha};
  auto record = [&] { rec.rows.push_back({state.t, state.x, mixed_payoff(game, state.x, state.x)}); };
  record();
  for (std::uint64_t s = 1; s <= steps; ++s) {
    state = replicator_step(state, game, form);
    if (s % sample_every == 0 || s == steps) record();
  }
  return rec;
}

}  // namespace npop
