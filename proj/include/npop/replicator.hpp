#ifndef NPOP_REPLICATOR_HPP
#define NPOP_REPLICATOR_HPP

#include <cstdint>
#include <vector>

#include "npop/game.hpp"
#include "npop/trajectory.hpp"

namespace npop {

inline constexpr double kDefaultReplicatorAlpha = 0.01;

enum class ReplicatorForm {
  Standard,  // x_i += alpha * x_i * (f_i - phi)
  Literal,   // x_i += alpha * (f_i - phi), no x_i factor; for comparison only
};

struct ReplicatorState {
  std::vector<double> x;
  std::uint64_t t = 0;
  double alpha = kDefaultReplicatorAlpha;
};

// Throws InvalidInput if the step would leave [0,1]; the caller must then
// reduce alpha.
ReplicatorState replicator_step(const ReplicatorState& state, const MatrixGame& game,
                                ReplicatorForm form = ReplicatorForm::Standard);

// Records x0 and the state after every step (steps + 1 rows); mean_payoff is
// x' M x at each recorded state.
TrajectoryRecord replicator_run(const StrategyVector& x0, const MatrixGame& game, double alpha,
                                std::uint64_t steps, std::uint64_t sample_every = 1,
                                ReplicatorForm form = ReplicatorForm::Standard);

}  // namespace npop

#endif  // NPOP_REPLICATOR_HPP
