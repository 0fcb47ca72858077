#ifndef NPOP_POPULATION_HPP
#define NPOP_POPULATION_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "npop/game.hpp"
#include "npop/network.hpp"
#include "npop/optimizer.hpp"

namespace npop {

inline constexpr std::size_t kDefaultLatentDim = 10;
inline constexpr std::size_t kDefaultBatchSize = 2048;
inline constexpr std::size_t kDefaultMeasureSamples = 10000;

struct PopulationConfig {
  std::size_t latent_dim = kDefaultLatentDim;
  std::size_t batch_size = kDefaultBatchSize;
  std::size_t hidden = kDefaultHidden;
  bool quasi_pure = false;
  double epsilon = kDefaultEpsilon;
  AdamConfig adam{};
  std::uint64_t seed = 0;
};

/// A population of strategies represented by a network over a uniform latent
/// cube, together with the game it plays and its training state.
struct PopulationModel {
  MatrixGame game;
  PopulationConfig config;
  NetworkParams params;
  AdamState adam;
  std::uint64_t step = 0;       // training steps taken
  std::uint64_t init_step = 0;  // initialization steps taken

  PopulationModel(MatrixGame g, PopulationConfig cfg);
  PopulationModel(MatrixGame g, PopulationConfig cfg, NetworkParams p);
};

// Gradient of the batch-mean payoff of F(z1) against F(z2). The opponent
// branch is a constant unless `through_opponent` is set, which exists only to
// demonstrate what the stop-gradient prevents.
struct PayoffGradient {
  NetworkGrads grads;
  double mean_payoff = 0.0;
};
PayoffGradient payoff_gradient(const PopulationModel& model, const Batch& z1, const Batch& z2,
                               bool through_opponent = false);

/// One self-play update: draw z1, z2, ascend the mean payoff of F(z1) against
/// the frozen F(z2). Returns the pre-update mean payoff.
double train_step(PopulationModel& model);

// Gradient of JSD(target, batch-mean output of F(z)) w.r.t. the parameters.
struct DivergenceGradient {
  NetworkGrads grads;
  double jsd = 0.0;
};
DivergenceGradient jsd_gradient(const NetworkParams& params, std::span<const double> target,
                                const Batch& z);

struct TargetDistribution {
  StrategyVector weights;
};

struct InitOptions {
  double tol = 1e-4;
  std::size_t max_iters = 20000;
  // Adam learning rate for the descent; 0 means reuse the training rate.
  double lr = 0.0;
  // Called with (iteration, batch JSD) before every convergence check.
  std::function<void(std::size_t, double)> observer;
};

struct InitResult {
  bool converged = false;
  std::size_t iterations = 0;  // updates applied
  double final_jsd = 0.0;
};

/// Descends the JS divergence between `target` and the batch-mean output
/// until it drops below tol or max_iters updates have been applied.
InitResult initialize_to(PopulationModel& model, const TargetDistribution& target,
                         const InitOptions& options = {});

// Mean output row (mixed) or normalized argmax histogram (quasi-pure) over
// num_samples latent draws. `draw` selects an independent sample set.
StrategyVector measure_frequencies(const PopulationModel& model,
                                   std::size_t num_samples = kDefaultMeasureSamples,
                                   std::uint64_t draw = 0);

// Batch-mean payoff of F(z1) against F(z2) without updating anything.
double population_payoff(const PopulationModel& model, std::uint64_t draw = 0);

// Batch mean of d payoff / d output_k against a fresh opponent batch, taken at
// the network output (before backpropagation into the weights).
std::vector<double> gradient_probe(const PopulationModel& model, std::uint64_t draw = 0);

// Self-contained checkpoint: config, game, network, Adam state and counters.
void write_checkpoint(std::ostream& out, const PopulationModel& model);
PopulationModel read_checkpoint(std::istream& in);
void save_checkpoint(const std::string& path, const PopulationModel& model);
PopulationModel load_checkpoint(const std::string& path);

}  // namespace npop

#endif  // NPOP_POPULATION_HPP
