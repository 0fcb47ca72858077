#ifndef NPOP_EXPERIMENT_HPP
#define NPOP_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "npop/game.hpp"
#include "npop/population.hpp"
#include "npop/replicator.hpp"
#include "npop/trajectory.hpp"

namespace npop {

enum class ModelKind { Replicator, NeuralMixed, NeuralQuasiPure };

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& text);

struct ExperimentConfig {
  std::string game = "hawk-dove";
  std::string game_file;  // overrides `game` when set
  double noise = kDefaultIpdNoise;
  ModelKind model = ModelKind::Replicator;
  std::string init;  // "", "uniform" or comma-separated frequencies
  std::uint64_t steps = 1000;
  std::uint64_t seed = 0;
  double alpha = kDefaultReplicatorAlpha;
  double lr = kDefaultLearningRate;
  std::size_t batch = kDefaultBatchSize;
  std::size_t latent = kDefaultLatentDim;
  double epsilon = kDefaultEpsilon;
  std::uint64_t sample_every = 0;  // 0: every step for replicator, 50 for neural
  std::size_t measure_samples = kDefaultMeasureSamples;
  InitOptions init_options{};
  std::string resume;  // checkpoint to continue training from
  std::string out_dir;  // empty: nothing is written
  std::uint64_t checkpoint_every = 0;
};

inline constexpr std::uint64_t kDefaultNeuralSampleEvery = 50;

MatrixGame resolve_game(const ExperimentConfig& config);
// "uniform" or comma-separated weights summing to 1.
StrategyVector parse_init(const std::string& text, std::size_t strategies);
// Throws InvalidInput describing the first problem found.
void validate(const ExperimentConfig& config);

struct ExperimentResult {
  TrajectoryRecord trajectory;
  std::optional<PopulationModel> model;  // neural runs only
  std::optional<InitResult> init;
};

/// Runs a replicator or neural simulation. Neural runs first initialize to
/// `init` when it is given, then train for `steps` steps, measuring the
/// population every `sample_every` steps. When out_dir is set, writes
/// trajectory.csv and (neural) checkpoint.txt there.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Builds the model described by config, optionally resumed from a checkpoint.
PopulationModel make_population(const ExperimentConfig& config);

}  // namespace npop

#endif  // NPOP_EXPERIMENT_HPP
