#include "npop/experiment.hpp"

#include <filesystem>
#include <fstream>

#include "npop/text.hpp"

namespace npop {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Replicator:
      return "replicator";
    case ModelKind::NeuralMixed:
      return "neural-mixed";
    case ModelKind::NeuralQuasiPure:
      return "neural-quasi-pure";
  }
  return "?";
}

ModelKind parse_model_kind(const std::string& text) {
  if (text == "replicator") return ModelKind::Replicator;
  if (text == "neural-mixed") return ModelKind::NeuralMixed;
  if (text == "neural-quasi-pure") return ModelKind::NeuralQuasiPure;
  throw InvalidInput("unknown model '" + text + "' (expected replicator, neural-mixed or neural-quasi-pure)");
}

MatrixGame resolve_game(const ExperimentConfig& config) {
  if (!config.game_file.empty()) return load_game_file(config.game_file);
  return builtin_game(config.game, config.noise);
}

StrategyVector parse_init(const std::string& text, std::size_t strategies) {
  if (text == "uniform") return StrategyVector::uniform(strategies);
  std::vector<double> w;
  for (const auto& cell : split(text, ',')) w.push_back(parse_double(cell));
  if (w.size() != strategies)
    throw InvalidInput("--init has " + std::to_string(w.size()) + " entries but the game has " +
                       std::to_string(strategies) + " strategies");
  return StrategyVector(std::move(w));
}

void validate(const ExperimentConfig& c) {
  const auto game = resolve_game(c);
  if (!c.init.empty()) parse_init(c.init, game.size());
  if (!(c.alpha > 0.0)) throw InvalidInput("--alpha must be positive");
  if (!(c.lr > 0.0)) throw InvalidInput("--lr must be positive");
  if (c.batch == 0) throw InvalidInput("--batch must be positive");
  if (c.latent == 0) throw InvalidInput("--latent must be positive");
  if (c.measure_samples == 0) throw InvalidInput("measurement sample count must be positive");
  if (c.model == ModelKind::NeuralQuasiPure && !(c.epsilon > 0.0 && c.epsilon < 1.0))
    throw InvalidInput("--epsilon must lie in (0,1)");
  if (c.model == ModelKind::Replicator && !c.resume.empty())
    throw InvalidInput("--resume applies to neural models only");
}

PopulationModel make_population(const ExperimentConfig& c) {
  if (!c.resume.empty()) {
    auto model = load_checkpoint(c.resume);
    if ((c.model == ModelKind::NeuralQuasiPure) != model.params.quasi_pure)
      throw InvalidInput("checkpoint layer type does not match --model");
    return model;
  }
  PopulationConfig pc;
  pc.latent_dim = c.latent;
  pc.batch_size = c.batch;
  pc.quasi_pure = c.model == ModelKind::NeuralQuasiPure;
  pc.epsilon = c.epsilon;
  pc.adam.lr = c.lr;
  pc.seed = c.seed;
  return PopulationModel(resolve_game(c), pc);
}

namespace {

void write_outputs(const ExperimentConfig& c, const ExperimentResult& r) {
  if (c.out_dir.empty()) return;
  std::filesystem::create_directories(c.out_dir);
  const auto dir = std::filesystem::path(c.out_dir);
  std::ofstream csv(dir / "trajectory.csv");
  if (!csv) throw InvalidInput("cannot write " + (dir / "trajectory.csv").string());
  write_csv(csv, r.trajectory);
  if (r.model) save_checkpoint((dir / "checkpoint.txt").string(), *r.model);
}

ExperimentResult run_replicator(const ExperimentConfig& c) {
  const auto game = resolve_game(c);
  const auto x0 = parse_init(c.init.empty() ? "uniform" : c.init, game.size());
  ExperimentResult r;
  r.trajectory = replicator_run(x0, game, c.alpha, c.steps, c.sample_every ? c.sample_every : 1);
  r.trajectory.set_meta("init", c.init.empty() ? "uniform" : c.init);
  return r;
}

ExperimentResult run_neural(const ExperimentConfig& c) {
  PopulationModel model = make_population(c);
  const auto& game = model.game;
  ExperimentResult r;
  auto& t = r.trajectory;
  t.strategy_names = game.strategy_names();
  t.set_meta("model", to_string(c.model));
  t.set_meta("game", game.name());
  t.set_meta("seed", std::to_string(model.config.seed));
  t.set_meta("steps", std::to_string(c.steps));
  t.set_meta("lr", format_exact(model.config.adam.lr));
  t.set_meta("batch", std::to_string(model.config.batch_size));
  t.set_meta("latent", std::to_string(model.config.latent_dim));
  t.set_meta("hidden", std::to_string(model.config.hidden));
  if (model.params.quasi_pure) t.set_meta("epsilon", format_exact(model.params.epsilon));
  if (!c.resume.empty()) t.set_meta("resumed_from_step", std::to_string(model.step));

  if (!c.init.empty() && c.resume.empty()) {
    const auto target = parse_init(c.init, game.size());
    r.init = initialize_to(model, TargetDistribution{target}, c.init_options);
    t.set_meta("init", c.init);
    t.set_meta("init_converged", r.init->converged ? "true" : "false");
    t.set_meta("init_iterations", std::to_string(r.init->iterations));
    t.set_meta("init_jsd", format_sig(r.init->final_jsd, kCsvDigits));
  }

  const std::uint64_t every = c.sample_every ? c.sample_every : kDefaultNeuralSampleEvery;
  t.set_meta("sample_every", std::to_string(every));
  auto record = [&](double payoff) {
    t.rows.push_back({model.step, measure_frequencies(model, c.measure_samples, model.step).values(), payoff});
  };
  record(population_payoff(model, model.step));
  const std::uint64_t first = model.step;
  for (std::uint64_t s = 1; s <= c.steps; ++s) {
    const double payoff = train_step(model);
    if (s % every == 0 || s == c.steps) record(payoff);
    if (c.checkpoint_every && s % c.checkpoint_every == 0 && !c.out_dir.empty()) {
      std::filesystem::create_directories(c.out_dir);
      save_checkpoint((std::filesystem::path(c.out_dir) /
                       ("checkpoint_" + std::to_string(first + s) + ".txt")).string(),
                      model);
    }
  }
  r.model = std::move(model);
  return r;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  auto r = config.model == ModelKind::Replicator ? run_replicator(config) : run_neural(config);
  write_outputs(config, r);
  return r;
}

}  // namespace npop
