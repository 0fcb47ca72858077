// Command-line front end for neural population experiments.
//
//   npop simulate    --game hawk-dove --model neural-quasi-pure --init 0.1,0.9 --steps 20000
//   npop init-only   --game noisy-ipd --model neural-mixed --init uniform --out run/
//   npop window-plot --checkpoint run/checkpoint.txt --resolution 256 --out plot.ppm
//   npop derive-ipd  --noise 0.01
//   npop ess         --game hawk-dove

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "npop/experiment.hpp"
#include "npop/text.hpp"
#include "npop/window_plot.hpp"

using namespace npop;

namespace {

struct ModelOptions {
  ExperimentConfig config;
  std::string model = "replicator";
};

void add_game_options(CLI::App* cmd, ExperimentConfig& c) {
  cmd->add_option("--game", c.game, "Built-in game: hawk-dove or noisy-ipd")->capture_default_str();
  cmd->add_option("--game-file", c.game_file, "Plain-text payoff matrix (overrides --game)");
  cmd->add_option("--noise", c.noise, "Move-flip probability for noisy-ipd")->capture_default_str();
}

void add_model_options(CLI::App* cmd, ModelOptions& o) {
  auto& c = o.config;
  add_game_options(cmd, c);
  cmd->add_option("--model", o.model, "replicator | neural-mixed | neural-quasi-pure")->capture_default_str();
  cmd->add_option("--init", c.init, "Initial population: comma-separated frequencies or 'uniform'");
  cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  cmd->add_option("--lr", c.lr, "Adam learning rate")->capture_default_str();
  cmd->add_option("--batch", c.batch, "Mini-batch size")->capture_default_str();
  cmd->add_option("--latent", c.latent, "Latent dimension")->capture_default_str();
  cmd->add_option("--epsilon", c.epsilon, "Pure_eps clamp width")->capture_default_str();
  cmd->add_option("--init-tol", c.init_options.tol, "JS divergence tolerance for initialization")
      ->capture_default_str();
  cmd->add_option("--init-max-iters", c.init_options.max_iters, "Initialization step limit")
      ->capture_default_str();
  cmd->add_option("--init-lr", c.init_options.lr, "Initialization learning rate (0: use --lr)")
      ->capture_default_str();
  cmd->add_option("--measure-samples", c.measure_samples, "Latent samples per frequency measurement")
      ->capture_default_str();
  cmd->add_option("--out", c.out_dir, "Output directory");
}

void print_frequencies(const MatrixGame& game, const StrategyVector& f) {
  for (std::size_t i = 0; i < game.size(); ++i)
    std::cout << game.strategy_names()[i] << ' ' << format_sig(f[i], 6) << '\n';
}

int run_simulate(ModelOptions& o) {
  o.config.model = parse_model_kind(o.model);
  const auto r = run_experiment(o.config);
  const auto& rows = r.trajectory.rows;
  if (r.init)
    std::cerr << "init: " << (r.init->converged ? "converged" : "NOT converged") << " after "
              << r.init->iterations << " steps, JSD " << format_sig(r.init->final_jsd, 4) << '\n';
  if (!rows.empty()) {
    const auto& last = rows.back();
    std::cout << "final step " << last.step << ":";
    for (std::size_t i = 0; i < last.freq.size(); ++i)
      std::cout << ' ' << r.trajectory.strategy_names[i] << '=' << format_sig(last.freq[i], 6);
    std::cout << " mean_payoff=" << format_sig(last.mean_payoff, 6) << '\n';
  }
  if (o.config.out_dir.empty()) write_csv(std::cout, r.trajectory);
  return 0;
}

int run_init_only(ModelOptions& o) {
  o.config.model = parse_model_kind(o.model);
  if (o.config.model == ModelKind::Replicator) throw InvalidInput("init-only needs a neural model");
  validate(o.config);
  auto model = make_population(o.config);
  const auto target = parse_init(o.config.init.empty() ? "uniform" : o.config.init, model.game.size());
  const auto res = initialize_to(model, TargetDistribution{target}, o.config.init_options);
  std::cout << (res.converged ? "converged" : "not converged") << " after " << res.iterations
            << " steps, JSD " << format_sig(res.final_jsd, 6) << '\n';
  print_frequencies(model.game, measure_frequencies(model, o.config.measure_samples));
  if (!o.config.out_dir.empty()) {
    std::filesystem::create_directories(o.config.out_dir);
    save_checkpoint((std::filesystem::path(o.config.out_dir) / "checkpoint.txt").string(), model);
  }
  return res.converged ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neural population models for matrix games"};
  app.set_config("--config", "", "Key-value config file; command-line flags take precedence");
  app.require_subcommand(1);

  ModelOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Run a replicator or neural population simulation");
  add_model_options(simulate, sim);
  simulate->add_option("--steps", sim.config.steps, "Training or replicator steps")->capture_default_str();
  simulate->add_option("--alpha", sim.config.alpha, "Replicator step size")->capture_default_str();
  simulate->add_option("--sample-every", sim.config.sample_every,
                       "Steps between trajectory rows (default 1 replicator, 50 neural)");
  simulate->add_option("--checkpoint-every", sim.config.checkpoint_every, "Steps between checkpoints");
  simulate->add_option("--resume", sim.config.resume, "Continue training from a checkpoint");

  ModelOptions init;
  init.model = "neural-mixed";
  auto* init_only = app.add_subcommand("init-only", "Initialize a network to a target population");
  add_model_options(init_only, init);

  std::string checkpoint, image_out = "window.ppm";
  std::size_t resolution = 256;
  auto* plot = app.add_subcommand("window-plot", "Render a church-window plot from a checkpoint");
  plot->add_option("--checkpoint", checkpoint, "Checkpoint with a 2-D latent space")->required();
  plot->add_option("--resolution", resolution, "Grid size in pixels")->capture_default_str();
  plot->add_option("--out", image_out, "Output PPM file")->capture_default_str();

  double derive_noise = kDefaultIpdNoise;
  std::string derive_out;
  auto* derive = app.add_subcommand("derive-ipd", "Print the noisy IPD payoff matrix");
  derive->add_option("--noise", derive_noise, "Move-flip probability")->capture_default_str();
  derive->add_option("--out", derive_out, "Write to a file instead of stdout");

  ExperimentConfig ess_cfg;
  auto* ess = app.add_subcommand("ess", "Mixed ESS of a two-strategy game");
  add_game_options(ess, ess_cfg);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) return run_simulate(sim);
    if (*init_only) return run_init_only(init);
    if (*plot) {
      const auto model = load_checkpoint(checkpoint);
      const auto wp = render_window_plot(model.params, resolution);
      save_ppm(image_out, wp);
      for (std::size_t k = 0; k < model.game.size(); ++k)
        std::cout << model.game.strategy_names()[k] << " pixel share "
                  << format_sig(wp.argmax_fraction(k), 6) << '\n';
      return 0;
    }
    if (*derive) {
      const auto game = noisy_ipd_game(derive_noise);
      if (derive_out.empty()) {
        write_game(std::cout, game);
      } else {
        std::ofstream out(derive_out);
        if (!out) throw InvalidInput("cannot write " + derive_out);
        write_game(out, game);
      }
      return 0;
    }
    if (*ess) {
      const auto game = resolve_game(ess_cfg);
      try {
        const auto x = ess_2x2(game);
        print_frequencies(game, x);
      } catch (const InvalidInput& e) {
        std::cout << e.what() << '\n';
        return 4;
      }
      return 0;
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 5;
  }
  return 0;
}
