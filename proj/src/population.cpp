#include "npop/population.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

#include "npop/divergence.hpp"
#include "npop/kernels.hpp"
#include "npop/random.hpp"
#include "npop/text.hpp"

namespace npop {

namespace {

void check_model(const PopulationModel& m) {
  if (m.config.batch_size == 0) throw InvalidInput("batch size must be positive");
  if (m.params.strategies() != m.game.size())
    throw InvalidInput("network output count does not match the game's strategy count");
  if (m.params.latent_dim() != m.config.latent_dim)
    throw InvalidInput("network latent dimension does not match config");
}

Batch draw_batch(const PopulationModel& m, std::uint64_t counter, std::uint64_t stream_id,
                 std::size_t rows) {
  auto engine = make_engine(m.config.seed, counter, stream_id);
  return Batch::sample(rows, m.config.latent_dim, engine);
}

[[noreturn]] void abort_with_dump(const PopulationModel& m, const std::string& what) {
  std::ostringstream dump;
  write_params(dump, m.params);
  throw NumericalError(what + " at step " + std::to_string(m.step) + "; parameters:\n" + dump.str());
}

}  // namespace

PopulationModel::PopulationModel(MatrixGame g, PopulationConfig cfg)
    : PopulationModel(g, cfg,
                      init_params(cfg.latent_dim, g.size(), cfg.seed, cfg.quasi_pure, cfg.epsilon,
                                  cfg.hidden)) {}

PopulationModel::PopulationModel(MatrixGame g, PopulationConfig cfg, NetworkParams p)
    : game(std::move(g)), config(cfg), params(std::move(p)), adam(AdamState::for_params(params, cfg.adam)) {
  validate(params);
  check_model(*this);
}

PayoffGradient payoff_gradient(const PopulationModel& model, const Batch& z1, const Batch& z2,
                               bool through_opponent) {
  if (z1.size() != z2.size() || z1.size() == 0) throw InvalidInput("player batches must match in size");
  const auto& game = model.game;
  const std::size_t b = z1.size(), s = game.size();
  const auto player = forward(model.params, z1);
  const auto opponent = forward(model.params, z2);

  Matrix up1(b, s);
  Matrix up2(through_opponent ? b : 0, s);
  const double inv_b = 1.0 / static_cast<double>(b);
  double total = 0.0;
  for (std::size_t i = 0; i < b; ++i) {
    auto f = up1.row(i);
    fitness_against(game, opponent.output.row(i), f);
    const auto p1 = player.output.row(i);
    double payoff = 0.0;
    for (std::size_t k = 0; k < s; ++k) payoff += p1[k] * f[k];
    total += payoff;
    for (double& x : f) x *= inv_b;
    if (through_opponent) {
      // d payoff / d p2_j = sum_k p1_k M(k, j)
      for (std::size_t j = 0; j < s; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < s; ++k) acc += p1[k] * game.payoff(k, j);
        up2(i, j) = acc * inv_b;
      }
    }
  }
  PayoffGradient out{backward(model.params, z1, player, up1), total * inv_b};
  if (through_opponent) out.grads += backward(model.params, z2, opponent, up2);
  return out;
}

double train_step(PopulationModel& model) {
  const std::size_t b = model.config.batch_size;
  const auto z1 = draw_batch(model, model.step, stream::kPlayer, b);
  const auto z2 = draw_batch(model, model.step, stream::kOpponent, b);
  auto [grads, mean_payoff] = payoff_gradient(model, z1, z2);
  if (!std::isfinite(mean_payoff)) abort_with_dump(model, "non-finite mean payoff");
  try {
    adam_step(model.adam, model.params, grads, Direction::Ascend);
  } catch (const NumericalError& e) {
    abort_with_dump(model, e.what());
  }
  ++model.step;
  return mean_payoff;
}

DivergenceGradient jsd_gradient(const NetworkParams& params, std::span<const double> target,
                                const Batch& z) {
  const auto trace = forward(params, z);
  const auto q = kernels::column_mean_parallel(trace.output);
  DivergenceGradient out;
  out.jsd = js_divergence(target, q);
  const auto dq = js_gradient(target, q);
  const std::size_t b = z.size(), s = q.size();
  const double inv_b = 1.0 / static_cast<double>(b);
  Matrix up(b, s);
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t k = 0; k < s; ++k) up(i, k) = dq[k] * inv_b;
  out.grads = backward(params, z, trace, up);
  return out;
}

InitResult initialize_to(PopulationModel& model, const TargetDistribution& target,
                         const InitOptions& options) {
  const auto& d = target.weights;
  if (d.size() != model.game.size()) throw InvalidInput("target dimension does not match game");
  AdamConfig cfg = model.config.adam;
  if (options.lr > 0.0) cfg.lr = options.lr;
  AdamState adam = AdamState::for_params(model.params, cfg);

  InitResult result;
  for (;;) {
    const auto z = draw_batch(model, model.init_step, stream::kInit, model.config.batch_size);
    const auto g = jsd_gradient(model.params, d.weights(), z);
    result.final_jsd = g.jsd;
    if (!std::isfinite(result.final_jsd)) abort_with_dump(model, "non-finite JS divergence");
    if (options.observer) options.observer(result.iterations, result.final_jsd);
    if (result.final_jsd < options.tol) {
      result.converged = true;
      break;
    }
    if (result.iterations >= options.max_iters) break;
    adam_step(adam, model.params, g.grads, Direction::Descend);
    ++model.init_step;
    ++result.iterations;
  }
  return result;
}

StrategyVector measure_frequencies(const PopulationModel& model, std::size_t num_samples,
                                   std::uint64_t draw) {
  if (num_samples == 0) throw InvalidInput("need at least one sample");
  const auto z = draw_batch(model, draw, stream::kMeasure, num_samples);
  const auto trace = forward(model.params, z);
  std::vector<double> freq;
  if (model.params.quasi_pure) {
    freq.assign(model.game.size(), 0.0);
    for (std::size_t k : trace.argmax) freq[k] += 1.0;
    for (double& x : freq) x /= static_cast<double>(num_samples);
  } else {
    freq = kernels::column_mean_parallel(trace.output);
  }
  // Normalize away accumulated rounding so the result is a simplex point.
  double sum = 0.0;
  for (double x : freq) sum += x;
  for (double& x : freq) x = std::clamp(x / sum, 0.0, 1.0);
  return StrategyVector(std::move(freq));
}

double population_payoff(const PopulationModel& model, std::uint64_t draw) {
  const std::size_t b = model.config.batch_size;
  const auto p1 = forward(model.params, draw_batch(model, draw, stream::kProbe, b)).output;
  const auto p2 = forward(model.params, draw_batch(model, draw, stream::kProbeOpponent, b)).output;
  double total = 0.0;
  for (std::size_t i = 0; i < b; ++i) total += mixed_payoff(model.game, p1.row(i), p2.row(i));
  return total / static_cast<double>(b);
}

std::vector<double> gradient_probe(const PopulationModel& model, std::uint64_t draw) {
  const std::size_t b = model.config.batch_size, s = model.game.size();
  const auto z2 = draw_batch(model, draw, stream::kProbe, b);
  const auto opponent = forward(model.params, z2);
  // d/d p1_k of M(p1, p2_i) is (M p2_i)_k; average over the batch.
  std::vector<double> mean(s, 0.0), f(s);
  for (std::size_t i = 0; i < b; ++i) {
    fitness_against(model.game, opponent.output.row(i), f);
    for (std::size_t k = 0; k < s; ++k) mean[k] += f[k];
  }
  for (double& x : mean) x /= static_cast<double>(b);
  return mean;
}

// ---------------------------------------------------------------------------

void write_checkpoint(std::ostream& out, const PopulationModel& m) {
  const auto& c = m.config;
  out << "npop-checkpoint 1\n";
  out << "seed " << c.seed << "\nstep " << m.step << "\ninit_step " << m.init_step << '\n';
  out << "latent " << c.latent_dim << "\nbatch " << c.batch_size << "\nhidden " << c.hidden << '\n';
  out << "game " << m.game.name() << '\n';
  write_game(out, m.game);
  write_params(out, m.params);
  write_adam(out, m.adam);
}

PopulationModel read_checkpoint(std::istream& in) {
  std::string line;
  auto field = [&](const char* key) -> std::string {
    if (!std::getline(in, line)) throw InvalidInput(std::string("checkpoint truncated before ") + key);
    const std::string prefix = std::string(key) + ' ';
    if (line.rfind(prefix, 0) != 0) throw InvalidInput(std::string("checkpoint: expected ") + key);
    return line.substr(prefix.size());
  };
  if (field("npop-checkpoint") != "1") throw InvalidInput("unsupported checkpoint version");
  PopulationConfig cfg;
  cfg.seed = static_cast<std::uint64_t>(parse_integer(field("seed")));
  const auto step = static_cast<std::uint64_t>(parse_integer(field("step")));
  const auto init_step = static_cast<std::uint64_t>(parse_integer(field("init_step")));
  cfg.latent_dim = static_cast<std::size_t>(parse_integer(field("latent")));
  cfg.batch_size = static_cast<std::size_t>(parse_integer(field("batch")));
  cfg.hidden = static_cast<std::size_t>(parse_integer(field("hidden")));
  std::string game_name = field("game");

  // The game block is exactly 1 + n lines.
  if (!std::getline(in, line)) throw InvalidInput("checkpoint truncated in game block");
  std::ostringstream block;
  block << line << '\n';
  const std::size_t n = split(line, ',').size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw InvalidInput("checkpoint truncated in game block");
    block << line << '\n';
  }
  std::istringstream game_in(block.str());
  MatrixGame game = read_game(game_in, game_name);

  NetworkParams params = read_params(in);
  cfg.quasi_pure = params.quasi_pure;
  cfg.epsilon = params.epsilon;
  AdamState adam = read_adam(in);
  cfg.adam = adam.config;

  PopulationModel model(std::move(game), cfg, std::move(params));
  if (adam.m.size() != model.adam.m.size()) throw InvalidInput("checkpoint Adam state shape mismatch");
  model.adam = std::move(adam);
  model.step = step;
  model.init_step = init_step;
  return model;
}

void save_checkpoint(const std::string& path, const PopulationModel& model) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write checkpoint " + path);
  write_checkpoint(out, model);
}

PopulationModel load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open checkpoint " + path);
  return read_checkpoint(in);
}

}  // namespace npop
