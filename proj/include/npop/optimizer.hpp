#ifndef NPOP_OPTIMIZER_HPP
#define NPOP_OPTIMIZER_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "npop/network.hpp"

namespace npop {

enum class Direction { Ascend, Descend };

inline constexpr double kDefaultLearningRate = 0.0002;

struct AdamConfig {
  double lr = kDefaultLearningRate;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps_hat = 1e-8;

  friend bool operator==(const AdamConfig&, const AdamConfig&) = default;
};

struct AdamState {
  AdamConfig config;
  std::vector<std::vector<double>> m;  // one accumulator per parameter tensor
  std::vector<std::vector<double>> v;
  std::uint64_t t = 0;

  static AdamState for_params(const NetworkParams& p, AdamConfig config = {});
  static AdamState for_shapes(std::span<const std::size_t> sizes, AdamConfig config = {});

  friend bool operator==(const AdamState&, const AdamState&) = default;
};

// Core update on flat tensors. Throws NumericalError on non-finite gradients
// before touching any parameter.
void adam_step(AdamState& state, std::span<const std::span<double>> params,
               std::span<const std::span<const double>> grads, Direction dir);
void adam_step(AdamState& state, NetworkParams& params, const NetworkGrads& grads, Direction dir);

void sgd_step(std::span<const std::span<double>> params, std::span<const std::span<const double>> grads,
              double lr, Direction dir);
void sgd_step(NetworkParams& params, const NetworkGrads& grads, double lr, Direction dir);

void write_adam(std::ostream& out, const AdamState& s);
AdamState read_adam(std::istream& in);

}  // namespace npop

#endif  // NPOP_OPTIMIZER_HPP
