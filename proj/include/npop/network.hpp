#ifndef NPOP_NETWORK_HPP
#define NPOP_NETWORK_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "npop/game.hpp"
#include "npop/matrix.hpp"
#include "npop/random.hpp"

namespace npop {

inline constexpr std::size_t kDefaultHidden = 10;
inline constexpr double kDefaultEpsilon = 0.1;

/// Weights of the population network: latent -> dense -> sigmoid -> dense ->
/// softmax, optionally followed by the Pure_eps soft clamp.
struct NetworkParams {
  Matrix w1;               // hidden x latent
  std::vector<double> b1;  // hidden
  Matrix w2;               // strategies x hidden
  std::vector<double> b2;  // strategies
  bool quasi_pure = false;
  double epsilon = kDefaultEpsilon;

  std::size_t latent_dim() const { return w1.cols; }
  std::size_t hidden() const { return w1.rows; }
  std::size_t strategies() const { return w2.rows; }

  friend bool operator==(const NetworkParams&, const NetworkParams&) = default;
};

// Gradient w.r.t. each parameter tensor; same shapes as NetworkParams.
struct NetworkGrads {
  Matrix w1;
  std::vector<double> b1;
  Matrix w2;
  std::vector<double> b2;

  static NetworkGrads zeros_like(const NetworkParams& p);
  NetworkGrads& operator+=(const NetworkGrads& other);
};

// The four trainable tensors, flattened, in the order w1, b1, w2, b2.
std::vector<std::span<double>> tensors(NetworkParams& p);
std::vector<std::span<const double>> tensors(const NetworkParams& p);
std::vector<std::span<double>> tensors(NetworkGrads& g);
std::vector<std::span<const double>> tensors(const NetworkGrads& g);

// Weights uniform in [-0.5, 0.5], zero biases.
NetworkParams init_params(std::size_t latent_dim, std::size_t strategies, std::uint64_t seed,
                          bool quasi_pure = false, double epsilon = kDefaultEpsilon,
                          std::size_t hidden = kDefaultHidden);

void validate(const NetworkParams& p);

/// Latent samples, one per row, each entry in [0,1].
class Batch {
 public:
  explicit Batch(Matrix rows);
  // b rows drawn uniformly from the unit cube [0,1]^n.
  static Batch sample(std::size_t b, std::size_t n, Engine& engine);

  std::size_t size() const { return rows_.rows; }
  std::size_t dim() const { return rows_.cols; }
  const Matrix& rows() const { return rows_; }

 private:
  Matrix rows_;
};

struct ForwardTrace {
  Matrix hidden;                     // sigmoid activations, b x hidden
  Matrix softmax;                    // b x strategies
  Matrix output;                     // b x strategies; equals softmax unless quasi-pure
  std::vector<std::size_t> argmax;   // per row, filled only for quasi-pure
};

enum class Exec { Serial, Parallel };

ForwardTrace forward(const NetworkParams& params, const Batch& z, Exec exec = Exec::Parallel);

// Gradient of sum_rows(upstream_row . output_row) w.r.t. every parameter.
NetworkGrads backward(const NetworkParams& params, const Batch& z, const ForwardTrace& trace,
                      const Matrix& upstream, Exec exec = Exec::Parallel);

// Numerically stable softmax of `logits` into `out` (may alias).
void softmax(std::span<const double> logits, std::span<double> out);

// Lowest index among equal maxima.
std::size_t argmax_index(std::span<const double> v);

/// Maps the argmax weight to (1-eps) + eps*v and every other weight to eps*v.
std::vector<double> pure_epsilon(std::span<const double> v, double epsilon);
StrategyVector pure_epsilon(const StrategyVector& v, double epsilon);
// The derivative is eps times the identity; the branch choice carries none.
std::vector<double> pure_epsilon_grad(std::span<const double> upstream, std::span<const double> v,
                                      double epsilon);

// Text format: header with shapes and layer flags, then row-major values.
void write_params(std::ostream& out, const NetworkParams& p);
NetworkParams read_params(std::istream& in);

}  // namespace npop

#endif  // NPOP_NETWORK_HPP
