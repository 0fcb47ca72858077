#ifndef NPOP_GAME_HPP
#define NPOP_GAME_HPP

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace npop {

// Rejected input: shape mismatch, out-of-range parameter, malformed file.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Run-time numerical failure (non-finite loss or gradient).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point on the probability simplex over a game's strategies.
class StrategyVector {
 public:
  static constexpr double kSumTolerance = 1e-9;

  StrategyVector() = default;
  // Throws InvalidInput unless every weight is in [0,1] and they sum to 1.
  explicit StrategyVector(std::vector<double> weights);

  static StrategyVector pure(std::size_t n, std::size_t index);
  static StrategyVector uniform(std::size_t n);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }
  const std::vector<double>& values() const { return weights_; }

  friend bool operator==(const StrategyVector&, const StrategyVector&) = default;

 private:
  std::vector<double> weights_;
};

// True when `w` is a simplex point within `tol`.
bool on_simplex(std::span<const double> w, double tol = StrategyVector::kSumTolerance);

/// Symmetric two-player matrix game. payoff(i, j) is what strategy i earns
/// against strategy j.
class MatrixGame {
 public:
  MatrixGame(std::string name, std::vector<std::string> strategy_names,
             std::vector<double> row_major_payoffs);

  const std::string& name() const { return name_; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& strategy_names() const { return names_; }
  double payoff(std::size_t i, std::size_t j) const { return payoff_[i * names_.size() + j]; }
  std::span<const double> payoffs() const { return payoff_; }
  std::optional<std::size_t> index_of(const std::string& strategy) const;

  MatrixGame shifted(double c) const;

  friend bool operator==(const MatrixGame&, const MatrixGame&) = default;

 private:
  std::string name_;
  std::vector<std::string> names_;
  std::vector<double> payoff_;
};

// s1' * M * s2. Accepts raw spans so hot loops can skip simplex validation.
double mixed_payoff(const MatrixGame& game, std::span<const double> s1, std::span<const double> s2);
double mixed_payoff(const MatrixGame& game, const StrategyVector& s1, const StrategyVector& s2);

// Writes M * s into `out` (fitness of each pure strategy against s).
void fitness_against(const MatrixGame& game, std::span<const double> s, std::span<double> out);

inline constexpr double kHawkDoveShift = 26.0;

/// Hawk-Dove with value 50, injury cost 100 and display cost 10, shifted so
/// every entry is positive: [[1, 76], [26, 41]].
MatrixGame hawk_dove();
MatrixGame hawk_dove_unshifted();

/// Interior indifference point of a 2x2 game. Throws InvalidInput when the
/// game is not 2x2 or has no mixed ESS (dominant strategy or degenerate).
StrategyVector ess_2x2(const MatrixGame& game);

// ---------------------------------------------------------------------------
// Noisy iterated prisoner's dilemma with memory-one strategies.

enum class Move : unsigned char { C, D };

struct MemoryOneStrategy {
  Move after_c;  // response when the opponent last played C
  Move after_d;  // response when the opponent last played D
  Move opening;

  Move respond(Move opponent_last) const { return opponent_last == Move::C ? after_c : after_d; }
  friend bool operator==(const MemoryOneStrategy&, const MemoryOneStrategy&) = default;
};

inline constexpr MemoryOneStrategy kAllC{Move::C, Move::C, Move::C};
inline constexpr MemoryOneStrategy kTitForTat{Move::C, Move::D, Move::C};
inline constexpr MemoryOneStrategy kAntiTitForTat{Move::D, Move::C, Move::D};
inline constexpr MemoryOneStrategy kAllD{Move::D, Move::D, Move::D};

struct PdPayoffs {
  double temptation = 5.0;
  double reward = 3.0;
  double punishment = 1.0;
  double sucker = 0.0;
};

// Joint outcome index: 0=CC, 1=CD, 2=DC, 3=DD (player one's move first).
using JointDistribution = std::array<double, 4>;
using TransitionMatrix = std::array<std::array<double, 4>, 4>;

TransitionMatrix noisy_transition_matrix(const MemoryOneStrategy& s1, const MemoryOneStrategy& s2,
                                         double noise);
// Solves pi K = pi, sum(pi) = 1 by a direct linear solve.
JointDistribution stationary_distribution(const TransitionMatrix& k);

// Long-run mean per-round payoff to s1. noise must lie in (0, 0.5); payoffs
// must satisfy T > R > P > S.
double noisy_ipd_payoff(const MemoryOneStrategy& s1, const MemoryOneStrategy& s2, double noise,
                        const PdPayoffs& base = {});

inline constexpr double kDefaultIpdNoise = 0.01;

/// [All-C, TFT, ATFT, All-D] with every entry from noisy_ipd_payoff.
MatrixGame noisy_ipd_game(double noise = kDefaultIpdNoise, const PdPayoffs& base = {});
std::array<MemoryOneStrategy, 4> noisy_ipd_strategies();

// ---------------------------------------------------------------------------
// Plain-text game format: first line comma-separated strategy names, then
// one comma-separated payoff row per strategy.

void write_game(std::ostream& out, const MatrixGame& game);
MatrixGame read_game(std::istream& in, std::string name = "custom");
MatrixGame load_game_file(const std::string& path);

// "hawk-dove" or "noisy-ipd".
MatrixGame builtin_game(const std::string& name, double ipd_noise = kDefaultIpdNoise);

}  // namespace npop

#endif  // NPOP_GAME_HPP
