#include "npop/game.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <utility>

#include "npop/text.hpp"

namespace npop {

bool on_simplex(std::span<const double> w, double tol) {
  double sum = 0.0;
  for (double x : w) {
    if (!(x >= -tol && x <= 1.0 + tol)) return false;
    sum += x;
  }
  return !w.empty() && std::abs(sum - 1.0) <= tol;
}

StrategyVector::StrategyVector(std::vector<double> weights) : weights_(std::move(weights)) {
  for (double x : weights_)
    if (!(x >= 0.0 && x <= 1.0)) throw InvalidInput("strategy weight outside [0,1]");
  if (!on_simplex(weights_)) throw InvalidInput("strategy weights do not sum to 1");
}

StrategyVector StrategyVector::pure(std::size_t n, std::size_t index) {
  if (index >= n) throw InvalidInput("pure strategy index out of range");
  std::vector<double> w(n, 0.0);
  w[index] = 1.0;
  return StrategyVector(std::move(w));
}

StrategyVector StrategyVector::uniform(std::size_t n) {
  if (n == 0) throw InvalidInput("empty strategy vector");
  return StrategyVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

MatrixGame::MatrixGame(std::string name, std::vector<std::string> strategy_names,
                       std::vector<double> row_major_payoffs)
    : name_(std::move(name)), names_(std::move(strategy_names)), payoff_(std::move(row_major_payoffs)) {
  if (names_.size() < 2) throw InvalidInput("a game needs at least two strategies");
  if (payoff_.size() != names_.size() * names_.size())
    throw InvalidInput("payoff matrix is not square with side = number of strategies");
  for (double x : payoff_)
    if (!std::isfinite(x)) throw InvalidInput("payoff entries must be finite");
}

std::optional<std::size_t> MatrixGame::index_of(const std::string& strategy) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == strategy) return i;
  return std::nullopt;
}

MatrixGame MatrixGame::shifted(double c) const {
  auto p = payoff_;
  for (double& x : p) x += c;
  return MatrixGame(name_, names_, std::move(p));
}

double mixed_payoff(const MatrixGame& game, std::span<const double> s1, std::span<const double> s2) {
  const std::size_t n = game.size();
  if (s1.size() != n || s2.size() != n) throw InvalidInput("strategy dimension does not match game");
  const auto m = game.payoffs();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += m[i * n + j] * s2[j];
    total += s1[i] * row;
  }
  return total;
}

double mixed_payoff(const MatrixGame& game, const StrategyVector& s1, const StrategyVector& s2) {
  return mixed_payoff(game, s1.weights(), s2.weights());
}

void fitness_against(const MatrixGame& game, std::span<const double> s, std::span<double> out) {
  const std::size_t n = game.size();
  if (s.size() != n || out.size() != n) throw InvalidInput("strategy dimension does not match game");
  const auto m = game.payoffs();
  for (std::size_t i = 0; i < n; ++i) {
    double f = 0.0;
    for (std::size_t j = 0; j < n; ++j) f += m[i * n + j] * s[j];
    out[i] = f;
  }
}

MatrixGame hawk_dove_unshifted() {
  // V = 50, injury cost 100, display cost 10:
  // H/H = (V - C)/2, H/D = V, D/H = 0, D/D = V/2 - display.
  return MatrixGame("hawk-dove", {"Hawk", "Dove"}, {-25.0, 50.0, 0.0, 15.0});
}

MatrixGame hawk_dove() { return hawk_dove_unshifted().shifted(kHawkDoveShift); }

StrategyVector ess_2x2(const MatrixGame& game) {
  if (game.size() != 2) throw InvalidInput("ess_2x2 needs a 2-strategy game");
  const double a = game.payoff(0, 0), b = game.payoff(0, 1);
  const double c = game.payoff(1, 0), d = game.payoff(1, 1);
  // p*a + (1-p)*b = p*c + (1-p)*d  =>  p = (d - b) / (a - b - c + d)
  const double denom = a - b - c + d;
  if (denom == 0.0) throw InvalidInput("no mixed ESS: degenerate game");
  const double p = (d - b) / denom;
  if (!(p > 0.0 && p < 1.0)) throw InvalidInput("no mixed ESS: a strategy is dominant");
  // An interior rest point is only stable when each strategy does better when rare.
  if (!(denom < 0.0)) throw InvalidInput("no mixed ESS: interior rest point is unstable");
  return StrategyVector({p, 1.0 - p});
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::array<std::pair<Move, Move>, 4> kJointStates{{
    {Move::C, Move::C}, {Move::C, Move::D}, {Move::D, Move::C}, {Move::D, Move::D}}};

double prob_of(Move realized, Move intended, double noise) {
  return realized == intended ? 1.0 - noise : noise;
}

void check_noise(double noise) {
  if (!(noise > 0.0 && noise < 0.5)) throw InvalidInput("noise must lie in (0, 0.5)");
}

}  // namespace

TransitionMatrix noisy_transition_matrix(const MemoryOneStrategy& s1, const MemoryOneStrategy& s2,
                                         double noise) {
  check_noise(noise);
  TransitionMatrix k{};
  for (std::size_t from = 0; from < 4; ++from) {
    const auto [m1, m2] = kJointStates[from];
    // Each player reacts to the opponent's realized previous move.
    const Move i1 = s1.respond(m2);
    const Move i2 = s2.respond(m1);
    for (std::size_t to = 0; to < 4; ++to) {
      const auto [n1, n2] = kJointStates[to];
      k[from][to] = prob_of(n1, i1, noise) * prob_of(n2, i2, noise);
    }
  }
  return k;
}

JointDistribution stationary_distribution(const TransitionMatrix& k) {
  // (K^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
  double a[4][5];
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) a[r][c] = k[c][r] - (r == c ? 1.0 : 0.0);
    a[r][4] = 0.0;
  }
  for (int c = 0; c < 4; ++c) a[3][c] = 1.0;
  a[3][4] = 1.0;

  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0) throw NumericalError("singular stationary system (chain not ergodic)");
    if (piv != col)
      for (int c = 0; c < 5; ++c) std::swap(a[col][c], a[piv][c]);
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < 5; ++c) a[r][c] -= f * a[col][c];
    }
  }
  JointDistribution pi{};
  for (int r = 0; r < 4; ++r) pi[r] = a[r][4] / a[r][r];
  return pi;
}

double noisy_ipd_payoff(const MemoryOneStrategy& s1, const MemoryOneStrategy& s2, double noise,
                        const PdPayoffs& base) {
  if (!(base.temptation > base.reward && base.reward > base.punishment &&
        base.punishment > base.sucker))
    throw InvalidInput("payoffs must satisfy T > R > P > S");
  const auto pi = stationary_distribution(noisy_transition_matrix(s1, s2, noise));
  return pi[0] * base.reward + pi[1] * base.sucker + pi[2] * base.temptation + pi[3] * base.punishment;
}

std::array<MemoryOneStrategy, 4> noisy_ipd_strategies() {
  return {kAllC, kTitForTat, kAntiTitForTat, kAllD};
}

MatrixGame noisy_ipd_game(double noise, const PdPayoffs& base) {
  const auto strategies = noisy_ipd_strategies();
  std::vector<double> m;
  m.reserve(16);
  for (const auto& s1 : strategies)
    for (const auto& s2 : strategies) m.push_back(noisy_ipd_payoff(s1, s2, noise, base));
  return MatrixGame("noisy-ipd", {"All-C", "TFT", "ATFT", "All-D"}, std::move(m));
}

// ---------------------------------------------------------------------------

void write_game(std::ostream& out, const MatrixGame& game) {
  const auto& names = game.strategy_names();
  for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
  out << '\n';
  for (std::size_t i = 0; i < game.size(); ++i) {
    for (std::size_t j = 0; j < game.size(); ++j) out << (j ? "," : "") << format_exact(game.payoff(i, j));
    out << '\n';
  }
}

MatrixGame read_game(std::istream& in, std::string name) {
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line))
      if (!trim(line).empty() && trim(line).front() != '#') return true;
    return false;
  };
  if (!next_line()) throw InvalidInput("game file is empty");
  auto names = split(line, ',');
  for (const auto& n : names)
    if (n.empty()) throw InvalidInput("empty strategy name in game file");
  std::vector<double> payoff;
  for (std::size_t row = 0; row < names.size(); ++row) {
    if (!next_line()) throw InvalidInput("game file has fewer payoff rows than strategies");
    auto cells = split(line, ',');
    if (cells.size() != names.size()) throw InvalidInput("payoff row length does not match strategy count");
    for (const auto& c : cells) payoff.push_back(parse_double(c));
  }
  if (next_line()) throw InvalidInput("game file has more payoff rows than strategies");
  return MatrixGame(std::move(name), std::move(names), std::move(payoff));
}

MatrixGame load_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open game file " + path);
  return read_game(in, path);
}

MatrixGame builtin_game(const std::string& name, double ipd_noise) {
  if (name == "hawk-dove") return hawk_dove();
  if (name == "noisy-ipd") return noisy_ipd_game(ipd_noise);
  throw InvalidInput("unknown game '" + name + "' (expected hawk-dove or noisy-ipd)");
}

}  // namespace npop
