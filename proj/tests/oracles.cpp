#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace npop::oracle {

double monte_carlo_ipd(const MemoryOneStrategy& s1, const MemoryOneStrategy& s2, double noise,
                       std::uint64_t rounds, std::uint64_t seed, const PdPayoffs& base) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto flip = [&](Move m) { return u(rng) < noise ? (m == Move::C ? Move::D : Move::C) : m; };
  Move last1 = flip(s1.opening), last2 = flip(s2.opening);
  double total = 0.0;
  for (std::uint64_t r = 0; r < rounds; ++r) {
    const Move intend1 = last2 == Move::C ? s1.after_c : s1.after_d;
    const Move intend2 = last1 == Move::C ? s2.after_c : s2.after_d;
    last1 = flip(intend1);
    last2 = flip(intend2);
    if (last1 == Move::C)
      total += last2 == Move::C ? base.reward : base.sucker;
    else
      total += last2 == Move::C ? base.temptation : base.punishment;
  }
  return total / static_cast<double>(rounds);
}

std::vector<std::vector<double>> finite_difference(
    const NetworkParams& params, const std::function<double(const NetworkParams&)>& loss, double step) {
  NetworkParams work = params;
  std::vector<std::vector<double>> out;
  auto ts = tensors(work);
  for (auto t : ts) {
    std::vector<double> g(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double saved = t[i];
      t[i] = saved + step;
      const double up = loss(work);
      t[i] = saved - step;
      const double down = loss(work);
      t[i] = saved;
      g[i] = (up - down) / (2.0 * step);
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<double> naive_forward_row(const NetworkParams& p, std::span<const double> z) {
  std::vector<double> hidden(p.hidden());
  for (std::size_t j = 0; j < p.hidden(); ++j) {
    double a = p.b1[j];
    for (std::size_t k = 0; k < p.latent_dim(); ++k) a += p.w1(j, k) * z[k];
    hidden[j] = 1.0 / (1.0 + std::exp(-a));
  }
  std::vector<double> e(p.strategies());
  double sum = 0.0;
  for (std::size_t i = 0; i < p.strategies(); ++i) {
    double a = p.b2[i];
    for (std::size_t j = 0; j < p.hidden(); ++j) a += p.w2(i, j) * hidden[j];
    e[i] = std::exp(a);
    sum += e[i];
  }
  for (double& x : e) x /= sum;
  if (!p.quasi_pure) return e;
  std::size_t top = 0;
  for (std::size_t i = 1; i < e.size(); ++i)
    if (e[i] > e[top]) top = i;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = p.epsilon * e[i] + (i == top ? 1.0 - p.epsilon : 0.0);
  return e;
}

double max_relative_error(const std::vector<std::vector<double>>& analytic,
                          const std::vector<std::vector<double>>& numeric, double floor) {
  double worst = 0.0;
  for (std::size_t t = 0; t < analytic.size(); ++t)
    for (std::size_t i = 0; i < analytic[t].size(); ++i) {
      const double a = analytic[t][i], n = numeric[t][i];
      const double denom = std::max({std::abs(a), std::abs(n), floor});
      worst = std::max(worst, std::abs(a - n) / denom);
    }
  return worst;
}

std::vector<std::vector<double>> to_vectors(const NetworkGrads& g) {
  std::vector<std::vector<double>> out;
  for (auto t : tensors(g)) out.emplace_back(t.begin(), t.end());
  return out;
}

std::vector<double> random_simplex(std::size_t n, Engine& e) {
  std::vector<double> v(n);
  double sum = 0.0;
  for (double& x : v) {
    x = -std::log(1.0 - uniform01(e));
    sum += x;
  }
  for (double& x : v) x /= sum;
  return v;
}

}  // namespace npop::oracle
