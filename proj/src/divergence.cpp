#include "npop/divergence.hpp"

#include <algorithm>
#include <cmath>

#include "npop/game.hpp"

namespace npop {

namespace {

double clamped(double x) { return std::clamp(x, kProbFloor, 1.0); }

void check_dims(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) throw InvalidInput("distribution dimension mismatch");
}

}  // namespace

double kld(std::span<const double> p, std::span<const double> q) {
  check_dims(p, q);
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    total += p[i] * (std::log(clamped(p[i])) - std::log(clamped(q[i])));
  }
  return total;
}

double js_divergence(std::span<const double> d, std::span<const double> q) {
  check_dims(d, q);
  std::vector<double> m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m[i] = 0.5 * (d[i] + q[i]);
  return std::max(0.0, 0.5 * kld(d, m) + 0.5 * kld(q, m));
}

std::vector<double> js_gradient(std::span<const double> d, std::span<const double> q) {
  check_dims(d, q);
  std::vector<double> g(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    g[i] = 0.5 * (std::log(clamped(q[i])) - std::log(clamped(0.5 * (d[i] + q[i]))));
  return g;
}

}  // namespace npop
