#include "npop/optimizer.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "npop/text.hpp"

namespace npop {

namespace {

void check_grads(std::span<const std::span<double>> params,
                 std::span<const std::span<const double>> grads) {
  if (params.size() != grads.size()) throw InvalidInput("parameter/gradient tensor count mismatch");
  for (std::size_t t = 0; t < params.size(); ++t) {
    if (params[t].size() != grads[t].size()) throw InvalidInput("parameter/gradient shape mismatch");
    for (double g : grads[t])
      if (!std::isfinite(g)) throw NumericalError("non-finite gradient; update aborted");
  }
}

double sign_of(Direction dir) { return dir == Direction::Ascend ? 1.0 : -1.0; }

}  // namespace

AdamState AdamState::for_params(const NetworkParams& p, AdamConfig config) {
  std::vector<std::size_t> sizes;
  for (auto t : tensors(p)) sizes.push_back(t.size());
  return for_shapes(sizes, config);
}

AdamState AdamState::for_shapes(std::span<const std::size_t> sizes, AdamConfig config) {
  AdamState s;
  s.config = config;
  for (std::size_t n : sizes) {
    s.m.emplace_back(n, 0.0);
    s.v.emplace_back(n, 0.0);
  }
  return s;
}

void adam_step(AdamState& state, std::span<const std::span<double>> params,
               std::span<const std::span<const double>> grads, Direction dir) {
  check_grads(params, grads);
  if (state.m.size() != params.size()) throw InvalidInput("Adam state does not match parameters");
  const auto& c = state.config;
  state.t += 1;
  const double t = static_cast<double>(state.t);
  const double correct1 = 1.0 - std::pow(c.beta1, t);
  const double correct2 = 1.0 - std::pow(c.beta2, t);
  const double sign = sign_of(dir);
  for (std::size_t k = 0; k < params.size(); ++k) {
    auto& m = state.m[k];
    auto& v = state.v[k];
    if (m.size() != params[k].size()) throw InvalidInput("Adam state does not match parameters");
    for (std::size_t i = 0; i < m.size(); ++i) {
      const double g = grads[k][i];
      m[i] = c.beta1 * m[i] + (1.0 - c.beta1) * g;
      v[i] = c.beta2 * v[i] + (1.0 - c.beta2) * g * g;
      const double mhat = m[i] / correct1;
      const double vhat = v[i] / correct2;
      params[k][i] += sign * c.lr * mhat / (std::sqrt(vhat) + c.eps_hat);
    }
  }
}

void adam_step(AdamState& state, NetworkParams& params, const NetworkGrads& grads, Direction dir) {
  auto p = tensors(params);
  auto g = tensors(grads);
  adam_step(state, p, g, dir);
}

void sgd_step(std::span<const std::span<double>> params, std::span<const std::span<const double>> grads,
              double lr, Direction dir) {
  check_grads(params, grads);
  const double step = sign_of(dir) * lr;
  for (std::size_t k = 0; k < params.size(); ++k)
    for (std::size_t i = 0; i < params[k].size(); ++i) params[k][i] += step * grads[k][i];
}

void sgd_step(NetworkParams& params, const NetworkGrads& grads, double lr, Direction dir) {
  auto p = tensors(params);
  auto g = tensors(grads);
  sgd_step(p, g, lr, dir);
}

void write_adam(std::ostream& out, const AdamState& s) {
  out << "adam " << format_exact(s.config.lr) << ' ' << format_exact(s.config.beta1) << ' '
      << format_exact(s.config.beta2) << ' ' << format_exact(s.config.eps_hat) << ' ' << s.t << ' '
      << s.m.size() << '\n';
  for (std::size_t k = 0; k < s.m.size(); ++k) {
    out << s.m[k].size();
    for (double x : s.m[k]) out << ' ' << format_exact(x);
    for (double x : s.v[k]) out << ' ' << format_exact(x);
    out << '\n';
  }
}

AdamState read_adam(std::istream& in) {
  std::string word, lr, b1, b2, eh;
  AdamState s;
  std::size_t count = 0;
  if (!(in >> word) || word != "adam" || !(in >> lr >> b1 >> b2 >> eh >> s.t >> count))
    throw InvalidInput("malformed Adam state");
  s.config = AdamConfig{parse_double(lr), parse_double(b1), parse_double(b2), parse_double(eh)};
  auto read_values = [&](std::vector<double>& dst) {
    for (double& x : dst) {
      std::string token;
      if (!(in >> token)) throw InvalidInput("truncated Adam state");
      x = parse_double(token);
    }
  };
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t n = 0;
    if (!(in >> n)) throw InvalidInput("truncated Adam state");
    s.m.emplace_back(n);
    s.v.emplace_back(n);
    read_values(s.m.back());
    read_values(s.v.back());
  }
  return s;
}

}  // namespace npop
