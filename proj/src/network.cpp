#include "npop/network.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "npop/kernels.hpp"
#include "npop/text.hpp"

namespace npop {

NetworkGrads NetworkGrads::zeros_like(const NetworkParams& p) {
  return NetworkGrads{Matrix(p.w1.rows, p.w1.cols), std::vector<double>(p.b1.size(), 0.0),
                      Matrix(p.w2.rows, p.w2.cols), std::vector<double>(p.b2.size(), 0.0)};
}

NetworkGrads& NetworkGrads::operator+=(const NetworkGrads& other) {
  auto dst = tensors(*this);
  auto src = tensors(other);
  for (std::size_t t = 0; t < dst.size(); ++t)
    for (std::size_t i = 0; i < dst[t].size(); ++i) dst[t][i] += src[t][i];
  return *this;
}

std::vector<std::span<double>> tensors(NetworkParams& p) {
  return {p.w1.data, p.b1, p.w2.data, p.b2};
}
std::vector<std::span<const double>> tensors(const NetworkParams& p) {
  return {p.w1.data, p.b1, p.w2.data, p.b2};
}
std::vector<std::span<double>> tensors(NetworkGrads& g) { return {g.w1.data, g.b1, g.w2.data, g.b2}; }
std::vector<std::span<const double>> tensors(const NetworkGrads& g) {
  return {g.w1.data, g.b1, g.w2.data, g.b2};
}

NetworkParams init_params(std::size_t latent_dim, std::size_t strategies, std::uint64_t seed,
                          bool quasi_pure, double epsilon, std::size_t hidden) {
  if (latent_dim == 0 || hidden == 0 || strategies < 2) throw InvalidInput("bad network shape");
  NetworkParams p{Matrix(hidden, latent_dim), std::vector<double>(hidden, 0.0),
                  Matrix(strategies, hidden), std::vector<double>(strategies, 0.0), quasi_pure,
                  epsilon};
  auto engine = make_engine(seed, 0, stream::kWeights);
  for (double& w : p.w1.data) w = uniform01(engine) - 0.5;
  for (double& w : p.w2.data) w = uniform01(engine) - 0.5;
  validate(p);
  return p;
}

void validate(const NetworkParams& p) {
  if (p.b1.size() != p.w1.rows || p.w2.cols != p.w1.rows || p.b2.size() != p.w2.rows)
    throw InvalidInput("inconsistent network parameter shapes");
  if (p.w1.data.size() != p.w1.rows * p.w1.cols || p.w2.data.size() != p.w2.rows * p.w2.cols)
    throw InvalidInput("matrix storage does not match its shape");
  if (p.quasi_pure && !(p.epsilon > 0.0 && p.epsilon < 1.0))
    throw InvalidInput("epsilon must lie in (0,1)");
  for (auto t : tensors(p))
    for (double x : t)
      if (!std::isfinite(x)) throw InvalidInput("non-finite network parameter");
}

Batch::Batch(Matrix rows) : rows_(std::move(rows)) {
  for (double x : rows_.data)
    if (!(x >= 0.0 && x <= 1.0)) throw InvalidInput("latent sample outside [0,1]");
}

Batch Batch::sample(std::size_t b, std::size_t n, Engine& engine) {
  Matrix m(b, n);
  for (double& x : m.data) x = uniform01(engine);
  return Batch(std::move(m));
}

ForwardTrace forward(const NetworkParams& params, const Batch& z, Exec exec) {
  if (z.dim() != params.latent_dim()) throw InvalidInput("latent dimension does not match network");
  ForwardTrace trace;
  if (exec == Exec::Serial)
    kernels::forward_serial(params, z.rows(), trace);
  else
    kernels::forward_parallel(params, z.rows(), trace);
  return trace;
}

NetworkGrads backward(const NetworkParams& params, const Batch& z, const ForwardTrace& trace,
                      const Matrix& upstream, Exec exec) {
  if (z.dim() != params.latent_dim() || trace.output.rows != z.size() ||
      trace.hidden.cols != params.hidden() || trace.softmax.cols != params.strategies())
    throw InvalidInput("trace does not match network and batch");
  if (upstream.rows != z.size() || upstream.cols != params.strategies())
    throw InvalidInput("upstream gradient shape does not match network output");
  NetworkGrads g;
  if (exec == Exec::Serial)
    kernels::backward_serial(params, z.rows(), trace, upstream, g);
  else
    kernels::backward_parallel(params, z.rows(), trace, upstream, g);
  return g;
}

void softmax(std::span<const double> logits, std::span<double> out) {
  const double top = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - top);
    sum += out[i];
  }
  for (double& x : out) x /= sum;
}

std::size_t argmax_index(std::span<const double> v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

std::vector<double> pure_epsilon(std::span<const double> v, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidInput("epsilon must lie in (0,1)");
  const std::size_t top = argmax_index(v);
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = epsilon * v[i] + (i == top ? 1.0 - epsilon : 0.0);
  return out;
}

StrategyVector pure_epsilon(const StrategyVector& v, double epsilon) {
  auto out = pure_epsilon(v.weights(), epsilon);
  // Rounding can push the top entry a few ulps past 1.
  for (double& x : out) x = std::clamp(x, 0.0, 1.0);
  return StrategyVector(std::move(out));
}

std::vector<double> pure_epsilon_grad(std::span<const double> upstream, std::span<const double> v,
                                      double epsilon) {
  if (upstream.size() != v.size()) throw InvalidInput("gradient shape mismatch");
  std::vector<double> g(upstream.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = epsilon * upstream[i];
  return g;
}

// ---------------------------------------------------------------------------

void write_params(std::ostream& out, const NetworkParams& p) {
  out << "network " << p.latent_dim() << ' ' << p.hidden() << ' ' << p.strategies() << '\n';
  out << "quasi_pure " << (p.quasi_pure ? 1 : 0) << " epsilon " << format_exact(p.epsilon) << '\n';
  const char* labels[] = {"w1", "b1", "w2", "b2"};
  auto ts = tensors(p);
  for (std::size_t t = 0; t < ts.size(); ++t) {
    out << labels[t];
    for (double x : ts[t]) out << ' ' << format_exact(x);
    out << '\n';
  }
}

namespace {

std::string expect_word(std::istream& in, const char* word) {
  std::string token;
  if (!(in >> token) || token != word)
    throw InvalidInput(std::string("malformed network: expected '") + word + "'");
  return token;
}

}  // namespace

NetworkParams read_params(std::istream& in) {
  expect_word(in, "network");
  std::size_t latent = 0, hidden = 0, strategies = 0;
  if (!(in >> latent >> hidden >> strategies)) throw InvalidInput("malformed network header");
  expect_word(in, "quasi_pure");
  int quasi = 0;
  std::string eps_text;
  if (!(in >> quasi)) throw InvalidInput("malformed quasi_pure flag");
  expect_word(in, "epsilon");
  if (!(in >> eps_text)) throw InvalidInput("malformed epsilon");
  NetworkParams p{Matrix(hidden, latent), std::vector<double>(hidden), Matrix(strategies, hidden),
                  std::vector<double>(strategies), quasi != 0, parse_double(eps_text)};
  const char* labels[] = {"w1", "b1", "w2", "b2"};
  auto ts = tensors(p);
  for (std::size_t t = 0; t < ts.size(); ++t) {
    expect_word(in, labels[t]);
    for (double& x : ts[t]) {
      std::string token;
      if (!(in >> token)) throw InvalidInput("truncated network tensor");
      x = parse_double(token);
    }
  }
  validate(p);
  return p;
}

}  // namespace npop
