#include <doctest.h>

#include <cmath>
#include <sstream>

#include "npop/network.hpp"
#include "oracles.hpp"

using namespace npop;

namespace {

NetworkParams zero_params(std::size_t latent, std::size_t strategies) {
  auto p = init_params(latent, strategies, 1);
  for (auto t : tensors(p)) std::fill(t.begin(), t.end(), 0.0);
  return p;
}

Batch random_batch(std::size_t b, std::size_t n, std::uint64_t seed) {
  auto e = make_engine(seed, 0, 77);
  return Batch::sample(b, n, e);
}

double dot_loss(const NetworkParams& p, const Batch& z, const Matrix& up) {
  const auto out = forward(p, z, Exec::Serial).output;
  double total = 0.0;
  for (std::size_t i = 0; i < out.data.size(); ++i) total += out.data[i] * up.data[i];
  return total;
}

}  // namespace

TEST_CASE("initialization scheme") {
  const auto p = init_params(10, 4, 42);
  CHECK(p.hidden() == 10);
  CHECK(p.latent_dim() == 10);
  CHECK(p.strategies() == 4);
  for (double w : p.w1.data) CHECK((w >= -0.5 && w <= 0.5));
  for (double b : p.b1) CHECK(b == 0.0);
  CHECK(init_params(10, 4, 42) == p);
  CHECK(init_params(10, 4, 43) != p);
  CHECK_THROWS_AS(init_params(10, 1, 1), InvalidInput);
}

TEST_CASE("latent batches live in the unit cube") {
  Matrix bad(1, 2);
  bad(0, 1) = 1.5;
  CHECK_THROWS_AS(Batch{bad}, InvalidInput);
  const auto z = random_batch(500, 3, 1);
  for (double x : z.rows().data) CHECK((x >= 0.0 && x < 1.0));
}

TEST_CASE("forward with zero weights gives the uniform strategy") {
  for (std::size_t s : {2u, 3u, 4u}) {
    const auto out = forward(zero_params(5, s), random_batch(16, 5, 2)).output;
    for (double x : out.data) CHECK(x == doctest::Approx(1.0 / static_cast<double>(s)));
  }
}

TEST_CASE("forward produces simplex rows") {
  auto p = init_params(10, 4, 9);
  for (auto t : tensors(p))
    for (double& x : t) x *= 8.0;  // push into saturation
  for (bool quasi : {false, true}) {
    p.quasi_pure = quasi;
    const auto trace = forward(p, random_batch(2048, 10, 3));
    for (std::size_t r = 0; r < trace.output.rows; ++r) {
      const auto row = trace.output.row(r);
      double sum = 0.0;
      for (double x : row) {
        CHECK(x >= 0.0);
        sum += x;
      }
      CHECK(std::abs(sum - 1.0) < 1e-9);
      if (quasi) {
        const auto top = trace.argmax[r];
        CHECK(row[top] >= 1.0 - p.epsilon);
        for (std::size_t i = 0; i < row.size(); ++i)
          if (i != top) CHECK(row[i] <= p.epsilon);
      }
    }
  }
}

TEST_CASE("forward matches a longhand evaluation and is deterministic") {
  auto p = init_params(6, 3, 4, true, 0.2);
  const auto z = random_batch(64, 6, 5);
  const auto a = forward(p, z);
  const auto b = forward(p, z);
  CHECK(a.output == b.output);
  for (std::size_t r = 0; r < z.size(); ++r) {
    const auto expect = oracle::naive_forward_row(p, z.rows().row(r));
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(a.output(r, i) - expect[i]) < 1e-14);
  }
  CHECK_THROWS_AS(forward(p, random_batch(4, 5, 1)), InvalidInput);
}

TEST_CASE("softmax is shift invariant and overflow safe") {
  std::vector<double> logits{1.0, -2.0, 0.5, 3.0}, a(4), b(4);
  softmax(logits, a);
  for (double& x : logits) x += 700.0;
  softmax(logits, b);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-9);
  for (double x : b) CHECK(std::isfinite(x));
}

TEST_CASE("pure epsilon") {
  const auto out = pure_epsilon(std::vector<double>{0.5, 0.3, 0.2}, 0.1);
  CHECK(out[0] == doctest::Approx(0.95));
  CHECK(out[1] == doctest::Approx(0.03));
  CHECK(out[2] == doctest::Approx(0.02));

  for (double eps : {0.05, 0.1, 0.5, 0.9}) {
    const auto fixed = pure_epsilon(std::vector<double>{1.0, 0.0}, eps);
    CHECK(fixed[0] == 1.0);
    CHECK(fixed[1] == 0.0);
  }
  // Ties resolve to the lowest index.
  CHECK(pure_epsilon(std::vector<double>{0.4, 0.4, 0.2}, 0.1)[0] == doctest::Approx(0.94));
  CHECK_THROWS_AS(pure_epsilon(std::vector<double>{0.5, 0.5}, 0.0), InvalidInput);
  CHECK(pure_epsilon(StrategyVector({0.5, 0.5}), 0.1)[0] == doctest::Approx(0.95));
}

TEST_CASE("pure epsilon preserves the simplex and its argmax") {
  auto e = make_engine(3, 0, 0);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto v = oracle::random_simplex(5, e);
    const auto once = pure_epsilon(v, 0.1);
    double in = 0.0, out = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      in += v[i];
      out += once[i];
    }
    CHECK(std::abs(in - out) < 1e-12);
    const auto twice = pure_epsilon(once, 0.1);
    CHECK(argmax_index(once) == argmax_index(v));
    CHECK(argmax_index(twice) == argmax_index(v));
  }
}

TEST_CASE("pure epsilon gradient is eps times upstream and matches finite differences") {
  const auto g = pure_epsilon_grad(std::vector<double>{1, 1, 1}, std::vector<double>{0.5, 0.3, 0.2}, 0.1);
  for (double x : g) CHECK(x == doctest::Approx(0.1));
  const auto zero = pure_epsilon_grad(std::vector<double>{0, 0}, std::vector<double>{0.6, 0.4}, 0.1);
  for (double x : zero) CHECK(x == 0.0);

  // Directional derivative along a random simplex-tangent direction.
  auto e = make_engine(8, 0, 0);
  const double h = 1e-6;
  for (int trial = 0; trial < 100; ++trial) {
    const auto v = oracle::random_simplex(4, e);
    std::vector<double> up(4);
    for (double& x : up) x = uniform01(e) - 0.5;
    const auto analytic = pure_epsilon_grad(up, v, 0.1);
    for (std::size_t k = 0; k < 4; ++k) {
      auto plus = v, minus = v;
      plus[k] += h;
      minus[k] -= h;
      if (argmax_index(plus) != argmax_index(v) || argmax_index(minus) != argmax_index(v)) continue;
      const auto fp = pure_epsilon(plus, 0.1), fm = pure_epsilon(minus, 0.1);
      double numeric = 0.0;
      for (std::size_t i = 0; i < 4; ++i) numeric += up[i] * (fp[i] - fm[i]) / (2 * h);
      CHECK(std::abs(numeric - analytic[k]) / std::max(std::abs(analytic[k]), 1e-6) < 1e-6);
    }
  }
}

TEST_CASE("backward matches finite differences") {
  for (bool quasi : {false, true}) {
    const auto p = init_params(3, 4, 21, quasi);
    const auto z = random_batch(4, 3, 22);
    auto e = make_engine(23, 0, 0);
    Matrix up(4, 4);
    for (double& x : up.data) x = uniform01(e) * 2.0 - 1.0;
    const auto grads = backward(p, z, forward(p, z), up);
    const auto numeric =
        oracle::finite_difference(p, [&](const NetworkParams& q) { return dot_loss(q, z, up); });
    CHECK(oracle::max_relative_error(oracle::to_vectors(grads), numeric) < 1e-4);
  }
}

TEST_CASE("backward edge cases") {
  const auto p = init_params(3, 2, 5);
  const auto z = random_batch(8, 3, 6);
  const auto trace = forward(p, z);
  const auto zero = backward(p, z, trace, Matrix(8, 2));
  for (auto t : tensors(zero))
    for (double x : t) CHECK(x == 0.0);

  // Linearity over the batch.
  auto e = make_engine(7, 0, 0);
  Matrix up(8, 2);
  for (double& x : up.data) x = uniform01(e);
  const auto whole = backward(p, z, trace, up);
  auto summed = NetworkGrads::zeros_like(p);
  for (std::size_t r = 0; r < 8; ++r) {
    Matrix one(1, 3);
    std::copy_n(z.rows().row(r).begin(), 3, one.data.begin());
    const Batch single(one);
    Matrix u(1, 2);
    std::copy_n(up.row(r).begin(), 2, u.data.begin());
    summed += backward(p, single, forward(p, single), u);
  }
  const auto a = oracle::to_vectors(whole), b = oracle::to_vectors(summed);
  for (std::size_t t = 0; t < a.size(); ++t)
    for (std::size_t i = 0; i < a[t].size(); ++i) CHECK(std::abs(a[t][i] - b[t][i]) < 1e-10);

  CHECK_THROWS_AS(backward(p, z, trace, Matrix(8, 3)), InvalidInput);
  CHECK_THROWS_AS(backward(p, z, trace, Matrix(7, 2)), InvalidInput);
}

TEST_CASE("parameter text format round-trips") {
  const auto p = init_params(4, 3, 8, true, 0.07);
  std::stringstream ss;
  write_params(ss, p);
  CHECK(read_params(ss) == p);
  std::istringstream bad("network 2 2 2\nquasi_pure 0 epsilon 0.1\nw1 1 2 3\n");
  CHECK_THROWS_AS(read_params(bad), InvalidInput);
}
