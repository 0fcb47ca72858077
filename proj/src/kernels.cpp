#include "npop/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace npop::kernels {

namespace {

void forward_row(const NetworkParams& p, const double* z, std::size_t r, ForwardTrace& t) {
  const std::size_t n = p.latent_dim(), h = p.hidden(), s = p.strategies();
  double* hid = t.hidden.data.data() + r * h;
  for (std::size_t j = 0; j < h; ++j) {
    const double* w = p.w1.data.data() + j * n;
    double a = p.b1[j];
    for (std::size_t k = 0; k < n; ++k) a += w[k] * z[k];
    hid[j] = 1.0 / (1.0 + std::exp(-a));
  }
  double* sm = t.softmax.data.data() + r * s;
  for (std::size_t i = 0; i < s; ++i) {
    const double* w = p.w2.data.data() + i * h;
    double a = p.b2[i];
    for (std::size_t j = 0; j < h; ++j) a += w[j] * hid[j];
    sm[i] = a;
  }
  softmax({sm, s}, {sm, s});
  double* out = t.output.data.data() + r * s;
  if (!p.quasi_pure) {
    std::copy(sm, sm + s, out);
    return;
  }
  const std::size_t top = argmax_index({sm, s});
  t.argmax[r] = top;
  for (std::size_t i = 0; i < s; ++i) out[i] = p.epsilon * sm[i] + (i == top ? 1.0 - p.epsilon : 0.0);
}

// Accumulates one row's contribution into g. scratch holds 2*s + h doubles.
void backward_row(const NetworkParams& p, const double* z, const ForwardTrace& t, const double* up,
                  std::size_t r, NetworkGrads& g, double* scratch) {
  const std::size_t n = p.latent_dim(), h = p.hidden(), s = p.strategies();
  const double* y = t.softmax.data.data() + r * s;
  const double* hid = t.hidden.data.data() + r * h;
  double* gy = scratch;          // upstream at the softmax output
  double* dlogit = scratch + s;  // at the logits
  double* dpre = scratch + 2 * s;

  const double scale = p.quasi_pure ? p.epsilon : 1.0;
  double dot = 0.0;
  for (std::size_t i = 0; i < s; ++i) {
    gy[i] = scale * up[i];
    dot += gy[i] * y[i];
  }
  for (std::size_t i = 0; i < s; ++i) dlogit[i] = y[i] * (gy[i] - dot);

  for (std::size_t j = 0; j < h; ++j) dpre[j] = 0.0;
  for (std::size_t i = 0; i < s; ++i) {
    const double d = dlogit[i];
    g.b2[i] += d;
    double* gw = g.w2.data.data() + i * h;
    const double* w = p.w2.data.data() + i * h;
    for (std::size_t j = 0; j < h; ++j) {
      gw[j] += d * hid[j];
      dpre[j] += d * w[j];
    }
  }
  for (std::size_t j = 0; j < h; ++j) {
    const double d = dpre[j] * hid[j] * (1.0 - hid[j]);
    g.b1[j] += d;
    double* gw = g.w1.data.data() + j * n;
    for (std::size_t k = 0; k < n; ++k) gw[k] += d * z[k];
  }
}

void prepare_trace(const NetworkParams& p, std::size_t b, ForwardTrace& t) {
  t.hidden = Matrix(b, p.hidden());
  t.softmax = Matrix(b, p.strategies());
  t.output = Matrix(b, p.strategies());
  t.argmax.assign(p.quasi_pure ? b : 0, 0);
}

}  // namespace

void forward_serial(const NetworkParams& p, const Matrix& z, ForwardTrace& trace) {
  prepare_trace(p, z.rows, trace);
  for (std::size_t r = 0; r < z.rows; ++r) forward_row(p, z.data.data() + r * z.cols, r, trace);
}

void forward_parallel(const NetworkParams& p, const Matrix& z, ForwardTrace& trace) {
  prepare_trace(p, z.rows, trace);
  const auto rows = static_cast<std::ptrdiff_t>(z.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r)
    forward_row(p, z.data.data() + r * z.cols, static_cast<std::size_t>(r), trace);
}

void backward_serial(const NetworkParams& p, const Matrix& z, const ForwardTrace& trace,
                     const Matrix& upstream, NetworkGrads& grads) {
  grads = NetworkGrads::zeros_like(p);
  std::vector<double> scratch(2 * p.strategies() + p.hidden());
  for (std::size_t r = 0; r < z.rows; ++r)
    backward_row(p, z.data.data() + r * z.cols, trace, upstream.data.data() + r * upstream.cols, r,
                 grads, scratch.data());
}

void backward_parallel(const NetworkParams& p, const Matrix& z, const ForwardTrace& trace,
                       const Matrix& upstream, NetworkGrads& grads) {
  const std::size_t chunks = (z.rows + kChunkRows - 1) / kChunkRows;
  std::vector<NetworkGrads> partial(chunks, NetworkGrads::zeros_like(p));
  const auto nchunks = static_cast<std::ptrdiff_t>(chunks);
#pragma omp parallel
  {
    std::vector<double> scratch(2 * p.strategies() + p.hidden());
#pragma omp for schedule(static)
    for (std::ptrdiff_t c = 0; c < nchunks; ++c) {
      const std::size_t begin = static_cast<std::size_t>(c) * kChunkRows;
      const std::size_t end = std::min(z.rows, begin + kChunkRows);
      for (std::size_t r = begin; r < end; ++r)
        backward_row(p, z.data.data() + r * z.cols, trace, upstream.data.data() + r * upstream.cols,
                     r, partial[c], scratch.data());
    }
  }
  grads = NetworkGrads::zeros_like(p);
  for (const auto& g : partial) grads += g;
}

std::vector<double> column_mean_serial(const Matrix& m) {
  std::vector<double> mean(m.cols, 0.0);
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.cols; ++c) mean[c] += m(r, c);
  for (double& x : mean) x /= static_cast<double>(m.rows);
  return mean;
}

std::vector<double> column_mean_parallel(const Matrix& m) {
  const std::size_t chunks = (m.rows + kChunkRows - 1) / kChunkRows;
  std::vector<double> partial(chunks * m.cols, 0.0);
  const auto nchunks = static_cast<std::ptrdiff_t>(chunks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < nchunks; ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * kChunkRows;
    const std::size_t end = std::min(m.rows, begin + kChunkRows);
    double* acc = partial.data() + c * m.cols;
    for (std::size_t r = begin; r < end; ++r)
      for (std::size_t k = 0; k < m.cols; ++k) acc[k] += m(r, k);
  }
  std::vector<double> mean(m.cols, 0.0);
  for (std::size_t c = 0; c < chunks; ++c)
    for (std::size_t k = 0; k < m.cols; ++k) mean[k] += partial[c * m.cols + k];
  for (double& x : mean) x /= static_cast<double>(m.rows);
  return mean;
}

}  // namespace npop::kernels
