#ifndef NPOP_KERNELS_HPP
#define NPOP_KERNELS_HPP

// Batch kernels behind forward/backward. Each has a serial reference and an
// OpenMP version. The parallel backward reduces fixed-size row chunks in a
// fixed order, so its result does not depend on the thread count.

#include "npop/network.hpp"

namespace npop::kernels {

inline constexpr std::size_t kChunkRows = 128;

void forward_serial(const NetworkParams& p, const Matrix& z, ForwardTrace& trace);
void forward_parallel(const NetworkParams& p, const Matrix& z, ForwardTrace& trace);

void backward_serial(const NetworkParams& p, const Matrix& z, const ForwardTrace& trace,
                     const Matrix& upstream, NetworkGrads& grads);
void backward_parallel(const NetworkParams& p, const Matrix& z, const ForwardTrace& trace,
                       const Matrix& upstream, NetworkGrads& grads);

// Column means of `m` (population distribution of a batch of outputs).
std::vector<double> column_mean_serial(const Matrix& m);
std::vector<double> column_mean_parallel(const Matrix& m);

}  // namespace npop::kernels

#endif  // NPOP_KERNELS_HPP
