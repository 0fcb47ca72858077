#ifndef NPOP_DIVERGENCE_HPP
#define NPOP_DIVERGENCE_HPP

#include <span>
#include <vector>

namespace npop {

// Probabilities are clamped to [kProbFloor, 1] inside logarithms.
inline constexpr double kProbFloor = 1e-12;

// sum_s p(s) log(p(s)/q(s)), with 0 log 0 = 0.
double kld(std::span<const double> p, std::span<const double> q);

// Jensen-Shannon divergence with mixture m = (d + q)/2:
//   0.5 KLD(d || m) + 0.5 KLD(q || m).
// Symmetric, zero iff d == q, bounded by ln 2.
double js_divergence(std::span<const double> d, std::span<const double> q);

// d JSD(d, q) / d q_k = 0.5 log(q_k / m_k).
std::vector<double> js_gradient(std::span<const double> d, std::span<const double> q);

}  // namespace npop

#endif  // NPOP_DIVERGENCE_HPP
