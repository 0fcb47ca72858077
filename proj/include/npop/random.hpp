#ifndef NPOP_RANDOM_HPP
#define NPOP_RANDOM_HPP

#include <cstdint>
#include <random>

namespace npop {

using Engine = std::mt19937_64;

// Counter-based seeding: every (seed, counter, stream) triple gets its own
// independent, replayable engine.
Engine make_engine(std::uint64_t seed, std::uint64_t counter, std::uint64_t stream);

// Uniform on [0, 1) with 53 random bits. Unlike std::uniform_real_distribution
// the result is identical across standard libraries.
inline double uniform01(Engine& e) { return static_cast<double>(e() >> 11) * 0x1.0p-53; }

// Named streams so that no two consumers ever share an engine.
namespace stream {
inline constexpr std::uint64_t kWeights = 1;
inline constexpr std::uint64_t kPlayer = 2;
inline constexpr std::uint64_t kOpponent = 3;
inline constexpr std::uint64_t kInit = 4;
inline constexpr std::uint64_t kMeasure = 5;
inline constexpr std::uint64_t kProbe = 6;
inline constexpr std::uint64_t kProbeOpponent = 7;
}  // namespace stream

}  // namespace npop

#endif  // NPOP_RANDOM_HPP
